#pragma once

#include <string>
#include <vector>

#include "crpldp/extended_value.hpp"
#include "crpldp/rng.hpp"

namespace crpldp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CStarViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TauFamily { Deterministic, Exponential, Geometric };

// Joint law of one renewal step (tau, zeta, v) with termination probability
// p_terminate = P(tau = inf). Conditional on tau < inf:
//   tau   ~ tau_family(tau_param),
//   zeta  = a * tau + b + xi,  xi centered Gaussian with diagonal covariance
//           sigma^2, independent of tau,
//   v     = c0 + c1 * tau.
// Immutable after construction; safe to share across threads.
struct JumpLaw {
  int dim = 1;
  double p_terminate = 0.0;
  TauFamily tau_family = TauFamily::Deterministic;
  double tau_param = 1.0;
  std::vector<double> zeta_a, zeta_b, zeta_sigma;
  double v_c0 = 0.0, v_c1 = 0.0;

  // Validates invariants (p in [0,1), positive family parameter, q in (0,1),
  // matching dimensions, nonnegative sigma). Throws ConfigError.
  static JumpLaw make(int dim, double p_terminate, TauFamily family, double param,
                      std::vector<double> a, std::vector<double> b,
                      std::vector<double> sigma, double c0, double c1);

  static JumpLaw from_json(const std::string& json_text);
  std::string to_json() const;

  // Conditional mean of tau given tau < inf.
  double mean_tau_finite() const;
};

// Witness (lambda, eps) of the exponential moment condition, with a finite bound
// ln E(e^{-lambda tau + eps |zeta| + v}; tau < inf).
struct CStarWitness {
  double lambda_c = 0.0;
  double eps_c = 0.0;
  double bound = 0.0;
};

struct StepSample {
  double tau = 0.0;  // +inf on termination
  std::vector<double> zeta;
  double v = 0.0;
  bool terminated() const { return std::isinf(tau); }
};

// ln E(e^{s tau} | tau < inf) for the given family; +inf outside the domain.
ExtValue log_tau_mgf(TauFamily family, double param, double s);

// Conditional survival P(tau > u | tau < inf), u >= 0.
double tau_survival(TauFamily family, double param, double u);

// Cumulant A(lambda, mu) = ln E(e^{lambda tau + <mu, zeta> + v}; tau < inf),
// exact closed form; +inf where the expectation diverges.
ExtValue eval_A(const JumpLaw& law, double lambda, const std::vector<double>& mu);

// Tail rates of tau defining lambda_{+-}: 0 when p_terminate > 0,
// else the analytic per-family rate (+inf for deterministic tau).
ExtValue lambda_plus(const JumpLaw& law);
ExtValue lambda_minus(const JumpLaw& law);

// sup{lambda >= 0 : E e^{v + lambda tau} < inf}; computed for completeness,
// no downstream logic depends on it.
ExtValue lambda_star_plus(const JumpLaw& law);
ExtValue lambda_star_minus(const JumpLaw& law);

// Searches lambda in {1,2,4,...}, eps in {1,1/2,1/4,...} (depth 20) for a
// finite bound; exact when |zeta| has a closed form, otherwise via the
// majorization e^{eps|zeta|} <= sum_i (e^{eps zeta_i} + e^{-eps zeta_i}).
// Throws CStarViolated when the ladder is exhausted.
CStarWitness check_cstar(const JumpLaw& law);

// ln E(e^{v + eps|zeta| - lambda tau}; tau < inf), exact or majorized upper
// bound (same convention as check_cstar).
ExtValue log_cstar_moment(const JumpLaw& law, double lambda, double eps);

StepSample sample_step(const JumpLaw& law, RngStream& stream);

}  // namespace crpldp
