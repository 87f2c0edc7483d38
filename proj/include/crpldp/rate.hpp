#pragma once

#include <vector>

#include "crpldp/conjugate.hpp"
#include "crpldp/extended_value.hpp"
#include "crpldp/model.hpp"

namespace crpldp {

// Feasible set {(lambda, mu) : lambda < gamma, A(lambda, mu) <= 0}.
struct FeasibleSet {
  const JumpLaw* law = nullptr;
  ExtValue gamma = ExtValue::pos_inf();

  bool contains(double lambda, const std::vector<double>& mu, double slack = 0.0) const;
};

// Rate value at alpha together with the maximizing (lambda, mu) of the
// constrained supremum, when one exists.
struct RateEvaluation {
  ExtValue value = ExtValue(0.0);
  bool has_argmax = false;
  double argmax_lambda = 0.0;
  std::vector<double> argmax_mu;
  SolveStatus status = SolveStatus::Converged;
};

// Largest lambda with A(lambda, mu) <= 0 (the slice of the feasible set at
// mu is a half-line; A is nondecreasing and unbounded above in lambda, so
// the root always exists). Bisection to ~1e-12.
double lambda_sup(const JumpLaw& law, const std::vector<double>& mu);

// A(mu) = -sup{lambda : A(lambda, mu) <= 0}. Finite for every mu within the
// built-in families.
ExtValue A_of_mu(const JumpLaw& law, const std::vector<double>& mu);

// A_gamma(mu) = max{-gamma, A(mu)}; gamma = +inf leaves A uncapped.
ExtValue A_gamma(const JumpLaw& law, const std::vector<double>& mu, ExtValue gamma);

// A_gamma at mu = 0; equals -min(gamma, lambda_sup(0)).
ExtValue a_gamma_at_zero(const JumpLaw& law, ExtValue gamma);

// mu -> A_gamma(mu) packaged for the conjugate engine.
ExtFunction a_gamma_function(const JumpLaw& law, ExtValue gamma);

// D(alpha) = sup over the feasible set of {lambda + <mu, alpha>}, reduced to
// the Legendre transform of A_gamma (the lambda constraint binds).
RateEvaluation eval_D(const JumpLaw& law, const std::vector<double>& alpha,
                      const SearchPolicy& pol = {});
RateEvaluation eval_D_gamma(const JumpLaw& law, const std::vector<double>& alpha,
                            ExtValue gamma, const SearchPolicy& pol = {});

// alpha -> D_gamma(alpha) packaged for the conjugate engine, seeded with the
// drift point a + b / E tau (the only finite point when zeta is a noiseless
// affine image of tau with b = 0). Wrap in memoized() before conjugating.
ExtFunction d_function(const JumpLaw& law, ExtValue gamma, const SearchPolicy& pol = {});

// D(theta, alpha) = sup over the feasible set of {lambda theta + <mu, alpha>};
// equals theta * D(alpha / theta) for theta > 0.
ExtValue eval_D_theta(const JumpLaw& law, double theta, const std::vector<double>& alpha,
                      const SearchPolicy& pol = {});

// inf over theta in [0,1] of {D(theta, alpha) + gamma (1 - theta)}; agrees
// with eval_D_gamma (the identity both routes are tested against).
ExtValue D_gamma_via_theta(const JumpLaw& law, const std::vector<double>& alpha,
                           double gamma, const SearchPolicy& pol = {});

// Same infimum over the open interval theta in (0,1).
ExtValue D_hat_gamma_via_theta(const JumpLaw& law, const std::vector<double>& alpha,
                               double gamma, const SearchPolicy& pol = {});

// D_+(alpha) = D_{lambda_+}(alpha) - A_{lambda_-}(0) and the mirrored D_-.
ExtValue eval_D_plus(const JumpLaw& law, const std::vector<double>& alpha,
                     const SearchPolicy& pol = {});
ExtValue eval_D_minus(const JumpLaw& law, const std::vector<double>& alpha,
                      const SearchPolicy& pol = {});

// Lambda(theta, alpha), the (d+1)-dimensional Legendre transform of A.
// Computed by an exact reduction: splitting A(lambda, mu) at s = lambda +
// <mu, a> + c1 separates the supremum into a 1-d conjugate of the tau
// log-mgf and a closed-form Gaussian part.
ExtValue eval_Lambda(const JumpLaw& law, double theta, const std::vector<double>& alpha);

// Same quantity via the generic (d+1)-dimensional engine; cross-check only.
ExtValue eval_Lambda_full(const JumpLaw& law, double theta, const std::vector<double>& alpha,
                          const SearchPolicy& pol = {});

// D_Lambda(theta, alpha) = inf over r > 0 of r * Lambda(theta/r, alpha/r),
// on a log grid with golden refinement plus the candidate r values where a
// degenerate (deterministic tau or noiseless zeta) constraint can hold.
ExtValue eval_D_Lambda(const JumpLaw& law, double theta, const std::vector<double>& alpha);

// (theta, alpha) -> D_Lambda packaged for biconjugation tests; x[0] = theta.
ExtFunction d_lambda_function(const JumpLaw& law);

}  // namespace crpldp
