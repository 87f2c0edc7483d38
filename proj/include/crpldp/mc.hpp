#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "crpldp/extended_value.hpp"
#include "crpldp/model.hpp"
#include "crpldp/rng.hpp"

namespace crpldp {

class InvalidTilt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RateUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TightnessUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RegionShape { Box, Ball, HalfSpace };
enum class Closure { Open, Closed };

// Subset of R^d with exact membership arithmetic; the Open and Closed
// flavors differ only on the boundary.
struct Region {
  RegionShape shape = RegionShape::Box;
  Closure closure = Closure::Closed;
  std::vector<double> lo, hi;      // Box (entries may be +-inf)
  std::vector<double> center;      // Ball
  double radius = 0.0;             // Ball
  std::vector<double> normal;      // HalfSpace <normal, x> <= offset
  double offset = 0.0;             // HalfSpace

  static Region box(std::vector<double> lo, std::vector<double> hi,
                    Closure closure = Closure::Closed);
  static Region ball(std::vector<double> center, double radius,
                     Closure closure = Closure::Closed);
  static Region half_space(std::vector<double> normal, double offset,
                           Closure closure = Closure::Closed);
  static Region whole_space(int dim);

  int dim() const;
  bool contains(const std::vector<double>& x) const;
};

enum class McMethod { Naive, Tilted };

// Log-domain Monte Carlo estimate of E(e^{V_nu(t)}; Z(t)/t in B).
struct PathEstimate {
  double t = 0.0;
  ExtValue log_value = ExtValue::neg_inf();  // -inf when no replicate hit
  long long replicates = 0;
  double half_width_log = 0.0;  // 95% half-width of the log estimate
  std::uint64_t seed = 0;
  McMethod method = McMethod::Naive;
  double lambda_star = 0.0;  // tilt parameter; 0 for the naive method
  long long hits = 0;
};

struct PathResult {
  std::vector<double> z_final;
  double v_sum = 0.0;
  long long n_jumps = 0;
  double t_last = 0.0;
};

// Runs the renewal path up to horizon t; a terminating step freezes it.
PathResult simulate_path(const JumpLaw& law, double t, RngStream& stream);

PathEstimate estimate_unnormalized(const JumpLaw& law, double t, const Region& B,
                                   long long n_rep, std::uint64_t seed);

// Gibbs probability P_t(Z(t)/t in B): ratio of the unnormalized estimate
// over B to the one over R^d, sharing paths (common random numbers).
PathEstimate estimate_gibbs(const JumpLaw& law, double t, const Region& B,
                            long long n_rep, std::uint64_t seed);

// Normalized exponentially tilted step law: proposal steps are drawn from
// e^{-C} E(e^{-lambda* tau + v}; tau in ., zeta in .), C = A(-lambda*, 0).
// The proposal never terminates; termination mass is carried by the
// overshoot weight during estimation.
struct TiltedSampler {
  JumpLaw law;       // original law
  JumpLaw proposal;  // same family shapes with tilted parameters, p = 0
  double lambda_star = 0.0;
  double log_mass = 0.0;  // C <= 0
};

// Requires lambda_star > 0 and A(-lambda_star, 0) <= 0; throws InvalidTilt.
TiltedSampler make_tilted(const JumpLaw& law, double lambda_star);

// Default tilt: the root of A(-lambda, 0) = 0 when A(0,0) > 0 (unit-mass
// proposal), otherwise 1.0.
double choose_lambda_star(const JumpLaw& law);

// Unbiased importance-sampling estimator of the same quantity as
// estimate_unnormalized: along each proposal path every renewal index n
// with T_n <= t contributes exp(n C + lambda* T_n) G(t - T_n) 1{Z_n/t in B},
// where G(u) = p + (1-p) P(tau > u | tau < inf) is the original overshoot
// tail including the termination mass. Summing over n integrates the final
// interval out exactly, so the estimator stays valid even when the proposal
// cannot produce long overshoots (deterministic tau).
PathEstimate estimate_unnormalized_tilted(const TiltedSampler& sampler, double t,
                                          const Region& B, long long n_rep,
                                          std::uint64_t seed);

struct EmpiricalRate {
  double slope = 0.0;
  double stderr_slope = 0.0;
  std::vector<PathEstimate> per_t;
};

// OLS slope of log estimates against t; throws RateUndefined when a grid
// point came back -inf. lambda_star <= 0 selects the default tilt.
EmpiricalRate empirical_rate(const JumpLaw& law, const Region& B,
                             const std::vector<double>& t_grid, long long n_rep,
                             std::uint64_t seed, McMethod method,
                             double lambda_star = 0.0);

struct TightnessPair {
  double gamma = 0.0;
  double lambda_tilde = 0.0;
  double u = 0.0;  // E e^{v + gamma |zeta| - (lambda_tilde + 1) tau} < 1
};

// Ladder search for (gamma, lambda_tilde) with u < 1; throws
// TightnessUnavailable when the ladder is exhausted.
TightnessPair find_tightness_pair(const JumpLaw& law);

// M = (N + lambda_tilde + 1) / gamma.
double truncation_radius(double gamma, double lambda_tilde, double N);

}  // namespace crpldp
