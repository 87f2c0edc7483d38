#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "crpldp/extended_value.hpp"

namespace crpldp {

// Proper extended-real function R^k -> (-inf, +inf] with an axis-aligned box
// known to contain the part of its effective domain worth searching
// (entries may be +/-inf). Optional seed points mark places where the
// function is known to be finite; they matter when the effective domain is
// lower-dimensional and a grid scan cannot find it.
struct ExtFunction {
  int dim = 1;
  std::function<ExtValue(const std::vector<double>&)> eval;
  std::vector<double> box_lo, box_hi;
  std::vector<std::vector<double>> seeds;

  static ExtFunction make(int dim, std::function<ExtValue(const std::vector<double>&)> f);
};

struct SearchPolicy {
  double initial_half_width = 4.0;
  double max_half_width = 1e6;
  int grid_per_axis = 0;  // 0: pick by dimension
  double refine_tol = 1e-8;
  int growth_doublings = 3;  // consecutive improving doublings certifying +inf
  int max_refine_cycles = 40;
};

enum class SolveStatus { Converged, Unbounded, BoxLimited };

struct SupResult {
  ExtValue value = ExtValue::neg_inf();
  std::vector<double> argmax;  // empty unless status == Converged
  SolveStatus status = SolveStatus::Converged;
};

class BoxExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// sup_x { <alpha, x> - F(x) } with argmax, by coarse grid scan over an
// adaptively expanded box plus coordinate/radial golden-section refinement.
// Certifies +inf when the objective keeps growing across box doublings;
// throws BoxExhausted past policy.max_half_width without a verdict.
SupResult sup_linear_minus(const ExtFunction& F, const std::vector<double>& alpha,
                           const SearchPolicy& pol = {});

// Legendre transform F*(alpha) = sup_mu { <mu, alpha> - F(mu) }.
ExtValue legendre(const ExtFunction& F, const std::vector<double>& alpha,
                  const SearchPolicy& pol = {});

// Closed convex hull value (F*)*(u); the inner conjugate is memoized per call.
ExtValue biconjugate(const ExtFunction& F, const std::vector<double>& u,
                     const SearchPolicy& pol = {});

// (F1 * F2)(u) = inf_v { F1(v) + F2(u - v) }.
ExtValue inf_convolution(const ExtFunction& F1, const ExtFunction& F2,
                         const std::vector<double>& u, const SearchPolicy& pol = {});

// Caching wrapper keyed by the argument's bit pattern.
ExtFunction memoized(ExtFunction F);

// 1-d golden-section helpers over extended-valued objectives (convex for
// minimize, concave for maximize, -inf/+inf plateaus allowed at the edges).
double golden_min_1d(const std::function<double(double)>& f, double lo, double hi, double tol);
double golden_max_1d(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace crpldp
