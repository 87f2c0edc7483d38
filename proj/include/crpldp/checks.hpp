#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crpldp/mc.hpp"
#include "crpldp/model.hpp"
#include "crpldp/rate.hpp"

namespace crpldp {

// One named identity check; shared between the CLI `identities` subcommand
// and the acceptance suite.
struct CheckResult {
  std::string name;
  double expected = 0.0;  // +-inf allowed
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// pass when |expected - observed| <= tolerance, or both are the same
// infinity.
CheckResult make_check(std::string name, double expected, double observed, double tolerance);

// Uniform 1-d grid helper.
std::vector<double> linspace(double lo, double hi, int n);

// Minimum of f over a finite box by per-axis grid scan plus golden
// refinement; extra_candidates lets callers inject isolated domain points.
double inf_over_box(const Region& box, const std::function<ExtValue(const std::vector<double>&)>& f,
                    int per_axis = 51,
                    const std::vector<std::vector<double>>& extra_candidates = {});

// Duality: max over a mu-grid of |(D_gamma)^conj(mu) - A_gamma(mu)|.
CheckResult check_duality(const JumpLaw& law, ExtValue gamma, double mu_lo, double mu_hi,
                          int n_mu, double tol);

// Cap equivalence: with gamma = D(0) + margin, max over the alpha grid of
// |D_gamma - D|; requires finite D(0).
CheckResult check_cap_inactive(const JumpLaw& law, double margin,
                               const std::vector<std::vector<double>>& alphas, double tol);

// Binding cap at the origin: D_gamma(0) = gamma for gamma < D(0).
CheckResult check_cap_binding(const JumpLaw& law, double gamma, double tol);

// Route equivalence: max over alphas of |D_gamma_via_theta - D_gamma|.
CheckResult check_route_equivalence(const JumpLaw& law, double gamma,
                                    const std::vector<std::vector<double>>& alphas, double tol);

// Biconjugate of D_Lambda equals D(theta, alpha) at the given (theta, alpha)
// points (each point is a d+1 vector with theta first).
CheckResult check_dlambda_biconjugate(const JumpLaw& law,
                                      const std::vector<std::vector<double>>& points, double tol);

// Shrinking-ball value of D_Lambda(1, .) around alpha vs D(alpha).
CheckResult check_dlambda_ball_limit(const JumpLaw& law,
                                     const std::vector<std::vector<double>>& alphas, double eps,
                                     double tol);

// Shrinking-ball limit of the open-interval route vs D_gamma(alpha).
CheckResult check_open_route_limit(const JumpLaw& law, double gamma,
                                   const std::vector<std::vector<double>>& alphas, double tol);

// D(theta, alpha) = theta * D(alpha/theta) for theta in {0.25, 0.5, 1, 2}.
CheckResult check_homogeneity(const JumpLaw& law, const std::vector<double>& alpha0, double tol);

// Growth bound D(alpha) >= gamma |alpha| - (lambda_tilde + 1) with the
// tightness pair, probed up to |alpha| = 1e3.
CheckResult check_growth_bound(const JumpLaw& law);

// Full battery for the CLI `identities` subcommand.
std::vector<CheckResult> identity_battery(const JumpLaw& law, double tol);

}  // namespace crpldp
