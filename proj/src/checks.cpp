#include "crpldp/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crpldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double as_double(const ExtValue& v) {
  if (v.is_pos_inf()) return kInf;
  if (v.is_neg_inf()) return -kInf;
  return v.value();
}

// |a - b| with matching infinities collapsing to 0.
double ext_diff(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
  return std::fabs(a - b);
}

std::vector<double> drift_point(const JumpLaw& law) {
  std::vector<double> d(static_cast<std::size_t>(law.dim));
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = law.zeta_a[i] + law.zeta_b[i] / law.mean_tau_finite();
  return d;
}

}  // namespace

CheckResult make_check(std::string name, double expected, double observed, double tolerance) {
  CheckResult c;
  c.name = std::move(name);
  c.expected = expected;
  c.observed = observed;
  c.tolerance = tolerance;
  c.pass = ext_diff(expected, observed) <= tolerance;
  return c;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

double inf_over_box(const Region& box, const std::function<ExtValue(const std::vector<double>&)>& f,
                    int per_axis, const std::vector<std::vector<double>>& extra_candidates) {
  if (box.shape != RegionShape::Box)
    throw std::invalid_argument("inf_over_box: box regions only");
  const std::size_t d = box.lo.size();
  for (std::size_t i = 0; i < d; ++i)
    if (std::isinf(box.lo[i]) || std::isinf(box.hi[i]))
      throw std::invalid_argument("inf_over_box: finite box required");

  auto g = [&](const std::vector<double>& x) { return as_double(f(x)); };
  double best = kInf;
  std::vector<double> best_x(box.lo);

  std::vector<int> idx(d, 0);
  std::vector<double> x(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i)
      x[i] = per_axis == 1 ? box.lo[i]
                           : box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (per_axis - 1);
    const double v = g(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
  for (const auto& c : extra_candidates) {
    if (c.size() != d || !box.contains(c)) continue;
    const double v = g(c);
    if (v < best) {
      best = v;
      best_x = c;
    }
  }
  if (std::isinf(best)) return best;
  for (int cycle = 0; cycle < 2; ++cycle) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> probe = best_x;
      auto h = [&](double t) {
        probe[i] = t;
        return g(probe);
      };
      const double t = golden_min_1d(h, box.lo[i], box.hi[i], 1e-10);
      probe[i] = t;
      const double v = g(probe);
      if (v < best) {
        best = v;
        best_x = probe;
      }
    }
  }
  return best;
}

CheckResult check_duality(const JumpLaw& law, ExtValue gamma, double mu_lo, double mu_hi,
                          int n_mu, double tol) {
  const ExtFunction dfn = memoized(d_function(law, gamma));
  double worst = 0.0;
  // Grid along each coordinate axis (the built-in laws are low-dimensional).
  for (int axis = 0; axis < law.dim; ++axis) {
    for (double m : linspace(mu_lo, mu_hi, n_mu)) {
      std::vector<double> mu(static_cast<std::size_t>(law.dim), 0.0);
      mu[static_cast<std::size_t>(axis)] = m;
      const double lhs = as_double(legendre(dfn, mu));
      const double rhs = as_double(A_gamma(law, mu, gamma));
      worst = std::max(worst, ext_diff(lhs, rhs));
    }
  }
  return make_check(gamma.is_pos_inf() ? "duality" : "duality-capped", 0.0, worst, tol);
}

CheckResult check_cap_inactive(const JumpLaw& law, double margin,
                               const std::vector<std::vector<double>>& alphas, double tol) {
  const std::vector<double> zeros(static_cast<std::size_t>(law.dim), 0.0);
  const ExtValue d0 = eval_D(law, zeros).value;
  if (!d0.is_finite())
    return make_check("cap-inactive(skipped: D(0) infinite)", 0.0, 0.0, tol);
  const ExtValue gamma(d0.value() + margin);
  double worst = 0.0;
  for (const auto& a : alphas) {
    const double lhs = as_double(eval_D_gamma(law, a, gamma).value);
    const double rhs = as_double(eval_D(law, a).value);
    worst = std::max(worst, ext_diff(lhs, rhs));
  }
  return make_check("cap-inactive", 0.0, worst, tol);
}

CheckResult check_cap_binding(const JumpLaw& law, double gamma, double tol) {
  const std::vector<double> zeros(static_cast<std::size_t>(law.dim), 0.0);
  const double v = as_double(eval_D_gamma(law, zeros, ExtValue(gamma)).value);
  return make_check("cap-binding-at-origin", gamma, v, tol);
}

CheckResult check_route_equivalence(const JumpLaw& law, double gamma,
                                    const std::vector<std::vector<double>>& alphas, double tol) {
  double worst = 0.0;
  for (const auto& a : alphas) {
    const double lhs = as_double(D_gamma_via_theta(law, a, gamma));
    const double rhs = as_double(eval_D_gamma(law, a, ExtValue(gamma)).value);
    worst = std::max(worst, ext_diff(lhs, rhs));
  }
  return make_check("route-equivalence(gamma=" + std::to_string(gamma) + ")", 0.0, worst, tol);
}

CheckResult check_dlambda_biconjugate(const JumpLaw& law,
                                      const std::vector<std::vector<double>>& points, double tol) {
  const ExtFunction dl = memoized(d_lambda_function(law));
  double worst = 0.0;
  for (const auto& p : points) {
    const std::vector<double> alpha(p.begin() + 1, p.end());
    const double lhs = as_double(biconjugate(dl, p));
    const double rhs = as_double(eval_D_theta(law, p[0], alpha));
    worst = std::max(worst, ext_diff(lhs, rhs));
  }
  return make_check("dlambda-biconjugate", 0.0, worst, tol);
}

CheckResult check_dlambda_ball_limit(const JumpLaw& law,
                                     const std::vector<std::vector<double>>& alphas, double eps,
                                     double tol) {
  const std::vector<std::vector<double>> cands = {drift_point(law)};
  double worst = 0.0;
  for (const auto& a : alphas) {
    std::vector<double> lo(a), hi(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      lo[i] -= eps;
      hi[i] += eps;
    }
    const double lhs = inf_over_box(
        Region::box(lo, hi),
        [&](const std::vector<double>& x) { return eval_D_Lambda(law, 1.0, x); }, 41, cands);
    const double rhs = as_double(eval_D(law, a).value);
    worst = std::max(worst, ext_diff(lhs, rhs));
  }
  return make_check("dlambda-ball-limit", 0.0, worst, tol);
}

CheckResult check_open_route_limit(const JumpLaw& law, double gamma,
                                   const std::vector<std::vector<double>>& alphas, double tol) {
  const std::vector<std::vector<double>> cands = {drift_point(law)};
  double worst = 0.0;
  for (const auto& a : alphas) {
    const double ref = as_double(eval_D_gamma(law, a, ExtValue(gamma)).value);
    double last = kInf;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
      std::vector<double> lo(a), hi(a);
      for (std::size_t i = 0; i < a.size(); ++i) {
        lo[i] -= eps;
        hi[i] += eps;
      }
      last = inf_over_box(
          Region::box(lo, hi),
          [&](const std::vector<double>& x) { return D_hat_gamma_via_theta(law, x, gamma); },
          21, cands);
    }
    worst = std::max(worst, ext_diff(last, ref));
  }
  return make_check("open-route-limit(gamma=" + std::to_string(gamma) + ")", 0.0, worst, tol);
}

CheckResult check_homogeneity(const JumpLaw& law, const std::vector<double>& alpha0, double tol) {
  const double base = as_double(eval_D(law, alpha0).value);
  double worst = 0.0;
  for (double th : {0.25, 0.5, 1.0, 2.0}) {
    std::vector<double> scaled(alpha0.size());
    for (std::size_t i = 0; i < alpha0.size(); ++i) scaled[i] = th * alpha0[i];
    const double lhs = as_double(eval_D_theta(law, th, scaled));
    const double rhs = std::isinf(base) ? base : th * base;
    worst = std::max(worst, ext_diff(lhs, rhs));
  }
  return make_check("homogeneity", 0.0, worst, tol);
}

CheckResult check_growth_bound(const JumpLaw& law) {
  const TightnessPair tp = find_tightness_pair(law);
  double worst_margin = kInf;
  for (double r : {10.0, 100.0, 1000.0}) {
    for (int axis = 0; axis < law.dim; ++axis) {
      for (double sign : {-1.0, 1.0}) {
        std::vector<double> a(static_cast<std::size_t>(law.dim), 0.0);
        a[static_cast<std::size_t>(axis)] = sign * r;
        const double d = as_double(eval_D(law, a).value);
        const double bound = tp.gamma * r - (tp.lambda_tilde + 1.0);
        if (!std::isinf(d)) worst_margin = std::min(worst_margin, d - bound);
      }
    }
  }
  if (std::isinf(worst_margin)) return make_check("growth-bound", 0.0, 0.0, 1e-6);
  return make_check("growth-bound", 0.0, std::min(0.0, worst_margin), 1e-6);
}

std::vector<CheckResult> identity_battery(const JumpLaw& law, double tol) {
  std::vector<CheckResult> out;
  const std::vector<double> drift = drift_point(law);

  // Alpha probes along each axis through the drift point.
  std::vector<std::vector<double>> alphas;
  for (int axis = 0; axis < law.dim; ++axis) {
    for (double off : linspace(-1.0, 1.0, 11)) {
      std::vector<double> a = drift;
      a[static_cast<std::size_t>(axis)] += off;
      alphas.push_back(std::move(a));
    }
  }

  out.push_back(check_duality(law, ExtValue::pos_inf(), -2.0, 2.0, 21, tol));
  out.push_back(check_duality(law, ExtValue(0.5), -2.0, 2.0, 21, tol));
  out.push_back(check_cap_inactive(law, 1e-3, alphas, tol));

  const std::vector<double> zeros(static_cast<std::size_t>(law.dim), 0.0);
  const ExtValue d0 = eval_D(law, zeros).value;
  if (d0.is_finite() && d0.value() > 1e-3)
    out.push_back(check_cap_binding(law, d0.value() - 1e-3, 1e-8));

  std::vector<double> gammas = {0.0, 0.5};
  const ExtValue lp = lambda_plus(law);
  if (lp.is_finite() && lp.value() != 0.0 && lp.value() != 0.5) gammas.push_back(lp.value());
  for (double g : gammas) out.push_back(check_route_equivalence(law, g, alphas, tol));

  std::vector<double> half = drift;
  for (double& x : half) x *= 0.5;
  std::vector<std::vector<double>> points;
  std::vector<double> p1 = {1.0};
  p1.insert(p1.end(), drift.begin(), drift.end());
  std::vector<double> p2 = {0.5};
  p2.insert(p2.end(), half.begin(), half.end());
  points.push_back(p1);
  points.push_back(p2);
  out.push_back(check_dlambda_biconjugate(law, points, std::max(tol, 1e-4)));
  out.push_back(check_dlambda_ball_limit(law, {drift}, 1e-3, 0.05));
  out.push_back(check_open_route_limit(law, 0.5, {drift}, 0.02));
  out.push_back(check_homogeneity(law, drift, tol));
  out.push_back(check_growth_bound(law));
  return out;
}

}  // namespace crpldp
