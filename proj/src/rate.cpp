#include "crpldp/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crpldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool slice_feasible(const JumpLaw& law, double lambda, const std::vector<double>& mu) {
  const ExtValue a = eval_A(law, lambda, mu);
  return !a.is_pos_inf() && a.value() <= 0.0;
}

double drift_component(const JumpLaw& law, std::size_t i) {
  return law.zeta_a[i] + law.zeta_b[i] / law.mean_tau_finite();
}

std::vector<double> drift_point(const JumpLaw& law) {
  std::vector<double> d(static_cast<std::size_t>(law.dim));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = drift_component(law, i);
  return d;
}

bool all_zero_sigma(const JumpLaw& law) {
  for (double s : law.zeta_sigma)
    if (s > 0.0) return false;
  return true;
}

// Domain cap of the tau log-mgf: s < cap (none for deterministic tau).
double tau_mgf_cap(const JumpLaw& law) {
  switch (law.tau_family) {
    case TauFamily::Exponential: return law.tau_param;
    case TauFamily::Geometric: return -std::log(law.tau_param);
    case TauFamily::Deterministic: return kInf;
  }
  return kInf;
}

}  // namespace

bool FeasibleSet::contains(double lambda, const std::vector<double>& mu, double slack) const {
  if (gamma.is_finite() && !(lambda < gamma.finite() + slack)) return false;
  const ExtValue a = eval_A(*law, lambda, mu);
  return !a.is_pos_inf() && a.value() <= slack;
}

double lambda_sup(const JumpLaw& law, const std::vector<double>& mu) {
  double hi = 1.0;
  int guard = 0;
  while (slice_feasible(law, hi, mu)) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("lambda_sup: upper bracket failed");
  }
  double lo = -1.0;
  guard = 0;
  while (!slice_feasible(law, lo, mu)) {
    lo *= 2.0;
    if (++guard > 200) throw std::runtime_error("lambda_sup: lower bracket failed");
  }
  while (hi - lo > 1e-13 * (1.0 + std::fabs(lo) + std::fabs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (slice_feasible(law, mid, mu)) lo = mid;
    else hi = mid;
  }
  return lo;
}

ExtValue A_of_mu(const JumpLaw& law, const std::vector<double>& mu) {
  return ExtValue(-lambda_sup(law, mu));
}

ExtValue A_gamma(const JumpLaw& law, const std::vector<double>& mu, ExtValue gamma) {
  const ExtValue a = A_of_mu(law, mu);
  if (gamma.is_pos_inf()) return a;
  return ext_max(ExtValue(-gamma.finite()), a);
}

ExtValue a_gamma_at_zero(const JumpLaw& law, ExtValue gamma) {
  const double ls = lambda_sup(law, std::vector<double>(static_cast<std::size_t>(law.dim), 0.0));
  if (gamma.is_pos_inf()) return ExtValue(-ls);
  return ExtValue(-std::min(gamma.finite(), ls));
}

ExtFunction a_gamma_function(const JumpLaw& law, ExtValue gamma) {
  return ExtFunction::make(law.dim, [law, gamma](const std::vector<double>& mu) {
    return A_gamma(law, mu, gamma);
  });
}

RateEvaluation eval_D_gamma(const JumpLaw& law, const std::vector<double>& alpha,
                            ExtValue gamma, const SearchPolicy& pol) {
  const SupResult r = sup_linear_minus(a_gamma_function(law, gamma), alpha, pol);
  RateEvaluation out;
  out.value = r.value;
  out.status = r.status;
  if (r.status == SolveStatus::Converged && r.value.is_finite() && !r.argmax.empty()) {
    out.has_argmax = true;
    out.argmax_mu = r.argmax;
    const double ls = lambda_sup(law, r.argmax);
    out.argmax_lambda = gamma.is_finite() ? std::min(gamma.finite(), ls) : ls;
  }
  return out;
}

RateEvaluation eval_D(const JumpLaw& law, const std::vector<double>& alpha,
                      const SearchPolicy& pol) {
  return eval_D_gamma(law, alpha, ExtValue::pos_inf(), pol);
}

ExtFunction d_function(const JumpLaw& law, ExtValue gamma, const SearchPolicy& pol) {
  ExtFunction f = ExtFunction::make(law.dim, [law, gamma, pol](const std::vector<double>& alpha) {
    return eval_D_gamma(law, alpha, gamma, pol).value;
  });
  f.seeds.push_back(drift_point(law));
  return f;
}

ExtValue eval_D_theta(const JumpLaw& law, double theta, const std::vector<double>& alpha,
                      const SearchPolicy& pol) {
  if (theta < 0.0) throw std::invalid_argument("eval_D_theta: theta must be >= 0");
  if (theta == 0.0) {
    for (double ai : alpha)
      if (ai != 0.0) return ExtValue::pos_inf();
    return ExtValue(0.0);
  }
  std::vector<double> scaled(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) scaled[i] = alpha[i] / theta;
  return theta * eval_D(law, scaled, pol).value;
}

namespace {

// When zeta = a * tau exactly (sigma = 0, b = 0), dom D is the single point
// a and D(theta, alpha) is finite only at theta with alpha = theta * a.
bool degenerate_theta_candidate(const JumpLaw& law, const std::vector<double>& alpha,
                                double* theta_out) {
  if (!all_zero_sigma(law)) return false;
  double amax = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (law.zeta_b[i] != 0.0) return false;
    amax = std::max(amax, std::fabs(alpha[i]));
  }
  double th = 0.0;
  bool found = false;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (law.zeta_a[i] != 0.0) {
      th = alpha[i] / law.zeta_a[i];
      found = true;
      break;
    }
  }
  if (!found) return false;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (std::fabs(alpha[i] - th * law.zeta_a[i]) > 1e-9 * (1.0 + amax)) return false;
  *theta_out = th;
  return true;
}

ExtValue inf_over_theta(const JumpLaw& law, const std::vector<double>& alpha, double gamma,
                        const SearchPolicy& pol, bool open_interval) {
  auto h = [&](double th) -> double {
    ExtValue d = eval_D_theta(law, th, alpha, pol);
    if (d.is_pos_inf()) return kInf;
    return d.value() + gamma * (1.0 - th);
  };
  std::vector<double> cands;
  const double lo_edge = open_interval ? 1e-8 : 0.0;
  const double hi_edge = open_interval ? 1.0 - 1e-8 : 1.0;
  cands.push_back(lo_edge);
  cands.push_back(hi_edge);
  for (int i = 1; i < 100; ++i) cands.push_back(i / 100.0);
  double th_deg;
  if (degenerate_theta_candidate(law, alpha, &th_deg) && th_deg > lo_edge && th_deg < hi_edge)
    cands.push_back(th_deg);

  double best = kInf, best_th = hi_edge;
  for (double th : cands) {
    const double v = h(th);
    if (v < best) {
      best = v;
      best_th = th;
    }
  }
  if (std::isinf(best)) return ExtValue::pos_inf();
  const double blo = std::max(lo_edge, best_th - 0.015);
  const double bhi = std::min(hi_edge, best_th + 0.015);
  const double tg = golden_min_1d(h, blo, bhi, 1e-10);
  best = std::min(best, h(tg));
  return ExtValue(best);
}

}  // namespace

ExtValue D_gamma_via_theta(const JumpLaw& law, const std::vector<double>& alpha,
                           double gamma, const SearchPolicy& pol) {
  return inf_over_theta(law, alpha, gamma, pol, false);
}

ExtValue D_hat_gamma_via_theta(const JumpLaw& law, const std::vector<double>& alpha,
                               double gamma, const SearchPolicy& pol) {
  return inf_over_theta(law, alpha, gamma, pol, true);
}

ExtValue eval_D_plus(const JumpLaw& law, const std::vector<double>& alpha,
                     const SearchPolicy& pol) {
  const ExtValue d = eval_D_gamma(law, alpha, lambda_plus(law), pol).value;
  return d - a_gamma_at_zero(law, lambda_minus(law));
}

ExtValue eval_D_minus(const JumpLaw& law, const std::vector<double>& alpha,
                      const SearchPolicy& pol) {
  const ExtValue d = eval_D_gamma(law, alpha, lambda_minus(law), pol).value;
  return d - a_gamma_at_zero(law, lambda_plus(law));
}

ExtValue eval_Lambda(const JumpLaw& law, double theta, const std::vector<double>& alpha) {
  // sup over (lambda, mu) splits at s = lambda + <mu, a> + c1 into the 1-d
  // conjugate of the tau log-mgf at theta and a closed-form Gaussian sup.
  ExtFunction log_mgf =
      ExtFunction::make(1, [fam = law.tau_family, par = law.tau_param](const std::vector<double>& x) {
        return log_tau_mgf(fam, par, x[0]);
      });
  log_mgf.box_hi[0] = tau_mgf_cap(law);
  const ExtValue mstar = legendre(log_mgf, {theta});
  if (mstar.is_pos_inf()) return ExtValue::pos_inf();

  double scale = std::fabs(theta);
  for (double ai : alpha) scale = std::max(scale, std::fabs(ai));
  double gauss = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double ci = alpha[i] - theta * law.zeta_a[i] - law.zeta_b[i];
    const double si = law.zeta_sigma[i];
    if (si > 0.0) gauss += ci * ci / (2.0 * si * si);
    else if (std::fabs(ci) > 1e-9 * (1.0 + scale)) return ExtValue::pos_inf();
  }
  const double shift = -theta * law.v_c1 - std::log(1.0 - law.p_terminate) - law.v_c0;
  return mstar + ExtValue(gauss + shift);
}

ExtValue eval_Lambda_full(const JumpLaw& law, double theta, const std::vector<double>& alpha,
                          const SearchPolicy& pol) {
  ExtFunction f = ExtFunction::make(law.dim + 1, [law](const std::vector<double>& x) {
    return eval_A(law, x[0], std::vector<double>(x.begin() + 1, x.end()));
  });
  std::vector<double> point;
  point.reserve(alpha.size() + 1);
  point.push_back(theta);
  point.insert(point.end(), alpha.begin(), alpha.end());
  return legendre(f, point, pol);
}

ExtValue eval_D_Lambda(const JumpLaw& law, double theta, const std::vector<double>& alpha) {
  auto h = [&](double r) -> double {
    std::vector<double> scaled(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) scaled[i] = alpha[i] / r;
    const ExtValue lam = eval_Lambda(law, theta / r, scaled);
    if (lam.is_pos_inf()) return kInf;
    return r * lam.value();
  };
  std::vector<double> cands;
  for (int i = 0; i <= 80; ++i) cands.push_back(std::pow(10.0, -4.0 + 8.0 * i / 80.0));
  // r values where a degenerate constraint can hold exactly.
  if (law.tau_family == TauFamily::Deterministic && theta > 0.0)
    cands.push_back(theta / law.tau_param);
  if (all_zero_sigma(law)) {
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (law.zeta_b[i] != 0.0) {
        const double r = (alpha[i] - theta * law.zeta_a[i]) / law.zeta_b[i];
        if (r > 0.0) cands.push_back(r);
      }
    }
  }
  double best = kInf, best_r = 1.0;
  for (double r : cands) {
    const double v = h(r);
    if (v < best) {
      best = v;
      best_r = r;
    }
  }
  if (std::isinf(best)) return ExtValue::pos_inf();
  auto h_log = [&](double u) { return h(std::pow(10.0, u)); };
  const double u0 = std::log10(best_r);
  const double ug = golden_min_1d(h_log, u0 - 0.11, u0 + 0.11, 1e-10);
  best = std::min(best, h_log(ug));
  return ExtValue(best);
}

ExtFunction d_lambda_function(const JumpLaw& law) {
  ExtFunction f = ExtFunction::make(law.dim + 1, [law](const std::vector<double>& x) {
    return eval_D_Lambda(law, x[0], std::vector<double>(x.begin() + 1, x.end()));
  });
  std::vector<double> seed;
  seed.push_back(1.0);
  const std::vector<double> d = drift_point(law);
  seed.insert(seed.end(), d.begin(), d.end());
  f.seeds.push_back(seed);
  return f;
}

}  // namespace crpldp
