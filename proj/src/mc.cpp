#include "crpldp/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace crpldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Online log-sum-exp accumulator.
struct LogSum {
  double max_term = -kInf;
  double scaled_sum = 0.0;

  void add(double x) {
    if (std::isinf(x) && x < 0.0) return;
    if (x <= max_term) {
      scaled_sum += std::exp(x - max_term);
    } else {
      scaled_sum = scaled_sum * std::exp(max_term - x) + 1.0;
      max_term = x;
    }
  }
  double log_total() const {
    if (std::isinf(max_term)) return -kInf;
    return max_term + std::log(scaled_sum);
  }
};

double log_sum_exp(const std::vector<double>& xs, double scale = 1.0) {
  LogSum acc;
  for (double x : xs) acc.add(scale * x);
  return acc.log_total();
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("CRP_LDP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return static_cast<int>(hw);
}

// Runs fn(j) for j in [0, n) across workers. Each replicate writes only its
// own slot, so results are identical for any thread count; reductions over
// the filled vectors happen sequentially afterwards.
template <typename Fn>
void parallel_replicates(long long n, Fn&& fn) {
  const int workers = std::min<long long>(worker_count(), std::max<long long>(n, 1));
  if (workers <= 1) {
    for (long long j = 0; j < n; ++j) fn(j);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const long long lo = n * w / workers;
    const long long hi = n * (w + 1) / workers;
    pool.emplace_back([lo, hi, &fn] {
      for (long long j = lo; j < hi; ++j) fn(j);
    });
  }
  for (auto& th : pool) th.join();
}

struct LogStats {
  ExtValue log_mean = ExtValue::neg_inf();
  double log_sum = -kInf;
  double half_width = 0.0;
  long long hits = 0;
};

LogStats reduce_log_weights(const std::vector<double>& w) {
  LogStats st;
  const auto n = static_cast<double>(w.size());
  st.log_sum = log_sum_exp(w);
  for (double x : w)
    if (!(std::isinf(x) && x < 0.0)) ++st.hits;
  if (std::isinf(st.log_sum)) return st;
  st.log_mean = ExtValue(st.log_sum - std::log(n));
  if (w.size() >= 2) {
    const double log_s2 = log_sum_exp(w, 2.0);
    // Delta method: sd of the log estimate ~ relative standard error.
    const double rel_var = std::exp(log_s2 - 2.0 * st.log_sum + std::log(n)) - 1.0;
    st.half_width = 1.96 * std::sqrt(std::max(0.0, rel_var) / (n - 1.0));
  }
  return st;
}

// Original overshoot tail P(tau > u) including the termination mass.
double overshoot_tail(const JumpLaw& law, double u) {
  return law.p_terminate +
         (1.0 - law.p_terminate) * tau_survival(law.tau_family, law.tau_param, u);
}

}  // namespace

Region Region::box(std::vector<double> lo, std::vector<double> hi, Closure closure) {
  Region r;
  r.shape = RegionShape::Box;
  r.closure = closure;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  return r;
}

Region Region::ball(std::vector<double> center, double radius, Closure closure) {
  Region r;
  r.shape = RegionShape::Ball;
  r.closure = closure;
  r.center = std::move(center);
  r.radius = radius;
  return r;
}

Region Region::half_space(std::vector<double> normal, double offset, Closure closure) {
  Region r;
  r.shape = RegionShape::HalfSpace;
  r.closure = closure;
  r.normal = std::move(normal);
  r.offset = offset;
  return r;
}

Region Region::whole_space(int dim) {
  return box(std::vector<double>(static_cast<std::size_t>(dim), -kInf),
             std::vector<double>(static_cast<std::size_t>(dim), kInf), Closure::Open);
}

int Region::dim() const {
  switch (shape) {
    case RegionShape::Box: return static_cast<int>(lo.size());
    case RegionShape::Ball: return static_cast<int>(center.size());
    case RegionShape::HalfSpace: return static_cast<int>(normal.size());
  }
  return 0;
}

bool Region::contains(const std::vector<double>& x) const {
  const bool open = closure == Closure::Open;
  switch (shape) {
    case RegionShape::Box:
      for (std::size_t i = 0; i < lo.size(); ++i) {
        if (open ? !(lo[i] < x[i] && x[i] < hi[i]) : !(lo[i] <= x[i] && x[i] <= hi[i]))
          return false;
      }
      return true;
    case RegionShape::Ball: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < center.size(); ++i) {
        const double di = x[i] - center[i];
        d2 += di * di;
      }
      const double r2 = radius * radius;
      return open ? d2 < r2 : d2 <= r2;
    }
    case RegionShape::HalfSpace: {
      double s = 0.0;
      for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * x[i];
      return open ? s < offset : s <= offset;
    }
  }
  return false;
}

PathResult simulate_path(const JumpLaw& law, double t, RngStream& stream) {
  PathResult out;
  out.z_final.assign(static_cast<std::size_t>(law.dim), 0.0);
  while (true) {
    const StepSample s = sample_step(law, stream);
    if (s.terminated() || out.t_last + s.tau > t) break;
    out.t_last += s.tau;
    for (std::size_t i = 0; i < out.z_final.size(); ++i) out.z_final[i] += s.zeta[i];
    out.v_sum += s.v;
    ++out.n_jumps;
  }
  return out;
}

namespace {

// Per-replicate naive log weights for numerator (region hit) and
// denominator (all paths).
void naive_weights(const JumpLaw& law, double t, const Region& B, long long n_rep,
                   std::uint64_t seed, std::vector<double>* num, std::vector<double>* den) {
  num->assign(static_cast<std::size_t>(n_rep), -kInf);
  den->assign(static_cast<std::size_t>(n_rep), -kInf);
  parallel_replicates(n_rep, [&](long long j) {
    RngStream stream(seed, static_cast<std::uint64_t>(j));
    const PathResult p = simulate_path(law, t, stream);
    std::vector<double> scaled(p.z_final.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = p.z_final[i] / t;
    (*den)[static_cast<std::size_t>(j)] = p.v_sum;
    if (B.contains(scaled)) (*num)[static_cast<std::size_t>(j)] = p.v_sum;
  });
}

}  // namespace

PathEstimate estimate_unnormalized(const JumpLaw& law, double t, const Region& B,
                                   long long n_rep, std::uint64_t seed) {
  std::vector<double> num, den;
  naive_weights(law, t, B, n_rep, seed, &num, &den);
  const LogStats st = reduce_log_weights(num);
  PathEstimate out;
  out.t = t;
  out.log_value = st.log_mean;
  out.replicates = n_rep;
  out.half_width_log = st.half_width;
  out.seed = seed;
  out.method = McMethod::Naive;
  out.hits = st.hits;
  return out;
}

PathEstimate estimate_gibbs(const JumpLaw& law, double t, const Region& B,
                            long long n_rep, std::uint64_t seed) {
  std::vector<double> num, den;
  naive_weights(law, t, B, n_rep, seed, &num, &den);
  const LogStats sn = reduce_log_weights(num);
  const LogStats sd = reduce_log_weights(den);
  PathEstimate out;
  out.t = t;
  out.replicates = n_rep;
  out.seed = seed;
  out.method = McMethod::Naive;
  out.hits = sn.hits;
  out.half_width_log = sn.half_width + sd.half_width;
  if (sn.log_mean.is_neg_inf()) out.log_value = ExtValue::neg_inf();
  else out.log_value = ExtValue(sn.log_sum - sd.log_sum);
  return out;
}

double choose_lambda_star(const JumpLaw& law) {
  const std::vector<double> zeros(static_cast<std::size_t>(law.dim), 0.0);
  const ExtValue a0 = eval_A(law, 0.0, zeros);
  if (a0.is_pos_inf() || a0.value() <= 0.0) return 1.0;
  // A(-lambda, 0) decreases to -inf in lambda; bisect its positive root.
  auto f = [&](double lam) { return eval_A(law, -lam, zeros); };
  double hi = 1.0;
  while (f(hi).is_pos_inf() || f(hi).value() > 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const ExtValue v = f(mid);
    if (v.is_pos_inf() || v.value() > 0.0) lo = mid;
    else hi = mid;
  }
  return hi;
}

TiltedSampler make_tilted(const JumpLaw& law, double lambda_star) {
  if (!(lambda_star > 0.0)) throw InvalidTilt("make_tilted: lambda_star must be positive");
  const std::vector<double> zeros(static_cast<std::size_t>(law.dim), 0.0);
  const ExtValue c = eval_A(law, -lambda_star, zeros);
  if (c.is_pos_inf() || c.value() > 0.0)
    throw InvalidTilt("make_tilted: requires A(-lambda_star, 0) <= 0");

  // Tilting by e^{s* tau}, s* = c1 - lambda*, maps each family to itself.
  const double s_star = law.v_c1 - lambda_star;
  double param = law.tau_param;
  switch (law.tau_family) {
    case TauFamily::Deterministic: break;
    case TauFamily::Exponential: param = law.tau_param - s_star; break;
    case TauFamily::Geometric: param = law.tau_param * std::exp(s_star); break;
  }
  TiltedSampler s;
  s.law = law;
  s.proposal = JumpLaw::make(law.dim, 0.0, law.tau_family, param, law.zeta_a, law.zeta_b,
                             law.zeta_sigma, law.v_c0, law.v_c1);
  s.lambda_star = lambda_star;
  s.log_mass = c.value();
  return s;
}

PathEstimate estimate_unnormalized_tilted(const TiltedSampler& sampler, double t,
                                          const Region& B, long long n_rep,
                                          std::uint64_t seed) {
  const JumpLaw& law = sampler.law;
  const JumpLaw& prop = sampler.proposal;
  const double C = sampler.log_mass;
  const double ls = sampler.lambda_star;
  std::vector<double> w(static_cast<std::size_t>(n_rep), -kInf);
  parallel_replicates(n_rep, [&](long long j) {
    RngStream stream(seed, static_cast<std::uint64_t>(j));
    double T = 0.0;
    std::vector<double> z(static_cast<std::size_t>(law.dim), 0.0);
    std::vector<double> scaled(z.size());
    LogSum acc;
    long long n = 0;
    while (true) {
      for (std::size_t i = 0; i < z.size(); ++i) scaled[i] = z[i] / t;
      if (B.contains(scaled)) {
        const double tail = overshoot_tail(law, t - T);
        if (tail > 0.0)
          acc.add(static_cast<double>(n) * C + ls * T + std::log(tail));
      }
      const StepSample step = sample_step(prop, stream);
      if (T + step.tau > t) break;
      T += step.tau;
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += step.zeta[i];
      ++n;
    }
    w[static_cast<std::size_t>(j)] = acc.log_total();
  });
  const LogStats st = reduce_log_weights(w);
  PathEstimate out;
  out.t = t;
  out.log_value = st.log_mean;
  out.replicates = n_rep;
  out.half_width_log = st.half_width;
  out.seed = seed;
  out.method = McMethod::Tilted;
  out.lambda_star = ls;
  out.hits = st.hits;
  return out;
}

EmpiricalRate empirical_rate(const JumpLaw& law, const Region& B,
                             const std::vector<double>& t_grid, long long n_rep,
                             std::uint64_t seed, McMethod method, double lambda_star) {
  if (t_grid.size() < 4)
    throw std::invalid_argument("empirical_rate: need at least 4 horizon points");
  EmpiricalRate out;
  TiltedSampler sampler;
  if (method == McMethod::Tilted)
    sampler = make_tilted(law, lambda_star > 0.0 ? lambda_star : choose_lambda_star(law));
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid[k];
    // Per-horizon seed offset keeps grid points independent.
    const std::uint64_t s = seed + 0x100000000ULL * k;
    PathEstimate e = method == McMethod::Tilted
                         ? estimate_unnormalized_tilted(sampler, t, B, n_rep, s)
                         : estimate_unnormalized(law, t, B, n_rep, s);
    if (e.log_value.is_neg_inf())
      throw RateUndefined("empirical_rate: no hits at t = " + std::to_string(t));
    out.per_t.push_back(std::move(e));
  }
  const auto m = static_cast<double>(t_grid.size());
  double tbar = 0.0, ybar = 0.0;
  for (const auto& e : out.per_t) {
    tbar += e.t / m;
    ybar += e.log_value.value() / m;
  }
  double sxx = 0.0, sxy = 0.0;
  for (const auto& e : out.per_t) {
    sxx += (e.t - tbar) * (e.t - tbar);
    sxy += (e.t - tbar) * (e.log_value.value() - ybar);
  }
  out.slope = sxy / sxx;
  double ss_res = 0.0;
  for (const auto& e : out.per_t) {
    const double r = e.log_value.value() - ybar - out.slope * (e.t - tbar);
    ss_res += r * r;
  }
  out.stderr_slope = m > 2.0 ? std::sqrt(ss_res / (m - 2.0) / sxx) : 0.0;
  return out;
}

TightnessPair find_tightness_pair(const JumpLaw& law) {
  // Diagonal ladder over lambda_tilde in {1,2,4,...}, gamma in {1,1/2,...};
  // nearest corners first so the reported radius stays small.
  for (int total = 0; total <= 40; ++total) {
    for (int j = 0; j <= total; ++j) {
      const int k = total - j;
      if (j > 20 || k > 20) continue;
      const double lambda_tilde = std::ldexp(1.0, j);
      const double gamma = std::ldexp(1.0, -k);
      const ExtValue log_u = log_cstar_moment(law, lambda_tilde + 1.0, gamma);
      if (log_u.is_pos_inf() || log_u.value() >= 0.0) continue;
      TightnessPair p;
      p.gamma = gamma;
      p.lambda_tilde = lambda_tilde;
      p.u = std::exp(log_u.value());
      return p;
    }
  }
  throw TightnessUnavailable("find_tightness_pair: ladder exhausted");
}

double truncation_radius(double gamma, double lambda_tilde, double N) {
  if (!(gamma > 0.0)) throw std::invalid_argument("truncation_radius: gamma must be positive");
  return (N + lambda_tilde + 1.0) / gamma;
}

}  // namespace crpldp
