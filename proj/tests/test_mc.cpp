#include "doctest.h"

#include <cmath>

#include "crpldp/mc.hpp"

using namespace crpldp;

namespace {

JumpLaw m1() {
  return JumpLaw::make(1, 0.5, TauFamily::Deterministic, 1.0, {1.0}, {0.0}, {0.0}, 0.0, 0.0);
}
JumpLaw m2() {
  return JumpLaw::make(1, 0.0, TauFamily::Exponential, 1.0, {1.0}, {0.0}, {0.0}, 0.0, 0.0);
}
JumpLaw m3() {
  return JumpLaw::make(1, 0.0, TauFamily::Exponential, 1.0, {0.0}, {0.0}, {1.0}, 0.0, 0.0);
}

}  // namespace

TEST_CASE("region membership respects closure") {
  const Region closed = Region::box({0.0}, {1.0}, Closure::Closed);
  const Region open = Region::box({0.0}, {1.0}, Closure::Open);
  CHECK(closed.contains({1.0}));
  CHECK(!open.contains({1.0}));
  CHECK(open.contains({0.5}));
  const Region ball = Region::ball({0.0, 0.0}, 1.0, Closure::Closed);
  CHECK(ball.contains({0.6, 0.8}));
  CHECK(!ball.contains({0.6, 0.81}));
  const Region half = Region::half_space({1.0, -1.0}, 0.0, Closure::Open);
  CHECK(half.contains({0.0, 1.0}));
  CHECK(!half.contains({1.0, 1.0}));
  CHECK(Region::whole_space(3).contains({1e9, -1e9, 0.0}));
}

TEST_CASE("path simulation honors the horizon and termination") {
  RngStream s(5, 0);
  // m1 jumps at integer times; before t = 1 nothing happened.
  const PathResult r0 = simulate_path(m1(), 0.5, s);
  CHECK(r0.n_jumps == 0);
  CHECK(r0.z_final[0] == doctest::Approx(0.0));
  CHECK(r0.v_sum == doctest::Approx(0.0));
  // m2 has zeta = tau, so Z equals the last renewal time.
  for (int i = 0; i < 50; ++i) {
    RngStream si(5, static_cast<std::uint64_t>(i));
    const PathResult r = simulate_path(m2(), 10.0, si);
    CHECK(r.z_final[0] == doctest::Approx(r.t_last));
    CHECK(r.t_last <= 10.0);
  }
}

TEST_CASE("estimates are bit-identical across calls and thread counts") {
  const Region B = Region::box({0.3}, {0.7});
  const PathEstimate a = estimate_unnormalized(m3(), 4.0, B, 5000, 11);
  const PathEstimate b = estimate_unnormalized(m3(), 4.0, B, 5000, 11);
  CHECK(a.log_value.value() == b.log_value.value());
  CHECK(a.half_width_log == b.half_width_log);
  CHECK(a.hits == b.hits);
  const PathEstimate c = estimate_unnormalized(m3(), 4.0, B, 5000, 12);
  CHECK(a.log_value.value() != c.log_value.value());
}

TEST_CASE("whole-space estimate of a driftless functional is exact") {
  // v = 0 and B = R^d make every weight exactly 1.
  const PathEstimate e = estimate_unnormalized(m3(), 5.0, Region::whole_space(1), 2000, 1);
  CHECK(e.log_value.finite() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.half_width_log == doctest::Approx(0.0));
  CHECK(e.hits == 2000);
  // The Gibbs ratio over the whole space is exactly 1.
  const PathEstimate g = estimate_gibbs(m1(), 7.0, Region::whole_space(1), 2000, 1);
  CHECK(g.log_value.finite() == doctest::Approx(0.0));
}

TEST_CASE("estimates are monotone in the region") {
  const PathEstimate small = estimate_unnormalized(m3(), 4.0, Region::box({0.4}, {0.6}), 4000, 3);
  const PathEstimate big = estimate_unnormalized(m3(), 4.0, Region::box({0.0}, {1.0}), 4000, 3);
  CHECK(small.log_value <= big.log_value);
  CHECK(small.hits <= big.hits);
}

TEST_CASE("unreachable region yields -inf, never NaN") {
  const PathEstimate e = estimate_unnormalized(m1(), 5.0, Region::box({3.0}, {4.0}), 1000, 1);
  CHECK(e.log_value.is_neg_inf());
  CHECK(e.hits == 0);
}

TEST_CASE("tilted proposal construction") {
  // A(0,0) = ln(1/2) <= 0 already, so the default tilt is 1.
  CHECK(choose_lambda_star(m1()) == doctest::Approx(1.0));
  const TiltedSampler ts = make_tilted(m1(), 1.0);
  CHECK(ts.proposal.p_terminate == doctest::Approx(0.0));
  CHECK(ts.log_mass == doctest::Approx(std::log(0.5) - 1.0));
  CHECK_THROWS_AS(make_tilted(m1(), 0.0), InvalidTilt);

  // c0 = 1/2 makes A(0,0) > 0; the root of A(-lambda, 0) = 0 is e^{1/2} - 1.
  const JumpLaw hot =
      JumpLaw::make(1, 0.0, TauFamily::Exponential, 1.0, {0.0}, {0.0}, {1.0}, 0.5, 0.0);
  CHECK(choose_lambda_star(hot) == doctest::Approx(std::exp(0.5) - 1.0).epsilon(1e-9));
  const TiltedSampler th = make_tilted(hot, std::exp(0.5) - 1.0);
  CHECK(th.proposal.tau_param == doctest::Approx(std::exp(0.5)).epsilon(1e-9));
  CHECK(th.log_mass == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("tilted estimator reproduces an exactly computable probability") {
  // m1 at t = 3.5, B = [0.8, 0.9]: only nu = 3 hits, value (1/2)^3.
  const TiltedSampler ts = make_tilted(m1(), choose_lambda_star(m1()));
  const Region B = Region::box({0.8}, {0.9});
  const PathEstimate e = estimate_unnormalized_tilted(ts, 3.5, B, 200, 17);
  CHECK(e.log_value.finite() == doctest::Approx(std::log(0.125)).epsilon(1e-12));
  CHECK(e.half_width_log == doctest::Approx(0.0).epsilon(1e-10));
  // Naive agreement at 3 sigma.
  const PathEstimate n = estimate_unnormalized(m1(), 3.5, B, 40000, 23);
  CHECK(std::abs(n.log_value.finite() - std::log(0.125)) <
        3.0 / 1.96 * n.half_width_log + 1e-12);
}

TEST_CASE("empirical rate recovers the decay slope") {
  const Region B = Region::box({0.45}, {0.55});
  // Horizons where 0.45 t and 0.55 t sit on the renewal lattice, so the
  // log estimates are exactly linear in t.
  // The estimator is exact here; the only deviation from -0.45 ln 2 is the
  // slowly growing count of lattice points inside [0.45 t, 0.55 t].
  const EmpiricalRate r = empirical_rate(m1(), B, {40, 80, 120, 160}, 2000, 9, McMethod::Tilted);
  CHECK(r.slope == doctest::Approx(-0.45 * std::log(2.0)).epsilon(2e-3));
  CHECK(r.stderr_slope < 1e-3);
  CHECK(r.per_t.size() == 4);
  CHECK_THROWS_AS(
      empirical_rate(m1(), Region::box({3.0}, {4.0}), {5, 10, 15, 20}, 100, 1, McMethod::Naive),
      RateUndefined);
}

TEST_CASE("tightness pair and truncation radius") {
  const TightnessPair tp = find_tightness_pair(m1());
  CHECK(tp.u < 1.0);
  CHECK(tp.u > 0.0);
  CHECK(log_cstar_moment(m1(), tp.lambda_tilde + 1.0, tp.gamma).finite() ==
        doctest::Approx(std::log(tp.u)).epsilon(1e-9));
  CHECK(truncation_radius(1.0, 1.0, 1.0) == doctest::Approx(3.0));
  CHECK(truncation_radius(0.5, 1.0, 10.5) == doctest::Approx(25.0));
}
