#include "doctest.h"

#include <cmath>

#include "crpldp/rate.hpp"

using namespace crpldp;

namespace {

const double kLn2 = std::log(2.0);
// sup_m {m - (e^{m^2/2} - 1)}, frozen from an independent ternary search.
constexpr double kGaussD1 = 0.42522515298450947;

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

TEST_CASE("lambda_sup solves A(lambda, mu) = 0") {
  // m1: A = ln(1/2) + lambda + mu, so lambda_sup(mu) = ln 2 - mu.
  CHECK(lambda_sup(m1(), {0.0}) == doctest::Approx(kLn2).epsilon(1e-10));
  CHECK(lambda_sup(m1(), {0.5}) == doctest::Approx(kLn2 - 0.5).epsilon(1e-9));
  // m3: A(lambda, 0) = -ln(1 - lambda), root at 0.
  CHECK(lambda_sup(m3(), {0.0}) == doctest::Approx(0.0));
}

TEST_CASE("A(mu) matches closed forms") {
  CHECK(A_of_mu(m1(), {0.25}).finite() == doctest::Approx(0.25 - kLn2).epsilon(1e-9));
  CHECK(A_of_mu(m2(), {-0.5}).finite() == doctest::Approx(-0.5).epsilon(1e-9));
  // m3: lambda_sup(mu) = 1 - e^{mu^2/2}, so A(mu) = e^{mu^2/2} - 1.
  CHECK(A_of_mu(m3(), {1.0}).finite() == doctest::Approx(std::exp(0.5) - 1.0).epsilon(1e-9));
  CHECK(A_gamma(m3(), {1.0}, ExtValue(0.5)).finite() ==
        doctest::Approx(std::exp(0.5) - 1.0).epsilon(1e-9));
  CHECK(A_gamma(m1(), {0.0}, ExtValue(0.25)).finite() == doctest::Approx(-0.25));
  CHECK(a_gamma_at_zero(m1(), ExtValue::pos_inf()).finite() ==
        doctest::Approx(-kLn2).epsilon(1e-9));
}

TEST_CASE("feasible set membership") {
  FeasibleSet fs{nullptr, ExtValue(0.5)};
  const JumpLaw law = m1();
  fs.law = &law;
  CHECK(fs.contains(0.0, {0.0}));             // A = ln(1/2) < 0
  CHECK(!fs.contains(1.0, {0.0}));            // A = 1 - ln 2 > 0
  CHECK(!fs.contains(0.6, {-1.0}));           // lambda above gamma
}

TEST_CASE("uncapped rate function on point-mass drift laws") {
  // m1: dom D = {1}, D(1) = ln 2 (drift seed finds the point).
  CHECK(eval_D(m1(), {1.0}).value.finite() == doctest::Approx(kLn2).epsilon(1e-8));
  CHECK(eval_D(m1(), {0.5}).value.is_pos_inf());
  // m2: dom D = {1}, D(1) = 0.
  CHECK(eval_D(m2(), {1.0}).value.finite() == doctest::Approx(0.0));
  CHECK(eval_D(m2(), {1.5}).value.is_pos_inf());
}

TEST_CASE("uncapped rate function with Gaussian jumps") {
  const RateEvaluation r = eval_D(m3(), {1.0});
  CHECK(r.value.finite() == doctest::Approx(kGaussD1).epsilon(1e-7));
  CHECK(r.has_argmax);
  CHECK(eval_D(m3(), {0.0}).value.finite() == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("capped rate function") {
  // m1 with gamma = 0: D_0(alpha) = alpha ln 2 on [0, 1], +inf outside.
  for (double a : {0.0, 0.25, 1.0})
    CHECK(eval_D_gamma(m1(), {a}, ExtValue(0.0)).value.finite() ==
          doctest::Approx(a * kLn2).epsilon(1e-8));
  CHECK(eval_D_gamma(m1(), {1.5}, ExtValue(0.0)).value.is_pos_inf());
  CHECK(eval_D_gamma(m1(), {-0.25}, ExtValue(0.0)).value.is_pos_inf());
  // Inactive cap leaves D unchanged (A >= 0 > -1 everywhere for m3).
  CHECK(eval_D_gamma(m3(), {1.0}, ExtValue(1.0)).value.finite() ==
        doctest::Approx(kGaussD1).epsilon(1e-7));
  // Binding cap at the origin: D_gamma(0) = gamma when gamma < D(0).
  const JumpLaw shifted =
      JumpLaw::make(1, 0.5, TauFamily::Deterministic, 1.0, {1.0}, {-2.0}, {0.0}, 0.0, 0.0);
  CHECK(eval_D_gamma(shifted, {0.0}, ExtValue(0.25)).value.finite() ==
        doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("positive homogeneity of the two-argument rate") {
  for (double th : {0.25, 0.5, 2.0}) {
    CHECK(eval_D_theta(m3(), th, {th * 1.0}).finite() ==
          doctest::Approx(th * kGaussD1).epsilon(1e-6));
  }
  CHECK(eval_D_theta(m3(), 0.0, {0.0}).finite() == doctest::Approx(0.0));
  CHECK(eval_D_theta(m3(), 0.0, {0.5}).is_pos_inf());
  CHECK_THROWS(eval_D_theta(m3(), -0.5, {0.0}));
}

TEST_CASE("theta route agrees with the direct cap") {
  for (double gamma : {0.0, 0.5}) {
    for (double a : {0.0, 0.5, 1.0}) {
      const ExtValue via = D_gamma_via_theta(m1(), {a}, gamma);
      const ExtValue direct = eval_D_gamma(m1(), {a}, ExtValue(gamma)).value;
      if (direct.is_pos_inf()) {
        CHECK(via.is_pos_inf());
      } else {
        CHECK(via.finite() == doctest::Approx(direct.finite()).epsilon(1e-7));
      }
    }
  }
  // The open-interval route can only be larger.
  const ExtValue open_v = D_hat_gamma_via_theta(m3(), {0.5}, 0.5);
  const ExtValue closed_v = D_gamma_via_theta(m3(), {0.5}, 0.5);
  CHECK(open_v >= closed_v);
}

TEST_CASE("tail-corrected rates") {
  // m3: lambda_+- = 1, A_1 at zero vanishes, cap inactive: D_+- = D.
  CHECK(eval_D_plus(m3(), {1.0}).finite() == doctest::Approx(kGaussD1).epsilon(1e-7));
  CHECK(eval_D_minus(m3(), {1.0}).finite() == doctest::Approx(kGaussD1).epsilon(1e-7));
  // m1: lambda_+- = 0 (terminating), D_+- = D_0.
  CHECK(eval_D_plus(m1(), {0.5}).finite() == doctest::Approx(0.5 * kLn2).epsilon(1e-8));
}

TEST_CASE("full cumulant conjugate in (theta, alpha)") {
  // m3: Lambda(theta, alpha) = theta - 1 - ln theta + alpha^2 / 2.
  auto closed = [](double th, double a) { return th - 1.0 - std::log(th) + 0.5 * a * a; };
  for (double th : {0.5, 1.0, 2.0})
    for (double a : {0.0, 1.0})
      CHECK(eval_Lambda(m3(), th, {a}).finite() == doctest::Approx(closed(th, a)).epsilon(1e-9));
  // m1: finite only on the ray theta = alpha, value theta ln 2 ... at (1,1): ln 2.
  CHECK(eval_Lambda(m1(), 1.0, {1.0}).finite() == doctest::Approx(kLn2).epsilon(1e-9));
  CHECK(eval_Lambda(m1(), 1.0, {0.5}).is_pos_inf());

  // Generic engine cross-check of the reduced evaluation.
  const JumpLaw geo =
      JumpLaw::make(1, 0.1, TauFamily::Geometric, 0.5, {1.0}, {0.5}, {0.3}, -0.1, 0.2);
  for (double th : {1.2, 1.5})
    for (double a : {1.0, 1.6}) {
      const ExtValue fast = eval_Lambda(geo, th, {a});
      const ExtValue full = eval_Lambda_full(geo, th, {a});
      CHECK(fast.finite() == doctest::Approx(full.finite()).epsilon(1e-5));
    }
}

TEST_CASE("perspective infimum of Lambda") {
  // Degree-1 homogeneity and domination by the r = 1 candidate.
  const ExtValue v1 = eval_D_Lambda(m3(), 1.0, {1.0});
  const ExtValue v2 = eval_D_Lambda(m3(), 2.0, {2.0});
  CHECK(v2.finite() == doctest::Approx(2.0 * v1.finite()).epsilon(1e-6));
  CHECK(v1.finite() <= eval_Lambda(m3(), 1.0, {1.0}).finite() + 1e-9);
  // m1: the deterministic candidate r = theta/c keeps the ray finite.
  CHECK(eval_D_Lambda(m1(), 1.0, {1.0}).finite() == doctest::Approx(kLn2).epsilon(1e-8));
  CHECK(eval_D_Lambda(m1(), 1.0, {0.5}).is_pos_inf());
}
