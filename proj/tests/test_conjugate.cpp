#include "doctest.h"

#include <cmath>

#include "crpldp/conjugate.hpp"
#include "crpldp/corpus.hpp"

using namespace crpldp;

namespace {

// 0.42522515298450947: max_m {m - (e^{m^2/2} - 1)}, frozen from an
// independent high-precision ternary search.
constexpr double kExpQuadConjAt1 = 0.42522515298450947;
constexpr double kExpQuadConjAtHalf = 0.1184483342697924;

}  // namespace

TEST_CASE("quadratic is self-conjugate") {
  const ExtFunction q = corpus_function("quad");
  for (double a : {-2.0, -0.75, 0.0, 0.5, 1.5})
    CHECK(legendre(q, {a}).finite() == doctest::Approx(0.5 * a * a).epsilon(1e-8));
}

TEST_CASE("conjugate of |x| is the indicator of [-1, 1]") {
  const ExtFunction f = corpus_function("abs");
  CHECK(legendre(f, {0.5}).finite() == doctest::Approx(0.0));
  CHECK(legendre(f, {-1.0}).finite() == doctest::Approx(0.0));
  CHECK(legendre(f, {1.25}).is_pos_inf());
  CHECK(legendre(f, {-3.0}).is_pos_inf());
}

TEST_CASE("conjugate of e^{x^2/2} - 1 matches the frozen values") {
  const ExtFunction f = corpus_function("exp_quad");
  CHECK(legendre(f, {1.0}).finite() == doctest::Approx(kExpQuadConjAt1).epsilon(1e-9));
  CHECK(legendre(f, {0.5}).finite() == doctest::Approx(kExpQuadConjAtHalf).epsilon(1e-9));
  CHECK(legendre(f, {0.0}).finite() == doctest::Approx(0.0));
}

TEST_CASE("biconjugate is the closed convex hull") {
  const ExtFunction dw = corpus_function("double_well");
  // min((x-1)^2, (x+1)^2) has hull 0 on [-1, 1].
  CHECK(biconjugate(dw, {0.0}).finite() == doctest::Approx(0.0));
  CHECK(biconjugate(dw, {0.7}).finite() == doctest::Approx(0.0));
  CHECK(biconjugate(dw, {2.0}).finite() == doctest::Approx(1.0).epsilon(1e-6));

  const ExtFunction jump = corpus_function("jump");
  // x^2/2 on (-1,1) with value 3 at the endpoints: the hull takes the
  // limiting value 1/2 on the boundary.
  CHECK(biconjugate(jump, {1.0}).finite() == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(biconjugate(jump, {0.5}).finite() == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(biconjugate(jump, {1.5}).is_pos_inf());
}

TEST_CASE("biconjugate fixes closed convex functions") {
  for (const char* name : {"quad", "abs", "exp_quad"}) {
    const ExtFunction f = corpus_function(name);
    for (double u : {-0.9, -0.25, 0.0, 0.5, 0.8}) {
      const ExtValue orig = f.eval({u});
      const ExtValue bi = biconjugate(f, {u});
      CHECK(bi.finite() == doctest::Approx(orig.finite()).epsilon(1e-6));
    }
  }
}

TEST_CASE("indicator of a point conjugates to a linear function") {
  const ExtFunction f = corpus_function("indicator_zero");
  for (double a : {-2.0, 0.0, 3.0}) CHECK(legendre(f, {a}).finite() == doctest::Approx(0.0));
  CHECK(biconjugate(f, {0.0}).finite() == doctest::Approx(0.0));
  CHECK(biconjugate(f, {0.5}).is_pos_inf());
}

TEST_CASE("Fenchel-Young holds on a grid") {
  for (const auto& name : corpus_names()) {
    const ExtFunction f = corpus_function(name);
    ExtFunction conj = memoized(ExtFunction::make(1, [&f](const std::vector<double>& y) {
      return legendre(f, y);
    }));
    for (double x = -1.5; x <= 1.5; x += 0.25) {
      const ExtValue fx = f.eval({x});
      if (!fx.is_finite()) continue;
      for (double y = -1.5; y <= 1.5; y += 0.25) {
        const ExtValue cy = conj.eval({y});
        if (!cy.is_finite()) continue;
        CHECK(fx.finite() + cy.finite() >= x * y - 1e-9);
      }
    }
  }
}

TEST_CASE("conjugates are convex along the grid") {
  for (const auto& name : corpus_names()) {
    const ExtFunction f = corpus_function(name);
    std::vector<double> vals;
    for (double y = -2.0; y <= 2.0; y += 0.1) {
      const ExtValue c = legendre(f, {y});
      vals.push_back(c.is_pos_inf() ? std::numeric_limits<double>::infinity() : c.finite());
    }
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) {
      if (!std::isfinite(vals[i - 1]) || !std::isfinite(vals[i + 1])) continue;
      CHECK(vals[i] <= 0.5 * (vals[i - 1] + vals[i + 1]) + 1e-7);
    }
  }
}

TEST_CASE("infimal convolution") {
  const ExtFunction q = corpus_function("quad");
  // quad * quad = x^2/4.
  CHECK(inf_convolution(q, q, {1.0}).finite() == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(inf_convolution(q, q, {-2.0}).finite() == doctest::Approx(1.0).epsilon(1e-6));
  // The indicator of {0} is the identity element.
  const ExtFunction id = corpus_function("indicator_zero");
  for (double u : {-0.5, 0.0, 1.25})
    CHECK(inf_convolution(q, id, {u}).finite() == doctest::Approx(0.5 * u * u).epsilon(1e-6));
  // (f * g)^conj = f^conj + g^conj, spot-checked at one point.
  const ExtFunction sum = ExtFunction::make(1, [&q](const std::vector<double>& u) {
    return inf_convolution(q, q, u);
  });
  // (quad * quad)(x) = x^2/4, whose conjugate is y^2.
  CHECK(legendre(sum, {0.5}).finite() == doctest::Approx(0.25).epsilon(1e-5));
}

TEST_CASE("linear growth is certified as unbounded") {
  const ExtFunction f = corpus_function("abs");
  // conj(1.02) requires following slope-0.02 growth through many doublings.
  CHECK(legendre(f, {1.02}).is_pos_inf());
  const ExtFunction q = corpus_function("quad");
  SupResult r = sup_linear_minus(q, {3.0});
  CHECK(r.status == SolveStatus::Converged);
  REQUIRE(r.argmax.size() == 1);
  CHECK(r.argmax[0] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(r.value.finite() == doctest::Approx(4.5).epsilon(1e-8));
}

TEST_CASE("memoized wrapper returns identical values") {
  int calls = 0;
  ExtFunction f = ExtFunction::make(1, [&calls](const std::vector<double>& x) {
    ++calls;
    return x[0] > 1.0 ? ExtValue::pos_inf() : ExtValue(x[0] * x[0]);
  });
  ExtFunction m = memoized(std::move(f));
  CHECK(m.eval({0.5}).finite() == doctest::Approx(0.25));
  CHECK(m.eval({0.5}).finite() == doctest::Approx(0.25));
  CHECK(m.eval({2.0}).is_pos_inf());
  CHECK(m.eval({2.0}).is_pos_inf());
  CHECK(calls == 2);
}

TEST_CASE("golden section helpers") {
  const double x = golden_min_1d([](double t) { return (t - 0.3) * (t - 0.3); }, -4, 4, 1e-10);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-7));
  const double y = golden_max_1d([](double t) { return 1.0 - std::abs(t + 1.0); }, -4, 4, 1e-10);
  CHECK(y == doctest::Approx(-1.0).epsilon(1e-7));
}
