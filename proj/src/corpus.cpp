#include "crpldp/corpus.hpp"

#include <cmath>
#include <stdexcept>

namespace crpldp {

std::vector<std::string> corpus_names() {
  return {"quad", "abs", "exp_quad", "double_well", "indicator_zero", "jump"};
}

ExtFunction corpus_function(const std::string& name) {
  if (name == "quad") {
    return ExtFunction::make(1, [](const std::vector<double>& x) {
      return ExtValue(0.5 * x[0] * x[0]);
    });
  }
  if (name == "abs") {
    return ExtFunction::make(1, [](const std::vector<double>& x) {
      return ExtValue(std::fabs(x[0]));
    });
  }
  if (name == "exp_quad") {
    return ExtFunction::make(1, [](const std::vector<double>& x) {
      return ExtValue(std::exp(0.5 * x[0] * x[0]) - 1.0);
    });
  }
  if (name == "double_well") {
    // Nonconvex; its closed convex hull is 0 on [-1, 1].
    return ExtFunction::make(1, [](const std::vector<double>& x) {
      const double a = (x[0] + 1.0) * (x[0] + 1.0);
      const double b = (x[0] - 1.0) * (x[0] - 1.0);
      return ExtValue(std::min(a, b));
    });
  }
  if (name == "indicator_zero") {
    ExtFunction f = ExtFunction::make(1, [](const std::vector<double>& x) {
      return x[0] == 0.0 ? ExtValue(0.0) : ExtValue::pos_inf();
    });
    f.box_lo[0] = 0.0;
    f.box_hi[0] = 0.0;
    f.seeds.push_back({0.0});
    return f;
  }
  if (name == "jump") {
    // Quadratic inside (-1, 1) with a removable jump to 3 at the domain
    // boundary; the closed hull takes the lower limit 0.5 there.
    ExtFunction f = ExtFunction::make(1, [](const std::vector<double>& x) {
      const double a = std::fabs(x[0]);
      if (a < 1.0) return ExtValue(0.5 * x[0] * x[0]);
      if (a == 1.0) return ExtValue(3.0);
      return ExtValue::pos_inf();
    });
    f.box_lo[0] = -1.0;
    f.box_hi[0] = 1.0;
    return f;
  }
  throw std::invalid_argument("unknown corpus function: " + name);
}

}  // namespace crpldp
