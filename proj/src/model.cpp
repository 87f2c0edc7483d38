#include "crpldp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace crpldp {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// log(sum exp(x_i)) over extended values; any +inf term dominates.
ExtValue log_sum_exp(const std::vector<ExtValue>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& x : xs) {
    if (x.is_pos_inf()) return ExtValue::pos_inf();
    m = std::max(m, x.value());
  }
  if (std::isinf(m)) return ExtValue::neg_inf();
  double s = 0.0;
  for (const auto& x : xs) s += std::exp(x.value() - m);
  return ExtValue(m + std::log(s));
}

}  // namespace

JumpLaw JumpLaw::make(int dim, double p_terminate, TauFamily family, double param,
                      std::vector<double> a, std::vector<double> b,
                      std::vector<double> sigma, double c0, double c1) {
  if (dim < 1) throw ConfigError("dim must be a positive integer");
  if (!(p_terminate >= 0.0 && p_terminate < 1.0))
    throw ConfigError("p_terminate must lie in [0, 1)");
  if (!(param > 0.0)) throw ConfigError("tau family parameter must be positive");
  if (family == TauFamily::Geometric && !(param < 1.0))
    throw ConfigError("geometric parameter q must lie in (0, 1)");
  auto fix = [&](std::vector<double>& v, const char* name) {
    if (v.empty()) v.assign(static_cast<std::size_t>(dim), 0.0);
    if (static_cast<int>(v.size()) != dim)
      throw ConfigError(std::string("zeta.") + name + " must have length dim");
  };
  fix(a, "a");
  fix(b, "b");
  fix(sigma, "sigma");
  for (double s : sigma)
    if (s < 0.0) throw ConfigError("zeta.sigma entries must be nonnegative");
  JumpLaw law;
  law.dim = dim;
  law.p_terminate = p_terminate;
  law.tau_family = family;
  law.tau_param = param;
  law.zeta_a = std::move(a);
  law.zeta_b = std::move(b);
  law.zeta_sigma = std::move(sigma);
  law.v_c0 = c0;
  law.v_c1 = c1;
  return law;
}

namespace {

TauFamily family_from_string(const std::string& s) {
  if (s == "det") return TauFamily::Deterministic;
  if (s == "exp") return TauFamily::Exponential;
  if (s == "geom") return TauFamily::Geometric;
  throw ConfigError("tau.family must be one of \"det\", \"exp\", \"geom\"");
}

std::string family_to_string(TauFamily f) {
  switch (f) {
    case TauFamily::Deterministic: return "det";
    case TauFamily::Exponential: return "exp";
    case TauFamily::Geometric: return "geom";
  }
  return "det";
}

}  // namespace

JumpLaw JumpLaw::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    const double p = j.at("p_terminate").get<double>();
    const auto& jt = j.at("tau");
    const TauFamily fam = family_from_string(jt.at("family").get<std::string>());
    const double param = jt.at("param").get<double>();
    std::vector<double> a, b, sigma;
    if (j.contains("zeta")) {
      const auto& jz = j.at("zeta");
      if (jz.contains("a")) a = jz.at("a").get<std::vector<double>>();
      if (jz.contains("b")) b = jz.at("b").get<std::vector<double>>();
      if (jz.contains("sigma")) sigma = jz.at("sigma").get<std::vector<double>>();
    }
    double c0 = 0.0, c1 = 0.0;
    if (j.contains("v")) {
      c0 = j.at("v").value("c0", 0.0);
      c1 = j.at("v").value("c1", 0.0);
    }
    return make(dim, p, fam, param, std::move(a), std::move(b), std::move(sigma), c0, c1);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
}

std::string JumpLaw::to_json() const {
  nlohmann::json j;
  j["dim"] = dim;
  j["p_terminate"] = p_terminate;
  j["tau"] = {{"family", family_to_string(tau_family)}, {"param", tau_param}};
  j["zeta"] = {{"a", zeta_a}, {"b", zeta_b}, {"sigma", zeta_sigma}};
  j["v"] = {{"c0", v_c0}, {"c1", v_c1}};
  return j.dump();
}

double JumpLaw::mean_tau_finite() const {
  switch (tau_family) {
    case TauFamily::Deterministic: return tau_param;
    case TauFamily::Exponential: return 1.0 / tau_param;
    case TauFamily::Geometric: return 1.0 / (1.0 - tau_param);
  }
  return tau_param;
}

ExtValue log_tau_mgf(TauFamily family, double param, double s) {
  switch (family) {
    case TauFamily::Deterministic:
      return ExtValue(s * param);
    case TauFamily::Exponential:
      if (s >= param) return ExtValue::pos_inf();
      return ExtValue(std::log(param) - std::log(param - s));
    case TauFamily::Geometric: {
      // tau on {1,2,...}, P(tau = k) = (1-q) q^{k-1}
      const double q = param;
      if (s >= -std::log(q)) return ExtValue::pos_inf();
      return ExtValue(std::log1p(-q) + s - std::log1p(-q * std::exp(s)));
    }
  }
  return ExtValue::pos_inf();
}

double tau_survival(TauFamily family, double param, double u) {
  if (u < 0.0) return 1.0;
  switch (family) {
    case TauFamily::Deterministic:
      return u < param ? 1.0 : 0.0;
    case TauFamily::Exponential:
      return std::exp(-param * u);
    case TauFamily::Geometric:
      return std::pow(param, std::floor(u));
  }
  return 0.0;
}

ExtValue eval_A(const JumpLaw& law, double lambda, const std::vector<double>& mu) {
  if (static_cast<int>(mu.size()) != law.dim)
    throw std::invalid_argument("eval_A: mu has wrong dimension");
  double k = std::log1p(-law.p_terminate) + dot(mu, law.zeta_b) + law.v_c0;
  for (int i = 0; i < law.dim; ++i)
    k += 0.5 * mu[i] * mu[i] * law.zeta_sigma[i] * law.zeta_sigma[i];
  const double s = lambda + dot(mu, law.zeta_a) + law.v_c1;
  const ExtValue m = log_tau_mgf(law.tau_family, law.tau_param, s);
  if (m.is_pos_inf()) return ExtValue::pos_inf();
  return ExtValue(k + m.value());
}

ExtValue lambda_plus(const JumpLaw& law) {
  if (law.p_terminate > 0.0) return ExtValue(0.0);
  switch (law.tau_family) {
    case TauFamily::Deterministic: return ExtValue::pos_inf();
    case TauFamily::Exponential: return ExtValue(law.tau_param);
    case TauFamily::Geometric: return ExtValue(-std::log(law.tau_param));
  }
  return ExtValue(0.0);
}

ExtValue lambda_minus(const JumpLaw& law) {
  // All built-in families have lambda_+ = lambda_-.
  return lambda_plus(law);
}

namespace {

ExtValue lambda_star(const JumpLaw& law) {
  if (law.p_terminate > 0.0) return ExtValue(0.0);
  ExtValue raw = lambda_plus(law);
  if (raw.is_pos_inf()) return raw;
  return ExtValue(std::max(0.0, raw.value() - law.v_c1));
}

}  // namespace

ExtValue lambda_star_plus(const JumpLaw& law) { return lambda_star(law); }
ExtValue lambda_star_minus(const JumpLaw& law) { return lambda_star(law); }

namespace {

// |zeta| is exactly zeta when d = 1, no Gaussian part and a,b >= 0
// (tau > 0 a.s. makes zeta = a tau + b >= 0).
bool zeta_is_nonnegative_scalar(const JumpLaw& law) {
  return law.dim == 1 && law.zeta_sigma[0] == 0.0 && law.zeta_a[0] >= 0.0 &&
         law.zeta_b[0] >= 0.0;
}

}  // namespace

ExtValue log_cstar_moment(const JumpLaw& law, double lambda, double eps) {
  if (zeta_is_nonnegative_scalar(law)) return eval_A(law, -lambda, {eps});
  std::vector<ExtValue> terms;
  terms.reserve(2 * static_cast<std::size_t>(law.dim));
  for (int i = 0; i < law.dim; ++i) {
    std::vector<double> mu(static_cast<std::size_t>(law.dim), 0.0);
    mu[static_cast<std::size_t>(i)] = eps;
    terms.push_back(eval_A(law, -lambda, mu));
    mu[static_cast<std::size_t>(i)] = -eps;
    terms.push_back(eval_A(law, -lambda, mu));
  }
  return log_sum_exp(terms);
}

CStarWitness check_cstar(const JumpLaw& law) {
  constexpr int kDepth = 20;
  for (int total = 0; total <= 2 * kDepth; ++total) {
    for (int j = std::max(0, total - kDepth); j <= std::min(total, kDepth); ++j) {
      const int k = total - j;
      const double lambda = std::ldexp(1.0, j);
      const double eps = std::ldexp(1.0, -k);
      const ExtValue bound = log_cstar_moment(law, lambda, eps);
      if (bound.is_finite()) return CStarWitness{lambda, eps, bound.value()};
    }
  }
  throw CStarViolated("no (lambda, eps) pair on the search ladder gives a finite exponential moment bound");
}

StepSample sample_step(const JumpLaw& law, RngStream& stream) {
  StepSample out;
  if (law.p_terminate > 0.0 && stream.u01() < law.p_terminate) {
    out.tau = std::numeric_limits<double>::infinity();
    return out;
  }
  switch (law.tau_family) {
    case TauFamily::Deterministic:
      out.tau = law.tau_param;
      break;
    case TauFamily::Exponential:
      out.tau = -std::log(stream.u01()) / law.tau_param;
      break;
    case TauFamily::Geometric:
      out.tau = 1.0 + std::floor(std::log(stream.u01()) / std::log(law.tau_param));
      break;
  }
  out.zeta.resize(static_cast<std::size_t>(law.dim));
  for (int i = 0; i < law.dim; ++i) {
    const auto k = static_cast<std::size_t>(i);
    double z = law.zeta_a[k] * out.tau + law.zeta_b[k];
    if (law.zeta_sigma[k] > 0.0) z += law.zeta_sigma[k] * stream.normal();
    out.zeta[k] = z;
  }
  out.v = law.v_c0 + law.v_c1 * out.tau;
  return out;
}

}  // namespace crpldp
