#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crpldp/checks.hpp"
#include "crpldp/corpus.hpp"
#include "crpldp/mc.hpp"
#include "crpldp/model.hpp"
#include "crpldp/rate.hpp"

namespace {

using crpldp::CheckResult;
using crpldp::ExtValue;
using crpldp::JumpLaw;
using crpldp::McMethod;
using crpldp::Region;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double ext_d(const ExtValue& v) {
  if (v.is_pos_inf()) return kInf;
  if (v.is_neg_inf()) return -kInf;
  return v.value();
}

json num_or_str(double v) {
  if (std::isinf(v)) return json(v > 0.0 ? "inf" : "-inf");
  return json(v);
}

// "lo:hi:n" per axis, axes separated by ','.
std::vector<std::vector<double>> parse_grid(const std::string& spec, int dim) {
  std::vector<std::vector<double>> axes;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream ps(part);
    if (!(ps >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':')
      throw UsageError("bad grid axis spec: " + part);
    if (n < 1) throw UsageError("empty grid axis: " + part);
    axes.push_back(crpldp::linspace(lo, hi, n));
  }
  if (static_cast<int>(axes.size()) != dim)
    throw UsageError("grid has " + std::to_string(axes.size()) + " axes, model dimension is " +
                     std::to_string(dim));
  return axes;
}

std::vector<std::vector<double>> cartesian(const std::vector<std::vector<double>>& axes) {
  std::vector<std::vector<double>> out = {{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      for (double v : axis) {
        auto row = prefix;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Region region_from_json(const json& j) {
  const std::string shape = j.at("shape").get<std::string>();
  const std::string closure_s = j.value("closure", "closed");
  const auto closure =
      closure_s == "open" ? crpldp::Closure::Open : crpldp::Closure::Closed;
  if (shape == "box")
    return Region::box(j.at("lo").get<std::vector<double>>(),
                       j.at("hi").get<std::vector<double>>(), closure);
  if (shape == "ball")
    return Region::ball(j.at("center").get<std::vector<double>>(),
                        j.at("radius").get<double>(), closure);
  if (shape == "halfspace")
    return Region::half_space(j.at("normal").get<std::vector<double>>(),
                              j.at("offset").get<double>(), closure);
  throw UsageError("unknown region shape: " + shape);
}

json region_to_json(const Region& r) {
  json j;
  j["closure"] = r.closure == crpldp::Closure::Open ? "open" : "closed";
  switch (r.shape) {
    case crpldp::RegionShape::Box:
      j["shape"] = "box";
      j["lo"] = r.lo;
      j["hi"] = r.hi;
      break;
    case crpldp::RegionShape::Ball:
      j["shape"] = "ball";
      j["center"] = r.center;
      j["radius"] = r.radius;
      break;
    case crpldp::RegionShape::HalfSpace:
      j["shape"] = "halfspace";
      j["normal"] = r.normal;
      j["offset"] = r.offset;
      break;
  }
  return j;
}

struct RunConfig {
  JumpLaw model;
  Region region;
  std::vector<double> t_grid;
  long long n_rep = 0;
  std::uint64_t seed = 1;
  McMethod method = McMethod::Naive;
  double lambda_star = 0.0;  // 0 selects the default tilt
};

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("run config: ") + e.what());
  }
  try {
    RunConfig cfg;
    cfg.model = JumpLaw::from_json(j.at("model").dump());
    cfg.region = region_from_json(j.at("region"));
    cfg.t_grid = j.at("t_grid").get<std::vector<double>>();
    cfg.n_rep = j.at("n_rep").get<long long>();
    cfg.seed = j.value("seed", std::uint64_t{1});
    const std::string method = j.value("method", "naive");
    if (method == "tilted") cfg.method = McMethod::Tilted;
    else if (method != "naive") throw UsageError("unknown method: " + method);
    cfg.lambda_star = j.value("lambda_star", 0.0);
    return cfg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("run config: ") + e.what());
  }
}

json run_config_to_json(const RunConfig& cfg) {
  json j;
  j["model"] = json::parse(cfg.model.to_json());
  j["region"] = region_to_json(cfg.region);
  j["t_grid"] = cfg.t_grid;
  j["n_rep"] = cfg.n_rep;
  j["seed"] = cfg.seed;
  j["method"] = cfg.method == McMethod::Tilted ? "tilted" : "naive";
  if (cfg.lambda_star > 0.0) j["lambda_star"] = cfg.lambda_star;
  return j;
}

void write_table(const std::string& out_path, const std::string& csv) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write " + out_path);
  out << csv;
}

json checks_to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json j;
    j["name"] = c.name;
    j["expected"] = num_or_str(c.expected);
    j["observed"] = num_or_str(c.observed);
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

int emit_report(const std::string& command, const json& config_echo,
                const std::vector<CheckResult>& checks, const std::string& out_path) {
  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.pass;
  json report;
  report["command"] = command;
  report["config_echo"] = config_echo;
  report["checks"] = checks_to_json(checks);
  report["exit_status"] = all_pass ? 0 : 1;
  if (!out_path.empty()) report["out"] = out_path;
  std::cout << report.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

std::string status_name(crpldp::SolveStatus s) {
  switch (s) {
    case crpldp::SolveStatus::Converged: return "converged";
    case crpldp::SolveStatus::Unbounded: return "unbounded";
    case crpldp::SolveStatus::BoxLimited: return "box_limited";
  }
  return "unknown";
}

int cmd_rate(const std::string& config_path, const std::string& grid_spec, double gamma_flag,
             bool gamma_given, const std::string& out_path) {
  const JumpLaw law = JumpLaw::from_json(read_file(config_path));
  ExtValue gamma = gamma_given ? ExtValue(gamma_flag) : crpldp::lambda_plus(law);
  const auto alphas = cartesian(parse_grid(grid_spec, law.dim));

  std::ostringstream csv;
  for (int i = 0; i < law.dim; ++i) csv << "alpha_" << i << ",";
  csv << "D,D_gamma,D_plus,D_minus,argmax_lambda";
  for (int i = 0; i < law.dim; ++i) csv << ",argmax_mu_" << i;
  csv << ",status\n";
  for (const auto& a : alphas) {
    const auto d = crpldp::eval_D(law, a);
    const auto dg = crpldp::eval_D_gamma(law, a, gamma);
    const auto dp = crpldp::eval_D_plus(law, a);
    const auto dm = crpldp::eval_D_minus(law, a);
    for (double ai : a) csv << fmt(ai) << ",";
    csv << fmt(ext_d(d.value)) << "," << fmt(ext_d(dg.value)) << "," << fmt(ext_d(dp)) << ","
        << fmt(ext_d(dm)) << ",";
    csv << (dg.has_argmax ? fmt(dg.argmax_lambda) : "");
    for (int i = 0; i < law.dim; ++i)
      csv << "," << (dg.has_argmax ? fmt(dg.argmax_mu[static_cast<std::size_t>(i)]) : "");
    csv << "," << status_name(dg.status) << "\n";
  }
  write_table(out_path, csv.str());
  return emit_report("rate", json::parse(law.to_json()), {}, out_path);
}

std::string estimate_csv(const std::vector<crpldp::PathEstimate>& estimates) {
  std::ostringstream csv;
  csv << "t,log_value,half_width_log,hits,method\n";
  for (const auto& e : estimates) {
    csv << fmt(e.t) << "," << fmt(ext_d(e.log_value)) << "," << fmt(e.half_width_log) << ","
        << e.hits << "," << (e.method == McMethod::Tilted ? "tilted" : "naive") << "\n";
  }
  return csv.str();
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_path) {
  std::vector<crpldp::PathEstimate> estimates;
  crpldp::TiltedSampler sampler;
  if (cfg.method == McMethod::Tilted)
    sampler = crpldp::make_tilted(
        cfg.model,
        cfg.lambda_star > 0.0 ? cfg.lambda_star : crpldp::choose_lambda_star(cfg.model));
  for (double t : cfg.t_grid) {
    estimates.push_back(cfg.method == McMethod::Tilted
                            ? crpldp::estimate_unnormalized_tilted(sampler, t, cfg.region,
                                                                   cfg.n_rep, cfg.seed)
                            : crpldp::estimate_unnormalized(cfg.model, t, cfg.region, cfg.n_rep,
                                                            cfg.seed));
  }
  write_table(out_path, estimate_csv(estimates));
  return emit_report("simulate", run_config_to_json(cfg), {}, out_path);
}

int cmd_verify(const RunConfig& cfg, const std::string& out_path) {
  std::vector<CheckResult> checks;
  const std::vector<std::vector<double>> cands = {
      [&] {
        std::vector<double> d(static_cast<std::size_t>(cfg.model.dim));
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] = cfg.model.zeta_a[i] + cfg.model.zeta_b[i] / cfg.model.mean_tau_finite();
        return d;
      }()};
  const ExtValue lp = crpldp::lambda_plus(cfg.model);
  const ExtValue lm = crpldp::lambda_minus(cfg.model);
  const double d_closed = crpldp::inf_over_box(
      cfg.region,
      [&](const std::vector<double>& a) { return crpldp::eval_D_gamma(cfg.model, a, lp).value; },
      51, cands);
  const double d_open = crpldp::inf_over_box(
      cfg.region,
      [&](const std::vector<double>& a) { return crpldp::eval_D_gamma(cfg.model, a, lm).value; },
      51, cands);

  std::string csv = "t,log_value,half_width_log,hits,method\n";
  try {
    const auto rate = crpldp::empirical_rate(cfg.model, cfg.region, cfg.t_grid, cfg.n_rep,
                                             cfg.seed, cfg.method, cfg.lambda_star);
    csv = estimate_csv(rate.per_t);
    const double tol =
        0.15 * std::max(std::fabs(d_closed), std::fabs(d_open)) + 3.0 * rate.stderr_slope;
    checks.push_back(crpldp::make_check("slope-upper-bound", -d_closed,
                                        std::min(rate.slope, -d_closed), tol));
    checks.push_back(crpldp::make_check("slope-lower-bound", -d_open,
                                        std::max(rate.slope, -d_open), tol));
  } catch (const crpldp::RateUndefined& e) {
    checks.push_back(crpldp::make_check(std::string("rate-undefined: ") + e.what(), 0.0, kInf,
                                        0.0));
  }
  write_table(out_path, csv);
  return emit_report("verify", run_config_to_json(cfg), checks, out_path);
}

int cmd_identities(const std::string& config_path, const std::string& out_path) {
  const JumpLaw law = JumpLaw::from_json(read_file(config_path));
  // Geometric-tau cumulants lose a digit to the lattice sums.
  const double tol = law.tau_family == crpldp::TauFamily::Geometric ? 1e-5 : 1e-6;
  const auto checks = crpldp::identity_battery(law, tol);
  std::ostringstream csv;
  csv << "name,expected,observed,tolerance,pass\n";
  for (const auto& c : checks)
    csv << c.name << "," << fmt(c.expected) << "," << fmt(c.observed) << "," << fmt(c.tolerance)
        << "," << (c.pass ? "1" : "0") << "\n";
  write_table(out_path, csv.str());
  return emit_report("identities", json::parse(law.to_json()), checks, out_path);
}

int cmd_conjugate_table(const std::string& fn_name, const std::string& grid_spec,
                        const std::string& out_path) {
  std::vector<std::string> names =
      fn_name.empty() ? crpldp::corpus_names() : std::vector<std::string>{fn_name};
  const auto grid = parse_grid(grid_spec, 1);
  std::ostringstream csv;
  csv << "function,u,F,F_conj,F_biconj\n";
  for (const auto& name : names) {
    const crpldp::ExtFunction f = crpldp::corpus_function(name);
    const crpldp::ExtFunction conj = crpldp::memoized(
        crpldp::ExtFunction::make(1, [&f](const std::vector<double>& y) {
          return crpldp::legendre(f, y);
        }));
    for (double u : grid[0]) {
      const double fu = ext_d(f.eval({u}));
      const double fc = ext_d(conj.eval({u}));
      const double fb = ext_d(crpldp::legendre(conj, {u}));
      csv << name << "," << fmt(u) << "," << fmt(fu) << "," << fmt(fc) << "," << fmt(fb) << "\n";
    }
  }
  write_table(out_path, csv.str());
  json echo;
  echo["functions"] = names;
  echo["grid"] = grid_spec;
  return emit_report("conjugate-table", echo, {}, out_path);
}

int cmd_pinning_demo(long long reps, std::uint64_t seed, const std::string& out_path) {
  // Pinning-style law: terminating geometric waits with reward exponent
  // v = 0.2 tau, zeta = tau.
  const JumpLaw law = JumpLaw::make(1, 0.1, crpldp::TauFamily::Geometric, 0.5, {1.0}, {0.0},
                                    {0.0}, 0.0, 0.2);
  const double t = 40.0;
  // Cell edges sit strictly between the reachable lattice points k/t.
  const std::vector<double> edges = {-0.1, 0.2375, 0.4875, 0.7375, 0.9875, 1.1};
  std::ostringstream csv;
  csv << "cell_lo,cell_hi,gibbs_log_prob,half_width_log,hits\n";
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Region cell = Region::box({edges[i]}, {edges[i + 1]});
    const auto e = crpldp::estimate_gibbs(law, t, cell, reps, seed);
    csv << fmt(edges[i]) << "," << fmt(edges[i + 1]) << "," << fmt(ext_d(e.log_value)) << ","
        << fmt(e.half_width_log) << "," << e.hits << "\n";
    if (!e.log_value.is_neg_inf()) total += std::exp(e.log_value.value());
  }
  write_table(out_path, csv.str());
  std::vector<CheckResult> checks;
  checks.push_back(crpldp::make_check("partition-total-probability", 1.0, total, 1e-9));
  json echo = json::parse(law.to_json());
  echo["t"] = t;
  echo["n_rep"] = reps;
  echo["seed"] = seed;
  return emit_report("pinning-demo", echo, checks, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate functions and Monte Carlo for terminating compound renewal processes"};
  app.require_subcommand(1);

  std::string config_path, out_path, grid_spec = "0:1:11", fn_name;
  double gamma = 0.0;
  long long reps = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) sub->add_option("--config", config_path, "model/run config path")->required();
    sub->add_option("--out", out_path, "output CSV path (stdout when omitted)");
  };

  auto* rate = app.add_subcommand("rate", "rate-function sweep over an alpha grid");
  add_common(rate, true);
  auto* gamma_opt = rate->add_option("--gamma", gamma, "cap on lambda (default: lambda_plus)");
  rate->add_option("--grid", grid_spec, "alpha grid, lo:hi:n per axis");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates over the t grid");
  add_common(simulate, true);
  simulate->add_option("--seed", seed, "seed override");
  simulate->add_option("--reps", reps, "replicate override");

  auto* verify = app.add_subcommand("verify", "empirical rate vs computed rate bounds");
  add_common(verify, true);
  verify->add_option("--seed", seed, "seed override");
  verify->add_option("--reps", reps, "replicate override");

  auto* identities = app.add_subcommand("identities", "identity check battery");
  add_common(identities, true);

  auto* table = app.add_subcommand("conjugate-table", "corpus conjugates as CSV");
  table->add_option("function", fn_name, "corpus function name (all when omitted)");
  table->add_option("--grid", grid_spec, "u grid, lo:hi:n");
  table->add_option("--out", out_path, "output CSV path (stdout when omitted)");

  auto* demo = app.add_subcommand("pinning-demo", "Gibbs cell probabilities for a pinning law");
  demo->add_option("--reps", reps, "replicates (default 100000)");
  demo->add_option("--seed", seed, "seed (default 1)");
  demo->add_option("--out", out_path, "output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rate->parsed()) return cmd_rate(config_path, grid_spec, gamma, gamma_opt->count() > 0, out_path);
    if (simulate->parsed() || verify->parsed()) {
      CLI::App* sub = simulate->parsed() ? simulate : verify;
      RunConfig cfg = parse_run_config(read_file(config_path));
      if (sub->count("--seed") > 0) cfg.seed = seed;
      if (sub->count("--reps") > 0) cfg.n_rep = reps;
      return simulate->parsed() ? cmd_simulate(cfg, out_path) : cmd_verify(cfg, out_path);
    }
    if (identities->parsed()) return cmd_identities(config_path, out_path);
    if (table->parsed()) {
      if (table->count("--grid") == 0) grid_spec = "-2:2:41";
      return cmd_conjugate_table(fn_name, grid_spec, out_path);
    }
    if (demo->parsed())
      return cmd_pinning_demo(demo->count("--reps") > 0 ? reps : 100000,
                              demo->count("--seed") > 0 ? seed : 1, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const crpldp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
