#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include <nlohmann/json.hpp>

#include "crystalwalk/config.hpp"
#include "crystalwalk/counting.hpp"
#include "crystalwalk/errors.hpp"
#include "crystalwalk/markov.hpp"
#include "crystalwalk/montecarlo.hpp"
#include "crystalwalk/verify.hpp"
#include "crystalwalk/version.hpp"

using namespace crystalwalk;
using nlohmann::json;

namespace {

struct CommonOptions {
  std::optional<std::string> config, type, delta, t, drift, gauge, out, format;
  std::optional<int> rank, L, window, horizon;
  std::optional<std::uint64_t> seed, n, word_budget, vertex_budget;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config, "JSON or TOML experiment file; flags override its fields");
  app->add_option("--type", o.type, "Cartan type A, B, C or D (type A rank n is gl_{n+1})");
  app->add_option("--rank", o.rank, "Rank n");
  app->add_option("--delta", o.delta, "wK, or a comma list w1,w3,w4 for a minuscule type sum");
  app->add_option("--t", o.t, "Comma list of t_i (rationals like 3/7 or decimals)");
  app->add_option("--drift", o.drift, "Exact drift m in ambient coordinates, instead of --t");
  app->add_option("--gauge", o.gauge, "sum-one or first-one (type A normalization)");
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--out", o.out, "Output path (default: stdout)");
  app->add_option("--format", o.format, "json or csv");
  app->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  app->add_option("--L", o.L, "DP horizon (path length bound)");
  app->add_option("--window", o.window, "Minimum interior states of a kernel window / window depth");
  app->add_option("--n", o.n, "Monte Carlo trajectories");
  app->add_option("--horizon", o.horizon, "Monte Carlo horizon");
  app->add_option("--word-budget", o.word_budget, "Cap on enumerated words");
  app->add_option("--vertex-budget", o.vertex_budget, "Cap on crystal vertices");
}

ExperimentConfig resolve(const CommonOptions& o) {
  ExperimentConfig c;
  bool t_given = false;
  if (o.config) {
    c = ExperimentConfig::load(*o.config);
    t_given = true;
  }
  if (o.type) c.type = *o.type;
  if (o.rank) c.rank = *o.rank;
  if (o.delta) c.delta = *o.delta;
  if (o.t) {
    c.t = split_list(*o.t);
    c.drift.clear();
    t_given = true;
  }
  if (o.drift) {
    c.drift = split_list(*o.drift);
    c.t.clear();
    t_given = true;
  }
  if (!t_given && !(c.type == "A" && c.rank == 1)) c.t.assign(std::max(c.rank, 0), "1/2");
  if (o.gauge) c.gauge = *o.gauge;
  if (o.out) c.out = *o.out;
  if (o.format) c.format = *o.format;
  if (o.threads) c.threads = *o.threads;
  if (o.seed) c.budgets.seed = *o.seed;
  if (o.L) c.budgets.dp_horizon = *o.L;
  if (o.window) c.budgets.kernel_window = *o.window;
  if (o.n) c.budgets.mc_n = *o.n;
  if (o.horizon) c.budgets.mc_horizon = *o.horizon;
  if (o.word_budget) c.budgets.word_budget = *o.word_budget;
  if (o.vertex_budget) c.budgets.vertex_budget = *o.vertex_budget;
  c.validate();
  return c;
}

json metadata(const ExperimentConfig& c) {
  return {{"version", kVersion}, {"rng", kRngName}, {"seed", c.budgets.seed}, {"config", c.to_json()}};
}

void write_text(const ExperimentConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ConfigError("output.path", "cannot write '" + c.out + "'");
  f << text;
}

void emit(const ExperimentConfig& c, json body) {
  body["metadata"] = metadata(c);
  write_text(c, body.dump(2) + "\n");
}

json weights_json(std::span<const Weight> ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(w.to_string());
  return a;
}

Weight parse_weight_for(const RootSystem& rs, const std::string& text, const std::string& field) {
  Weight w;
  if (text == "0") return rs.zero();
  try {
    w = Weight::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  if (w.dim() != rs.ambient_dim()) {
    throw ConfigError(field, "expected " + std::to_string(rs.ambient_dim()) + " coordinates, got '" + text + "'");
  }
  return w;
}

std::vector<int> parse_ints(const std::string& text, const std::string& field) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) {
    try {
      out.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw ConfigError(field, "expected integers, got '" + s + "'");
    }
  }
  return out;
}

std::string csv_weight(const Weight& w) {
  std::string out;
  for (std::size_t k = 0; k < w.dim(); ++k) {
    if (k) out += ",";
    out += w.coord(k).to_string();
  }
  return out;
}

std::string csv_header(const std::string& prefix, std::size_t n) {
  std::string out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k) out += ",";
    out += prefix + std::to_string(k + 1);
  }
  return out;
}

json kernel_json(const TransitionKernel& k) {
  json entries = json::array(), states = json::array(), boundary = json::array();
  for (const auto& row : k.rows()) {
    states.push_back(row.from.to_string());
    if (row.boundary) boundary.push_back(row.from.to_string());
    for (const auto& e : row.entries) entries.push_back({row.from.to_string(), e.to.to_string(), e.p});
  }
  const char* kind = k.kind == KernelKind::Stochastic ? "stochastic"
                     : k.kind == KernelKind::Substochastic ? "substochastic"
                                                           : "rectangular";
  return {{"kind", kind}, {"states", states}, {"boundary_rows", boundary}, {"entries", entries}, {"nonzeros", k.nonzeros()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crystal random walks in Weyl chambers: crystals, kernels, counts, exit probabilities, verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOptions roots_o;
  auto* roots = app.add_subcommand("roots", "Root system data");
  add_common(roots, roots_o);

  auto* crystal = app.add_subcommand("crystal", "Crystal graphs");
  crystal->require_subcommand(1);
  CommonOptions build_o, dec_o;
  auto* cbuild = crystal->add_subcommand("build", "Vertices and arrows of B(delta)");
  add_common(cbuild, build_o);
  auto* cdec = crystal->add_subcommand("decompose", "Highest weights of B(delta)^{(x) power}");
  add_common(cdec, dec_o);
  int power = 2;
  cdec->add_option("--power", power, "Tensor power");

  CommonOptions spec_o;
  auto* spectral = app.add_subcommand("spectral", "Spectral parameters");
  spectral->require_subcommand(1);
  auto* ssolve = spectral->add_subcommand("solve", "x, letter law, drift and nabla from t (or t from --drift)");
  add_common(ssolve, spec_o);

  auto* count = app.add_subcommand("count", "Exact path counts and multiplicities");
  count->require_subcommand(1);
  CommonOptions paths_o, mult_o;
  std::string mu_text = "0";
  auto* cpaths = count->add_subcommand("paths", "f^l_{lambda/mu} for l <= L (CSV: ell, lambda coordinates, count)");
  add_common(cpaths, paths_o);
  cpaths->add_option("--mu", mu_text, "Start weight (comma list, rationals allowed)");
  auto* cmult = count->add_subcommand("mult", "m^lambda_{mu,delta}: V(mu) (x) V(delta) decomposition");
  add_common(cmult, mult_o);
  cmult->add_option("--mu", mu_text, "Dominant weight mu");

  CommonOptions kernel_o;
  std::string which = "H";
  auto* kernel = app.add_subcommand("kernel", "Window-truncated kernel as sparse triplets");
  add_common(kernel, kernel_o);
  kernel->add_option("--which", which, "W, WC (W restricted to the chamber), H, K (intertwiner) or doob")
      ->check(CLI::IsMember({"W", "WC", "H", "K", "doob"}));

  CommonOptions exit_o, exitmc_o;
  std::string lambda_text = "0";
  auto* exitp = app.add_subcommand("exit-prob", "Exit probability: formula, survival DP and Monte Carlo");
  add_common(exitp, exit_o);
  exitp->add_option("--lambda", lambda_text, "Dominant start weight");
  auto* exitmc = app.add_subcommand("exit-prob-mc", "Monte Carlo exit probability");
  add_common(exitmc, exitmc_o);
  exitmc->add_option("--lambda", lambda_text, "Dominant start weight");

  CommonOptions sim_o;
  int steps = 100;
  int checkpoint = 64;
  auto* sim = app.add_subcommand("simulate", "Coupled trajectories (CSV: trajectory, step, W coordinates, H coordinates)");
  add_common(sim, sim_o);
  sim->add_option("--steps", steps, "Trajectory length");
  sim->add_option("--checkpoint", checkpoint, "Full Pitman recompute cadence");

  CommonOptions asym_o;
  std::string kind = "multiplicity", mus_text, ells_text, h_text;
  auto* asym = app.add_subcommand("asymptotics", "Asymptotic series: multiplicity ratios, psi, Martin kernel, quotients");
  add_common(asym, asym_o);
  asym->add_option("--kind", kind, "multiplicity, psi, martin or quotient")
      ->check(CLI::IsMember({"multiplicity", "psi", "martin", "quotient"}));
  asym->add_option("--mu", mus_text, "Weights mu separated by ';' (multiplicity, martin)");
  asym->add_option("--ells", ells_text, "Comma list of lengths or ladder values");
  asym->add_option("--shift", h_text, "Weights h separated by ';' (quotient)");

  CommonOptions verify_o;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run a verification suite; exit code 1 if any suite fails");
  add_common(verify, verify_o);
  verify->add_option("suite", suite, "all, or one of: oracle characters identity intertwining doob harmonic laws exit "
                                     "psi-limit martin asymptotics quotient markov minuscule-type");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*roots) {
      const auto c = resolve(roots_o);
      const auto rs = make_root_system(c);
      json minuscule = json::array();
      for (int i : rs->minuscule_indices()) minuscule.push_back("w" + std::to_string(i + 1));
      emit(c, {{"system", rs->name()},
               {"rank", rs->rank()},
               {"ambient_dim", rs->ambient_dim()},
               {"weyl_group_order", weyl_group_order(rs->type(), rs->rank())},
               {"simple_roots", weights_json(rs->simple_roots())},
               {"positive_roots", weights_json(rs->positive_roots())},
               {"fundamental_weights", weights_json(rs->fundamental_weights())},
               {"rho", rs->rho().to_string()},
               {"minuscule", minuscule}});
    } else if (*cbuild) {
      const auto c = resolve(build_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      json vertices = json::array(), arrows = json::array();
      for (Vertex b = 0; b < delta->size(); ++b) {
        json eps = json::array(), phi = json::array();
        for (int i = 0; i < rs->rank(); ++i) {
          eps.push_back(delta->eps(b, i));
          phi.push_back(delta->phi(b, i));
          if (delta->f(b, i) != kNoVertex) arrows.push_back({{"from", b}, {"to", delta->f(b, i)}, {"i", i + 1}});
        }
        vertices.push_back({{"id", b}, {"label", delta->label(b)}, {"weight", delta->weight(b).to_string()},
                            {"eps", eps}, {"phi", phi}});
      }
      emit(c, {{"system", rs->name()}, {"delta", c.delta}, {"size", delta->size()}, {"vertices", vertices},
               {"arrows", arrows}});
    } else if (*cdec) {
      const auto c = resolve(dec_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      const auto dec = decompose_tensor_power(*delta, power, c.budgets.word_budget);
      json comps = json::array();
      BigInt total = 0;
      for (const auto& [hw, m] : dec) {
        const BigInt dim = rs->weyl_dimension(hw);
        total += m * dim;
        comps.push_back({{"highest_weight", hw.to_string()}, {"multiplicity", to_decimal(m)}, {"dimension", to_decimal(dim)}});
      }
      emit(c, {{"system", rs->name()}, {"delta", c.delta}, {"power", power}, {"components", comps},
               {"total_dimension", to_decimal(total)}});
    } else if (*ssolve) {
      const auto c = resolve(spec_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      const SpectralParams p = make_params(c, delta);
      json probs = json::array();
      for (Vertex b = 0; b < delta->size(); ++b) {
        probs.push_back({{"letter", delta->label(b)}, {"weight", delta->weight(b).to_string()}, {"p", p.letter_probs[b]}});
      }
      json body = {{"system", rs->name()}, {"gauge", to_string(p.gauge)}, {"t", p.t},       {"x", p.x},
                   {"log_x", p.log_x},     {"s_delta", p.s_delta},      {"letters", probs}, {"drift", p.drift},
                   {"drift_in_open_chamber", all_t_below_one(p.t)}};
      if (all_t_below_one(p.t)) body["nabla"] = nabla(*rs, p.t);
      emit(c, body);
    } else if (*cpaths) {
      const auto c = resolve(paths_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      const Weight mu = parse_weight_for(*rs, mu_text, "mu");
      const auto table = path_count_dp(*delta, mu, c.budgets.dp_horizon);
      if (c.format == "csv") {
        std::string out = "ell," + csv_header("lambda_", rs->ambient_dim()) + ",count\n";
        for (int ell = 0; ell <= table.L; ++ell) {
          for (const auto& [w, v] : table.rows[ell]) out += std::to_string(ell) + "," + csv_weight(w) + "," + to_decimal(v) + "\n";
        }
        write_text(c, out);
      } else {
        json rows = json::array();
        for (int ell = 0; ell <= table.L; ++ell) {
          for (const auto& [w, v] : table.rows[ell]) rows.push_back({ell, w.to_string(), to_decimal(v)});
        }
        emit(c, {{"system", rs->name()}, {"mu", mu.to_string()}, {"L", table.L}, {"counts_are_multiplicities", table.minuscule},
                 {"rows", rows}});
      }
    } else if (*cmult) {
      const auto c = resolve(mult_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      const Weight mu = parse_weight_for(*rs, mu_text, "mu");
      json rows = json::array();
      for (const auto& [lambda, m] : tensor_multiplicities(mu, *delta)) {
        rows.push_back({{"lambda", lambda.to_string()}, {"multiplicity", to_decimal(m)}});
      }
      emit(c, {{"system", rs->name()}, {"mu", mu.to_string()}, {"decomposition", rows}});
    } else if (*kernel) {
      const auto c = resolve(kernel_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      const WalkModel model(make_params(c, delta), c.budgets.vertex_budget);
      const Window w = dominant_window(model, rs->zero(), c.budgets.kernel_window);
      TransitionKernel k;
      if (which == "W") {
        k = kernel_W(model, w);
      } else if (which == "WC") {
        k = restrict_to_chamber(kernel_W(model, w), *rs);
      } else if (which == "H") {
        k = kernel_H(model, w);
      } else if (which == "K") {
        k = intertwiner(model, w);
      } else {
        k = doob_transform(restrict_to_chamber(kernel_W(model, w), *rs), [&](const Weight& x) { return model.psi(x); });
      }
      json body = kernel_json(k);
      body["which"] = which;
      body["window_depth"] = c.budgets.kernel_window;
      emit(c, body);
    } else if (*exitp) {
      const auto c = resolve(exit_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, false, c.budgets.vertex_budget);
      const WalkModel model(make_params(c, delta), c.budgets.vertex_budget);
      const Weight lambda = parse_weight_for(*rs, lambda_text, "lambda");
      const double formula = exit_probability(model, lambda);
      const auto s = survival_dp(model, lambda, c.budgets.dp_horizon);
      const ExitEstimate mc =
          exit_probability_mc(model.params(), lambda, c.budgets.mc_horizon, c.budgets.mc_n, c.budgets.seed, c.threads);
      emit(c, {{"system", rs->name()},
               {"lambda", lambda.to_string()},
               {"formula", formula},
               {"survival_dp", s},
               {"monte_carlo", {{"estimate", mc.estimate}, {"sigma", mc.sigma}, {"horizon", mc.horizon}, {"n", mc.n}}}});
    } else if (*exitmc) {
      const auto c = resolve(exitmc_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      const SpectralParams p = make_params(c, delta);
      const Weight lambda = parse_weight_for(*rs, lambda_text, "lambda");
      const ExitEstimate mc = exit_probability_mc(p, lambda, c.budgets.mc_horizon, c.budgets.mc_n, c.budgets.seed, c.threads);
      emit(c, {{"estimate", mc.estimate}, {"sigma", mc.sigma}, {"horizon", mc.horizon}, {"n", mc.n}});
    } else if (*sim) {
      const auto c = resolve(sim_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, true, c.budgets.vertex_budget);
      const SpectralParams p = make_params(c, delta);
      const std::size_t N = rs->ambient_dim();
      std::vector<Trajectory> trs(c.budgets.mc_n);
      parallel_for(c.budgets.mc_n, c.threads, [&](std::uint64_t i, unsigned) {
        trs[i] = sample_trajectory(p, steps, trajectory_seed(c.budgets.seed, i), checkpoint);
      });
      bool coupling = true;
      for (const auto& tr : trs) coupling = coupling && tr.coupling_ok;
      if (c.format == "csv") {
        std::string out = "trajectory,step," + csv_header("W_", N) + "," + csv_header("H_", N) + "\n";
        for (std::size_t i = 0; i < trs.size(); ++i) {
          for (std::size_t k = 0; k < trs[i].W_path.size(); ++k) {
            out += std::to_string(i) + "," + std::to_string(k) + "," + csv_weight(trs[i].W_path[k]) + "," +
                   csv_weight(trs[i].H_path[k]) + "\n";
          }
        }
        write_text(c, out);
      } else {
        json arr = json::array();
        for (std::size_t i = 0; i < trs.size(); ++i) {
          arr.push_back({{"trajectory", i}, {"seed", trs[i].seed}, {"W", weights_json(trs[i].W_path)},
                         {"H", weights_json(trs[i].H_path)}, {"coupling_ok", trs[i].coupling_ok}});
        }
        emit(c, {{"system", rs->name()}, {"steps", steps}, {"coupling_ok", coupling}, {"trajectories", arr}});
      }
      if (!coupling) std::cerr << "warning: incremental Pitman transform disagreed with a full recompute\n";
    } else if (*asym) {
      const auto c = resolve(asym_o);
      const auto rs = make_root_system(c);
      const auto delta = make_delta(rs, c.delta, false, c.budgets.vertex_budget);
      const WalkModel model(make_params(c, delta), c.budgets.vertex_budget);
      auto weights_list = [&](const std::string& text, const std::string& field) {
        std::vector<Weight> out;
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ';');) {
          if (!item.empty()) out.push_back(parse_weight_for(*rs, item, field));
        }
        return out;
      };
      SuiteResult r;
      r.status = Status::Pass;
      if (kind == "psi") {
        suite_psi_limit(r, model, ells_text.empty() ? std::vector<int>{25, 50, 100, 200} : parse_ints(ells_text, "ells"), 0.01);
      } else if (kind == "martin") {
        auto mus = mus_text.empty() ? std::vector<Weight>{rs->fundamental_weights()[0]} : weights_list(mus_text, "mu");
        suite_martin(r, model, mus, ells_text.empty() ? std::vector<int>{50, 100, 200, 300} : parse_ints(ells_text, "ells"), 0.05);
      } else if (kind == "quotient") {
        auto hs = h_text.empty() ? rs->simple_roots() : weights_list(h_text, "h");
        suite_quotient(r, model, hs, ells_text.empty() ? std::vector<int>{50, 100, 200, 400} : parse_ints(ells_text, "ells"));
      } else {
        auto mus = mus_text.empty() ? std::vector<Weight>{rs->fundamental_weights()[0]} : weights_list(mus_text, "mu");
        suite_asymptotics(r, model, mus, ells_text.empty() ? std::vector<int>{50, 100, 200, 400} : parse_ints(ells_text, "ells"),
                          0.02);
      }
      json body = r.details;
      body["kind"] = kind;
      body["trend_status"] = to_string(r.status);
      body["summary"] = r.summary;
      emit(c, body);
    } else if (*verify) {
      const auto c = resolve(verify_o);
      std::vector<SuiteResult> results;
      if (suite == "all") {
        results = verify_all(c);
      } else {
        results.push_back(run_named_suite(suite, c));
      }
      bool failed = false;
      json arr = json::array();
      for (const auto& r : results) {
        std::cout << format_line(r) << "\n";
        failed = failed || r.status == Status::Fail;
        arr.push_back(to_json(r));
        if (r.status == Status::Fail) std::cout << "  replay inputs: " << c.to_json().dump() << "\n";
      }
      if (!c.out.empty()) {
        json body = {{"results", arr}, {"metadata", metadata(c)}};
        std::ofstream(c.out) << body.dump(2) << "\n";
      }
      return failed ? 1 : 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
