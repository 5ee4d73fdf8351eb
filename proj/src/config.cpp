#include "crystalwalk/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "crystalwalk/errors.hpp"
#include "crystalwalk/markov.hpp"

namespace crystalwalk {

namespace {

using nlohmann::json;

const std::set<std::string> kTopLevel{"type", "rank", "delta", "t", "drift", "gauge", "budgets", "threads", "output"};
const std::set<std::string> kBudgetFields{"word_budget", "vertex_budget", "dp_horizon", "kernel_window",
                                          "mc_n",        "mc_horizon",    "seed"};
const std::set<std::string> kOutputFields{"path", "format"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T get_unsigned(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<T>();
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) throw ConfigError(field, "must be nonnegative");
    return static_cast<T>(j.get<std::int64_t>());
  }
  throw ConfigError(field, "expected a nonnegative integer, got " + j.dump());
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer, got " + j.dump());
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

// Lists accept ["3/7", 0.5] or a single comma-separated string.
std::vector<std::string> get_list(const json& j, const std::string& field) {
  std::vector<std::string> out;
  if (j.is_string()) return split_list(j.get<std::string>());
  if (!j.is_array()) throw ConfigError(field, "expected a list, got " + j.dump());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& item = j[k];
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else if (item.is_number()) {
      out.push_back(item.dump());
    } else {
      throw ConfigError(field + "[" + std::to_string(k) + "]", "expected a number or a string");
    }
  }
  return out;
}

json scalar_from_text(const std::string& text) {
  if (text.empty()) return "";
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  return text;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void ExperimentConfig::validate() const {
  try {
    parse_cartan_type(type);
  } catch (const Error& e) {
    throw ConfigError("type", e.what());
  }
  const int min_rank = type == "D" || type == "d" ? 2 : 1;
  if (rank < min_rank) throw ConfigError("rank", "must be at least " + std::to_string(min_rank) + ", got " + std::to_string(rank));
  const auto parts = split_list(delta);
  if (parts.empty()) throw ConfigError("delta", "empty delta specification");
  for (const auto& p : parts) {
    if (p.size() < 2 || (p[0] != 'w' && p[0] != 'W')) throw ConfigError("delta", "expected wK, got '" + p + "'");
    int k = 0;
    try {
      k = std::stoi(p.substr(1));
    } catch (const std::exception&) {
      throw ConfigError("delta", "expected wK, got '" + p + "'");
    }
    if (k < 1 || k > rank) throw ConfigError("delta", "index of '" + p + "' outside 1.." + std::to_string(rank));
  }
  if (!t.empty() && !drift.empty()) throw ConfigError("t", "give either t or drift, not both");
  if (t.empty() && drift.empty()) throw ConfigError("t", "one of t or drift is required");
  if (!t.empty()) {
    if (static_cast<int>(t.size()) != rank) {
      throw ConfigError("t", "expected " + std::to_string(rank) + " values, got " + std::to_string(t.size()));
    }
    const auto values = parse_reals(t, "t");
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!(values[k] > 0.0)) throw ConfigError("t[" + std::to_string(k) + "]", "must be positive");
    }
  } else {
    parse_reals(drift, "drift");
  }
  try {
    parse_gauge(gauge);
  } catch (const Error& e) {
    throw ConfigError("gauge", e.what());
  }
  auto positive = [](std::uint64_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string("budgets.") + name, "must be positive");
  };
  positive(budgets.word_budget, "word_budget");
  positive(budgets.vertex_budget, "vertex_budget");
  positive(budgets.mc_n, "mc_n");
  if (budgets.dp_horizon <= 0) throw ConfigError("budgets.dp_horizon", "must be positive");
  if (budgets.kernel_window <= 0) throw ConfigError("budgets.kernel_window", "must be positive");
  if (budgets.mc_horizon <= 0) throw ConfigError("budgets.mc_horizon", "must be positive");
  if (format != "json" && format != "csv") throw ConfigError("output.format", "expected json or csv, got '" + format + "'");
}

nlohmann::json ExperimentConfig::to_json() const {
  json j;
  j["type"] = type;
  j["rank"] = rank;
  j["delta"] = delta;
  j["t"] = t;
  j["drift"] = drift;
  j["gauge"] = gauge;
  j["budgets"] = {{"word_budget", budgets.word_budget}, {"vertex_budget", budgets.vertex_budget},
                  {"dp_horizon", budgets.dp_horizon},   {"kernel_window", budgets.kernel_window},
                  {"mc_n", budgets.mc_n},               {"mc_horizon", budgets.mc_horizon},
                  {"seed", budgets.seed}};
  j["threads"] = threads;
  j["output"] = {{"path", out}, {"format", format}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("(root)", "expected an object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (!kTopLevel.count(key)) throw ConfigError(key, "unknown field");
  }
  if (j.contains("type")) c.type = get_string(j["type"], "type");
  if (j.contains("rank")) c.rank = get_int(j["rank"], "rank");
  if (j.contains("delta")) c.delta = get_string(j["delta"], "delta");
  if (j.contains("t")) c.t = get_list(j["t"], "t");
  if (j.contains("drift")) {
    c.drift = get_list(j["drift"], "drift");
    if (!c.drift.empty() && !j.contains("t")) c.t.clear();
  }
  if (j.contains("gauge")) c.gauge = get_string(j["gauge"], "gauge");
  if (j.contains("threads")) c.threads = get_unsigned<unsigned>(j["threads"], "threads");
  if (j.contains("budgets")) {
    const auto& b = j["budgets"];
    if (!b.is_object()) throw ConfigError("budgets", "expected an object");
    for (const auto& [key, value] : b.items()) {
      if (!kBudgetFields.count(key)) throw ConfigError("budgets." + key, "unknown field");
    }
    auto& bb = c.budgets;
    if (b.contains("word_budget")) bb.word_budget = get_unsigned<std::uint64_t>(b["word_budget"], "budgets.word_budget");
    if (b.contains("vertex_budget")) {
      bb.vertex_budget = get_unsigned<std::uint64_t>(b["vertex_budget"], "budgets.vertex_budget");
    }
    if (b.contains("dp_horizon")) bb.dp_horizon = get_int(b["dp_horizon"], "budgets.dp_horizon");
    if (b.contains("kernel_window")) bb.kernel_window = get_int(b["kernel_window"], "budgets.kernel_window");
    if (b.contains("mc_n")) bb.mc_n = get_unsigned<std::uint64_t>(b["mc_n"], "budgets.mc_n");
    if (b.contains("mc_horizon")) bb.mc_horizon = get_int(b["mc_horizon"], "budgets.mc_horizon");
    if (b.contains("seed")) bb.seed = get_unsigned<std::uint64_t>(b["seed"], "budgets.seed");
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) throw ConfigError("output", "expected an object");
    for (const auto& [key, value] : o.items()) {
      if (!kOutputFields.count(key)) throw ConfigError("output." + key, "unknown field");
    }
    if (o.contains("path")) c.out = get_string(o["path"], "output.path");
    if (o.contains("format")) c.format = get_string(o["format"], "output.format");
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_toml(const std::string& text) {
  std::istringstream in(text);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const std::exception& e) {
    throw ConfigError("(file)", std::string("TOML parse error: ") + e.what());
  }
  json j = json::object();
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (item.parents.size() > 1) throw ConfigError(item.fullname(), "nesting deeper than one table");
    json* target = &j;
    if (!item.parents.empty()) {
      if (!j.contains(item.parents[0])) j[item.parents[0]] = json::object();
      target = &j[item.parents[0]];
    }
    const bool list = item.name == "t" || item.name == "drift";
    if (list) {
      (*target)[item.name] = item.inputs;
    } else if (item.inputs.size() == 1) {
      (*target)[item.name] = scalar_from_text(item.inputs.front());
    } else {
      throw ConfigError(item.fullname(), "expected a single value");
    }
  }
  return from_json(j);
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("(file)", std::string("JSON parse error: ") + e.what());
    }
    return from_json(j);
  }
  return from_toml(text);
}

RootSystemPtr make_root_system(const ExperimentConfig& cfg, const RootSystemOptions& opts) {
  cfg.validate();
  return RootSystem::build(parse_cartan_type(cfg.type), cfg.rank, opts);
}

CrystalPtr make_delta(const RootSystemPtr& rs, const std::string& spec, bool allow_non_minuscule,
                      std::size_t vertex_budget) {
  std::vector<int> indices;
  for (const auto& p : split_list(spec)) {
    if (p.size() < 2 || (p[0] != 'w' && p[0] != 'W')) throw ConfigError("delta", "expected wK, got '" + p + "'");
    indices.push_back(std::stoi(p.substr(1)) - 1);
  }
  if (indices.empty()) throw ConfigError("delta", "empty delta specification");
  for (int i : indices) {
    if (i < 0 || i >= rs->rank()) throw ConfigError("delta", "fundamental index out of range for " + rs->name());
  }
  if (indices.size() > 1) return minuscule_type_crystal(rs, indices);
  const auto minuscule = rs->minuscule_indices();
  const bool is_minuscule = std::find(minuscule.begin(), minuscule.end(), indices[0]) != minuscule.end();
  if (is_minuscule || !allow_non_minuscule) return minuscule_crystal(rs, indices[0]);
  const HighestWordBuilder builder(rs);
  return builder.extract(rs->fundamental_weights()[indices[0]], vertex_budget).to_table();
}

std::vector<double> parse_reals(const std::string& text, const std::string& field) {
  return parse_reals(split_list(text), field);
}

std::vector<double> parse_reals(const std::vector<std::string>& items, const std::string& field) {
  std::vector<double> out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    try {
      out.push_back(Rational::parse(items[k]).to_double());
    } catch (const std::exception& e) {
      throw ConfigError(field + "[" + std::to_string(k) + "]", "cannot parse '" + items[k] + "': " + e.what());
    }
  }
  return out;
}

SpectralParams make_params(const ExperimentConfig& cfg, const CrystalPtr& delta) {
  const Gauge gauge = parse_gauge(cfg.gauge);
  if (!cfg.drift.empty()) {
    const auto m = parse_reals(cfg.drift, "drift");
    if (m.size() != delta->root_system().ambient_dim()) {
      throw ConfigError("drift", "expected " + std::to_string(delta->root_system().ambient_dim()) + " coordinates");
    }
    return spectral_params(delta, t_from_drift(delta, m), gauge);
  }
  return spectral_params(delta, parse_reals(cfg.t, "t"), gauge);
}

}  // namespace crystalwalk
