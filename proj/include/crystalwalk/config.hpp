#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crystalwalk/crystal.hpp"
#include "crystalwalk/root_system.hpp"
#include "crystalwalk/spectral.hpp"

namespace crystalwalk {

struct Budgets {
  std::uint64_t word_budget = kDefaultWordBudget;
  std::uint64_t vertex_budget = kDefaultVertexBudget;
  int dp_horizon = 50;
  int kernel_window = 30;  // minimum number of interior window states
  std::uint64_t mc_n = 100'000;
  int mc_horizon = 10'000;
  std::uint64_t seed = 42;

  bool operator==(const Budgets&) const = default;
};

struct ExperimentConfig {
  std::string type = "A";
  int rank = 1;
  /// "wK", or a comma list "w1,w3,w4" for a direct sum of minuscule crystals.
  std::string delta = "w1";
  /// Exact text of each t_i ("3/7", "0.5"); empty when `drift` is given instead.
  std::vector<std::string> t{"3/7"};
  /// Exact drift m in ambient coordinates; alternative to t.
  std::vector<std::string> drift;
  std::string gauge = "sum-one";
  Budgets budgets;
  unsigned threads = 0;
  std::string out;
  std::string format = "json";

  bool operator==(const ExperimentConfig&) const = default;

  /// ConfigError naming the offending field.
  void validate() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// Reads a JSON or TOML file; the format is taken from the first non-blank character.
  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig from_toml(const std::string& text);
};

RootSystemPtr make_root_system(const ExperimentConfig& cfg, const RootSystemOptions& opts = {});

/// Letter crystal for a delta spec. A single non-minuscule wK is extracted from
/// the highest word (allowed only when `allow_non_minuscule`).
CrystalPtr make_delta(const RootSystemPtr& rs, const std::string& spec, bool allow_non_minuscule,
                      std::size_t vertex_budget = kDefaultVertexBudget);

/// Parses a comma list of rationals or decimals.
std::vector<double> parse_reals(const std::string& text, const std::string& field);
std::vector<double> parse_reals(const std::vector<std::string>& items, const std::string& field);

/// Solves t (from t or from the exact drift) and the spectral parameters.
SpectralParams make_params(const ExperimentConfig& cfg, const CrystalPtr& delta);

/// Splits "a,b,c" (whitespace trimmed, empty items dropped).
std::vector<std::string> split_list(const std::string& text);

}  // namespace crystalwalk
