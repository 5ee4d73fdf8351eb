#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crystalwalk/config.hpp"
#include "crystalwalk/markov.hpp"

namespace crystalwalk {

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

struct SuiteResult {
  std::string name;
  Status status = Status::Skipped;
  std::string summary;
  nlohmann::json details = nlohmann::json::object();  // numbers with tolerances, budgets, inputs
  double seconds = 0.0;
};

/// Runs body, timing it; budget overruns become SKIPPED, other library errors FAIL.
SuiteResult run_suite(const std::string& name, const std::function<void(SuiteResult&)>& body);

/// Suite names accepted by `verify`.
const std::vector<std::string>& suite_names();

/// One named suite against the configured system.
SuiteResult run_named_suite(const std::string& name, const ExperimentConfig& cfg);
/// Every suite applicable to the configured system, in order.
std::vector<SuiteResult> verify_all(const ExperimentConfig& cfg);

/// Dominant weights whose Dynkin labels sum to at most `level`.
std::vector<Weight> small_dominant_weights(const RootSystem& rs, int level);

/// Nonincreasing sequence, treating values below `floor` as equal (exact identities).
bool nonincreasing(const std::vector<double>& v, double floor = 1e-12);
/// Strictly decreasing sequence.
bool strictly_decreasing(const std::vector<double>& v);

/// How a convergence series is judged: every step smaller, or only last below first.
/// The overall rule is for short generic ladders where lattice rounding makes single steps noisy.
enum class Trend { Monotone, Overall };

// Suites with explicit inputs; the acceptance runner composes these.
void suite_oracle(SuiteResult& r, const CrystalPtr& delta, const Weight& mu, int max_ell, std::uint64_t word_budget);
void suite_characters(SuiteResult& r, const RootSystemPtr& rs, std::span<const double> log_x, int level,
                      std::size_t max_vertices);
void suite_identity(SuiteResult& r, const std::vector<CrystalPtr>& deltas, int samples, std::uint64_t seed);
void suite_intertwining(SuiteResult& r, const WalkModel& model, std::size_t min_window, double tol);
void suite_doob(SuiteResult& r, const WalkModel& model, std::size_t min_window, double tol);
void suite_harmonic(SuiteResult& r, const WalkModel& model, std::size_t min_window, double tol);
void suite_laws(SuiteResult& r, const WalkModel& model, int L, double tol);
struct ExitOptions {
  Weight lambda;
  int survival_L = 2000;
  double survival_rel_tol = 0.01;
  std::uint64_t mc_n = 100'000;
  int mc_horizon = 10'000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  bool run_survival = true;
  /// Reference value when an independent closed form is known.
  std::optional<double> oracle;
};
void suite_exit(SuiteResult& r, const WalkModel& model, const ExitOptions& opts);
void suite_psi_limit(SuiteResult& r, const WalkModel& model, const std::vector<int>& ladder, double final_tol);
void suite_martin(SuiteResult& r, const WalkModel& model, const std::vector<Weight>& mus, const std::vector<int>& ladder,
                  double final_tol, Trend trend = Trend::Monotone);
void suite_asymptotics(SuiteResult& r, const WalkModel& model, const std::vector<Weight>& mus,
                       const std::vector<int>& ells, double final_tol, Trend trend = Trend::Monotone);
void suite_quotient(SuiteResult& r, const WalkModel& model, const std::vector<Weight>& hs, const std::vector<int>& ells,
                    Trend trend = Trend::Monotone);
void suite_markov(SuiteResult& r, const WalkModel& model, std::size_t n_traj, int ell, std::uint64_t seed,
                  double min_fraction, unsigned threads);
void suite_minuscule_type(SuiteResult& r, const RootSystemPtr& rs, const std::vector<int>& indices,
                          std::span<const double> t, std::size_t min_window, double tol,
                          std::optional<std::size_t> expected_steps);
void suite_doob_witness(SuiteResult& r, const WalkModel& non_minuscule);

/// Acceptance criteria 1..13 with the fixed inputs and tolerances of the build contract.
int acceptance_count();
SuiteResult acceptance_criterion(int k, unsigned threads = 0);

nlohmann::json to_json(const SuiteResult& r);
std::string format_line(const SuiteResult& r);

}  // namespace crystalwalk
