#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "crystalwalk/bigint.hpp"
#include "crystalwalk/counting.hpp"
#include "crystalwalk/crystal.hpp"
#include "crystalwalk/spectral.hpp"

namespace crystalwalk {

enum class KernelKind { Stochastic, Substochastic, Rectangular };

struct KernelEntry {
  Weight to;
  double p = 0.0;
};

struct KernelRow {
  Weight from;
  std::vector<KernelEntry> entries;
  /// Some successor lies outside the window the kernel was built on.
  bool boundary = false;
  double sum() const;
};

/// Sparse kernel restricted to a finite set of row states.
class TransitionKernel {
 public:
  KernelKind kind = KernelKind::Stochastic;

  void add_row(KernelRow row);
  const std::vector<KernelRow>& rows() const noexcept { return rows_; }
  const KernelRow* row(const Weight& from) const;
  double entry(const Weight& from, const Weight& to) const;
  std::size_t nonzeros() const;

 private:
  std::vector<KernelRow> rows_;
  std::unordered_map<Weight, std::size_t, WeightHash> index_;
};

/// A letter crystal at solved spectral parameters, with caches for the
/// characters, weight multiplicities and tensor multiplicities the kernels need.
/// Safe for concurrent use.
class WalkModel {
 public:
  explicit WalkModel(SpectralParams params, std::size_t vertex_budget = kDefaultVertexBudget);

  const SpectralParams& params() const noexcept { return params_; }
  const RootSystem& root_system() const noexcept { return *rs_; }
  const RootSystemPtr& root_system_ptr() const noexcept { return rs_; }
  const CrystalTable& letters() const noexcept { return *params_.crystal; }
  std::span<const double> log_x() const noexcept { return params_.log_x; }
  /// Every i-string of the letter crystal has length at most 1 (sums of minuscule crystals).
  bool minuscule_type() const noexcept { return minuscule_type_; }

  /// Letter weights beta with probability K_{delta,beta} x^beta / s_delta(x).
  const std::vector<std::pair<Weight, double>>& step_probabilities() const noexcept { return steps_; }
  double step_probability(const Weight& beta) const;
  const std::vector<std::pair<Weight, unsigned long>>& step_counts() const noexcept { return counts_; }

  double log_s(const Weight& lambda) const;
  double psi(const Weight& lambda) const;
  /// K_{lambda, .} from the extracted B(lambda).
  std::map<Weight, std::uint64_t> weight_multiplicities(const Weight& lambda) const;
  /// m^lambda_{mu, delta} for all lambda.
  std::map<Weight, BigInt> tensor_multiplicities(const Weight& mu) const;

  const HighestWordBuilder& builder() const noexcept { return builder_; }

 private:
  SpectralParams params_;
  RootSystemPtr rs_;
  std::size_t vertex_budget_;
  bool minuscule_type_ = false;
  std::vector<std::pair<Weight, double>> steps_;
  std::vector<std::pair<Weight, unsigned long>> counts_;
  HighestWordBuilder builder_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Weight, double, WeightHash> log_s_cache_;
  mutable std::unordered_map<Weight, std::map<Weight, std::uint64_t>, WeightHash> k_cache_;
  mutable std::unordered_map<Weight, std::map<Weight, BigInt>, WeightHash> m_cache_;
};

/// Dominant weights reachable from start in at most L steps, with their depth.
struct Window {
  std::vector<Weight> states;
  std::unordered_map<Weight, int, WeightHash> depth;
  int L = 0;
  bool interior(const Weight& w) const;
};

Window dominant_window(const WalkModel& model, const Weight& start, int L);
/// Smallest window from the origin with at least min_states states.
Window dominant_window_with_size(const WalkModel& model, std::size_t min_states, int max_L = 64);

TransitionKernel kernel_W(const WalkModel& model, const Window& window);
TransitionKernel restrict_to_chamber(const TransitionKernel& kernel, const RootSystem& rs);
TransitionKernel kernel_H(const WalkModel& model, const Window& window);
/// Pi_h(a, b) = h(b) / h(a) Pi(a, b); DomainError on a nonpositive h value.
TransitionKernel doob_transform(const TransitionKernel& kernel, const std::function<double(const Weight&)>& h);
/// K(lambda, beta) = K_{lambda,beta} x^beta / s_lambda(x).
TransitionKernel intertwiner(const WalkModel& model, const Window& window);

struct ResidualReport {
  double max_residual = 0.0;
  std::size_t rows_checked = 0;
  std::size_t boundary_rows = 0;
  std::size_t window_states = 0;
  double max_row_sum_error = 0.0;
};

/// Pi_H K = K Pi_W on the interior rows of the window.
ResidualReport check_intertwining(const WalkModel& model, const Window& window);
/// Pi_H = (Pi_W restricted to the chamber)_psi entrywise on interior rows.
ResidualReport check_doob(const WalkModel& model, const Window& window);
/// |Sum_lambda Pi_W(mu, lambda) psi(lambda) - psi(mu)| over interior rows.
ResidualReport check_psi_harmonic(const WalkModel& model, const Window& window);

struct DoobObstruction {
  double restricted_w_00 = 0.0;  // Pi_W restricted to the chamber, entry (0, 0)
  double h_00 = 0.0;             // Pi_H(0, 0)
  bool witnessed = false;        // first > 0 while second == 0: no positive h relates them
};
DoobObstruction doob_obstruction_at_origin(const WalkModel& model);

/// Per-length total of f^l_lambda s_lambda(x) / s_delta(x)^l (should be 1).
std::vector<double> law_totals(const WalkModel& model, int L);

struct GreenTable {
  Weight mu;
  int L = 0;
  std::map<Weight, double> values;  // Gamma_L(mu, lambda)
  std::map<Weight, double> martin;  // Gamma_L(mu, lambda) / Gamma_L(0, lambda)
};

GreenTable green_truncated(const WalkModel& model, const Weight& mu, int L);

struct GreenTargets {
  std::vector<double> values;
  int L_used = 0;
  bool capped = false;
};

/// Gamma(start, target) for each target, truncated adaptively: stop once every target's
/// last increment is below rel_tol of its accumulated value (hard cap L_cap).
GreenTargets green_at_targets(const WalkModel& model, const Weight& start, std::span<const Weight> targets,
                              double rel_tol = 1e-6, int L_cap = 5000);

struct MartinPoint {
  int a = 0;
  Weight lambda;
  double kernel = 0.0;  // K(mu, lambda^(a))
  double psi = 0.0;
  double rel_error = 0.0;
};

struct MartinSeries {
  Weight mu;
  std::vector<MartinPoint> points;
  int L_used = 0;
  bool capped = false;
};

/// lambda^(a) = nearest weight of P to a m, optionally inside coset_rep + Q, moved to the dominant chamber.
Weight drift_lattice_point(const WalkModel& model, double a, const std::optional<Weight>& coset_rep = std::nullopt);

/// Targets lie in a delta + Q so both Green functions can reach them; mu must lie in some j delta + Q.
MartinSeries martin_limit_check(const WalkModel& model, const Weight& mu, std::span<const int> ladder);

/// Sum_w eps(w) x^{w(lambda+rho) - (lambda+rho)} = x^{-lambda} s_lambda(x) prod (1 - x^{-alpha}).
/// DomainError unless every t_i is in (0, 1) and the letters are of minuscule type.
double exit_probability(const WalkModel& model, const Weight& lambda);

/// P_lambda(W_1..W_l in the closed chamber) for l = 0..L from exact path counts.
std::vector<double> survival_dp(const WalkModel& model, const Weight& lambda, int L);

enum class QuotientMode { LocalLimit, Renewal };

struct RatioPoint {
  int ell = 0;
  Weight g;
  double ratio = 0.0;
  bool skipped = false;
  std::string note;
  /// Renewal mode: last included term relative to the partial sum.
  double truncation = 0.0;
};

/// llt: (f^l_{g+h} / f^l_g) x^h with g = g_l nearest to l m in l delta + Q.
/// renewal: Sum_{j <= 2l} P(stay, S_j = g_l + h) / Sum_{j <= 2l} P(stay, S_j = g_l).
std::vector<RatioPoint> quotient_ratio_checks(const WalkModel& model, QuotientMode mode,
                                              std::span<const int> ells, const Weight& h);

struct AsymptoticPoint {
  int ell = 0;
  int shift = 0;  // j with mu in j delta + Q
  Weight lambda;
  double ratio = 0.0;   // f^l_{lambda/mu} s_delta^j / f^{l+j}_lambda
  double target = 0.0;  // s_mu(x)
  double rel_error = 0.0;
};

std::vector<AsymptoticPoint> asymptotic_multiplicity_ratios(const WalkModel& model, const Weight& mu,
                                                            std::span<const int> ells);

struct PsiLimitPoint {
  int a = 0;
  Weight lambda;
  double psi = 0.0;
  double nabla = 0.0;
  double rel_gap = 0.0;  // |psi / nabla - 1|
};

std::vector<PsiLimitPoint> psi_limit_series(const WalkModel& model, std::span<const int> ladder);

/// Direct sum of minuscule crystals B(w_j), j in indices; NotMinusculeError unless
/// the sum has one-dimensional weight spaces and is listed for the type.
CrystalPtr minuscule_type_crystal(const RootSystemPtr& rs, std::span<const int> indices);

struct MinusculeTypeReport {
  std::size_t letters = 0;
  std::size_t distinct_steps = 0;
  bool multiplicity_free = false;
  ResidualReport doob;
  ResidualReport harmonic;
};

MinusculeTypeReport minuscule_type_kernels(const RootSystemPtr& rs, std::span<const int> indices,
                                           std::span<const double> t, std::size_t min_window = 30);

}  // namespace crystalwalk
