#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crystalwalk/crystal.hpp"
#include "crystalwalk/root_system.hpp"
#include "crystalwalk/weight.hpp"

namespace crystalwalk {

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kNormalizationTolerance = 1e-12;

/// Free direction of the type-A system x^{alpha_i} = 1 / t_i.
enum class Gauge { SumOne, FirstOne };

Gauge parse_gauge(std::string_view text);
std::string to_string(Gauge gauge);

/// Solution x of x^{alpha_i} = 1/t_i, returned as log x (ambient dimension).
std::vector<double> solve_log_x(const RootSystem& rs, std::span<const double> t, Gauge gauge = Gauge::SumOne);
std::vector<double> solve_x_from_t(const RootSystem& rs, std::span<const double> t, Gauge gauge = Gauge::SumOne);
/// t_i = x^{-alpha_i}.
std::vector<double> t_from_log_x(const RootSystem& rs, std::span<const double> log_x);

/// x^beta given log x.
double monomial(const Weight& beta, std::span<const double> log_x);

struct CharacterValue {
  double log_value = 0.0;
  /// Set when x sat on some but not all root hyperplanes and a 1e-7 jitter was used.
  bool degraded = false;
  double value() const;
};

/// Weyl character formula s_lambda(x). The argument is first moved into the
/// dominant chamber (s_lambda is W-invariant) so every alternating term is at
/// most 1 in size; at x on every root hyperplane the dimension formula is used.
CharacterValue weyl_character_log(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x);
double weyl_character(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x);

/// Sum_w eps(w) x^{w(lambda+rho) - (lambda+rho)}.
double weyl_alternating_sum(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x);
/// Same sum without the identity term, for small differences from 1.
double weyl_alternating_tail(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x);

/// Sum_b x^{wt b}.
double crystal_character(const CrystalTable& c, std::span<const double> log_x);
double crystal_character(const ExtractedCrystal& c, std::span<const double> log_x);

/// Spectral data of a letter crystal at a solved x.
struct SpectralParams {
  CrystalPtr crystal;
  Gauge gauge = Gauge::SumOne;
  std::vector<double> t;
  std::vector<double> log_x;
  std::vector<double> x;
  double s_delta = 0.0;
  std::vector<double> letter_probs;
  std::vector<double> drift;

  const RootSystem& root_system() const { return crystal->root_system(); }
};

/// Builds the distribution p_a = x^{wt a} / s_delta(x) at a given log x.
SpectralParams letter_distribution(const CrystalPtr& crystal, std::span<const double> log_x,
                                   Gauge gauge = Gauge::SumOne);
/// Solves x from t, then builds the distribution.
SpectralParams spectral_params(const CrystalPtr& crystal, std::span<const double> t, Gauge gauge = Gauge::SumOne);

/// m = Sum_a p_a wt(a).
std::vector<double> drift(const SpectralParams& params);

/// True when every t_i is in (0, 1), equivalently the drift is inside the open chamber.
bool all_t_below_one(std::span<const double> t);

/// The t with 0 < t_i < 1 whose drift is exactly m (m strictly dominant, inside the weight polytope).
std::vector<double> t_from_drift(const CrystalPtr& crystal, std::span<const double> m);

/// A t with 0 < t_i < 1 whose drift points along `direction`.
/// Type A: the drift is fixed by its coordinate sum; other types: the drift is
/// placed halfway to the boundary of the weight polytope along the ray.
std::vector<double> t_from_drift_direction(const CrystalPtr& crystal, std::span<const double> direction);

/// psi(lambda) = x^{-lambda} s_lambda(x).
double psi(const RootSystem& rs, const Weight& lambda, std::span<const double> log_x);
/// nabla = prod_{alpha > 0} 1 / (1 - t^{[alpha]}); DomainError if some t^{[alpha]} >= 1.
double nabla(const RootSystem& rs, std::span<const double> t);

/// Real vectors: pairing with alpha_i^vee and chamber tests.
double pairing_real(const RootSystem& rs, std::span<const double> v, int i);
bool strictly_dominant_real(const RootSystem& rs, std::span<const double> v);

}  // namespace crystalwalk
