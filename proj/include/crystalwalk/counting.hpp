#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crystalwalk/bigint.hpp"
#include "crystalwalk/crystal.hpp"
#include "crystalwalk/errors.hpp"
#include "crystalwalk/root_system.hpp"
#include "crystalwalk/weight.hpp"

namespace crystalwalk {

namespace detail {

inline void accumulate(BigInt& dst, const BigInt& src, unsigned long coef) {
  if (coef == 1) {
    dst += src;
  } else {
    mpz_addmul_ui(dst.get_mpz_t(), src.get_mpz_t(), coef);
  }
}

inline void accumulate(double& dst, double src, double coef) { dst += src * coef; }

inline bool is_zero(const BigInt& v) { return sgn(v) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

}  // namespace detail

/// Forward dynamic programme for a lattice walk with a fixed finite step set,
/// optionally killed on leaving the closed Weyl chamber. Each state is hashed
/// once; its successor indices are cached, so a step costs O(active * steps).
template <class Value, class Coef>
class ChamberWalk {
 public:
  using Step = std::pair<Weight, Coef>;

  ChamberWalk(RootSystemPtr rs, std::vector<Step> steps, const Weight& start, Value initial,
              bool restrict_to_chamber = true)
      : rs_(std::move(rs)), steps_(std::move(steps)), restrict_(restrict_to_chamber) {
    rs_->check_weight(start);
    if (restrict_ && !rs_->is_dominant(start)) throw DomainError("start " + start.to_string() + " is not dominant");
    const auto idx = index_of(start);
    cur_[idx] = std::move(initial);
    active_.push_back(idx);
  }

  int length() const noexcept { return length_; }
  std::size_t active_size() const noexcept { return active_.size(); }
  std::size_t states_seen() const noexcept { return states_.size(); }

  Value value(const Weight& w) const {
    const auto it = index_.find(w);
    return it == index_.end() ? Value(0) : cur_[it->second];
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto idx : active_) f(states_[idx], cur_[idx]);
  }

  Value total() const {
    Value s(0);
    for (auto idx : active_) s += cur_[idx];
    return s;
  }

  void advance() {
    const std::size_t S = steps_.size();
    next_active_.clear();
    for (std::size_t a = 0; a < active_.size(); ++a) {
      const std::uint32_t idx = active_[a];
      if (detail::is_zero(cur_[idx])) continue;
      for (std::size_t s = 0; s < S; ++s) {
        if (next_[idx * S + s] == kUnknown) resolve(idx, s);
      }
      const Value& v = cur_[idx];
      for (std::size_t s = 0; s < S; ++s) {
        const std::uint32_t j = next_[idx * S + s];
        if (j == kDead) continue;
        if (!in_next_[j]) {
          in_next_[j] = 1;
          next_active_.push_back(j);
        }
        detail::accumulate(nxt_[j], v, steps_[s].second);
      }
    }
    for (auto idx : active_) cur_[idx] = 0;
    for (auto j : next_active_) in_next_[j] = 0;
    std::swap(cur_, nxt_);
    std::swap(active_, next_active_);
    ++length_;
  }

 private:
  static constexpr std::uint32_t kUnknown = ~std::uint32_t{0};
  static constexpr std::uint32_t kDead = kUnknown - 1;

  std::uint32_t index_of(const Weight& w) {
    auto [it, inserted] = index_.try_emplace(w, static_cast<std::uint32_t>(states_.size()));
    if (inserted) {
      states_.push_back(w);
      cur_.emplace_back(0);
      nxt_.emplace_back(0);
      in_next_.push_back(0);
      next_.resize(next_.size() + steps_.size(), kUnknown);
    }
    return it->second;
  }

  void resolve(std::uint32_t idx, std::size_t s) {
    const Weight target = states_[idx] + steps_[s].first;
    std::uint32_t j = kDead;
    if (!restrict_ || rs_->is_dominant(target)) j = index_of(target);
    next_[idx * steps_.size() + s] = j;
  }

  RootSystemPtr rs_;
  std::vector<Step> steps_;
  bool restrict_;
  int length_ = 0;
  std::unordered_map<Weight, std::uint32_t, WeightHash> index_;
  std::vector<Weight> states_;
  std::vector<std::uint32_t> next_;
  std::vector<Value> cur_, nxt_;
  std::vector<std::uint32_t> active_, next_active_;
  std::vector<char> in_next_;
};

using CountWalk = ChamberWalk<BigInt, unsigned long>;
using ProbabilityWalk = ChamberWalk<double, double>;

/// Letter weights of a crystal with their multiplicities K_{delta, beta}.
std::vector<std::pair<Weight, unsigned long>> step_multiset(const CrystalTable& delta);

/// Rows f^l_{lambda/mu} for l = 0..L, over dominant weights.
struct DominantCountTable {
  Weight mu;
  int L = 0;
  /// False when the letter crystal is not minuscule: rows then count dominant
  /// paths, which need not equal tensor multiplicities.
  bool minuscule = true;
  std::vector<std::map<Weight, BigInt>> rows;

  BigInt at(int ell, const Weight& lambda) const;
};

DominantCountTable path_count_dp(const CrystalTable& delta, const Weight& mu, int L);

/// Counts highest words b_mu (x) a_1 (x) ... (x) a_l by weight, enumerating every word.
std::map<Weight, BigInt> brute_force_count(const CrystalTable& delta, const Weight& mu, int ell,
                                           std::uint64_t word_budget = kDefaultWordBudget);

/// K_{lambda, beta}: vertices of weight beta in B(lambda).
BigInt weight_multiplicity(const ExtractedCrystal& b_lambda, const Weight& beta);

/// m^lambda_{mu, delta} for every lambda: vertices b of B(delta) with
/// eps_i(b) <= <mu, alpha_i^vee>, i.e. highest words b_mu (x) b.
std::map<Weight, BigInt> tensor_multiplicities(const Weight& mu, const CrystalTable& delta);
BigInt tensor_multiplicity(const Weight& mu, const CrystalTable& delta, const Weight& lambda);

struct IdentityCheck {
  bool holds = false;
  BigInt lhs;
  BigInt rhs;
};

/// Sum_{lambda} m^lambda_{mu,delta} K_{lambda,beta} = Sum_gamma K_{mu,gamma} K_{delta,beta-gamma}.
IdentityCheck verify_identity_lemma(const HighestWordBuilder& builder, const CrystalTable& delta,
                                    const Weight& mu, const Weight& beta);

struct SkewCheck {
  bool holds = false;  // f^l_{lambda/mu} = Sum_kappa f^l_kappa m^lambda_{kappa,mu}
  BigInt lhs;
  BigInt rhs;
  bool coefficient_form_holds = false;  // f^l_{lambda/mu} = Sum_gamma f^l_{lambda-gamma} K_{mu,gamma}
  BigInt coefficient_form_rhs;
  bool deep = false;  // every lambda - gamma with K_{mu,gamma} > 0 is dominant
};

SkewCheck verify_skew_decomposition(const HighestWordBuilder& builder, const CrystalTable& delta,
                                    const Weight& mu, const Weight& lambda, int ell);

/// Smallest a such that, for all a' in [a, a_max], every kappa = a' lambda - gamma
/// (gamma a weight of V(mu)) is dominant and m^{a' lambda}_{kappa,mu} = K_{mu,gamma}.
std::optional<int> skew_threshold(const HighestWordBuilder& builder, const Weight& mu, const Weight& lambda,
                                  int a_max);

/// Nearest weight of P to a real vector; when coset_rep is given, restricted to coset_rep + Q.
Weight nearest_weight(const RootSystem& rs, std::span<const double> v,
                      const std::optional<Weight>& coset_rep = std::nullopt);

/// Smallest j >= 0 with mu in j delta + Q.
int coset_offset(const RootSystem& rs, const Weight& mu, const Weight& delta, int max_j = 64);

}  // namespace crystalwalk
