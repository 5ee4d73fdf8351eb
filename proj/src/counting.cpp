#include "crystalwalk/counting.hpp"

#include <cmath>
#include <limits>

namespace crystalwalk {

namespace {

bool strings_of_length_one(const CrystalTable& c) {
  for (Vertex b = 0; b < c.size(); ++b) {
    for (int i = 0; i < c.rank(); ++i) {
      if (c.eps(b, i) + c.phi(b, i) > 1) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::pair<Weight, unsigned long>> step_multiset(const CrystalTable& delta) {
  std::vector<std::pair<Weight, unsigned long>> out;
  for (const auto& [w, n] : delta.weight_multiplicities()) out.emplace_back(w, static_cast<unsigned long>(n));
  return out;
}

BigInt DominantCountTable::at(int ell, const Weight& lambda) const {
  if (ell < 0 || ell >= static_cast<int>(rows.size())) return 0;
  const auto it = rows[ell].find(lambda);
  return it == rows[ell].end() ? BigInt(0) : it->second;
}

DominantCountTable path_count_dp(const CrystalTable& delta, const Weight& mu, int L) {
  if (L < 0) throw DomainError("path length bound must be nonnegative");
  DominantCountTable table;
  table.mu = mu;
  table.L = L;
  table.minuscule = strings_of_length_one(delta);
  CountWalk walk(delta.root_system_ptr(), step_multiset(delta), mu, BigInt(1));
  for (int ell = 0; ell <= L; ++ell) {
    auto& row = table.rows.emplace_back();
    walk.for_each([&](const Weight& w, const BigInt& v) {
      if (sgn(v) != 0) row.emplace(w, v);
    });
    if (ell < L) walk.advance();
  }
  return table;
}

std::map<Weight, BigInt> brute_force_count(const CrystalTable& delta, const Weight& mu, int ell,
                                           std::uint64_t word_budget) {
  if (ell < 0) throw DomainError("word length must be nonnegative");
  double total = 1.0;
  for (int k = 0; k < ell; ++k) total *= static_cast<double>(delta.size());
  if (total > static_cast<double>(word_budget)) {
    throw ResourceLimitError("brute force over " + std::to_string(delta.size()) + "^" + std::to_string(ell) +
                             " words exceeds the word budget of " + std::to_string(word_budget));
  }
  const HighestWordBuilder builder(delta.root_system_ptr());
  const Word head = builder.highest_word(mu);
  const Signature head_sig = word_signature(*builder.alphabet(), head);

  std::map<Weight, std::uint64_t> counts;
  std::vector<Signature> sig(ell + 1);
  std::vector<Weight> wt(ell + 1, mu);
  sig[0] = head_sig;
  std::vector<Vertex> digit(ell, 0);
  if (ell == 0) {
    if (sig[0].highest(delta.rank())) ++counts[mu];
  } else {
    int depth = 0;
    while (depth >= 0) {
      if (depth == ell) {
        if (sig[ell].highest(delta.rank())) ++counts[wt[ell]];
        --depth;
        ++digit[depth];
        continue;
      }
      if (digit[depth] == delta.size()) {
        digit[depth] = 0;
        --depth;
        if (depth >= 0) ++digit[depth];
        continue;
      }
      sig[depth + 1] = append_letter(delta, sig[depth], digit[depth]);
      wt[depth + 1] = wt[depth] + delta.weight(digit[depth]);
      ++depth;
    }
  }
  std::map<Weight, BigInt> out;
  for (const auto& [w, n] : counts) out.emplace(w, BigInt(static_cast<unsigned long>(n)));
  return out;
}

BigInt weight_multiplicity(const ExtractedCrystal& b_lambda, const Weight& beta) {
  return BigInt(static_cast<unsigned long>(b_lambda.multiplicity(beta)));
}

std::map<Weight, BigInt> tensor_multiplicities(const Weight& mu, const CrystalTable& delta) {
  const RootSystem& rs = delta.root_system();
  if (!rs.is_dominant(mu)) throw DomainError("weight " + mu.to_string() + " is not dominant");
  const auto labels = rs.dynkin_labels(mu);
  std::map<Weight, BigInt> out;
  for (Vertex b = 0; b < delta.size(); ++b) {
    bool top = true;
    for (int i = 0; i < rs.rank() && top; ++i) top = delta.eps(b, i) <= labels[i];
    if (top) out[mu + delta.weight(b)] += 1;
  }
  return out;
}

BigInt tensor_multiplicity(const Weight& mu, const CrystalTable& delta, const Weight& lambda) {
  const auto all = tensor_multiplicities(mu, delta);
  const auto it = all.find(lambda);
  return it == all.end() ? BigInt(0) : it->second;
}

IdentityCheck verify_identity_lemma(const HighestWordBuilder& builder, const CrystalTable& delta,
                                    const Weight& mu, const Weight& beta) {
  IdentityCheck out;
  out.lhs = 0;
  out.rhs = 0;
  for (const auto& [lambda, m] : tensor_multiplicities(mu, delta)) {
    out.lhs += m * weight_multiplicity(builder.extract(lambda), beta);
  }
  const auto k_delta = delta.weight_multiplicities();
  for (const auto& [gamma, k] : builder.extract(mu).weight_multiplicities()) {
    const auto it = k_delta.find(beta - gamma);
    if (it != k_delta.end()) out.rhs += BigInt(static_cast<unsigned long>(k)) * static_cast<unsigned long>(it->second);
  }
  out.holds = out.lhs == out.rhs;
  return out;
}

SkewCheck verify_skew_decomposition(const HighestWordBuilder& builder, const CrystalTable& delta,
                                    const Weight& mu, const Weight& lambda, int ell) {
  const auto& rs = delta.root_system_ptr();
  SkewCheck out;
  CountWalk from_mu(rs, step_multiset(delta), mu, BigInt(1));
  CountWalk from_zero(rs, step_multiset(delta), rs->zero(), BigInt(1));
  for (int k = 0; k < ell; ++k) {
    from_mu.advance();
    from_zero.advance();
  }
  out.lhs = from_mu.value(lambda);
  const ExtractedCrystal b_mu = builder.extract(mu);
  const CrystalPtr b_mu_table = b_mu.to_table();
  out.rhs = 0;
  from_zero.for_each([&](const Weight& kappa, const BigInt& f) {
    if (sgn(f) == 0) return;
    const BigInt m = tensor_multiplicity(kappa, *b_mu_table, lambda);
    if (sgn(m) != 0) out.rhs += f * m;
  });
  out.holds = out.lhs == out.rhs;
  out.coefficient_form_rhs = 0;
  out.deep = true;
  for (const auto& [gamma, k] : b_mu.weight_multiplicities()) {
    const Weight kappa = lambda - gamma;
    if (!rs->is_dominant(kappa)) {
      out.deep = false;
      continue;
    }
    out.coefficient_form_rhs += from_zero.value(kappa) * static_cast<unsigned long>(k);
  }
  out.coefficient_form_holds = out.lhs == out.coefficient_form_rhs;
  return out;
}

std::optional<int> skew_threshold(const HighestWordBuilder& builder, const Weight& mu, const Weight& lambda,
                                  int a_max) {
  const ExtractedCrystal b_mu = builder.extract(mu);
  const CrystalPtr table = b_mu.to_table();
  const auto k_mu = b_mu.weight_multiplicities();
  const RootSystem& rs = table->root_system();
  auto holds_at = [&](int a) {
    const Weight top = a * lambda;
    for (const auto& [gamma, k] : k_mu) {
      const Weight kappa = top - gamma;
      if (!rs.is_dominant(kappa)) return false;
      if (tensor_multiplicity(kappa, *table, top) != static_cast<unsigned long>(k)) return false;
    }
    return true;
  };
  std::optional<int> smallest;
  for (int a = a_max; a >= 1 && holds_at(a); --a) smallest = a;
  return smallest;
}

Weight nearest_weight(const RootSystem& rs, std::span<const double> v, const std::optional<Weight>& coset_rep) {
  const std::size_t N = rs.ambient_dim();
  if (v.size() != N) throw DomainError("vector has the wrong dimension");
  const bool spin_grid = rs.type() == CartanType::B || rs.type() == CartanType::D;
  std::optional<Weight> best;
  double best_dist = std::numeric_limits<double>::infinity();
  auto consider = [&](const Weight& cand) {
    if (coset_rep && !rs.in_root_lattice(cand - *coset_rep)) return;
    double d = 0.0;
    for (std::size_t k = 0; k < N; ++k) d += (cand.real(k) - v[k]) * (cand.real(k) - v[k]);
    if (d < best_dist - 1e-12 || (std::abs(d - best_dist) <= 1e-12 && best && cand > *best)) {
      best_dist = d;
      best = cand;
    }
  };
  for (int radius = 1; radius <= 2 && !best; ++radius) {
    const int span = 2 * radius;
    std::size_t combos = 1;
    for (std::size_t k = 0; k < N; ++k) combos *= static_cast<std::size_t>(span);
    for (int offset_half = 0; offset_half <= (spin_grid ? 1 : 0); ++offset_half) {
      for (std::size_t code = 0; code < combos; ++code) {
        Weight cand(N);
        std::size_t c = code;
        for (std::size_t k = 0; k < N; ++k) {
          const int d = static_cast<int>(c % span) - (radius - 1);
          c /= span;
          // Lattice value (doubled) near v_k on the integer or half-integer grid.
          const double shifted = v[k] - 0.5 * offset_half;
          const int base = static_cast<int>(std::floor(shifted)) + d;
          cand.set_doubled(k, 2 * base + offset_half);
        }
        consider(cand);
      }
    }
  }
  if (!best) throw DomainError("no weight in the requested coset near the given vector");
  return *best;
}

int coset_offset(const RootSystem& rs, const Weight& mu, const Weight& delta, int max_j) {
  for (int j = 0; j <= max_j; ++j) {
    if (rs.in_root_lattice(mu - j * delta)) return j;
  }
  throw DomainError("weight " + mu.to_string() + " is not in any coset j delta + Q with j <= " +
                    std::to_string(max_j));
}

}  // namespace crystalwalk
