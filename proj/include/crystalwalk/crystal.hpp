#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crystalwalk/bigint.hpp"
#include "crystalwalk/root_system.hpp"
#include "crystalwalk/weight.hpp"

namespace crystalwalk {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = ~Vertex{0};
using Word = std::vector<Vertex>;

/// Finite seminormal crystal stored as flat tables indexed by (vertex, colour).
/// Minuscule crystals, extracted components and direct sums all share this form,
/// so every word-level operation below works over any of them.
class CrystalTable {
 public:
  explicit CrystalTable(RootSystemPtr rs);

  const RootSystem& root_system() const noexcept { return *rs_; }
  const RootSystemPtr& root_system_ptr() const noexcept { return rs_; }
  std::size_t size() const noexcept { return weights_.size(); }
  int rank() const noexcept { return rank_; }

  const Weight& weight(Vertex b) const { return weights_[b]; }
  const std::vector<Weight>& weights() const noexcept { return weights_; }
  const std::string& label(Vertex b) const { return labels_[b]; }
  int eps(Vertex b, int i) const { return eps_[b * rank_ + i]; }
  int phi(Vertex b, int i) const { return phi_[b * rank_ + i]; }
  Vertex f(Vertex b, int i) const { return f_[b * rank_ + i]; }
  Vertex e(Vertex b, int i) const { return e_[b * rank_ + i]; }

  /// Vertices with every eps_i = 0.
  std::vector<Vertex> highest_vertices() const;
  /// Number of vertices of each weight.
  std::map<Weight, std::uint64_t> weight_multiplicities() const;
  /// First vertex of the given weight, if any.
  std::optional<Vertex> find(const Weight& w) const;

  Vertex add_vertex(const Weight& w, std::string label);
  /// Records b --i--> target.
  void add_arrow(Vertex b, int i, Vertex target);
  /// Computes eps/phi from string lengths; call once all arrows are in place.
  void finalize();

  /// Disjoint union; vertex ids of part k are shifted by the sizes of parts 0..k-1.
  static CrystalTable direct_sum(std::span<const std::shared_ptr<const CrystalTable>> parts);

 private:
  RootSystemPtr rs_;
  int rank_ = 0;
  std::vector<Weight> weights_;
  std::vector<std::string> labels_;
  std::vector<int> eps_, phi_;
  std::vector<Vertex> f_, e_;
};

using CrystalPtr = std::shared_ptr<const CrystalTable>;

/// B(delta) for a minuscule delta: the Weyl orbit of delta in BFS order from delta,
/// with f_i b defined exactly when <wt b, alpha_i^vee> = 1.
CrystalPtr minuscule_crystal(const RootSystemPtr& rs, const Weight& delta);
/// Same, addressed by 0-based fundamental index; names the minuscule table on failure.
CrystalPtr minuscule_crystal(const RootSystemPtr& rs, int fundamental_index);

/// (eps_i, phi_i) for all colours of a word, folded left to right.
struct Signature {
  std::array<int, Weight::kMaxDim> eps{};
  std::array<int, Weight::kMaxDim> phi{};
  bool highest(int rank) const noexcept;
};

Signature append_letter(const CrystalTable& c, const Signature& prefix, Vertex letter) noexcept;
Signature word_signature(const CrystalTable& c, std::span<const Vertex> word);
std::pair<int, int> tensor_eps_phi(const CrystalTable& c, std::span<const Vertex> word, int i);
Weight word_weight(const CrystalTable& c, std::span<const Vertex> word);

std::optional<Word> apply_e(const CrystalTable& c, std::span<const Vertex> word, int i);
std::optional<Word> apply_f(const CrystalTable& c, std::span<const Vertex> word, int i);
/// In-place variants; return false (word untouched) when the operator is zero.
bool raise_in_place(const CrystalTable& c, Word& word, int i);
bool lower_in_place(const CrystalTable& c, Word& word, int i);

bool is_highest(const CrystalTable& c, std::span<const Vertex> word);
/// Highest-weight test through the tensor criterion: every prefix is highest and
/// the last letter satisfies eps_i(a) <= phi_i(prefix).
bool is_highest_by_prefix_criterion(const CrystalTable& c, std::span<const Vertex> word);

/// Source vertex of the connected component of the word.
Word pitman_transform(const CrystalTable& c, std::span<const Vertex> word);

std::string word_to_string(const CrystalTable& c, std::span<const Vertex> word);

/// Connected component B(b) of a highest word, materialized by BFS under the f_i.
class ExtractedCrystal {
 public:
  const CrystalPtr& letters() const noexcept { return letters_; }
  const Word& highest_word() const noexcept { return vertices_.front(); }
  const Weight& highest_weight() const noexcept { return weights_.front(); }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Word>& vertices() const noexcept { return vertices_; }
  const std::vector<Weight>& weights() const noexcept { return weights_; }
  std::uint64_t multiplicity(const Weight& beta) const;
  std::map<Weight, std::uint64_t> weight_multiplicities() const;

  /// Re-encodes the component as a flat crystal whose vertices are the words.
  CrystalPtr to_table() const;

  friend ExtractedCrystal extract_component(const CrystalPtr& letters, const Word& highest,
                                            std::size_t budget);

 private:
  CrystalPtr letters_;
  std::vector<Word> vertices_;
  std::vector<Weight> weights_;
  std::vector<std::vector<Vertex>> arrows_;  // arrows_[k][i]: index of f_i(vertex k) or kNoVertex
};

inline constexpr std::size_t kDefaultVertexBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

ExtractedCrystal extract_component(const CrystalPtr& letters, const Word& highest,
                                   std::size_t budget = kDefaultVertexBudget);

/// Multiset of highest weights of B^{(x)l}, by enumerating every word.
std::map<Weight, BigInt> decompose_tensor_power(const CrystalTable& c, int power,
                                                std::uint64_t word_budget = kDefaultWordBudget);

/// Highest words of arbitrary dominant weight, spelled in the union of all
/// minuscule crystals of the root system.
class HighestWordBuilder {
 public:
  explicit HighestWordBuilder(RootSystemPtr rs);

  const CrystalPtr& alphabet() const noexcept { return alphabet_; }
  /// A highest word of weight lambda. Throws DomainError when lambda is not dominant
  /// or (type A) has a negative last coordinate.
  Word highest_word(const Weight& lambda) const;
  ExtractedCrystal extract(const Weight& lambda, std::size_t budget = kDefaultVertexBudget) const;

 private:
  RootSystemPtr rs_;
  CrystalPtr alphabet_;
  std::vector<Word> fundamental_words_;
  Word determinant_word_;
};

}  // namespace crystalwalk
