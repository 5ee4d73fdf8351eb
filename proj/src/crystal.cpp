#include "crystalwalk/crystal.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "crystalwalk/errors.hpp"

namespace crystalwalk {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Vertex v : w) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

std::string minuscule_label(const Weight& w) {
  int nonzero = -1;
  int count = 0;
  bool spin = true;
  for (std::size_t k = 0; k < w.dim(); ++k) {
    if (w.doubled(k) != 0) {
      nonzero = static_cast<int>(k);
      ++count;
    }
    if (w.doubled(k) != 1 && w.doubled(k) != -1) spin = false;
  }
  if (count == 1 && (w.doubled(nonzero) == 2 || w.doubled(nonzero) == -2)) {
    std::string s = std::to_string(nonzero + 1);
    return w.doubled(nonzero) > 0 ? s : s + "̄";
  }
  if (spin) {
    std::string s;
    for (std::size_t k = 0; k < w.dim(); ++k) s += w.doubled(k) > 0 ? '+' : '-';
    return s;
  }
  return "(" + w.to_string() + ")";
}

std::string minuscule_table_text(const RootSystem& rs) {
  std::string out = "minuscule fundamental weights of " + rs.name() + ":";
  for (int i : rs.minuscule_indices()) out += " w" + std::to_string(i + 1);
  out += " (classical table: A_n all w_i; B_n w_n; C_n w_1; D_n w_1, w_{n-1}, w_n)";
  return out;
}

}  // namespace

CrystalTable::CrystalTable(RootSystemPtr rs) : rs_(std::move(rs)), rank_(rs_->rank()) {}

Vertex CrystalTable::add_vertex(const Weight& w, std::string label) {
  const auto id = static_cast<Vertex>(weights_.size());
  weights_.push_back(w);
  labels_.push_back(std::move(label));
  for (int i = 0; i < rank_; ++i) {
    f_.push_back(kNoVertex);
    e_.push_back(kNoVertex);
    eps_.push_back(0);
    phi_.push_back(0);
  }
  return id;
}

void CrystalTable::add_arrow(Vertex b, int i, Vertex target) {
  f_[b * rank_ + i] = target;
  e_[target * rank_ + i] = b;
}

void CrystalTable::finalize() {
  for (Vertex b = 0; b < size(); ++b) {
    for (int i = 0; i < rank_; ++i) {
      int up = 0;
      for (Vertex v = e(b, i); v != kNoVertex; v = e(v, i)) ++up;
      int down = 0;
      for (Vertex v = f(b, i); v != kNoVertex; v = f(v, i)) ++down;
      eps_[b * rank_ + i] = up;
      phi_[b * rank_ + i] = down;
    }
  }
}

std::vector<Vertex> CrystalTable::highest_vertices() const {
  std::vector<Vertex> out;
  for (Vertex b = 0; b < size(); ++b) {
    bool top = true;
    for (int i = 0; i < rank_ && top; ++i) top = eps(b, i) == 0;
    if (top) out.push_back(b);
  }
  return out;
}

std::map<Weight, std::uint64_t> CrystalTable::weight_multiplicities() const {
  std::map<Weight, std::uint64_t> out;
  for (const auto& w : weights_) ++out[w];
  return out;
}

std::optional<Vertex> CrystalTable::find(const Weight& w) const {
  for (Vertex b = 0; b < size(); ++b) {
    if (weights_[b] == w) return b;
  }
  return std::nullopt;
}

CrystalTable CrystalTable::direct_sum(std::span<const CrystalPtr> parts) {
  if (parts.empty()) throw DomainError("direct sum of zero crystals");
  CrystalTable out(parts.front()->root_system_ptr());
  for (const auto& part : parts) {
    if (part->root_system().name() != out.root_system().name()) {
      throw DomainError("direct sum over different root systems");
    }
    const auto offset = static_cast<Vertex>(out.size());
    for (Vertex b = 0; b < part->size(); ++b) out.add_vertex(part->weight(b), part->label(b));
    for (Vertex b = 0; b < part->size(); ++b) {
      for (int i = 0; i < out.rank_; ++i) {
        if (const Vertex t = part->f(b, i); t != kNoVertex) out.add_arrow(offset + b, i, offset + t);
      }
    }
  }
  out.finalize();
  return out;
}

CrystalPtr minuscule_crystal(const RootSystemPtr& rs, const Weight& delta) {
  rs->check_weight(delta);
  if (!rs->minuscule_index(delta)) {
    throw NotMinusculeError("weight " + delta.to_string() + " is not minuscule for " + rs->name() +
                            "; " + minuscule_table_text(*rs));
  }
  auto crystal = std::make_shared<CrystalTable>(rs);
  std::map<Weight, Vertex> index;
  std::deque<Vertex> queue;
  index[delta] = crystal->add_vertex(delta, minuscule_label(delta));
  queue.push_back(0);
  while (!queue.empty()) {
    const Vertex b = queue.front();
    queue.pop_front();
    const Weight wt = crystal->weight(b);
    for (int i = 0; i < rs->rank(); ++i) {
      if (rs->pairing(wt, i) != Rational(1)) continue;
      const Weight target = wt - rs->simple_roots()[i];
      auto [it, inserted] = index.try_emplace(target, 0);
      if (inserted) {
        it->second = crystal->add_vertex(target, minuscule_label(target));
        queue.push_back(it->second);
      }
      crystal->add_arrow(b, i, it->second);
    }
  }
  crystal->finalize();
  return crystal;
}

CrystalPtr minuscule_crystal(const RootSystemPtr& rs, int fundamental_index) {
  if (fundamental_index < 0 || fundamental_index >= rs->rank()) {
    throw DomainError("fundamental weight index w" + std::to_string(fundamental_index + 1) +
                      " out of range for " + rs->name());
  }
  const auto minuscule = rs->minuscule_indices();
  if (std::find(minuscule.begin(), minuscule.end(), fundamental_index) == minuscule.end()) {
    throw NotMinusculeError("w" + std::to_string(fundamental_index + 1) + " is not minuscule for " +
                            rs->name() + "; " + minuscule_table_text(*rs));
  }
  return minuscule_crystal(rs, rs->fundamental_weights()[fundamental_index]);
}

bool Signature::highest(int rank) const noexcept {
  for (int i = 0; i < rank; ++i) {
    if (eps[i] != 0) return false;
  }
  return true;
}

Signature append_letter(const CrystalTable& c, const Signature& prefix, Vertex letter) noexcept {
  Signature out;
  for (int i = 0; i < c.rank(); ++i) {
    const int ev = c.eps(letter, i);
    const int pv = c.phi(letter, i);
    out.phi[i] = pv + std::max(prefix.phi[i] - ev, 0);
    out.eps[i] = prefix.eps[i] + std::max(ev - prefix.phi[i], 0);
  }
  return out;
}

Signature word_signature(const CrystalTable& c, std::span<const Vertex> word) {
  Signature s;
  for (Vertex a : word) s = append_letter(c, s, a);
  return s;
}

std::pair<int, int> tensor_eps_phi(const CrystalTable& c, std::span<const Vertex> word, int i) {
  if (i < 0 || i >= c.rank()) throw DomainError("colour index " + std::to_string(i) + " out of range");
  int eps = 0;
  int phi = 0;
  for (Vertex a : word) {
    const int ev = c.eps(a, i);
    const int pv = c.phi(a, i);
    eps += std::max(ev - phi, 0);
    phi = pv + std::max(phi - ev, 0);
  }
  return {eps, phi};
}

Weight word_weight(const CrystalTable& c, std::span<const Vertex> word) {
  Weight w = c.root_system().zero();
  for (Vertex a : word) w += c.weight(a);
  return w;
}

namespace {

// Position acted on by e_i (raise) or f_i (lower), or npos when the operator is zero.
std::size_t acting_position(const CrystalTable& c, std::span<const Vertex> word, int i, bool raise) {
  constexpr std::size_t npos = ~std::size_t{0};
  if (word.empty()) return npos;
  std::vector<int> prefix_phi(word.size() + 1, 0);
  int eps = 0;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const int ev = c.eps(word[k], i);
    eps += std::max(ev - prefix_phi[k], 0);
    prefix_phi[k + 1] = c.phi(word[k], i) + std::max(prefix_phi[k] - ev, 0);
  }
  if (raise ? eps == 0 : prefix_phi.back() == 0) return npos;
  for (std::size_t k = word.size(); k-- > 0;) {
    const int ev = c.eps(word[k], i);
    const int pu = prefix_phi[k];
    if (raise) {
      if (ev > pu) return k;
    } else {
      if (pu <= ev) return k;
    }
  }
  return npos;
}

}  // namespace

bool raise_in_place(const CrystalTable& c, Word& word, int i) {
  const std::size_t k = acting_position(c, word, i, true);
  if (k == ~std::size_t{0}) return false;
  word[k] = c.e(word[k], i);
  return true;
}

bool lower_in_place(const CrystalTable& c, Word& word, int i) {
  const std::size_t k = acting_position(c, word, i, false);
  if (k == ~std::size_t{0}) return false;
  word[k] = c.f(word[k], i);
  return true;
}

std::optional<Word> apply_e(const CrystalTable& c, std::span<const Vertex> word, int i) {
  Word w(word.begin(), word.end());
  if (!raise_in_place(c, w, i)) return std::nullopt;
  return w;
}

std::optional<Word> apply_f(const CrystalTable& c, std::span<const Vertex> word, int i) {
  Word w(word.begin(), word.end());
  if (!lower_in_place(c, w, i)) return std::nullopt;
  return w;
}

bool is_highest(const CrystalTable& c, std::span<const Vertex> word) {
  return word_signature(c, word).highest(c.rank());
}

bool is_highest_by_prefix_criterion(const CrystalTable& c, std::span<const Vertex> word) {
  Signature prefix;
  for (Vertex a : word) {
    for (int i = 0; i < c.rank(); ++i) {
      if (c.eps(a, i) > prefix.phi[i]) return false;
    }
    prefix = append_letter(c, prefix, a);
  }
  return true;
}

Word pitman_transform(const CrystalTable& c, std::span<const Vertex> word) {
  Word w(word.begin(), word.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < c.rank(); ++i) {
      while (raise_in_place(c, w, i)) changed = true;
    }
  }
  return w;
}

std::string word_to_string(const CrystalTable& c, std::span<const Vertex> word) {
  if (word.empty()) return "()";
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += "⊗";
    out += c.label(word[k]);
  }
  return out;
}

std::uint64_t ExtractedCrystal::multiplicity(const Weight& beta) const {
  return static_cast<std::uint64_t>(std::count(weights_.begin(), weights_.end(), beta));
}

std::map<Weight, std::uint64_t> ExtractedCrystal::weight_multiplicities() const {
  std::map<Weight, std::uint64_t> out;
  for (const auto& w : weights_) ++out[w];
  return out;
}

CrystalPtr ExtractedCrystal::to_table() const {
  auto table = std::make_shared<CrystalTable>(letters_->root_system_ptr());
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    table->add_vertex(weights_[k], word_to_string(*letters_, vertices_[k]));
  }
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    for (int i = 0; i < table->rank(); ++i) {
      if (arrows_[k][i] != kNoVertex) table->add_arrow(static_cast<Vertex>(k), i, arrows_[k][i]);
    }
  }
  table->finalize();
  return table;
}

ExtractedCrystal extract_component(const CrystalPtr& letters, const Word& highest, std::size_t budget) {
  if (!is_highest(*letters, highest)) {
    throw DomainError("word " + word_to_string(*letters, highest) + " is not a highest weight vertex");
  }
  ExtractedCrystal out;
  out.letters_ = letters;
  std::unordered_map<Word, Vertex, WordHash> index;
  index.emplace(highest, 0);
  out.vertices_.push_back(highest);
  out.weights_.push_back(word_weight(*letters, highest));
  const int rank = letters->rank();
  for (std::size_t k = 0; k < out.vertices_.size(); ++k) {
    out.arrows_.emplace_back(rank, kNoVertex);
    for (int i = 0; i < rank; ++i) {
      Word next = out.vertices_[k];
      if (!lower_in_place(*letters, next, i)) continue;
      auto [it, inserted] = index.try_emplace(next, static_cast<Vertex>(out.vertices_.size()));
      if (inserted) {
        if (out.vertices_.size() >= budget) {
          throw ResourceLimitError("component extraction exceeded the vertex budget of " +
                                       std::to_string(budget),
                                   out.vertices_.size());
        }
        out.weights_.push_back(out.weights_[k] - letters->root_system().simple_roots()[i]);
        out.vertices_.push_back(std::move(next));
      }
      out.arrows_[k][i] = it->second;
    }
  }
  return out;
}

std::map<Weight, BigInt> decompose_tensor_power(const CrystalTable& c, int power, std::uint64_t word_budget) {
  if (power < 0) throw DomainError("tensor power must be nonnegative");
  double total = 1.0;
  for (int k = 0; k < power; ++k) total *= static_cast<double>(c.size());
  if (total > static_cast<double>(word_budget)) {
    throw ResourceLimitError("enumerating " + std::to_string(c.size()) + "^" + std::to_string(power) +
                             " words exceeds the word budget of " + std::to_string(word_budget) +
                             "; use the dominant-path DP instead");
  }
  std::map<Weight, std::uint64_t> counts;
  std::vector<Signature> sig(power + 1);
  std::vector<Weight> wt(power + 1, c.root_system().zero());
  std::vector<Vertex> digit(power, 0);
  if (power == 0) {
    ++counts[wt[0]];
  } else {
    // Odometer over all words, reusing prefix signatures.
    int depth = 0;
    while (depth >= 0) {
      if (depth == power) {
        if (sig[power].highest(c.rank())) ++counts[wt[power]];
        --depth;
        if (depth >= 0) ++digit[depth];
        continue;
      }
      if (digit[depth] == c.size()) {
        digit[depth] = 0;
        --depth;
        if (depth >= 0) ++digit[depth];
        continue;
      }
      sig[depth + 1] = append_letter(c, sig[depth], digit[depth]);
      wt[depth + 1] = wt[depth] + c.weight(digit[depth]);
      ++depth;
    }
  }
  std::map<Weight, BigInt> out;
  for (const auto& [w, n] : counts) out.emplace(w, BigInt(static_cast<unsigned long>(n)));
  return out;
}

HighestWordBuilder::HighestWordBuilder(RootSystemPtr rs) : rs_(std::move(rs)) {
  std::vector<CrystalPtr> parts;
  for (int i : rs_->minuscule_indices()) parts.push_back(minuscule_crystal(rs_, i));
  alphabet_ = std::make_shared<CrystalTable>(CrystalTable::direct_sum(parts));
  const CrystalTable& abc = *alphabet_;

  // Shortest dominant lattice path from 0 to each fundamental weight. With
  // minuscule letters a word is highest exactly when all its prefix weights
  // are dominant, so the spelled path is a highest word.
  std::map<Weight, std::pair<Weight, Vertex>> parent;
  std::deque<Weight> queue{rs_->zero()};
  parent.emplace(rs_->zero(), std::make_pair(rs_->zero(), kNoVertex));
  Weight det = rs_->zero();
  for (std::size_t k = 0; k < rs_->ambient_dim(); ++k) det.set_doubled(k, 2);
  const bool need_det = rs_->type() == CartanType::A;
  std::size_t found = 0;
  const std::size_t wanted = rs_->rank() + (need_det ? 1 : 0);
  std::vector<bool> have(rs_->rank(), false);
  bool have_det = false;
  constexpr std::size_t kSearchCap = 200'000;
  while (!queue.empty() && found < wanted) {
    const Weight cur = queue.front();
    queue.pop_front();
    for (Vertex a = 0; a < abc.size(); ++a) {
      const Weight next = cur + abc.weight(a);
      if (!rs_->is_dominant(next) || parent.count(next)) continue;
      parent.emplace(next, std::make_pair(cur, a));
      queue.push_back(next);
      for (int i = 0; i < rs_->rank(); ++i) {
        if (!have[i] && next == rs_->fundamental_weights()[i]) {
          have[i] = true;
          ++found;
        }
      }
      if (need_det && !have_det && next == det) {
        have_det = true;
        ++found;
      }
    }
    if (parent.size() > kSearchCap) break;
  }
  if (found < wanted) {
    throw ResourceLimitError("could not spell every fundamental weight of " + rs_->name());
  }
  auto spell = [&](const Weight& target) {
    Word w;
    for (Weight cur = target; !cur.is_zero();) {
      const auto& [prev, letter] = parent.at(cur);
      w.push_back(letter);
      cur = prev;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (const auto& omega : rs_->fundamental_weights()) fundamental_words_.push_back(spell(omega));
  if (need_det) determinant_word_ = spell(det);
}

Word HighestWordBuilder::highest_word(const Weight& lambda) const {
  if (!rs_->is_dominant(lambda)) {
    throw DomainError("weight " + lambda.to_string() + " is not dominant for " + rs_->name());
  }
  const auto labels = rs_->dynkin_labels(lambda);
  Word out;
  if (rs_->type() == CartanType::A) {
    const int last = static_cast<int>(lambda.doubled(rs_->ambient_dim() - 1));
    if (last < 0 || last % 2 != 0) {
      throw DomainError("type A weight " + lambda.to_string() +
                        " needs a nonnegative integral last coordinate to be spelled in B(w1) letters");
    }
    for (int k = 0; k < last / 2; ++k) out.insert(out.end(), determinant_word_.begin(), determinant_word_.end());
  }
  for (int i = 0; i < rs_->rank(); ++i) {
    for (int k = 0; k < labels[i]; ++k) {
      out.insert(out.end(), fundamental_words_[i].begin(), fundamental_words_[i].end());
    }
  }
  return out;
}

ExtractedCrystal HighestWordBuilder::extract(const Weight& lambda, std::size_t budget) const {
  return extract_component(alphabet_, highest_word(lambda), budget);
}

}  // namespace crystalwalk
