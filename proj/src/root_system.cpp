#include "crystalwalk/root_system.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

#include "crystalwalk/errors.hpp"

namespace crystalwalk {

namespace {

Weight unit(std::size_t dim, std::size_t i, int doubled_value = 2) {
  Weight w(dim);
  w.set_doubled(i, doubled_value);
  return w;
}

int permutation_parity(std::span<const std::int8_t> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

}  // namespace

CartanType parse_cartan_type(std::string_view text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'A': return CartanType::A;
      case 'B': return CartanType::B;
      case 'C': return CartanType::C;
      case 'D': return CartanType::D;
      default: break;
    }
  }
  throw UnsupportedTypeError("unsupported Cartan type '" + std::string(text) +
                             "' (supported: A, B, C, D)");
}

char to_char(CartanType type) {
  switch (type) {
    case CartanType::A: return 'A';
    case CartanType::B: return 'B';
    case CartanType::C: return 'C';
    case CartanType::D: return 'D';
  }
  return '?';
}

Weight WeylElement::apply(const Weight& beta) const noexcept {
  Weight out(beta.dim());
  for (std::size_t i = 0; i < beta.dim(); ++i) {
    const int v = beta.doubled(static_cast<std::size_t>(perm[i]));
    out.set_doubled(i, (flips >> i) & 1U ? -v : v);
  }
  return out;
}

std::uint64_t weyl_group_order(CartanType type, int rank) {
  switch (type) {
    case CartanType::A: return factorial(rank + 1);
    case CartanType::B:
    case CartanType::C: return (std::uint64_t{1} << rank) * factorial(rank);
    case CartanType::D: return (std::uint64_t{1} << (rank - 1)) * factorial(rank);
  }
  return 0;
}

std::shared_ptr<const RootSystem> RootSystem::build(CartanType type, int rank,
                                                    const RootSystemOptions& options) {
  const int min_rank = type == CartanType::D ? 2 : 1;
  if (rank < min_rank) {
    throw DomainError(std::string("rank of type ") + to_char(type) + " must be at least " +
                      std::to_string(min_rank) + ", got " + std::to_string(rank));
  }
  if (rank > options.weyl_rank_bound) {
    throw ResourceLimitError(std::string("rank ") + std::to_string(rank) + " of type " + to_char(type) +
                             " exceeds the Weyl enumeration bound " +
                             std::to_string(options.weyl_rank_bound));
  }
  const std::size_t dim = static_cast<std::size_t>(type == CartanType::A ? rank + 1 : rank);
  if (dim > Weight::kMaxDim) {
    throw ResourceLimitError("ambient dimension " + std::to_string(dim) + " exceeds " +
                             std::to_string(Weight::kMaxDim));
  }

  std::shared_ptr<RootSystem> rs(new RootSystem());
  rs->type_ = type;
  rs->rank_ = rank;
  rs->dim_ = dim;
  const int n = rank;

  // Simple roots: eps_i - eps_{i+1}, plus the type-dependent last root.
  for (int i = 0; i + 1 < n; ++i) rs->simple_.push_back(unit(dim, i) - unit(dim, i + 1));
  switch (type) {
    case CartanType::A: rs->simple_.push_back(unit(dim, n - 1) - unit(dim, n)); break;
    case CartanType::B: rs->simple_.push_back(unit(dim, n - 1)); break;
    case CartanType::C: rs->simple_.push_back(unit(dim, n - 1, 4)); break;
    case CartanType::D: rs->simple_.push_back(unit(dim, n - 2) + unit(dim, n - 1)); break;
  }
  for (const auto& a : rs->simple_) rs->simple_norm4_.push_back(a.dot4(a));

  // Positive roots.
  const std::size_t N = dim;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      rs->positive_.push_back(unit(dim, i) - unit(dim, j));
      if (type != CartanType::A) rs->positive_.push_back(unit(dim, i) + unit(dim, j));
    }
    if (type == CartanType::B) rs->positive_.push_back(unit(dim, i));
    if (type == CartanType::C) rs->positive_.push_back(unit(dim, i, 4));
  }
  for (const auto& alpha : rs->positive_) {
    auto coeffs = rs->root_coefficients(alpha);
    std::vector<int> ints;
    for (const auto& c : *coeffs) ints.push_back(static_cast<int>(c.num()));
    rs->positive_coeffs_.push_back(std::move(ints));
  }

  // Fundamental weights.
  auto partial_sum = [&](int k) {
    Weight w(dim);
    for (int j = 0; j < k; ++j) w.set_doubled(j, 2);
    return w;
  };
  auto spin = [&](int last_sign) {
    Weight w(dim);
    for (int j = 0; j < n; ++j) w.set_doubled(j, 1);
    w.set_doubled(n - 1, last_sign);
    return w;
  };
  for (int i = 1; i <= n; ++i) {
    switch (type) {
      case CartanType::A:
      case CartanType::C: rs->fundamental_.push_back(partial_sum(i)); break;
      case CartanType::B: rs->fundamental_.push_back(i < n ? partial_sum(i) : spin(1)); break;
      case CartanType::D:
        if (i <= n - 2) rs->fundamental_.push_back(partial_sum(i));
        else rs->fundamental_.push_back(spin(i == n - 1 ? -1 : 1));
        break;
    }
  }

  // rho = half the sum of positive roots.
  Weight twice_rho(dim);
  for (const auto& a : rs->positive_) twice_rho += a;
  rs->rho_ = Weight(dim);
  for (std::size_t i = 0; i < dim; ++i) rs->rho_.set_doubled(i, twice_rho.doubled(i) / 2);

  // Weyl group as signed permutations.
  std::vector<std::int8_t> perm(N);
  std::iota(perm.begin(), perm.end(), std::int8_t{0});
  const std::uint32_t masks = type == CartanType::A ? 1U : (1U << N);
  rs->weyl_.reserve(weyl_group_order(type, rank));
  do {
    const int parity = permutation_parity(perm);
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      const int flips = std::popcount(mask);
      if (type == CartanType::D && flips % 2 != 0) continue;
      WeylElement w;
      std::copy(perm.begin(), perm.end(), w.perm.begin());
      w.flips = static_cast<std::uint16_t>(mask);
      w.sign = parity * (flips % 2 == 0 ? 1 : -1);
      rs->weyl_.push_back(w);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return rs;
}

std::string RootSystem::name() const { return std::string(1, to_char(type_)) + std::to_string(rank_); }

void RootSystem::check_weight(const Weight& beta) const {
  if (beta.dim() != dim_) {
    throw DomainError("weight " + beta.to_string() + " has dimension " + std::to_string(beta.dim()) +
                      ", root system " + name() + " expects " + std::to_string(dim_));
  }
}

Rational RootSystem::pairing(const Weight& beta, int i) const {
  if (i < 0 || i >= rank_) {
    throw DomainError("simple root index " + std::to_string(i) + " out of range [0, " +
                      std::to_string(rank_) + ")");
  }
  check_weight(beta);
  return Rational(2 * beta.dot4(simple_[i]), simple_norm4_[i]);
}

int RootSystem::pairing_int(const Weight& beta, int i) const {
  const Rational p = pairing(beta, i);
  if (!p.is_integer()) throw DomainError("weight " + beta.to_string() + " is not in the weight lattice");
  return static_cast<int>(p.num());
}

std::vector<int> RootSystem::dynkin_labels(const Weight& beta) const {
  std::vector<int> labels(rank_);
  for (int i = 0; i < rank_; ++i) labels[i] = pairing_int(beta, i);
  return labels;
}

bool RootSystem::is_dominant(const Weight& beta) const {
  check_weight(beta);
  for (int i = 0; i < rank_; ++i) {
    if (beta.dot4(simple_[i]) < 0) return false;
  }
  return true;
}

bool RootSystem::is_strictly_dominant(const Weight& beta) const {
  check_weight(beta);
  for (int i = 0; i < rank_; ++i) {
    if (beta.dot4(simple_[i]) <= 0) return false;
  }
  return true;
}

Weight RootSystem::reflect(const Weight& beta, int i) const {
  check_weight(beta);
  const std::int64_t num = 2 * beta.dot4(simple_[i]);
  const std::int64_t den = simple_norm4_[i];
  Weight out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    const std::int64_t shift = num * simple_[i].doubled(k);
    out.set_doubled(k, static_cast<int>(beta.doubled(k) - shift / den));
  }
  return out;
}

Weight RootSystem::dominant_representative(const Weight& beta) const {
  Weight cur = beta;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < rank_; ++i) {
      if (cur.dot4(simple_[i]) < 0) {
        cur = reflect(cur, i);
        changed = true;
      }
    }
  }
  return cur;
}

std::vector<Weight> RootSystem::weyl_orbit(const Weight& beta) const {
  check_weight(beta);
  std::set<Weight> seen{beta};
  std::deque<Weight> queue{beta};
  while (!queue.empty()) {
    const Weight cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank_; ++i) {
      Weight next = reflect(cur, i);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

std::optional<std::vector<Rational>> RootSystem::root_coefficients(const Weight& beta) const {
  check_weight(beta);
  const int n = rank_;
  std::vector<Rational> prefix(dim_ + 1, Rational(0));
  for (std::size_t k = 0; k < dim_; ++k) prefix[k + 1] = prefix[k] + beta.coord(k);
  std::vector<Rational> c(n);
  switch (type_) {
    case CartanType::A:
      if (prefix[dim_] != Rational(0)) return std::nullopt;
      for (int i = 0; i < n; ++i) c[i] = prefix[i + 1];
      break;
    case CartanType::B:
      for (int i = 0; i < n; ++i) c[i] = prefix[i + 1];
      break;
    case CartanType::C:
      for (int i = 0; i + 1 < n; ++i) c[i] = prefix[i + 1];
      c[n - 1] = prefix[n] / Rational(2);
      break;
    case CartanType::D:
      for (int i = 0; i + 2 < n; ++i) c[i] = prefix[i + 1];
      c[n - 2] = (prefix[n - 1] - beta.coord(n - 1)) / Rational(2);
      c[n - 1] = prefix[n] / Rational(2);
      break;
  }
  return c;
}

bool RootSystem::in_root_lattice(const Weight& beta) const {
  const auto c = root_coefficients(beta);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rational& r) { return r.is_integer(); });
}

Weight RootSystem::weight_from_labels(std::span<const int> labels) const {
  if (labels.size() != static_cast<std::size_t>(rank_)) {
    throw DomainError("expected " + std::to_string(rank_) + " Dynkin labels, got " +
                      std::to_string(labels.size()));
  }
  Weight w(dim_);
  for (int i = 0; i < rank_; ++i) w += labels[i] * fundamental_[i];
  return w;
}

std::vector<int> RootSystem::minuscule_indices() const {
  std::vector<int> out;
  switch (type_) {
    case CartanType::A:
      for (int i = 0; i < rank_; ++i) out.push_back(i);
      break;
    case CartanType::B: out.push_back(rank_ - 1); break;
    case CartanType::C: out.push_back(0); break;
    case CartanType::D:
      if (rank_ > 2) out.push_back(0);
      out.push_back(rank_ - 2);
      out.push_back(rank_ - 1);
      break;
  }
  return out;
}

std::optional<int> RootSystem::minuscule_index(const Weight& delta) const {
  for (int i : minuscule_indices()) {
    if (fundamental_[i] == delta) return i;
  }
  return std::nullopt;
}

BigInt RootSystem::weyl_dimension(const Weight& lambda) const {
  check_weight(lambda);
  const Weight shifted = lambda + rho_;
  BigInt num = 1;
  BigInt den = 1;
  for (const auto& alpha : positive_) {
    num *= static_cast<long>(shifted.dot4(alpha));
    den *= static_cast<long>(rho_.dot4(alpha));
  }
  return num / den;
}

}  // namespace crystalwalk
