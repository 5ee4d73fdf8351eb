#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crystalwalk/bigint.hpp"
#include "crystalwalk/weight.hpp"

namespace crystalwalk {

enum class CartanType { A, B, C, D };

/// Accepts "A".."D" (case-insensitive); E, F, G and anything else raise UnsupportedTypeError.
CartanType parse_cartan_type(std::string_view text);
char to_char(CartanType type);

/// Signed permutation acting on ambient coordinates:
/// (w.beta)_i = (flip_i ? -1 : 1) * beta_{perm_i}.
struct WeylElement {
  std::array<std::int8_t, Weight::kMaxDim> perm{};
  std::uint16_t flips = 0;
  int sign = 1;  // epsilon(w) = det(w)

  Weight apply(const Weight& beta) const noexcept;
};

struct RootSystemOptions {
  /// Largest rank for which the Weyl group is materialized.
  int weyl_rank_bound = 8;
};

/// Classical root system data in the ambient conventions of the standard basis:
/// type A of rank n is modelled over gl_{n+1} (ambient dimension n + 1),
/// types B, C, D of rank n live in dimension n.
///
/// Simple-root indices are 0-based throughout the C++ API.
class RootSystem {
 public:
  static std::shared_ptr<const RootSystem> build(CartanType type, int rank,
                                                 const RootSystemOptions& options = {});

  CartanType type() const noexcept { return type_; }
  int rank() const noexcept { return rank_; }
  std::size_t ambient_dim() const noexcept { return dim_; }
  /// "A2", "C3", ...
  std::string name() const;

  const std::vector<Weight>& simple_roots() const noexcept { return simple_; }
  const std::vector<Weight>& positive_roots() const noexcept { return positive_; }
  /// Coefficients of each positive root on the simple roots (same order as positive_roots()).
  const std::vector<std::vector<int>>& positive_root_coefficients() const noexcept { return positive_coeffs_; }
  const std::vector<Weight>& fundamental_weights() const noexcept { return fundamental_; }
  const Weight& rho() const noexcept { return rho_; }
  const std::vector<WeylElement>& weyl_elements() const noexcept { return weyl_; }

  /// <beta, alpha_i^vee> = 2 (beta, alpha_i) / (alpha_i, alpha_i).
  Rational pairing(const Weight& beta, int i) const;
  /// Integer pairing for weights of P; throws DomainError if it is not an integer.
  int pairing_int(const Weight& beta, int i) const;
  /// Dynkin labels (<beta, alpha_i^vee>)_i for beta in P.
  std::vector<int> dynkin_labels(const Weight& beta) const;

  bool is_dominant(const Weight& beta) const;
  bool is_strictly_dominant(const Weight& beta) const;
  /// Unique dominant weight in the Weyl orbit of beta.
  Weight dominant_representative(const Weight& beta) const;
  /// Reflection s_i.
  Weight reflect(const Weight& beta, int i) const;
  /// Whole orbit W.beta, sorted.
  std::vector<Weight> weyl_orbit(const Weight& beta) const;

  /// Exact coefficients of beta on the simple roots, or nullopt when beta is
  /// outside their real span (only possible in type A).
  std::optional<std::vector<Rational>> root_coefficients(const Weight& beta) const;
  bool in_root_lattice(const Weight& beta) const;

  /// Sum_i labels[i] * omega_i.
  Weight weight_from_labels(std::span<const int> labels) const;
  Weight zero() const { return Weight(dim_); }

  /// 0-based indices of the minuscule fundamental weights (classical table).
  std::vector<int> minuscule_indices() const;
  /// Index i with omega_i == delta and omega_i minuscule, if any.
  std::optional<int> minuscule_index(const Weight& delta) const;

  /// Weyl dimension formula prod_{alpha>0} (lambda + rho, alpha) / (rho, alpha).
  BigInt weyl_dimension(const Weight& lambda) const;

  void check_weight(const Weight& beta) const;

 private:
  RootSystem() = default;

  CartanType type_ = CartanType::A;
  int rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<Weight> simple_;
  std::vector<std::int64_t> simple_norm4_;
  std::vector<Weight> positive_;
  std::vector<std::vector<int>> positive_coeffs_;
  std::vector<Weight> fundamental_;
  Weight rho_;
  std::vector<WeylElement> weyl_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Order of the Weyl group without materializing it.
std::uint64_t weyl_group_order(CartanType type, int rank);

}  // namespace crystalwalk
