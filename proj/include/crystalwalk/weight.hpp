#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crystalwalk {

/// Exact rational number with a positive denominator in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by intent
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Parses "p", "p/q" or a decimal literal such as "0.25".
  static Rational parse(std::string_view text);
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Weight in the ambient space, stored as twice its coordinates on the
/// standard basis. Every coordinate is therefore a half-integer.
class Weight {
 public:
  static constexpr std::size_t kMaxDim = 12;

  Weight() = default;
  explicit Weight(std::size_t dim);

  /// Integer coordinates.
  static Weight from_ints(std::span<const int> coords);
  static Weight from_ints(std::initializer_list<int> coords);
  /// Coordinates given doubled: {1, 1, 1} is (1/2, 1/2, 1/2).
  static Weight from_doubled(std::span<const int> twice);
  static Weight from_doubled(std::initializer_list<int> twice);
  /// Rational coordinates; throws DomainError if a denominator exceeds 2.
  static Weight from_rationals(std::span<const Rational> coords);
  /// Comma separated rationals, e.g. "1/2,1/2,-1/2" or "2,1,0".
  static Weight parse(std::string_view text);

  std::size_t dim() const noexcept { return dim_; }
  int doubled(std::size_t i) const noexcept { return twice_[i]; }
  void set_doubled(std::size_t i, int value) noexcept { twice_[i] = value; }
  Rational coord(std::size_t i) const { return Rational(twice_[i], 2); }
  double real(std::size_t i) const noexcept { return 0.5 * twice_[i]; }
  std::vector<double> to_real() const;
  bool is_integral() const noexcept;
  bool is_zero() const noexcept;

  /// Doubled standard inner product: 4 (this, other).
  std::int64_t dot4(const Weight& other) const noexcept;
  /// Standard inner product with a real vector of the same dimension.
  double dot(std::span<const double> v) const noexcept;

  Weight& operator+=(const Weight& o) noexcept;
  Weight& operator-=(const Weight& o) noexcept;
  friend Weight operator+(Weight a, const Weight& b) noexcept { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) noexcept { return a -= b; }
  Weight operator-() const noexcept;
  friend Weight operator*(int k, Weight a) noexcept;

  friend bool operator==(const Weight& a, const Weight& b) noexcept;
  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept;

  /// "1/2,1/2,-1/2" style, round-trips through parse().
  std::string to_string() const;
  std::size_t hash() const noexcept;

 private:
  std::array<std::int32_t, kMaxDim> twice_{};
  std::uint8_t dim_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept { return w.hash(); }
};

}  // namespace crystalwalk

template <>
struct std::hash<crystalwalk::Weight> {
  std::size_t operator()(const crystalwalk::Weight& w) const noexcept { return w.hash(); }
};
