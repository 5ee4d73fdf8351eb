#include "crystalwalk/weight.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>

#include "crystalwalk/errors.hpp"

namespace crystalwalk {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DomainError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw DomainError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw DomainError("too many decimals: '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    std::string digits(text.substr(0, dot));
    const bool negative = !digits.empty() && digits.front() == '-';
    const std::int64_t whole = (digits.empty() || digits == "-" || digits == "+") ? 0 : parse_int(digits);
    const std::int64_t part = frac.empty() ? 0 : parse_int(frac);
    const std::int64_t mag = (whole < 0 ? -whole : whole) * scale + part;
    return Rational(negative ? -mag : mag, scale);
  }
  return Rational(parse_int(text));
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Weight::Weight(std::size_t dim) : dim_(static_cast<std::uint8_t>(dim)) {
  if (dim > kMaxDim) throw ResourceLimitError("ambient dimension exceeds " + std::to_string(kMaxDim));
}

Weight Weight::from_ints(std::span<const int> coords) {
  Weight w(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) w.twice_[i] = 2 * coords[i];
  return w;
}

Weight Weight::from_ints(std::initializer_list<int> coords) {
  return from_ints(std::span<const int>(coords.begin(), coords.size()));
}

Weight Weight::from_doubled(std::span<const int> twice) {
  Weight w(twice.size());
  for (std::size_t i = 0; i < twice.size(); ++i) w.twice_[i] = twice[i];
  return w;
}

Weight Weight::from_doubled(std::initializer_list<int> twice) {
  return from_doubled(std::span<const int>(twice.begin(), twice.size()));
}

Weight Weight::from_rationals(std::span<const Rational> coords) {
  Weight w(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Rational doubled = coords[i] * Rational(2);
    if (!doubled.is_integer()) {
      throw DomainError("weight coordinate " + coords[i].to_string() + " is not a half-integer");
    }
    w.twice_[i] = static_cast<std::int32_t>(doubled.num());
  }
  return w;
}

Weight Weight::parse(std::string_view text) {
  std::vector<Rational> coords;
  text = trim(text);
  if (!text.empty() && (text.front() == '(' || text.front() == '[')) text.remove_prefix(1);
  if (!text.empty() && (text.back() == ')' || text.back() == ']')) text.remove_suffix(1);
  while (!text.empty()) {
    const auto comma = text.find(',');
    coords.push_back(Rational::parse(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_rationals(coords);
}

std::vector<double> Weight::to_real() const {
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = 0.5 * twice_[i];
  return out;
}

bool Weight::is_integral() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (twice_[i] % 2 != 0) return false;
  }
  return true;
}

bool Weight::is_zero() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (twice_[i] != 0) return false;
  }
  return true;
}

std::int64_t Weight::dot4(const Weight& other) const noexcept {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < dim_; ++i) s += static_cast<std::int64_t>(twice_[i]) * other.twice_[i];
  return s;
}

double Weight::dot(std::span<const double> v) const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += 0.5 * twice_[i] * v[i];
  return s;
}

Weight& Weight::operator+=(const Weight& o) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) twice_[i] += o.twice_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) twice_[i] -= o.twice_[i];
  return *this;
}

Weight Weight::operator-() const noexcept {
  Weight w = *this;
  for (std::size_t i = 0; i < dim_; ++i) w.twice_[i] = -w.twice_[i];
  return w;
}

Weight operator*(int k, Weight a) noexcept {
  for (std::size_t i = 0; i < a.dim_; ++i) a.twice_[i] *= k;
  return a;
}

bool operator==(const Weight& a, const Weight& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (a.twice_[i] != b.twice_[i]) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (auto c = a.twice_[i] <=> b.twice_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Weight::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) out += ',';
    out += coord(i).to_string();
  }
  return out;
}

std::size_t Weight::hash() const noexcept {
  // FNV-1a over the doubled coordinates.
  std::uint64_t h = 1469598103934665603ULL ^ dim_;
  for (std::size_t i = 0; i < dim_; ++i) {
    h ^= static_cast<std::uint32_t>(twice_[i]);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << '(' << w.to_string() << ')'; }

}  // namespace crystalwalk
