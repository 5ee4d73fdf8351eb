#include "crystalwalk/bigint.hpp"

#include <cmath>
#include <limits>

namespace crystalwalk {

double log_bigint(const BigInt& value) {
  if (sgn(value) <= 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

}  // namespace crystalwalk
