#pragma once

#include <gmpxx.h>

#include <string>

namespace crystalwalk {

using BigInt = mpz_class;

/// Natural log of a positive big integer, accurate for arbitrarily large values.
double log_bigint(const BigInt& value);

inline std::string to_decimal(const BigInt& value) { return value.get_str(10); }

}  // namespace crystalwalk
