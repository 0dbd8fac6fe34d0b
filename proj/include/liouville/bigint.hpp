#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace liouville {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Integers up to this many bits are materialized exactly; larger powers are
// kept in tower form (see ExtendedMagnitude).
inline constexpr std::size_t kMaterializationCapBits = std::size_t{1} << 22;

// Default working precision for certified enclosures, in bits.
inline constexpr long kDefaultBudgetBits = 256;

BigRational make_rational(const BigInt& num, const BigInt& den);

// "num/den" in lowest terms, always with an explicit denominator.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

// Accepts "n", "-n", "n/d". Throws MalformedError on anything else.
BigRational parse_rational(std::string_view text);
BigInt parse_integer(std::string_view text);

BigInt pow(const BigInt& base, unsigned long exponent);
BigRational pow(const BigRational& base, unsigned long exponent);

std::size_t bit_length(const BigInt& z);

BigInt floor(const BigRational& q);
BigInt ceil(const BigRational& q);
BigRational abs(const BigRational& q);

// Outward rounding onto the grid 2^-bits.
BigRational round_down(const BigRational& q, long bits);
BigRational round_up(const BigRational& q, long bits);

BigInt factorial(unsigned long n);

// floor(z^(1/k)) for z >= 0.
BigInt iroot_floor(const BigInt& z, unsigned long k);

// Lossy conversion for human-readable tables only.
double to_double(const BigRational& q);

// Exact integer cast; throws DomainError when the value does not fit.
long to_long(const BigInt& z);

}  // namespace liouville
