#pragma once

// Arbitrary-precision integers and the small amount of elementary number
// theory (trial division, squarefree parts, lcm) used throughout.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace geoprog {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Prime -> exponent.
using Factorization = std::map<BigInt, unsigned>;

BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& n);

inline BigInt abs(const BigInt& n) { return n < 0 ? BigInt(-n) : n; }
BigInt isqrt(const BigInt& n);
bool is_square(const BigInt& n);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned long exp);

/// Non-negative remainder of `a` modulo `m > 0`.
BigInt mod(const BigInt& a, const BigInt& m);

bool is_prime(const BigInt& n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Factors |n| by trial division. Throws DomainError if |n| has a cofactor
/// that trial division up to `limit` cannot certify as prime.
Factorization factorize(const BigInt& n, std::uint64_t limit = 10'000'000);

/// Merges `f` into `into`, adding exponents.
void multiply_into(Factorization& into, const Factorization& f);
/// Pointwise maximum of exponents; the factorization of an lcm.
void lcm_into(Factorization& into, const Factorization& f);
BigInt expand(const Factorization& f);

/// Squarefree kernel s with n = s * q^2 (sign of n kept on s).
BigInt squarefree_part(const BigInt& n);
bool is_squarefree(const BigInt& n);

/// p-adic valuation of n != 0.
unsigned valuation(const BigInt& n, const BigInt& p);

/// Largest prime factor of n >= 2, or 1 for n = 1.
BigInt largest_prime_factor(const BigInt& n);

}  // namespace geoprog
