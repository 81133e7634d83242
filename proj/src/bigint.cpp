#include "geoprog/bigint.hpp"

#include <algorithm>

#include "geoprog/errors.hpp"

namespace geoprog {

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  // Trim whitespace and an optional leading '+'.
  auto first = s.find_first_not_of(" \t\r\n");
  auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw DomainError("empty integer literal");
  s = s.substr(first, last - first + 1);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  BigInt n;
  if (s.empty() || n.set_str(s, 10) != 0) {
    throw DomainError("not an integer: '" + std::string(text) + "'");
  }
  return n;
}

std::string to_string(const BigInt& n) { return n.get_str(10); }

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const BigInt& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n < BigInt(1) << 40) {
    // Deterministic for the sizes we care about.
    const auto v = n.get_ui();
    if (v < 4) return true;
    if (v % 2 == 0) return false;
    for (unsigned long d = 3; d * d <= v; d += 2) {
      if (v % d == 0) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

Factorization factorize(const BigInt& n, std::uint64_t limit) {
  if (n == 0) throw DomainError("cannot factor zero");
  Factorization f;
  BigInt r = abs(n);
  auto strip = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
      mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
      ++e;
    }
    if (e) f[BigInt(p)] += e;
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel.
  std::uint64_t p = 5;
  for (; p <= limit; p += 6) {
    if (BigInt(p) * p > r) break;
    strip(p);
    strip(p + 2);
  }
  if (r > 1) {
    if (BigInt(p) * p > r || is_prime(r)) {
      f[r] += 1;
    } else {
      throw DomainError("factorization of " + to_string(n) +
                        " exceeds trial-division range");
    }
  }
  return f;
}

void multiply_into(Factorization& into, const Factorization& f) {
  for (const auto& [p, e] : f) into[p] += e;
}

void lcm_into(Factorization& into, const Factorization& f) {
  for (const auto& [p, e] : f) {
    auto& slot = into[p];
    slot = std::max(slot, e);
  }
}

BigInt expand(const Factorization& f) {
  BigInt n = 1;
  for (const auto& [p, e] : f) n *= pow(p, e);
  return n;
}

BigInt squarefree_part(const BigInt& n) {
  if (n == 0) throw DomainError("squarefree part of zero");
  BigInt s = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e % 2) s *= p;
  }
  return s;
}

bool is_squarefree(const BigInt& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

unsigned valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw DomainError("valuation of zero");
  BigInt r = n;
  unsigned e = 0;
  while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

BigInt largest_prime_factor(const BigInt& n) {
  if (n < 1) throw DomainError("largest prime factor needs n >= 1");
  if (n == 1) return 1;
  return factorize(n).rbegin()->first;
}

}  // namespace geoprog
