#pragma once

// Square matrices over Z/mZ. Moduli below 2^62 run on machine words with
// 128-bit products; larger moduli fall back to GMP.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "geoprog/bigint.hpp"
#include "geoprog/errors.hpp"

namespace geoprog::detail {

struct WordRing {
  using value_type = std::uint64_t;
  std::uint64_t m;

  value_type from(const BigInt& x) const { return mod(x, BigInt(static_cast<unsigned long>(m))).get_ui(); }
  BigInt to_big(value_type x) const { return BigInt(static_cast<unsigned long>(x)); }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % m; }
  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return s >= m ? s - m : s;
  }
  value_type mul(value_type a, value_type b) const {
    if (m <= 0xffffffffULL) return a * b % m;
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % m);
  }
  bool is_zero(value_type a) const { return a == 0; }
};

struct BigRing {
  using value_type = BigInt;
  BigInt m;

  value_type from(const BigInt& x) const { return mod(x, m); }
  BigInt to_big(const value_type& x) const { return x; }
  value_type zero() const { return 0; }
  value_type one() const { return mod(BigInt(1), m); }
  value_type add(const value_type& a, const value_type& b) const {
    BigInt s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  value_type mul(const value_type& a, const value_type& b) const { return mod(a * b, m); }
  bool is_zero(const value_type& a) const { return a == 0; }
};

template <class Ring>
class ModMat {
 public:
  using T = typename Ring::value_type;

  ModMat(Ring ring, int n) : ring_(ring), n_(n) {
    check_size(n);
    e_.fill(ring_.zero());
    for (int i = 0; i < n; ++i) e_[i * n + i] = ring_.one();
  }
  ModMat(Ring ring, int n, std::span<const BigInt> entries) : ring_(ring), n_(n) {
    check_size(n);
    if (entries.size() != static_cast<std::size_t>(n * n)) throw DomainError("entry count does not match size");
    for (std::size_t i = 0; i < entries.size(); ++i) e_[i] = ring_.from(entries[i]);
  }

  const T& at(int r, int c) const { return e_[r * n_ + c]; }
  bool zero_at(int r, int c) const { return ring_.is_zero(at(r, c)); }

  ModMat operator*(const ModMat& o) const {
    ModMat out(ring_, n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        T acc = ring_.zero();
        for (int k = 0; k < n_; ++k) acc = ring_.add(acc, ring_.mul(at(i, k), o.at(k, j)));
        out.e_[i * n_ + j] = acc;
      }
    }
    return out;
  }

  ModMat pow(const BigInt& exp) const {
    ModMat result(ring_, n_);
    const auto bits = exp == 0 ? 0 : mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (auto i = bits; i-- > 0;) {
      result = result * result;
      if (mpz_tstbit(exp.get_mpz_t(), i)) result = result * *this;
    }
    return result;
  }

  std::vector<BigInt> to_bigints() const {
    std::vector<BigInt> out;
    out.reserve(n_ * n_);
    for (int i = 0; i < n_ * n_; ++i) out.push_back(ring_.to_big(e_[i]));
    return out;
  }

 private:
  static void check_size(int n) {
    if (n < 1 || n > 3) throw DomainError("modular matrices are at most 3x3");
  }

  Ring ring_;
  int n_;
  std::array<T, 9> e_;
};

/// Calls `fn(ring)` with the cheapest ring able to represent Z/mZ.
template <class Fn>
decltype(auto) with_ring(const BigInt& m, Fn&& fn) {
  if (m < 1) throw DomainError("modulus must be positive");
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 62) {
    return fn(WordRing{static_cast<std::uint64_t>(m.get_ui())});
  }
  return fn(BigRing{m});
}

/// Smallest j >= 1 with holds(j), given that {j : holds(j)} is a subgroup
/// of Z containing the integer whose factorization is `multiple`.
/// Throws SearchExhausted if holds(multiple) is false.
BigInt minimal_exponent(const Factorization& multiple,
                        const std::function<bool(const BigInt&)>& holds);

}  // namespace geoprog::detail
