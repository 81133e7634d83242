#pragma once

// Independent reference implementations used only by the tests. Nothing
// here calls into the library's fast paths: powers are plain repeated
// multiplication of integer arrays, orders are linear scans.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "geoprog/bigint.hpp"
#include "geoprog/mat.hpp"

namespace oracle {

using geoprog::BigInt;
using IntMat = std::vector<BigInt>;  // row-major n x n

inline IntMat mul(const IntMat& a, const IntMat& b, int n) {
  IntMat c(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c[i * n + j] += a[i * n + k] * b[k * n + j];
  return c;
}

inline IntMat entries(const geoprog::Mat& g) { return IntMat(g.entries().begin(), g.entries().end()); }

inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Least j in [1, limit] with m | b_j by multiplying gamma out exactly.
inline std::optional<std::uint64_t> order_scan(const geoprog::Mat& g, const BigInt& m, std::uint64_t limit) {
  const IntMat base = entries(g);
  IntMat p = base;
  for (std::uint64_t j = 1; j <= limit; ++j) {
    if (mod(p[1], m) == 0) return j;
    p = mul(p, base, 2);
  }
  return std::nullopt;
}

/// Same scan with entries reduced mod m after each step (for long scans).
inline std::optional<std::uint64_t> order_scan_mod(const IntMat& base, int n, const BigInt& m,
                                                   std::uint64_t limit,
                                                   const std::vector<std::pair<int, int>>& mask) {
  IntMat p = base;
  for (auto& x : p) x = mod(x, m);
  for (std::uint64_t j = 1; j <= limit; ++j) {
    bool all = true;
    for (auto [r, c] : mask) all = all && p[r * n + c] == 0;
    if (all) return j;
    p = mul(p, base, n);
    for (auto& x : p) x = mod(x, m);
  }
  return std::nullopt;
}

/// Order of g in SL(n, Z/m) by linear scan.
inline std::optional<std::uint64_t> residue_order_scan(const IntMat& base, int n, const BigInt& m,
                                                       std::uint64_t limit) {
  IntMat id(n * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  for (auto& x : id) x = mod(x, m);
  IntMat p = base;
  for (auto& x : p) x = mod(x, m);
  for (std::uint64_t j = 1; j <= limit; ++j) {
    if (p == id) return j;
    p = mul(p, base, n);
    for (auto& x : p) x = mod(x, m);
  }
  return std::nullopt;
}

/// Fibonacci numbers F_0..F_n.
inline std::vector<BigInt> fibonacci(std::size_t n) {
  std::vector<BigInt> f{0, 1};
  while (f.size() <= n) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  return f;
}

/// Lucas numbers L_0..L_n.
inline std::vector<BigInt> lucas(std::size_t n) {
  std::vector<BigInt> l{2, 1};
  while (l.size() <= n) l.push_back(l[l.size() - 1] + l[l.size() - 2]);
  return l;
}

/// Random hyperbolic elements of SL(2, Z) as words in [[1,1],[0,1]] and
/// [[1,0],[1,1]], with |trace| in [3, max_trace].
inline std::vector<geoprog::Mat> random_hyperbolic(std::size_t count, long max_trace, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<geoprog::Mat> out;
  const IntMat T{1, 1, 0, 1}, U{1, 0, 1, 1};
  while (out.size() < count) {
    IntMat g{1, 0, 0, 1};
    const int len = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) g = mul(g, rng() % 2 ? T : U, 2);
    const BigInt tr = g[0] + g[3];
    if (tr < 3 || tr > max_trace) continue;
    out.emplace_back(2, g);
  }
  return out;
}

/// Smallest Y >= 1 with d Y^2 + 4 s = X^2 for s in {-1, +1}, returning
/// (X, Y, s) for the unit (X + Y sqrt d)/2. Exhaustive over Y <= limit;
/// candidates are sieved by quadratic residues mod 64 * 63 * 65 * 11 and
/// confirmed with an exact 128-bit square test.
struct HalfUnit {
  BigInt X, Y;
  int norm;
};
inline std::optional<HalfUnit> brute_unit(long d, std::uint64_t limit) {
  constexpr std::uint32_t kMods[] = {64, 63, 65, 11};
  constexpr std::uint32_t kM = 64 * 63 * 65 * 11;
  std::vector<std::vector<bool>> is_qr;
  for (auto m : kMods) {
    std::vector<bool> q(m, false);
    for (std::uint32_t x = 0; x < m; ++x) q[(x * x) % m] = true;
    is_qr.push_back(std::move(q));
  }
  const bool need_even = d % 4 != 1;
  auto admissible = [&](std::uint64_t y, int s) {
    for (std::size_t i = 0; i < 4; ++i) {
      const long m = kMods[i];
      const long v = ((d % m) * static_cast<long>((y % m) * (y % m) % m) + 4 * s % m + 2 * m) % m;
      if (!is_qr[i][v]) return false;
    }
    return true;
  };
  std::vector<std::uint32_t> residues;
  for (std::uint32_t r = 0; r < kM; ++r) {
    if (need_even && r % 2) continue;
    if (admissible(r, 1) || admissible(r, -1)) residues.push_back(r);
  }
  for (std::uint64_t base = 0; base <= limit; base += kM) {
    for (auto r : residues) {
      const std::uint64_t y = base + r;
      if (y == 0) continue;
      if (y > limit) return std::nullopt;
      for (int s : {-1, 1}) {
        const __int128 v = static_cast<__int128>(d) * y * y + 4 * s;
        if (v <= 0) continue;
        auto x = static_cast<__int128>(sqrtl(static_cast<long double>(v)));
        while (x * x > v) --x;
        while ((x + 1) * (x + 1) <= v) ++x;
        if (x * x != v) continue;
        const auto to_big = [](__int128 a) -> BigInt {
          return BigInt(static_cast<unsigned long>(a >> 64)) * BigInt("18446744073709551616") +
                 BigInt(static_cast<unsigned long>(a & 0xffffffffffffffffULL));
        };
        return HalfUnit{to_big(x), to_big(static_cast<__int128>(y)), s};
      }
    }
  }
  return std::nullopt;
}

}  // namespace oracle
