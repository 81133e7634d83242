#include <gtest/gtest.h>

#include <random>

#include "geoprog/errors.hpp"
#include "geoprog/orders.hpp"
#include "oracles.hpp"

using namespace geoprog;

namespace {

const Mat kFib({{2, 1}, {1, 1}});

/// For [[2,1],[1,1]] = Q^2 with Q the Fibonacci matrix, b_j = F_{2j}; the
/// order is the least j with m | F_{2j}.
std::uint64_t fibonacci_order(unsigned long m) {
  const auto f = oracle::fibonacci(6 * m + 10);
  for (std::uint64_t j = 1;; ++j) {
    if (f[2 * j] % m == 0) return j;
  }
}

BigInt B(unsigned long x) { return BigInt(x); }

}  // namespace

TEST(Orders, FibonacciExamples) {
  EXPECT_EQ(order_P(kFib, B(2)), 3);
  EXPECT_EQ(order_P(kFib, B(3)), 2);
  EXPECT_EQ(order_P(kFib, B(5)), 5);
  EXPECT_EQ(order_P(kFib, B(6)), 6);
  EXPECT_EQ(order_P(kFib, B(1)), 1);
  EXPECT_THROW(order_P(kFib, B(0)), DomainError);
  EXPECT_THROW(order_P(Mat({{1, 1}, {0, 1}}), B(5)), DomainError);
}

TEST(Orders, MatchesFibonacciOracle) {
  for (unsigned long m = 1; m <= 400; ++m) EXPECT_EQ(order_P(kFib, B(m)), fibonacci_order(m)) << m;
}

TEST(Orders, MatchesExactPowerScan) {
  for (const auto& g : oracle::random_hyperbolic(15, 40, 101)) {
    for (unsigned long m = 2; m <= 60; ++m) {
      const auto naive = oracle::order_scan(g, B(m), 400);
      ASSERT_TRUE(naive) << g.str() << " m=" << m;
      EXPECT_EQ(order_P(g, B(m)), *naive) << g.str() << " m=" << m;
    }
  }
}

TEST(Orders, NegativeTraceAgrees) {
  const Mat g({{-3, 1}, {-1, 0}});
  for (unsigned long m = 2; m < 50; ++m) EXPECT_EQ(order_P(g, B(m)), *oracle::order_scan(g, B(m), 1000));
}

TEST(Orders, IndexBound) {
  for (const auto& g : oracle::random_hyperbolic(10, 50, 5)) {
    for (auto p : primes_up_to(200)) EXPECT_LE(order_P(g, B(p)), p + 1) << g.str() << " p=" << p;
  }
}

TEST(Orders, GroupOrder) {
  EXPECT_EQ(sl2_group_order(B(1)), 1);
  EXPECT_EQ(sl2_group_order(B(2)), 6);
  EXPECT_EQ(sl2_group_order(B(4)), 48);
  EXPECT_EQ(sl2_group_order(B(6)), 144);
  // Count SL(2, Z/m) directly for small m.
  for (unsigned long m = 2; m <= 12; ++m) {
    unsigned long count = 0;
    for (unsigned long a = 0; a < m; ++a)
      for (unsigned long b = 0; b < m; ++b)
        for (unsigned long c = 0; c < m; ++c)
          for (unsigned long d = 0; d < m; ++d) count += (a * d + m * m - b * c % m) % m == 1 % m;
    EXPECT_EQ(sl2_group_order(B(m)), count) << m;
  }
}

TEST(Orders, ResidueOrderMatchesScan) {
  for (const auto& g : oracle::random_hyperbolic(10, 40, 77)) {
    for (unsigned long m = 2; m < 40; ++m) {
      EXPECT_EQ(residue_order(g, B(m)), *oracle::residue_order_scan(oracle::entries(g), 2, B(m), 10000));
    }
  }
}

TEST(Orders, TowerExample) {
  const TowerProfile t = prime_tower(kFib, B(2), 5);
  EXPECT_EQ(t.values, (std::vector<BigInt>{3, 3, 3, 6, 12}));
  EXPECT_TRUE(tower_shape_holds(t));
  EXPECT_THROW(prime_tower(kFib, B(4), 3), DomainError);
}

TEST(Orders, TowerShapeWhenPDoesNotDivideB) {
  for (const auto& g : oracle::random_hyperbolic(10, 50, 9)) {
    for (auto p : primes_up_to(30)) {
      if (g(0, 1) % p == 0) continue;
      EXPECT_TRUE(tower_shape_holds(prime_tower(g, B(p), 8))) << g.str() << " p=" << p;
    }
  }
}

TEST(Orders, TowerShapeBreaksWhenPDividesB) {
  // b = 7 puts gamma in the Borel subgroup mod 7, but its diagonal 12, 3 is
  // not scalar mod 7: a/d = 4 has order 3, so the second level is 3.
  const Mat g({{12, 7}, {5, 3}});
  const TowerProfile t = prime_tower(g, B(7), 4);
  EXPECT_EQ(t.values, (std::vector<BigInt>{1, 3, 21, 147}));
  for (unsigned k = 1; k <= 3; ++k) {
    EXPECT_EQ(t.values[k - 1], *oracle::order_scan(g, pow(B(7), k), 1000));
  }
  EXPECT_FALSE(tower_shape_holds(t));
}

TEST(Orders, TowerRatiosWhenPDividesB) {
  // With p | b the one exceptional ratio is the order of a/d in (Z/p)^* / {+-1},
  // a divisor of p - 1; every other ratio is 1 or p.
  int exceptional = 0;
  for (const auto& g : oracle::random_hyperbolic(60, 50, 21)) {
    for (auto p : primes_up_to(30)) {
      if (p == 2 || g(0, 1) % p != 0) continue;
      const TowerProfile t = prime_tower(g, B(p), 6);
      int odd_steps = 0;
      for (std::size_t i = 1; i < t.values.size(); ++i) {
        const BigInt r = t.values[i] / t.values[i - 1];
        EXPECT_EQ(t.values[i] % t.values[i - 1], 0);
        if (r == 1 || r == p) continue;
        ++odd_steps;
        EXPECT_EQ((p - 1) % r, 0) << g.str() << " p=" << p;
      }
      EXPECT_LE(odd_steps, 1);
      exceptional += odd_steps;
    }
  }
  EXPECT_GT(exceptional, 0);
}

TEST(Orders, CrtIdentity) {
  for (const auto& g : oracle::random_hyperbolic(4, 40, 13)) {
    for (unsigned long m = 1; m <= 40; ++m)
      for (unsigned long n = 1; n <= 40; ++n) {
        if (gcd(B(m), B(n)) != 1) continue;
        EXPECT_TRUE(crt_check(g, B(m), B(n)).equal);
      }
  }
  EXPECT_THROW(crt_check(kFib, B(4), B(6)), DomainError);
}

TEST(Orders, FindModulusExamples) {
  EXPECT_EQ(*find_modulus_with_P(kFib, B(6)).modulus, 6);
  EXPECT_EQ(*find_modulus_with_P(kFib, B(12)).modulus, 32);
  EXPECT_EQ(*find_modulus_with_P(kFib, B(18)).modulus, 27);
  EXPECT_EQ(*find_modulus_with_P(kFib, B(3)).modulus, 2);
  EXPECT_EQ(*find_modulus_with_P(kFib, B(1)).modulus, 1);
  const ModulusSearch starved = find_modulus_with_P(kFib, B(12), 1);
  EXPECT_FALSE(starved.found());
  EXPECT_FALSE(starved.towers.empty());
}

TEST(Orders, FindModulusIsMinimal) {
  // Exhaustive over moduli built from the admissible primes.
  for (const auto& g : oracle::random_hyperbolic(4, 30, 21)) {
    for (unsigned long target = 1; target <= 24; ++target) {
      const BigInt bound = largest_prime_factor(B(target));
      const ModulusSearch s = find_modulus_with_P(g, B(target));
      std::optional<unsigned long> smallest;
      for (unsigned long m = 1; m <= 5000 && !smallest; ++m) {
        if (largest_prime_factor(B(m)) > bound) continue;
        if (order_P(g, B(m)) == target) smallest = m;
      }
      EXPECT_EQ(s.found(), smallest.has_value()) << g.str() << " target " << target;
      if (s.found() && smallest) {
        EXPECT_EQ(order_P(g, *s.modulus), target);
        EXPECT_EQ(*s.modulus, *smallest) << g.str() << " target " << target;
      }
    }
  }
}

TEST(Orders, ResidualBorelProbe) {
  EXPECT_TRUE(residual_borel_probe(kFib, B(2), 10));
  EXPECT_TRUE(residual_borel_probe(kFib, B(5), 6));
  EXPECT_THROW(residual_borel_probe(kFib, B(2), 1), DomainError);
}

// SL(3) ------------------------------------------------------------------------

TEST(Parabolic, Masks) {
  using P = std::vector<std::pair<int, int>>;
  EXPECT_EQ(make_parabolic(1, ParabolicSide::standard).zero_positions(), (P{{1, 0}, {2, 0}}));
  EXPECT_EQ(make_parabolic(2, ParabolicSide::standard).zero_positions(), (P{{0, 1}, {2, 1}}));
  EXPECT_EQ(make_parabolic(3, ParabolicSide::standard).zero_positions(), (P{{0, 2}, {1, 2}}));
  EXPECT_EQ(make_parabolic(1, ParabolicSide::primed).zero_positions(), (P{{0, 1}, {0, 2}}));
  EXPECT_EQ(make_parabolic(2, ParabolicSide::primed).zero_positions(), (P{{1, 0}, {1, 2}}));
  EXPECT_EQ(make_parabolic(3, ParabolicSide::primed).zero_positions(), (P{{2, 0}, {2, 1}}));
  EXPECT_THROW(make_parabolic(4, ParabolicSide::standard), DomainError);
}

TEST(Parabolic, CompanionMatrix) {
  const std::vector<BigInt> c{1, -1, -2, 1};
  const Mat g = companion_matrix(c);
  EXPECT_EQ(g.dim(), 3);
  EXPECT_NO_THROW(require_sl3_hyperbolic(g));
  // Char poly of -C is -p(-x) = x^3 + x^2 - 2x - 1.
  EXPECT_EQ(g.trace(), -1);
  EXPECT_THROW(companion_matrix(std::vector<BigInt>{1, 0, 0, 2}), DomainError);
}

TEST(Parabolic, RejectsDegenerate) {
  EXPECT_THROW(require_sl3_hyperbolic(Mat::identity(3)), DomainError);
  EXPECT_THROW(require_sl3_hyperbolic(Mat(3, {1, 1, 0, 0, 1, 1, 0, 0, 1})), DomainError);
  // x^3 - 1 has the root 1.
  EXPECT_THROW(require_sl3_hyperbolic(companion_matrix(std::vector<BigInt>{1, 0, 0, -1})), DomainError);
  // x^3 - x - 1 has a single real root.
  EXPECT_THROW(require_sl3_hyperbolic(companion_matrix(std::vector<BigInt>{1, 0, -1, -1})), DomainError);
}

namespace {

std::vector<Mat> sl3_instances() {
  std::vector<Mat> out;
  // Totally real cubic units: x^3 - x^2 - 2x + 1, x^3 - 3x + 1, x^3 - 4x + 1 ...
  for (const auto& c : std::vector<std::vector<BigInt>>{
           {1, -1, -2, 1}, {1, 0, -3, 1}, {1, 0, -4, 1}, {1, -2, -1, 1}, {1, 0, -5, -1}, {1, -3, 0, 1}}) {
    out.push_back(companion_matrix(c));
  }
  // Conjugating by an elementary matrix keeps the characteristic polynomial.
  const Mat e(3, {1, 1, 0, 0, 1, 0, 0, 0, 1});
  const Mat f(3, {1, 0, 0, 2, 1, 0, 0, 1, 1});
  for (std::size_t i = 0; i < 4; ++i) {
    out.push_back(mat_mul(mat_mul(i % 2 ? f : e, out[i]), (i % 2 ? f : e).inverse()));
  }
  return out;
}

}  // namespace

TEST(Parabolic, MatchesExactPowerOracle) {
  for (const auto& g : sl3_instances()) {
    ASSERT_NO_THROW(require_sl3_hyperbolic(g)) << g.str();
    for (int idx = 1; idx <= 3; ++idx) {
      for (auto side : {ParabolicSide::standard, ParabolicSide::primed}) {
        const auto spec = make_parabolic(idx, side);
        for (unsigned long q : {2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 9ul, 11ul, 25ul}) {
          const auto naive = oracle::order_scan_mod(oracle::entries(g), 3, B(q), 200000, spec.zero_positions());
          ASSERT_TRUE(naive);
          EXPECT_EQ(order_P_parabolic(g, spec, B(q)), *naive) << g.str() << " " << spec.name() << " q=" << q;
        }
      }
    }
  }
  EXPECT_THROW(order_P_parabolic(sl3_instances()[0], make_parabolic(1, ParabolicSide::standard), B(6)),
               DomainError);
}

TEST(Parabolic, DividesImageOrder) {
  for (const auto& g : sl3_instances()) {
    for (auto p : primes_up_to(23)) {
      const BigInt ord = residue_order(g, B(p));
      EXPECT_EQ(ord, *oracle::residue_order_scan(oracle::entries(g), 3, B(p), 100000));
      for (int idx = 1; idx <= 3; ++idx) {
        EXPECT_EQ(ord % order_P_parabolic(g, make_parabolic(idx, ParabolicSide::standard), B(p)), 0);
        EXPECT_EQ(ord % order_P_parabolic(g, make_parabolic(idx, ParabolicSide::primed), B(p)), 0);
      }
    }
  }
}

TEST(Parabolic, NegatedCompanionHasSameOrders) {
  // The parabolic test only asks for zeros, which are blind to the sign.
  const std::vector<BigInt> c{1, -1, -2, 1};
  const Mat g = companion_matrix(c);
  std::vector<BigInt> neg;
  for (const auto& x : g.entries()) neg.push_back(-x);
  const oracle::IntMat raw(neg.begin(), neg.end());  // the det -1 companion itself
  for (auto p : primes_up_to(13)) {
    const auto spec = make_parabolic(1, ParabolicSide::standard);
    EXPECT_EQ(order_P_parabolic(g, spec, B(p)), *oracle::order_scan_mod(raw, 3, B(p), 100000, spec.zero_positions()));
  }
}

// Bianchi --------------------------------------------------------------------------

namespace {

/// [[a, 1], [a - 1, 1]] has determinant 1 and trace a + 1.
BianchiMat bianchi_instance(const BigInt& d, const BigInt& u, const BigInt& v) {
  const QuadInt a = QuadInt::from_basis(d, u, v);
  const QuadInt one = QuadInt::integer(d, 1);
  return BianchiMat(d, {a, one, a - one, one});
}

std::uint64_t bianchi_scan(const BianchiMat& g, const BigInt& alpha, std::uint64_t limit) {
  for (std::uint64_t j = 1; j <= limit; ++j) {
    if (g.pow(j)(0, 1).divisible_by(alpha)) return j;
  }
  return 0;
}

}  // namespace

TEST(Bianchi, RingsAndParsing) {
  EXPECT_EQ(bianchi_discriminants().size(), 5u);
  EXPECT_THROW(bianchi_instance(BigInt(-5), 1, 1), DomainError);
  const BianchiMat g = parse_bianchi(BigInt(-1), "1:1,1,0:1,1");
  EXPECT_EQ(g(0, 0), QuadInt::from_basis(BigInt(-1), 1, 1));
  EXPECT_THROW(parse_bianchi(BigInt(-1), "1:1,1,1,1"), DomainError);
}

TEST(Bianchi, TorsionTraces) {
  // Exhaustive: every element of finite order found by brute force among
  // small matrices has a trace flagged as torsion.
  for (long d : bianchi_discriminants()) {
    const BigInt D(d);
    const QuadInt one = QuadInt::integer(D, 1);
    for (long u = -2; u <= 2; ++u)
      for (long v = -2; v <= 2; ++v) {
        const QuadInt a = QuadInt::from_basis(D, u, v);
        const BianchiMat g(D, {a, one, a - one, one});
        bool finite = false;
        for (std::uint64_t j = 1; j <= 12 && !finite; ++j) {
          const BianchiMat p = g.pow(j);
          finite = p(0, 1) == QuadInt::integer(D, 0) && p(1, 0) == QuadInt::integer(D, 0) &&
                   p(0, 0) == p(1, 1) && (p(0, 0) == one || p(0, 0) == -one);
        }
        if (finite) EXPECT_TRUE(is_torsion_trace(g.trace()) || g.trace() == one + one || g.trace() == -(one + one)) << g.str();
        if (is_torsion_trace(g.trace())) EXPECT_TRUE(finite) << g.str();
      }
  }
}

TEST(Bianchi, MatchesExactPowerOracle) {
  int checked = 0;
  for (long d : bianchi_discriminants()) {
    const BigInt D(d);
    for (const auto& [u, v] : std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {0, 2}, {3, -1}}) {
      const BianchiMat g = bianchi_instance(D, u, v);
      if (is_torsion_trace(g.trace())) continue;
      for (unsigned long alpha : {2ul, 3ul, 4ul, 5ul, 7ul, 9ul, 8ul, 11ul, 13ul}) {
        const std::uint64_t naive = bianchi_scan(g, B(alpha), 20000);
        ASSERT_NE(naive, 0u) << g.str() << " alpha=" << alpha;
        EXPECT_EQ(order_P_bianchi(g, B(alpha)), naive) << g.str() << " alpha=" << alpha;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Bianchi, Preconditions) {
  const BigInt D(-1);
  const QuadInt zero = QuadInt::integer(D, 0), one = QuadInt::integer(D, 1);
  const BianchiMat s(D, {zero, -one, one, zero});  // order 4
  EXPECT_THROW(order_P_bianchi(s, B(3)), DomainError);
  const BianchiMat t(D, {one, one, zero, one});  // parabolic
  EXPECT_THROW(order_P_bianchi(t, B(3)), DomainError);
  EXPECT_THROW(order_P_bianchi(bianchi_instance(D, 1, 1), B(6)), DomainError);
  EXPECT_EQ(order_P_bianchi(bianchi_instance(D, 1, 1), B(1)), 1);
}
