#pragma once

// The divisibility order P(gamma, eta_m) = min { j >= 1 : m | b_j } where
// gamma^j = [[a_j, b_j], [c_j, d_j]], i.e. the least power whose conjugate
// by diag(1, m) is integral. The admissible j form the subgroup P*Z of Z
// (they are the j with gamma^j in the lower Borel subgroup mod m), so P is
// found by stripping primes from a known multiple of the order of gamma
// mod m. Also the SL(3,Z) parabolic and Bianchi-group variants.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geoprog/bigint.hpp"
#include "geoprog/mat.hpp"
#include "geoprog/quadratic.hpp"

namespace geoprog {

inline constexpr unsigned kDefaultTowerBudget = 40;

/// |SL(2, Z/mZ)| = prod over p^k || m of p^(3k-2) (p^2 - 1).
BigInt sl2_group_order(const BigInt& m);

/// A factored multiple of the order of every element of SL(n, Z/mZ).
Factorization element_order_multiple(int n, const BigInt& m);

/// Order of g mod m in SL(n, Z/mZ).
BigInt residue_order(const Mat& g, const BigInt& m);

/// P(gamma, eta_m). Requires gamma hyperbolic and m >= 1.
BigInt order_P(const Mat& gamma, const BigInt& m);

struct TowerProfile {
  Mat gamma;
  BigInt p;
  std::vector<BigInt> values;  // values[k-1] = P(gamma, eta_{p^k})
};

TowerProfile prime_tower(const Mat& gamma, const BigInt& p, unsigned depth);

/// values[0] <= p + 1 and every consecutive ratio is 1 or p. Holds when
/// p does not divide b. When p | b but a != +-d mod p, the first ratio
/// above 1 is the order of a/d in (Z/p)^* / {+-1} instead, e.g.
/// [[12,7],[5,3]] at p = 7 gives 1, 3, 21, 147.
bool tower_shape_holds(const TowerProfile& tower);

struct CrtCheck {
  BigInt lhs;  // P(gamma, m n)
  BigInt rhs;  // lcm(P(gamma, m), P(gamma, n))
  bool equal;
};

CrtCheck crt_check(const Mat& gamma, const BigInt& m, const BigInt& n);

struct TowerDiagnostic {
  BigInt p;
  unsigned levels;         // tower levels evaluated
  BigInt deepest_value;    // P at the deepest evaluated level
  bool budget_exhausted;   // stopped at the depth budget, not by overshooting
};

struct ModulusSearch {
  std::optional<BigInt> modulus;
  std::vector<TowerDiagnostic> towers;

  bool found() const { return modulus.has_value(); }
  std::string describe() const;
};

/// Smallest m = prod p^k_p, over primes p <= max(largest prime factor of
/// target, prime_bound) and tower depths k_p <= budget, with
/// P(gamma, eta_m) = target. Combining coprime prime powers gives the lcm of
/// their tower values.
ModulusSearch find_modulus_with_P(const Mat& gamma, const BigInt& target,
                                  unsigned budget = kDefaultTowerBudget,
                                  const BigInt& prime_bound = 0);

/// Finite-depth proxy for unboundedness of the p-tower: every window of
/// max(1, depth/2) consecutive level ratios contains a strict increase.
bool residual_borel_probe(const Mat& gamma, const BigInt& p, unsigned depth);

// SL(3, Z) -------------------------------------------------------------------

enum class ParabolicSide { standard, primed };

/// One of the six maximal parabolics of SL(3): P_j (standard) or P_j'
/// (primed), j in {1,2,3}. Membership mod q means the listed entries vanish.
struct ParabolicSpec {
  int index;
  ParabolicSide side;

  /// Zero-based (row, col) positions that must vanish.
  std::vector<std::pair<int, int>> zero_positions() const;
  std::string name() const;
};

ParabolicSpec make_parabolic(int index, ParabolicSide side);

/// Companion matrix of x^3 + a x^2 + b x + c given {1, a, b, c}, negated
/// when c = 1 so the result has determinant 1 (the negation is the
/// companion of -p(-x)). Requires c = +-1.
Mat companion_matrix(std::span<const BigInt> monic_coeffs);

/// Requires the characteristic polynomial to be irreducible over Q with
/// three real roots: such elements are regular semisimple and lie in no
/// Borel subgroup. Throws DomainError otherwise, naming unipotent input.
void require_sl3_hyperbolic(const Mat& gamma);

/// Least j with the masked entries of gamma^j divisible by prime_power.
BigInt order_P_parabolic(const Mat& gamma, const ParabolicSpec& spec, const BigInt& prime_power);

// Bianchi groups PSL(2, O_K) --------------------------------------------------

/// The five Euclidean imaginary quadratic rings in scope.
std::span<const long> bianchi_discriminants();

/// A determinant-one 2x2 matrix over O_K, K = Q(sqrt d), d < 0.
class BianchiMat {
 public:
  BianchiMat(BigInt d, std::vector<QuadInt> row_major);

  const BigInt& d() const { return d_; }
  const QuadInt& operator()(int row, int col) const { return e_[row * 2 + col]; }
  QuadInt trace() const { return e_[0] + e_[3]; }
  BianchiMat operator*(const BianchiMat& o) const;
  BianchiMat pow(std::uint64_t j) const;
  std::string str() const;

 private:
  BigInt d_;
  std::vector<QuadInt> e_;
};

/// Parses entries "u:v" (meaning u + v*omega) separated by commas.
BianchiMat parse_bianchi(const BigInt& d, std::string_view text);

/// Traces of finite-order elements of SL(2, O_K): the real algebraic
/// integers 2cos(2 pi a / n) lying in an imaginary quadratic ring.
bool is_torsion_trace(const QuadInt& trace);

/// Least j with alpha | b_j in O_K; alpha a rational prime power or 1.
BigInt order_P_bianchi(const BianchiMat& gamma, const BigInt& alpha);

}  // namespace geoprog
