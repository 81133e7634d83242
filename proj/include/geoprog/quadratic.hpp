#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "geoprog/bigint.hpp"
#include "geoprog/mat.hpp"
#include "geoprog/real.hpp"

namespace geoprog {

/// An element (x + y*sqrt(d)) / 2 of the ring of integers of Q(sqrt(d)).
///
/// Coordinates are stored doubled so every element of O_K has integral
/// storage: x and y share parity when d = 1 mod 4, and are both even
/// otherwise. d is squarefree and not 0 or 1; it may be negative.
class QuadInt {
 public:
  /// Throws DomainError if (x + y sqrt d)/2 is not integral.
  QuadInt(BigInt d, BigInt twice_x, BigInt twice_y);

  static QuadInt integer(const BigInt& d, const BigInt& n) { return {d, 2 * n, 0}; }
  /// u + v*omega, with omega = sqrt(d) or (1 + sqrt(d))/2.
  static QuadInt from_basis(const BigInt& d, const BigInt& u, const BigInt& v);

  const BigInt& d() const { return d_; }
  const BigInt& twice_x() const { return x_; }
  const BigInt& twice_y() const { return y_; }
  /// Coordinates (u, v) in the integral basis {1, omega}.
  std::pair<BigInt, BigInt> basis_coords() const;

  BigInt norm() const;
  /// Twice the rational part: x + x' = trace.
  BigInt trace() const { return x_; }
  QuadInt conj() const { return {d_, x_, -y_}; }

  QuadInt operator+(const QuadInt& o) const;
  QuadInt operator-(const QuadInt& o) const;
  QuadInt operator*(const QuadInt& o) const;
  QuadInt operator-() const { return {d_, -x_, -y_}; }
  QuadInt pow(std::uint64_t e) const;

  bool operator==(const QuadInt& o) const { return d_ == o.d_ && x_ == o.x_ && y_ == o.y_; }

  /// Whether the rational integer a divides this element in O_K.
  bool divisible_by(const BigInt& a) const;

  /// Sign of (value - c) under the real embedding with sqrt(d) > 0.
  /// Requires d > 0.
  int compare(const BigInt& c) const;
  Real to_real() const;

  /// "(3+1*sqrt(5))/2" style, reduced when the halves are integral.
  std::string str() const;

 private:
  BigInt d_;
  BigInt x_;
  BigInt y_;
};

/// A unit of O_K with norm +1 or -1.
class QuadUnit {
 public:
  /// Throws DomainError if the norm is not +-1.
  explicit QuadUnit(QuadInt value);

  const QuadInt& value() const { return value_; }
  bool is_norm_one() const { return norm_one_; }

 private:
  QuadInt value_;
  bool norm_one_;
};

/// omega^2 = trace*omega - norm for the integral-basis generator omega.
struct OmegaData {
  BigInt trace;
  BigInt norm;
};
OmegaData omega_data(const BigInt& d);

/// Fundamental unit > 1 of the real quadratic field Q(sqrt(d)), found by the
/// continued fraction of omega and checked against the norm equation.
QuadUnit fundamental_unit(const BigInt& d);

/// Generator > 1 of the norm-one units modulo sign.
QuadUnit norm_one_fundamental_unit(const BigInt& d);

/// Matrix of multiplication by `a` in the integral basis {1, omega}; the
/// columns are the coordinates of a*1 and a*omega.
std::vector<BigInt> multiplication_matrix(const QuadInt& a);

/// Multiplication by the norm-one fundamental unit as an element of SL(2,Z).
Mat embed_unit_as_matrix(const BigInt& d);

struct UnitExponent {
  std::uint64_t t;
  int sign;  // +1 or -1
  /// True when lambda^{-1} (rather than lambda) is sign * mu^t.
  bool inverted;
};

/// Writes lambda = sign * mu^(+-t) with mu the norm-one fundamental unit.
/// Throws DomainError for torsion (+-1) or norm -1 input.
UnitExponent unit_exponent(const QuadUnit& lambda, const BigInt& d);

}  // namespace geoprog
