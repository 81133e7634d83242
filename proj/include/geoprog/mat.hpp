#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "geoprog/bigint.hpp"

namespace geoprog {

BigInt determinant(int n, std::span<const BigInt> row_major);

/// A determinant-one integer matrix of size 2 or 3.
///
/// For n = 2 the stored entries are the canonical representative of the
/// class in PSL(2,Z): trace > 0, or trace = 0 and the first nonzero entry of
/// the first row positive. SL(3,Z) has no centre to quotient by, so 3x3
/// matrices are stored as given.
class Mat {
 public:
  /// Throws DomainError unless n is 2 or 3, the size matches and det = 1.
  Mat(int n, std::vector<BigInt> row_major);
  Mat(std::initializer_list<std::initializer_list<long>> rows);

  static Mat identity(int n);

  int dim() const { return n_; }
  const BigInt& operator()(int row, int col) const { return e_[row * n_ + col]; }
  std::span<const BigInt> entries() const { return e_; }

  BigInt trace() const;
  Mat inverse() const;

  bool operator==(const Mat& other) const { return n_ == other.n_ && e_ == other.e_; }

  /// "[[a,b],[c,d]]"
  std::string str() const;

 private:
  void normalize();

  int n_;
  std::vector<BigInt> e_;
};

/// A matrix over Z/mZ with determinant congruent to 1.
class ResidueMat {
 public:
  /// Reduces the entries into [0, m). Throws DomainError if m < 2, the
  /// size is wrong, or det is not 1 mod m.
  ResidueMat(int n, BigInt modulus, std::vector<BigInt> row_major);

  static ResidueMat reduce(const Mat& g, const BigInt& modulus);

  int dim() const { return n_; }
  const BigInt& modulus() const { return m_; }
  const BigInt& operator()(int row, int col) const { return e_[row * n_ + col]; }
  std::span<const BigInt> entries() const { return e_; }

  bool operator==(const ResidueMat& other) const {
    return n_ == other.n_ && m_ == other.m_ && e_ == other.e_;
  }
  /// Equality in PSL(2, Z/mZ): equal up to the scalar -1.
  bool projectively_equal(const ResidueMat& other) const;

  std::string str() const;

 private:
  int n_;
  BigInt m_;
  std::vector<BigInt> e_;
};

Mat mat_mul(const Mat& a, const Mat& b);

/// Exact j-th power by repeated squaring.
Mat mat_pow(const Mat& g, std::uint64_t j);

/// g^j reduced mod m, computed entirely in the residue ring.
ResidueMat mat_pow_mod(const Mat& g, const BigInt& j, const BigInt& modulus);

/// Parses "a,b,c,d" (or nine entries) in row-major order.
Mat parse_mat(std::string_view text);

}  // namespace geoprog
