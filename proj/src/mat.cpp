#include "geoprog/mat.hpp"

#include <sstream>

#include "geoprog/detail/modular.hpp"
#include "geoprog/errors.hpp"

namespace geoprog {

namespace {

void check_size(int n, std::size_t size) {
  if (n != 2 && n != 3) throw DomainError("matrix dimension must be 2 or 3");
  if (size != static_cast<std::size_t>(n * n)) {
    throw DomainError("expected " + std::to_string(n * n) + " entries, got " +
                      std::to_string(size));
  }
}

std::vector<BigInt> raw_mul(int n, std::span<const BigInt> a, std::span<const BigInt> b) {
  std::vector<BigInt> out(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      BigInt acc = 0;
      for (int k = 0; k < n; ++k) acc += a[i * n + k] * b[k * n + j];
      out[i * n + j] = acc;
    }
  }
  return out;
}

std::string format_rows(int n, std::span<const BigInt> e) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n; ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < n; ++j) {
      if (j) os << ',';
      os << e[i * n + j].get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace

BigInt determinant(int n, std::span<const BigInt> e) {
  if (n == 2) return e[0] * e[3] - e[1] * e[2];
  if (n == 3) {
    return e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
           e[2] * (e[3] * e[7] - e[4] * e[6]);
  }
  throw DomainError("matrix dimension must be 2 or 3");
}

Mat::Mat(int n, std::vector<BigInt> row_major) : n_(n), e_(std::move(row_major)) {
  check_size(n_, e_.size());
  if (determinant(n_, e_) != 1) {
    throw DomainError("determinant of " + format_rows(n_, e_) + " is not 1");
  }
  normalize();
}

Mat::Mat(std::initializer_list<std::initializer_list<long>> rows)
    : Mat(static_cast<int>(rows.size()), [&] {
        std::vector<BigInt> e;
        for (const auto& row : rows) {
          if (row.size() != rows.size()) throw DomainError("matrix must be square");
          for (long x : row) e.emplace_back(x);
        }
        return e;
      }()) {}

Mat Mat::identity(int n) {
  check_size(n, static_cast<std::size_t>(n * n));
  std::vector<BigInt> e(n * n, 0);
  for (int i = 0; i < n; ++i) e[i * n + i] = 1;
  return Mat(n, std::move(e));
}

void Mat::normalize() {
  if (n_ != 2) return;
  const BigInt tr = e_[0] + e_[3];
  bool flip = tr < 0;
  if (tr == 0) flip = (e_[0] != 0) ? e_[0] < 0 : e_[1] < 0;
  if (flip) {
    for (auto& x : e_) x = -x;
  }
}

BigInt Mat::trace() const {
  BigInt t = 0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Mat Mat::inverse() const {
  const auto& e = e_;
  if (n_ == 2) return Mat(2, {e[3], -e[1], -e[2], e[0]});
  // Adjugate; det = 1.
  std::vector<BigInt> inv(9);
  inv[0] = e[4] * e[8] - e[5] * e[7];
  inv[1] = e[2] * e[7] - e[1] * e[8];
  inv[2] = e[1] * e[5] - e[2] * e[4];
  inv[3] = e[5] * e[6] - e[3] * e[8];
  inv[4] = e[0] * e[8] - e[2] * e[6];
  inv[5] = e[2] * e[3] - e[0] * e[5];
  inv[6] = e[3] * e[7] - e[4] * e[6];
  inv[7] = e[1] * e[6] - e[0] * e[7];
  inv[8] = e[0] * e[4] - e[1] * e[3];
  return Mat(3, std::move(inv));
}

std::string Mat::str() const { return format_rows(n_, e_); }

ResidueMat::ResidueMat(int n, BigInt modulus, std::vector<BigInt> row_major)
    : n_(n), m_(std::move(modulus)), e_(std::move(row_major)) {
  check_size(n_, e_.size());
  if (m_ < 2) throw DomainError("modulus must be at least 2");
  for (auto& x : e_) x = mod(x, m_);
  if (mod(determinant(n_, e_), m_) != 1) {
    throw DomainError("determinant is not 1 modulo " + m_.get_str());
  }
}

ResidueMat ResidueMat::reduce(const Mat& g, const BigInt& modulus) {
  return ResidueMat(g.dim(), modulus, {g.entries().begin(), g.entries().end()});
}

bool ResidueMat::projectively_equal(const ResidueMat& other) const {
  if (*this == other) return true;
  if (n_ != other.n_ || m_ != other.m_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (mod(e_[i] + other.e_[i], m_) != 0) return false;
  }
  return true;
}

std::string ResidueMat::str() const { return format_rows(n_, e_) + " mod " + m_.get_str(); }

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch in mat_mul");
  return Mat(a.dim(), raw_mul(a.dim(), a.entries(), b.entries()));
}

Mat mat_pow(const Mat& g, std::uint64_t j) {
  const int n = g.dim();
  std::vector<BigInt> result(n * n, 0);
  for (int i = 0; i < n; ++i) result[i * n + i] = 1;
  std::vector<BigInt> base(g.entries().begin(), g.entries().end());
  while (j > 0) {
    if (j & 1) result = raw_mul(n, result, base);
    j >>= 1;
    if (j) base = raw_mul(n, base, base);
  }
  return Mat(n, std::move(result));
}

ResidueMat mat_pow_mod(const Mat& g, const BigInt& j, const BigInt& modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  if (j < 0) throw DomainError("exponent must be non-negative");
  auto entries = detail::with_ring(modulus, [&](auto ring) {
    return detail::ModMat(ring, g.dim(), g.entries()).pow(j).to_bigints();
  });
  return ResidueMat(g.dim(), modulus, std::move(entries));
}

Mat parse_mat(std::string_view text) {
  std::vector<BigInt> e;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    e.push_back(parse_bigint(text.substr(start, comma - start)));
    start = comma + 1;
  }
  if (e.size() == 4) return Mat(2, std::move(e));
  if (e.size() == 9) return Mat(3, std::move(e));
  throw DomainError("a matrix needs 4 or 9 comma-separated entries");
}

}  // namespace geoprog
