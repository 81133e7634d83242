#include "geoprog/quadratic.hpp"

#include <cmath>

#include "geoprog/errors.hpp"

namespace geoprog {

namespace {

bool d_is_one_mod_four(const BigInt& d) { return mod(d, 4) == 1; }

/// Sign of a + b*sqrt(d), d > 0 not a square.
int sign_of(const BigInt& a, const BigInt& b, const BigInt& d) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sa >= 0 && sb >= 0) return (sa || sb) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  // Opposite signs: compare a^2 with b^2 d.
  const BigInt lhs = a * a;
  const BigInt rhs = b * b * d;
  if (lhs == rhs) return 0;  // unreachable for non-square d, b != 0
  const bool a_dominates = lhs > rhs;
  return a_dominates ? sa : sb;
}

void require_real_field(const BigInt& d) {
  if (d <= 1) throw DomainError("d must be a squarefree integer > 1, got " + d.get_str());
  if (!is_squarefree(d)) throw DomainError(d.get_str() + " is not squarefree");
}

}  // namespace

QuadInt::QuadInt(BigInt d, BigInt twice_x, BigInt twice_y)
    : d_(std::move(d)), x_(std::move(twice_x)), y_(std::move(twice_y)) {
  if (d_ == 0 || d_ == 1) throw DomainError("quadratic field needs d != 0, 1");
  const bool x_even = mpz_even_p(x_.get_mpz_t());
  const bool y_even = mpz_even_p(y_.get_mpz_t());
  const bool ok = d_is_one_mod_four(d_) ? (x_even == y_even) : (x_even && y_even);
  if (!ok) throw DomainError("element is not integral in Q(sqrt(" + d_.get_str() + "))");
}

QuadInt QuadInt::from_basis(const BigInt& d, const BigInt& u, const BigInt& v) {
  if (d_is_one_mod_four(d)) return QuadInt(d, 2 * u + v, v);
  return QuadInt(d, 2 * u, 2 * v);
}

std::pair<BigInt, BigInt> QuadInt::basis_coords() const {
  if (d_is_one_mod_four(d_)) return {(x_ - y_) / 2, y_};
  return {x_ / 2, y_ / 2};
}

BigInt QuadInt::norm() const { return (x_ * x_ - d_ * y_ * y_) / 4; }

QuadInt QuadInt::operator+(const QuadInt& o) const {
  if (d_ != o.d_) throw DomainError("field mismatch");
  return {d_, x_ + o.x_, y_ + o.y_};
}

QuadInt QuadInt::operator-(const QuadInt& o) const {
  if (d_ != o.d_) throw DomainError("field mismatch");
  return {d_, x_ - o.x_, y_ - o.y_};
}

QuadInt QuadInt::operator*(const QuadInt& o) const {
  if (d_ != o.d_) throw DomainError("field mismatch");
  BigInt x = x_ * o.x_ + d_ * y_ * o.y_;
  BigInt y = x_ * o.y_ + o.x_ * y_;
  mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), 2);
  mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), 2);
  return {d_, std::move(x), std::move(y)};
}

QuadInt QuadInt::pow(std::uint64_t e) const {
  QuadInt result = integer(d_, 1);
  QuadInt base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool QuadInt::divisible_by(const BigInt& a) const {
  if (a == 0) return false;
  if (!mpz_divisible_p(x_.get_mpz_t(), a.get_mpz_t()) ||
      !mpz_divisible_p(y_.get_mpz_t(), a.get_mpz_t())) {
    return false;
  }
  const BigInt x = x_ / a;
  const BigInt y = y_ / a;
  const bool x_even = mpz_even_p(x.get_mpz_t());
  const bool y_even = mpz_even_p(y.get_mpz_t());
  return d_is_one_mod_four(d_) ? (x_even == y_even) : (x_even && y_even);
}

int QuadInt::compare(const BigInt& c) const {
  if (d_ < 0) throw DomainError("real comparison needs a real quadratic field");
  return sign_of(x_ - 2 * c, y_, d_);
}

Real QuadInt::to_real() const {
  if (d_ < 0) throw DomainError("real embedding needs a real quadratic field");
  using boost::multiprecision::sqrt;
  return (geoprog::to_real(x_) + geoprog::to_real(y_) * sqrt(geoprog::to_real(d_))) / 2;
}

std::string QuadInt::str() const {
  const bool halves = mpz_odd_p(x_.get_mpz_t()) || mpz_odd_p(y_.get_mpz_t());
  const BigInt x = halves ? x_ : BigInt(x_ / 2);
  const BigInt y = halves ? y_ : BigInt(y_ / 2);
  std::string s = x.get_str() + (y < 0 ? "-" : "+") + abs(y).get_str() + "*sqrt(" + d_.get_str() + ")";
  return halves ? "(" + s + ")/2" : s;
}

QuadUnit::QuadUnit(QuadInt value) : value_(std::move(value)) {
  const BigInt n = value_.norm();
  if (n != 1 && n != -1) throw DomainError(value_.str() + " is not a unit");
  norm_one_ = n == 1;
}

OmegaData omega_data(const BigInt& d) {
  if (d_is_one_mod_four(d)) return {1, (1 - d) / 4};
  return {0, -d};
}

QuadUnit fundamental_unit(const BigInt& d) {
  require_real_field(d);
  const bool half = d_is_one_mod_four(d);
  // omega = (P + sqrt d)/Q.
  BigInt P = half ? 1 : 0;
  BigInt Q = half ? 2 : 1;
  const BigInt root = isqrt(d);
  BigInt p_prev = 1, p_prev2 = 0;
  BigInt q_prev = 0, q_prev2 = 1;
  constexpr int kMaxSteps = 1'000'000;
  for (int step = 0; step < kMaxSteps; ++step) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), BigInt(P + root).get_mpz_t(), Q.get_mpz_t());
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    // Candidate p - q*conj(omega).
    QuadInt candidate = half ? QuadInt(d, 2 * p - q, q) : QuadInt(d, 2 * p, 2 * q);
    const BigInt n = candidate.norm();
    if ((n == 1 || n == -1) && candidate.compare(1) > 0) return QuadUnit(std::move(candidate));
    p_prev2 = std::move(p_prev);
    p_prev = std::move(p);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(q);
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  throw SearchExhausted("continued fraction of omega for d=" + d.get_str() + " did not close");
}

QuadUnit norm_one_fundamental_unit(const BigInt& d) {
  QuadUnit eps = fundamental_unit(d);
  if (eps.is_norm_one()) return eps;
  return QuadUnit(eps.value() * eps.value());
}

std::vector<BigInt> multiplication_matrix(const QuadInt& a) {
  const auto [u, v] = a.basis_coords();
  const OmegaData w = omega_data(a.d());
  // a*1 = u + v w;  a*w = -v*norm + (u + v*trace) w.
  return {u, -v * w.norm, v, u + v * w.trace};
}

Mat embed_unit_as_matrix(const BigInt& d) {
  const QuadUnit mu = norm_one_fundamental_unit(d);
  return Mat(2, multiplication_matrix(mu.value()));
}

UnitExponent unit_exponent(const QuadUnit& lambda, const BigInt& d) {
  if (lambda.value().d() != d) throw DomainError("unit lies in a different field");
  if (!lambda.is_norm_one()) throw DomainError("unit_exponent needs a norm-one unit");
  QuadInt x = lambda.value();
  if (x.twice_y() == 0) throw DomainError("+-1 is torsion and has no unit exponent");
  UnitExponent out{0, 1, false};
  if (x.compare(0) < 0) {
    out.sign = -1;
    x = -x;
  }
  if (x.compare(1) < 0) {
    out.inverted = true;
    x = x.conj();  // inverse of a norm-one unit
  }
  const QuadInt mu = norm_one_fundamental_unit(d).value();
  // log(x) ~ log(trace) once the conjugate is negligible.
  auto log_of = [](const QuadInt& u) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, u.trace().get_mpz_t());
    const double log_trace = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    if (exp2 > 60) return log_trace;
    const double t = std::ldexp(mant, static_cast<int>(exp2));
    return std::log((t + std::sqrt(t * t - 4.0)) / 2.0);
  };
  const double ratio = log_of(x) / log_of(mu);
  const auto guess = static_cast<std::int64_t>(std::llround(ratio));
  for (std::int64_t t = std::max<std::int64_t>(1, guess - 1); t <= guess + 1; ++t) {
    if (mu.pow(static_cast<std::uint64_t>(t)) == x) {
      out.t = static_cast<std::uint64_t>(t);
      return out;
    }
  }
  throw InternalError(x.str() + " is not a power of the norm-one fundamental unit");
}

}  // namespace geoprog
