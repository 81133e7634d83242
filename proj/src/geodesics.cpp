#include "geoprog/geodesics.hpp"

#include <ostream>

#include "geoprog/errors.hpp"
#include "geoprog/parallel.hpp"

namespace geoprog {

std::string_view to_string(Conjugacy c) {
  switch (c) {
    case Conjugacy::elliptic: return "elliptic";
    case Conjugacy::parabolic: return "parabolic";
    case Conjugacy::hyperbolic: return "hyperbolic";
  }
  return "?";
}

Conjugacy classify(const Mat& g) {
  if (g.dim() != 2) throw DomainError("classify expects a 2x2 matrix");
  const BigInt t = abs(g.trace());
  if (t > 2) return Conjugacy::hyperbolic;
  if (t == 2) return Conjugacy::parabolic;
  return Conjugacy::elliptic;
}

void require_hyperbolic(const Mat& g) {
  if (classify(g) != Conjugacy::hyperbolic) {
    throw DomainError(g.str() + " is " + std::string(to_string(classify(g))) +
                      ", not hyperbolic");
  }
}

Real trace_to_length(const BigInt& m) {
  if (m < 3) throw DomainError("trace must be at least 3, got " + m.get_str());
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;
  // 2 arccosh(m/2) = 2 log((m + sqrt(m^2 - 4)) / 2), with m^2 - 4 exact.
  return 2 * log((to_real(m) + sqrt(to_real(m * m - 4))) / 2);
}

TraceField trace_field(const BigInt& trace) {
  const BigInt m = abs(trace);
  if (m < 3) throw DomainError("trace must satisfy |m| >= 3");
  Factorization f = factorize(m - 2);
  multiply_into(f, factorize(m + 2));
  BigInt d = 1;
  for (const auto& [p, e] : f) {
    if (e % 2) d *= p;
  }
  const BigInt rest = (m * m - 4) / d;
  // m^2 - 4 is never a perfect square for m >= 3.
  if (d == 1 || !is_square(rest)) throw InternalError("bad trace field for " + m.get_str());
  return {d, isqrt(rest)};
}

QuadUnit eigenvalue_for_trace(const BigInt& trace) {
  const TraceField f = trace_field(trace);
  return QuadUnit(QuadInt(f.d, abs(trace), f.s));
}

GeodesicClass analyze(const Mat& g) {
  require_hyperbolic(g);
  const BigInt t = abs(g.trace());
  QuadUnit lambda = eigenvalue_for_trace(t);
  const BigInt d = lambda.value().d();
  const auto exp = unit_exponent(lambda, d);
  return GeodesicClass{g, t, d, std::move(lambda), exp.t, trace_to_length(t)};
}

bool is_absolutely_primitive(const Mat& g) { return analyze(g).unit_exp == 1; }

bool primitivity_certificate(const Mat& gamma, const BigInt& m, const BigInt& j) {
  if (!is_absolutely_primitive(gamma)) {
    throw DomainError(gamma.str() + " is not absolutely primitive");
  }
  if (m < 1) throw DomainError("modulus must be positive");
  if (j < 1) throw DomainError("exponent must be positive");
  auto divides_b = [&](const BigInt& e) {
    if (m == 1) return true;
    return mat_pow_mod(gamma, e, m)(0, 1) == 0;
  };
  if (!divides_b(j)) {
    throw DomainError("conjugate is not integral: " + m.get_str() + " does not divide b_" +
                      j.get_str());
  }
  for (const auto& [q, e] : factorize(j)) {
    if (divides_b(j / q)) return false;
  }
  return true;
}

LengthSet enumerate_length_set(const BigInt& max_trace, unsigned workers) {
  if (max_trace < 3) throw DomainError("max trace must be at least 3");
  if (!max_trace.fits_ulong_p()) throw DomainError("max trace too large to enumerate");
  const auto count = max_trace.get_ui() - 2;
  LengthSet set{max_trace, std::vector<LengthEntry>(count)};
  parallel_for(count, workers, [&](std::size_t i) {
    const BigInt m = BigInt(static_cast<unsigned long>(i + 3));
    set.entries[i] = {m, trace_to_length(m)};
  });
  return set;
}

void write_length_csv(std::ostream& os, const LengthSet& set, int digits) {
  os << "trace,length\n";
  for (const auto& e : set.entries) os << e.trace.get_str() << ',' << format_real(e.length, digits) << '\n';
}

}  // namespace geoprog
