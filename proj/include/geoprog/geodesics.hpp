#pragma once

// Closed geodesics on the modular surface through their conjugacy classes:
// 2 cosh(length / 2) = |trace|.

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "geoprog/bigint.hpp"
#include "geoprog/mat.hpp"
#include "geoprog/quadratic.hpp"
#include "geoprog/real.hpp"

namespace geoprog {

enum class Conjugacy { elliptic, parabolic, hyperbolic };

std::string_view to_string(Conjugacy c);

/// By |trace| against 2. Only defined for 2x2 matrices.
Conjugacy classify(const Mat& g);

/// Throws DomainError unless g is a hyperbolic 2x2 matrix.
void require_hyperbolic(const Mat& g);

/// 2 arccosh(m / 2) for an integer trace m >= 3.
Real trace_to_length(const BigInt& m);

/// trace^2 - 4 = d * s^2 with d squarefree.
struct TraceField {
  BigInt d;
  BigInt s;
};
TraceField trace_field(const BigInt& trace);

/// The eigenvalue (m + sqrt(m^2 - 4)) / 2 > 1 of a trace-m element.
QuadUnit eigenvalue_for_trace(const BigInt& trace);

struct GeodesicClass {
  Mat gamma;
  BigInt trace;  // |Tr|, >= 3
  BigInt d;      // K_gamma = Q(sqrt d)
  QuadUnit lambda;
  std::uint64_t unit_exp;
  Real length;
};

GeodesicClass analyze(const Mat& g);

/// True iff the eigenvalue is the norm-one fundamental unit of its field.
bool is_absolutely_primitive(const Mat& g);

/// Checks that theta = eta_m gamma^j eta_m^{-1} is primitive: j must be the
/// least exponent making the conjugate integral, which holds iff m does not
/// divide b_{j/q} for any prime q | j. Throws DomainError if gamma is not
/// absolutely primitive or m does not divide b_j.
bool primitivity_certificate(const Mat& gamma, const BigInt& m, const BigInt& j);

struct LengthEntry {
  BigInt trace;
  Real length;
};

/// One entry per trace 3..max_trace. Multiplicities are not tracked.
struct LengthSet {
  BigInt max_trace;
  std::vector<LengthEntry> entries;
};

LengthSet enumerate_length_set(const BigInt& max_trace, unsigned workers = 1);

/// Header "trace,length", one row per entry.
void write_length_csv(std::ostream& os, const LengthSet& set, int digits = kLengthDigits);

}  // namespace geoprog
