#pragma once

// Arithmetic and epsilon-almost arithmetic progressions in finite multisets
// of non-negative reals.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geoprog/bigint.hpp"
#include "geoprog/geodesics.hpp"
#include "geoprog/quadratic.hpp"
#include "geoprog/real.hpp"

namespace geoprog {

inline constexpr double kDefaultRelativeTolerance = 1e-18;

/// Exact identity of a value for progression tests. A linear tag is a
/// rational number; a unit tag stands for 2 log(lambda) with lambda a
/// norm-one unit, so x + z = 2y becomes lambda_x lambda_z = lambda_y^2.
/// Values with tags of different kinds or fields never form progressions:
/// a unit relation across distinct real quadratic fields forces trivial
/// exponents.
class ExactTag {
 public:
  static ExactTag linear(Rational value);
  /// The length 2 arccosh(trace / 2), trace >= 3.
  static ExactTag of_trace(const BigInt& trace);

  bool is_linear() const { return !unit_; }
  const Rational& coefficient() const { return coefficient_; }
  const std::optional<QuadInt>& unit() const { return unit_; }

  /// 2 * this - prev, when both live in the same group.
  std::optional<ExactTag> reflect(const ExactTag& prev) const;
  ExactTag scaled(const Rational& c) const;

  /// Map key; equal keys mean equal values.
  std::string key() const;

 private:
  Rational coefficient_;
  std::optional<QuadInt> unit_;
};

class RealMultiset {
 public:
  /// Sorts ascending. Throws DomainError on negative or non-finite values.
  explicit RealMultiset(std::vector<Real> values);
  /// Exact tags travel with their values through the sort.
  RealMultiset(std::vector<Real> values, std::vector<ExactTag> tags);

  static RealMultiset integers(const std::vector<BigInt>& values);
  static RealMultiset rationals(const std::vector<Rational>& values);
  /// Lengths tagged by their traces.
  static RealMultiset lengths(const LengthSet& set);

  std::size_t size() const { return values_.size(); }
  const std::vector<Real>& values() const { return values_; }
  bool has_tags() const { return !tags_.empty(); }
  const std::vector<ExactTag>& tags() const { return tags_; }

  /// Every value (and linear tag) multiplied by c > 0. Unit tags admit
  /// only positive integer c.
  RealMultiset scaled(const Rational& c) const;

 private:
  std::vector<Real> values_;
  std::vector<ExactTag> tags_;
};

/// Indices into the multiset and the values, strictly increasing.
struct Progression {
  std::vector<std::size_t> indices;
  std::vector<Real> values;
};

/// First k-term progression in lexicographic (first, second) index order.
/// Exact tags are used when present; otherwise terms may miss the
/// progression by tol relative to their size. tol = 0 needs tags.
std::optional<Progression> find_k_ap(const RealMultiset& s, unsigned k,
                                     double tol = kDefaultRelativeTolerance);
std::optional<Progression> has_3term_ap(const RealMultiset& s,
                                        double tol = kDefaultRelativeTolerance);

struct AlmostAPCheck {
  bool ok;
  Real deviation;  // max over gap pairs of |gap_i / gap_j - 1|
};

/// Requires seq strictly increasing with at least two terms.
AlmostAPCheck is_eps_almost_ap(const std::vector<Real>& seq, double eps);

struct AlmostAPResult {
  double eps;
  unsigned k;
  Real t;
  std::uint64_t m;
  std::uint64_t tail_start;  // first bucket of the all-nonempty tail
  std::vector<std::uint64_t> buckets;
  std::vector<Real> values;
  Real deviation;
};

struct AlmostAPOutcome {
  std::optional<AlmostAPResult> result;
  // When sparse: the first bucket the construction needed but found empty.
  std::uint64_t first_empty_bucket = 0;
  std::uint64_t tail_start = 0;

  bool found() const { return result.has_value(); }
};

/// Buckets B_n = ((n-1) t, n t]. Let n0 start the maximal run of nonempty
/// buckets ending at the last bucket and m the least integer > 1 + 2/eps;
/// the smallest value of each bucket n0 - 1 + j m, j = 1..k, is taken.
AlmostAPOutcome find_almost_ap(const RealMultiset& s, double eps, unsigned k, const Real& t);

/// Tries t = t_max (1 - i / steps) for i = 0..steps-1 and returns the first
/// success. t_max <= 0 picks the widest t that could fit k buckets.
AlmostAPOutcome find_almost_ap_scan(const RealMultiset& s, double eps, unsigned k,
                                    Real t_max = 0, unsigned steps = 400);

/// S(x - t) / S(x) with S the counting function.
Real growth_ratio(const RealMultiset& s, const Real& t, const Real& x);

/// One value per line, or CSV with a header naming a value/length column
/// and optionally a trace column (which adds exact tags).
RealMultiset load_multiset_csv(std::istream& in);

std::string almost_ap_to_json(const AlmostAPOutcome& outcome, int indent = 2);

}  // namespace geoprog
