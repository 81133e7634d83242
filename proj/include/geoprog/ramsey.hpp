#pragma once

// Van der Waerden machinery: monochromatic progressions in colourings of
// {1..n}, the smallest van der Waerden numbers, and the divisor-colouring
// transfer of length progressions through finite covers.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoprog/bigint.hpp"

namespace geoprog {

struct Coloring {
  unsigned d = 0;               // number of colours
  std::vector<unsigned> colors;  // colors[i] is the colour of i + 1

  std::size_t n() const { return colors.size(); }
  /// Throws DomainError if a colour id is not below d.
  void validate() const;
};

struct MonoAP {
  std::size_t start;       // 1-based
  std::size_t difference;  // >= 1
  unsigned color;
};

/// First monochromatic k-term progression in lexicographic (start,
/// difference) order. Requires k >= 3.
std::optional<MonoAP> mono_ap(const Coloring& c, unsigned k);

struct VdwResult {
  std::optional<unsigned> number;  // W(d, k) when determined
  /// A colouring of {1..W-1} without monochromatic k-AP (the longest one
  /// found when the number is unknown).
  Coloring witness;
  bool timed_out = false;
};

/// Exhaustive search for W(d, k) <= n_max under a wall-clock budget.
VdwResult vdw_number(unsigned d, unsigned k, unsigned n_max,
                     std::chrono::milliseconds budget = std::chrono::minutes(30));

enum class CoverDirection { lift, project };

/// A degree-d cover and, per element of a length progression, the divisor
/// of d relating the length upstairs to the length downstairs.
struct CoverSpec {
  BigInt degree;
  std::vector<BigInt> divisors;
  CoverDirection direction = CoverDirection::lift;

  /// Throws DomainError unless every divisor is a positive divisor of degree.
  void validate() const;
  /// Colour i is the position of divisors[i] among the divisors of degree.
  Coloring coloring() const;
};

struct TransferResult {
  MonoAP sub;              // within the input progression
  BigInt divisor;          // the common colour
  std::vector<Rational> values;
};

/// Lift multiplies by the divisor colour, project divides by it; the
/// output is a k-term exact progression of transferred values. Throws
/// SearchExhausted when the colouring has no monochromatic k-AP.
TransferResult transfer_ap(const std::vector<Rational>& values, const CoverSpec& cover, unsigned k);

struct DoubleTransferResult {
  MonoAP stage1;        // length-N1 progression in the lifted colouring
  MonoAP stage2;        // k-term progression among those N1 terms
  BigInt lift_divisor;     // i0
  BigInt project_divisor;  // j0
  std::vector<Rational> values;  // a + b s for s = 1..k
  Rational a;
  Rational b;

  bool integral() const { return a.get_den() == 1 && b.get_den() == 1; }
};

/// Stage 1 lifts through `up` (one divisor per input value) and extracts a
/// progression of length N1 = down.divisors.size(); stage 2 projects those
/// through `down` and extracts k terms. Values must form an exact AP.
DoubleTransferResult double_transfer(const std::vector<Rational>& values, const CoverSpec& up,
                                     const CoverSpec& down, unsigned k);

/// The positive divisors of n >= 1, ascending.
std::vector<BigInt> divisors(const BigInt& n);

Coloring coloring_from_json(const std::string& text);
std::string coloring_to_json(const Coloring& c);
CoverSpec cover_from_json(const std::string& text);

}  // namespace geoprog
