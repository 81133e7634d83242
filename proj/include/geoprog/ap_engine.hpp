#pragma once

// Arithmetic progressions in the primitive length spectrum. For an
// absolutely primitive gamma and C = lcm of P(gamma, eta_p) over primes
// p <= k, each C*r (r = 1..k) is realised as P(gamma, eta_m) for a suitable
// m, so theta_r = eta_m gamma^(C r) eta_m^-1 is a primitive integral matrix
// of length C*r*l(gamma).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geoprog/bigint.hpp"
#include "geoprog/mat.hpp"
#include "geoprog/orders.hpp"
#include "geoprog/real.hpp"

namespace geoprog {

struct APItem {
  BigInt r;
  BigInt modulus;
  BigInt exponent;           // j_r
  Mat theta;
  BigInt trace;
  BigInt length_multiplier;  // of the requested length (equals j_r unless `requested` is set)
};

/// Set by occurs_in_ap: the length being realised and its relation to the
/// companion gamma, whose lengths are multiples of l_requested / D.
struct RequestedLength {
  BigInt trace;
  std::uint64_t D;
};

struct APWitness {
  Mat gamma;
  BigInt trace;
  BigInt d;
  unsigned k = 0;
  BigInt C;
  BigInt step = 1;  // r runs over step, 2 step, ..., k step
  Real base_length;
  std::vector<APItem> items;
  std::vector<BigInt> missing;  // values of r whose modulus search failed
  std::optional<RequestedLength> requested;
  bool verified = false;

  bool complete() const { return missing.empty() && items.size() == k; }
};

struct PrimitiveCompanion {
  BigInt original_trace;
  Mat companion;
  std::uint64_t D;
};

/// lcm of P(gamma, eta_p) over primes p <= k.
BigInt constant_C(const Mat& gamma, unsigned k);

/// Requires gamma absolutely primitive and k >= 2. Items whose modulus
/// search fails are listed in `missing`; a complete witness is verified
/// before return and InternalError is thrown if verification fails.
APWitness build_ap_witness(const Mat& gamma, unsigned k, unsigned budget = kDefaultTowerBudget,
                           unsigned workers = 1);

PrimitiveCompanion primitive_companion(const BigInt& trace);

/// Progression {C' n l_m : n = 1..k} of primitive lengths through the
/// companion: items use r = D n, so each multiplier of l_m is C' n.
APWitness occurs_in_ap(const BigInt& trace, unsigned k, unsigned budget = kDefaultTowerBudget,
                       unsigned workers = 1);

struct Verification {
  bool ok;
  std::vector<std::string> reasons;
};

/// Re-checks every invariant from the stored data alone.
Verification verify_witness(const APWitness& w);

std::string witness_to_json(const APWitness& w, int indent = 2);
APWitness witness_from_json(const std::string& text);

}  // namespace geoprog
