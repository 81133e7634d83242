#include "geoprog/detail/modular.hpp"

namespace geoprog::detail {

BigInt minimal_exponent(const Factorization& multiple,
                        const std::function<bool(const BigInt&)>& holds) {
  BigInt j = expand(multiple);
  if (!holds(j)) {
    throw SearchExhausted("no exponent up to the group-order bound " + j.get_str() +
                          " satisfies the condition");
  }
  // The admissible exponents form jZ' for some j' | j; strip primes while
  // the quotient stays admissible.
  for (const auto& [q, e] : multiple) {
    for (unsigned i = 0; i < e; ++i) {
      BigInt candidate = j / q;
      if (!holds(candidate)) break;
      j = std::move(candidate);
    }
  }
  return j;
}

}  // namespace geoprog::detail
