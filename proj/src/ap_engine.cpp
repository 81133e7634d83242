#include "geoprog/ap_engine.hpp"

#include "geoprog/errors.hpp"
#include "geoprog/geodesics.hpp"
#include "geoprog/parallel.hpp"
#include "geoprog/quadratic.hpp"

namespace geoprog {

namespace {

void require_absolutely_primitive(const Mat& gamma) {
  if (!is_absolutely_primitive(gamma)) throw DomainError(gamma.str() + " is not absolutely primitive");
}

std::uint64_t to_word(const BigInt& n, const char* what) {
  if (n < 0 || !n.fits_ulong_p()) throw DomainError(std::string(what) + " does not fit in 64 bits");
  return n.get_ui();
}

/// eta_m g eta_m^-1 with eta_m = diag(1, m); requires m | b.
Mat conjugate_by_eta(const Mat& g, const BigInt& m) {
  if (g(0, 1) % m != 0) {
    throw InternalError(m.get_str() + " does not divide the corner of " + g.str());
  }
  return Mat(2, {g(0, 0), g(0, 1) / m, g(1, 0) * m, g(1, 1)});
}

struct ItemPlan {
  const Mat& gamma;
  BigInt C;
  BigInt step;
  unsigned k;
  unsigned budget;
  BigInt prime_bound;
  std::uint64_t D;  // multipliers are exponent / D
};

void fill_items(APWitness& w, const ItemPlan& plan, unsigned workers) {
  std::vector<std::optional<APItem>> slots(plan.k);
  parallel_for(plan.k, workers, [&](std::size_t i) {
    const BigInt r = plan.step * static_cast<unsigned long>(i + 1);
    const BigInt j = plan.C * r;
    const ModulusSearch search = find_modulus_with_P(plan.gamma, j, plan.budget, plan.prime_bound);
    if (!search.found()) return;
    const BigInt& m = *search.modulus;
    const Mat theta = conjugate_by_eta(mat_pow(plan.gamma, to_word(j, "exponent")), m);
    BigInt tr = theta.trace();
    slots[i] = APItem{r, m, j, theta, std::move(tr), j / plan.D};
  });
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) {
      w.items.push_back(std::move(*slots[i]));
    } else {
      w.missing.push_back(plan.step * static_cast<unsigned long>(i + 1));
    }
  }
}

void finish(APWitness& w) {
  if (!w.complete()) return;
  const Verification v = verify_witness(w);
  if (!v.ok) {
    std::string msg = "witness failed verification:";
    for (const auto& r : v.reasons) msg += " " + r + ";";
    throw InternalError(msg);
  }
  w.verified = true;
}

}  // namespace

BigInt constant_C(const Mat& gamma, unsigned k) {
  require_absolutely_primitive(gamma);
  if (k < 1) throw DomainError("k must be at least 1");
  BigInt c = 1;
  for (const auto p : primes_up_to(k)) c = lcm(c, order_P(gamma, BigInt(static_cast<unsigned long>(p))));
  return c;
}

APWitness build_ap_witness(const Mat& gamma, unsigned k, unsigned budget, unsigned workers) {
  require_absolutely_primitive(gamma);
  if (k < 2) throw DomainError("progression length must be at least 2");
  const GeodesicClass cls = analyze(gamma);
  APWitness w{gamma, cls.trace, cls.d, k, constant_C(gamma, k), 1, cls.length, {}, {}, std::nullopt, false};
  fill_items(w, ItemPlan{gamma, w.C, 1, k, budget, k, 1}, workers);
  finish(w);
  return w;
}

PrimitiveCompanion primitive_companion(const BigInt& trace) {
  if (trace < 3) throw DomainError("trace must be at least 3");
  const TraceField field = trace_field(trace);
  const UnitExponent e = unit_exponent(eigenvalue_for_trace(trace), field.d);
  PrimitiveCompanion pc{trace, embed_unit_as_matrix(field.d), e.t};
  if (mat_pow(pc.companion, pc.D).trace() != trace) {
    throw InternalError("companion power does not recover trace " + trace.get_str());
  }
  return pc;
}

APWitness occurs_in_ap(const BigInt& trace, unsigned k, unsigned budget, unsigned workers) {
  if (k < 2) throw DomainError("progression length must be at least 2");
  const PrimitiveCompanion pc = primitive_companion(trace);
  const GeodesicClass cls = analyze(pc.companion);
  const BigInt D = BigInt(static_cast<unsigned long>(pc.D));
  // Widening the prime range to k*D makes every C' D n available.
  const unsigned range = static_cast<unsigned>(to_word(D * k, "k*D"));
  APWitness w{pc.companion, cls.trace, cls.d, k, constant_C(pc.companion, range), D, cls.length,
              {}, {}, RequestedLength{trace, pc.D}, false};
  fill_items(w, ItemPlan{pc.companion, w.C, D, k, budget, range, pc.D}, workers);
  finish(w);
  return w;
}

Verification verify_witness(const APWitness& w) {
  Verification v{true, {}};
  auto fail = [&](std::string reason) {
    v.ok = false;
    v.reasons.push_back(std::move(reason));
  };
  try {
    if (w.gamma.dim() != 2) {
      fail("gamma is not 2x2");
      return v;
    }
    if (!is_absolutely_primitive(w.gamma)) fail("gamma not absolutely primitive");
    const GeodesicClass cls = analyze(w.gamma);
    if (cls.trace != w.trace) fail("gamma trace mismatch");
    if (cls.d != w.d) fail("field mismatch");
    if (abs(cls.length - w.base_length) > cls.length * Real("1e-24")) fail("base length mismatch");
    if (!w.missing.empty() || w.items.size() != w.k) fail("incomplete witness");

    std::uint64_t D = 1;
    if (w.requested) {
      D = w.requested->D;
      const PrimitiveCompanion pc = primitive_companion(w.requested->trace);
      if (!(pc.companion == w.gamma) || pc.D != D) fail("companion mismatch");
      if (w.step != D) fail("step does not match D");
    }

    const QuadUnit lambda = eigenvalue_for_trace(cls.trace);
    for (std::size_t i = 0; i < w.items.size(); ++i) {
      const APItem& it = w.items[i];
      const std::string tag = "item r=" + it.r.get_str() + ": ";
      if (it.r != w.step * static_cast<unsigned long>(i + 1)) fail(tag + "r out of sequence");
      if (it.exponent != w.C * it.r) fail(tag + "exponent is not C*r");
      if (it.exponent < 1 || !it.exponent.fits_ulong_p()) {
        fail(tag + "exponent out of range");
        continue;
      }
      const std::uint64_t j = it.exponent.get_ui();
      const BigInt exact_trace = lambda.value().pow(j).trace();
      if (it.theta.trace() != it.trace || it.trace != exact_trace) fail(tag + "trace mismatch");
      // d is squarefree, so it is the squarefree part of Tr^2 - 4 iff the quotient is a square.
      const BigInt disc = it.trace * it.trace - 4;
      if (disc % w.d != 0 || !is_square(disc / w.d)) fail(tag + "trace field mismatch");
      const Mat power = mat_pow(w.gamma, j);
      if (it.modulus < 1 || power(0, 1) % it.modulus != 0) {
        fail(tag + "conjugate not integral");
        continue;
      }
      if (!(conjugate_by_eta(power, it.modulus) == it.theta)) fail(tag + "theta mismatch");
      if (!primitivity_certificate(w.gamma, it.modulus, it.exponent)) {
        fail(tag + "exponent not minimal, theta is a proper power");
      }
      if (it.length_multiplier * D != it.exponent) fail(tag + "length multiplier mismatch");
      if (it.length_multiplier != w.items.front().length_multiplier * static_cast<unsigned long>(i + 1)) {
        fail(tag + "multipliers not an arithmetic progression");
      }
    }
  } catch (const std::exception& e) {
    fail(std::string("exception: ") + e.what());
  }
  return v;
}

}  // namespace geoprog
