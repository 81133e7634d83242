#include "geoprog/orders.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "geoprog/detail/modular.hpp"
#include "geoprog/errors.hpp"
#include "geoprog/geodesics.hpp"

namespace geoprog {

namespace {

/// (p, k) with q = p^k; throws unless q is a prime power > 1.
std::pair<BigInt, unsigned> split_prime_power(const BigInt& q) {
  if (q < 2) throw DomainError("expected a prime power, got " + q.get_str());
  const Factorization f = factorize(q);
  if (f.size() != 1) throw DomainError(q.get_str() + " is not a prime power");
  return *f.begin();
}

Factorization prime_power_multiple(const BigInt& p, unsigned k, unsigned extra,
                                   std::initializer_list<unsigned> cyclotomic_degrees) {
  Factorization f{{p, k + extra}};
  for (unsigned e : cyclotomic_degrees) multiply_into(f, factorize(pow(p, e) - 1));
  return f;
}

}  // namespace

BigInt sl2_group_order(const BigInt& m) {
  if (m < 1) throw DomainError("modulus must be positive");
  BigInt order = 1;
  for (const auto& [p, k] : factorize(m)) order *= pow(p, 3 * k - 2) * (p * p - 1);
  return order;
}

Factorization element_order_multiple(int n, const BigInt& m) {
  if (n != 2 && n != 3) throw DomainError("only SL(2) and SL(3) are supported");
  if (m < 1) throw DomainError("modulus must be positive");
  // The kernel of reduction mod p is a p-group, and element orders in
  // SL(n, F_p) divide p^(n-1) times products of p^i - 1.
  Factorization total;
  for (const auto& [p, k] : factorize(m)) {
    const Factorization f = n == 2 ? prime_power_multiple(p, k, 1, {1, 2})
                                   : prime_power_multiple(p, k, 2, {2, 3});
    lcm_into(total, f);
  }
  return total;
}

BigInt residue_order(const Mat& g, const BigInt& m) {
  if (m < 1) throw DomainError("modulus must be positive");
  if (m == 1) return 1;
  return detail::with_ring(m, [&](auto ring) {
    const detail::ModMat<decltype(ring)> base(ring, g.dim(), g.entries());
    const detail::ModMat<decltype(ring)> one(ring, g.dim());
    const auto ident = one.to_bigints();
    return detail::minimal_exponent(element_order_multiple(g.dim(), m), [&](const BigInt& j) {
      return base.pow(j).to_bigints() == ident;
    });
  });
}

BigInt order_P(const Mat& gamma, const BigInt& m) {
  require_hyperbolic(gamma);
  if (m < 1) throw DomainError("modulus must be positive, got " + m.get_str());
  if (m == 1) return 1;
  return detail::with_ring(m, [&](auto ring) {
    const detail::ModMat<decltype(ring)> base(ring, 2, gamma.entries());
    return detail::minimal_exponent(element_order_multiple(2, m), [&](const BigInt& j) {
      return base.pow(j).zero_at(0, 1);
    });
  });
}

TowerProfile prime_tower(const Mat& gamma, const BigInt& p, unsigned depth) {
  require_hyperbolic(gamma);
  if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
  if (depth < 1) throw DomainError("tower depth must be at least 1");
  TowerProfile tower{gamma, p, {}};
  BigInt pk = 1;
  for (unsigned k = 1; k <= depth; ++k) {
    pk *= p;
    tower.values.push_back(order_P(gamma, pk));
  }
  return tower;
}

bool tower_shape_holds(const TowerProfile& tower) {
  if (tower.values.empty()) return true;
  if (tower.values.front() > tower.p + 1) return false;
  for (std::size_t i = 1; i < tower.values.size(); ++i) {
    const BigInt& prev = tower.values[i - 1];
    const BigInt& cur = tower.values[i];
    if (cur != prev && cur != prev * tower.p) return false;
  }
  return true;
}

CrtCheck crt_check(const Mat& gamma, const BigInt& m, const BigInt& n) {
  if (m < 1 || n < 1) throw DomainError("moduli must be positive");
  if (gcd(m, n) != 1) throw DomainError(m.get_str() + " and " + n.get_str() + " are not coprime");
  CrtCheck out{order_P(gamma, m * n), lcm(order_P(gamma, m), order_P(gamma, n)), false};
  out.equal = out.lhs == out.rhs;
  return out;
}

std::string ModulusSearch::describe() const {
  std::ostringstream os;
  if (modulus) {
    os << "modulus " << *modulus;
  } else {
    os << "no modulus found";
  }
  for (const auto& t : towers) {
    os << "; p=" << t.p << " levels=" << t.levels << " P=" << t.deepest_value
       << (t.budget_exhausted ? " (budget reached)" : "");
  }
  return os.str();
}

namespace {

struct TowerOption {
  BigInt value;
  BigInt modulus;
};

class MinimalModulusSearch {
 public:
  MinimalModulusSearch(BigInt target, std::vector<std::vector<TowerOption>> options)
      : target_(std::move(target)), options_(std::move(options)), suffix_(options_.size() + 1, 1) {
    for (std::size_t i = options_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      for (const auto& o : options_[i]) suffix_[i] = lcm(suffix_[i], o.value);
    }
  }

  std::optional<BigInt> run() {
    if (suffix_[0] != target_) return std::nullopt;
    // Deepest option at every prime is feasible and bounds the search.
    best_ = 1;
    for (const auto& opts : options_) *best_ *= opts.back().modulus;
    descend(0, 1, 1);
    return best_;
  }

 private:
  void descend(std::size_t i, const BigInt& cur_lcm, const BigInt& cur_mod) {
    if (cur_mod >= *best_) return;
    if (lcm(cur_lcm, suffix_[i]) != target_) return;
    if (i == options_.size()) {
      if (cur_lcm == target_) best_ = cur_mod;
      return;
    }
    descend(i + 1, cur_lcm, cur_mod);
    for (const auto& o : options_[i]) descend(i + 1, lcm(cur_lcm, o.value), cur_mod * o.modulus);
  }

  BigInt target_;
  std::vector<std::vector<TowerOption>> options_;
  std::vector<BigInt> suffix_;
  std::optional<BigInt> best_;
};

}  // namespace

ModulusSearch find_modulus_with_P(const Mat& gamma, const BigInt& target, unsigned budget,
                                  const BigInt& prime_bound) {
  require_hyperbolic(gamma);
  if (target < 1) throw DomainError("target must be positive");
  if (budget < 1) throw DomainError("tower budget must be at least 1");
  ModulusSearch out;
  if (target == 1) {
    out.modulus = BigInt(1);
    return out;
  }
  const BigInt bound = std::max(largest_prime_factor(target), prime_bound);
  if (!bound.fits_ulong_p()) throw DomainError("prime bound too large");

  std::vector<std::vector<TowerOption>> options;
  for (const auto p_word : primes_up_to(bound.get_ui())) {
    const BigInt p = BigInt(static_cast<unsigned long>(p_word));
    std::vector<TowerOption> opts;
    TowerDiagnostic diag{p, 0, 0, true};
    BigInt pk = 1;
    for (unsigned k = 1; k <= budget; ++k) {
      pk *= p;
      const BigInt v = order_P(gamma, pk);
      diag.levels = k;
      diag.deepest_value = v;
      if (target % v != 0) {
        diag.budget_exhausted = false;
        break;
      }
      if (opts.empty() || opts.back().value != v) opts.push_back({v, pk});
    }
    out.towers.push_back(diag);
    if (!opts.empty()) options.push_back(std::move(opts));
  }
  out.modulus = MinimalModulusSearch(target, std::move(options)).run();
  return out;
}

bool residual_borel_probe(const Mat& gamma, const BigInt& p, unsigned depth) {
  if (depth < 2) throw DomainError("the probe needs at least two tower levels");
  const TowerProfile tower = prime_tower(gamma, p, depth);
  const std::size_t ratios = tower.values.size() - 1;
  const std::size_t window = std::max<std::size_t>(1, depth / 2);
  for (std::size_t start = 0; start + window <= ratios; ++start) {
    bool grew = false;
    for (std::size_t i = start; i < start + window && !grew; ++i) {
      grew = tower.values[i + 1] != tower.values[i];
    }
    if (!grew) return false;
  }
  return true;
}

// SL(3) ------------------------------------------------------------------------

ParabolicSpec make_parabolic(int index, ParabolicSide side) {
  if (index < 1 || index > 3) throw DomainError("parabolic index must be 1, 2 or 3");
  return {index, side};
}

std::vector<std::pair<int, int>> ParabolicSpec::zero_positions() const {
  const int j = index - 1;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < 3; ++i) {
    if (i == j) continue;
    // P_j kills the rest of column j; P_j' kills the rest of row j.
    out.push_back(side == ParabolicSide::standard ? std::pair{i, j} : std::pair{j, i});
  }
  return out;
}

std::string ParabolicSpec::name() const {
  return "P" + std::to_string(index) + (side == ParabolicSide::primed ? "'" : "");
}

Mat companion_matrix(std::span<const BigInt> c) {
  if (c.size() != 4 || c[0] != 1) throw DomainError("expected monic cubic coefficients 1,a,b,c");
  if (abs(c[3]) != 1) throw DomainError("constant term must be +-1 for a unimodular companion");
  std::vector<BigInt> e{0, 0, -c[3], 1, 0, -c[2], 0, 1, -c[1]};
  if (c[3] == 1) {
    for (auto& x : e) x = -x;
  }
  return Mat(3, std::move(e));
}

void require_sl3_hyperbolic(const Mat& g) {
  if (g.dim() != 3) throw DomainError("expected a 3x3 matrix");
  // Characteristic polynomial x^3 - t x^2 + s x - 1.
  const BigInt t = g.trace();
  const BigInt s = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0) +
                   g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1);
  if (t == 3 && s == 3) throw DomainError(g.str() + " is unipotent");
  // Any rational root of a monic cubic with constant term -1 is +-1.
  if (s == t) throw DomainError(g.str() + " has eigenvalue 1");
  if (s + t + 2 == 0) throw DomainError(g.str() + " has eigenvalue -1");
  const BigInt a = -t, b = s, c = -1;
  const BigInt disc = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
  if (disc <= 0) throw DomainError(g.str() + " does not have three distinct real eigenvalues");
}

BigInt order_P_parabolic(const Mat& gamma, const ParabolicSpec& spec, const BigInt& q) {
  require_sl3_hyperbolic(gamma);
  split_prime_power(q);
  const auto mask = spec.zero_positions();
  return detail::with_ring(q, [&](auto ring) {
    const detail::ModMat<decltype(ring)> base(ring, 3, gamma.entries());
    return detail::minimal_exponent(element_order_multiple(3, q), [&](const BigInt& j) {
      const auto power = base.pow(j);
      return std::all_of(mask.begin(), mask.end(),
                         [&](const auto& rc) { return power.zero_at(rc.first, rc.second); });
    });
  });
}

// Bianchi ------------------------------------------------------------------------

std::span<const long> bianchi_discriminants() {
  static constexpr std::array<long, 5> kRings{-1, -2, -3, -7, -11};
  return kRings;
}

BianchiMat::BianchiMat(BigInt d, std::vector<QuadInt> e) : d_(std::move(d)), e_(std::move(e)) {
  const auto rings = bianchi_discriminants();
  if (!d_.fits_slong_p() || std::find(rings.begin(), rings.end(), d_.get_si()) == rings.end()) {
    throw DomainError("d = " + d_.get_str() + " is not one of -1, -2, -3, -7, -11");
  }
  if (e_.size() != 4) throw DomainError("a Bianchi matrix has four entries");
  for (const auto& x : e_) {
    if (x.d() != d_) throw DomainError("entries lie in different rings");
  }
  if (!(e_[0] * e_[3] - e_[1] * e_[2] == QuadInt::integer(d_, 1))) {
    throw DomainError(str() + " does not have determinant 1");
  }
}

BianchiMat BianchiMat::operator*(const BianchiMat& o) const {
  std::vector<QuadInt> out;
  out.reserve(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.push_back((*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j));
  }
  return BianchiMat(d_, std::move(out));
}

BianchiMat BianchiMat::pow(std::uint64_t j) const {
  const QuadInt zero = QuadInt::integer(d_, 0), one = QuadInt::integer(d_, 1);
  BianchiMat result(d_, {one, zero, zero, one});
  BianchiMat base = *this;
  for (; j; j >>= 1) {
    if (j & 1) result = result * base;
    base = base * base;
  }
  return result;
}

std::string BianchiMat::str() const {
  std::ostringstream os;
  os << "[[" << e_[0].str() << ',' << e_[1].str() << "],[" << e_[2].str() << ',' << e_[3].str() << "]]";
  return os.str();
}

BianchiMat parse_bianchi(const BigInt& d, std::string_view text) {
  std::vector<QuadInt> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      entries.push_back(QuadInt::from_basis(d, parse_bigint(item), 0));
    } else {
      entries.push_back(
          QuadInt::from_basis(d, parse_bigint(item.substr(0, colon)), parse_bigint(item.substr(colon + 1))));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return BianchiMat(d, std::move(entries));
}

bool is_torsion_trace(const QuadInt& trace) {
  return trace.twice_y() == 0 && abs(trace.twice_x()) < 4;
}

namespace {

/// O_K / q O_K in the basis {1, omega}, omega^2 = t omega - n.
struct ResidueOK {
  BigInt q, t, n;

  using Elt = std::pair<BigInt, BigInt>;

  Elt from(const QuadInt& x) const {
    const auto [u, v] = x.basis_coords();
    return {mod(u, q), mod(v, q)};
  }
  Elt add(const Elt& a, const Elt& b) const { return {mod(a.first + b.first, q), mod(a.second + b.second, q)}; }
  Elt mul(const Elt& a, const Elt& b) const {
    // (u + v w)(u' + v' w) = uu' - n vv' + (uv' + vu' + t vv') w
    const BigInt vv = a.second * b.second;
    return {mod(a.first * b.first - n * vv, q), mod(a.first * b.second + a.second * b.first + t * vv, q)};
  }
};

using OKMat = std::array<ResidueOK::Elt, 4>;

OKMat ok_mul(const ResidueOK& r, const OKMat& x, const OKMat& y) {
  OKMat out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i * 2 + j] = r.add(r.mul(x[i * 2], y[j]), r.mul(x[i * 2 + 1], y[2 + j]));
  }
  return out;
}

OKMat ok_pow(const ResidueOK& r, const OKMat& g, const BigInt& e) {
  OKMat result{ResidueOK::Elt{mod(BigInt(1), r.q), 0}, {0, 0}, {0, 0}, {mod(BigInt(1), r.q), 0}};
  const auto bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (auto i = bits; i-- > 0;) {
    result = ok_mul(r, result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = ok_mul(r, result, g);
  }
  return result;
}

}  // namespace

BigInt order_P_bianchi(const BianchiMat& gamma, const BigInt& alpha) {
  const QuadInt tr = gamma.trace();
  if (is_torsion_trace(tr)) throw DomainError(gamma.str() + " has finite order");
  if (tr.twice_y() == 0 && abs(tr.twice_x()) == 4) {
    throw DomainError(gamma.str() + " is parabolic or central, not hyperbolic");
  }
  if (alpha == 1) return 1;
  const auto [p, k] = split_prime_power(alpha);
  const OmegaData w = omega_data(gamma.d());
  const ResidueOK ring{alpha, w.trace, w.norm};
  OKMat g;
  for (int i = 0; i < 4; ++i) g[i] = ring.from(gamma(i / 2, i % 2));
  // Residue fields have at most p^2 elements and each level of the
  // reduction kernel multiplies orders by at most p.
  Factorization multiple{{p, k + 3}};
  multiply_into(multiple, factorize(pow(p, 4) - 1));
  return detail::minimal_exponent(multiple, [&](const BigInt& j) {
    const auto b = ok_pow(ring, g, j)[1];
    return b.first == 0 && b.second == 0;
  });
}

}  // namespace geoprog
