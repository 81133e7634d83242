#include "geoprog/ramsey.hpp"

#include <algorithm>

#include <json.hpp>

#include "geoprog/errors.hpp"

namespace geoprog {

void Coloring::validate() const {
  if (d < 1) throw DomainError("a colouring needs at least one colour");
  for (auto c : colors) {
    if (c >= d) throw DomainError("colour id " + std::to_string(c) + " is not below " + std::to_string(d));
  }
}

std::optional<MonoAP> mono_ap(const Coloring& c, unsigned k) {
  if (k < 3) throw DomainError("progression length must be at least 3");
  c.validate();
  const std::size_t n = c.n();
  for (std::size_t start = 1; start <= n; ++start) {
    for (std::size_t diff = 1; start + (k - 1) * diff <= n; ++diff) {
      const unsigned col = c.colors[start - 1];
      bool mono = true;
      for (unsigned i = 1; i < k && mono; ++i) mono = c.colors[start - 1 + i * diff] == col;
      if (mono) return MonoAP{start, diff, col};
    }
  }
  return std::nullopt;
}

namespace {

class VdwSearch {
 public:
  VdwSearch(unsigned d, unsigned k, unsigned n_max, std::chrono::milliseconds budget)
      : d_(d), k_(k), n_max_(n_max), deadline_(std::chrono::steady_clock::now() + budget) {}

  VdwResult run() {
    colors_.reserve(n_max_);
    extend(0);
    VdwResult r;
    r.timed_out = timed_out_;
    r.witness = Coloring{d_, best_};
    if (!timed_out_ && best_.size() < n_max_) r.number = static_cast<unsigned>(best_.size() + 1);
    return r;
  }

 private:
  /// Whether colouring position p (0-based) with col closes a k-AP.
  bool closes_ap(std::size_t p, unsigned col) const {
    for (std::size_t diff = 1; (k_ - 1) * diff <= p; ++diff) {
      bool mono = true;
      for (unsigned i = 1; i < k_ && mono; ++i) mono = colors_[p - i * diff] == col;
      if (mono) return true;
    }
    return false;
  }

  /// Returns true once the search must stop.
  bool extend(unsigned max_used) {
    if ((++nodes_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return true;
    }
    if (colors_.size() > best_.size()) best_ = colors_;
    if (colors_.size() == n_max_) return true;
    const std::size_t p = colors_.size();
    // Colours are interchangeable: a new colour is only ever the next unused one.
    const unsigned limit = std::min(d_, colors_.empty() ? 1u : max_used + 2);
    for (unsigned col = 0; col < limit; ++col) {
      if (closes_ap(p, col)) continue;
      colors_.push_back(col);
      const bool stop = extend(std::max(max_used, col));
      colors_.pop_back();
      if (stop) return true;
    }
    return false;
  }

  unsigned d_, k_, n_max_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<unsigned> colors_, best_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

bool is_exact_ap(const std::vector<Rational>& v) {
  if (v.size() < 2) return true;
  const Rational diff = v[1] - v[0];
  if (diff == 0) return false;
  for (std::size_t i = 2; i < v.size(); ++i) {
    if (v[i] - v[i - 1] != diff) return false;
  }
  return true;
}

Rational transfer(const Rational& v, const BigInt& divisor, CoverDirection dir) {
  Rational out = dir == CoverDirection::lift ? Rational(v * divisor) : Rational(v / divisor);
  out.canonicalize();
  return out;
}

}  // namespace

VdwResult vdw_number(unsigned d, unsigned k, unsigned n_max, std::chrono::milliseconds budget) {
  if (d < 2) throw DomainError("need at least two colours");
  if (k < 3) throw DomainError("progression length must be at least 3");
  if (n_max < 1) throw DomainError("n_max must be positive");
  return VdwSearch(d, k, n_max, budget).run();
}

std::vector<BigInt> divisors(const BigInt& n) {
  if (n < 1) throw DomainError("divisors need a positive integer");
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void CoverSpec::validate() const {
  if (degree < 1) throw DomainError("cover degree must be positive");
  for (const auto& x : divisors) {
    if (x < 1 || degree % x != 0) {
      throw DomainError(x.get_str() + " is not a divisor of " + degree.get_str());
    }
  }
}

Coloring CoverSpec::coloring() const {
  validate();
  const auto divs = geoprog::divisors(degree);
  Coloring c{static_cast<unsigned>(divs.size()), {}};
  for (const auto& x : divisors) {
    c.colors.push_back(static_cast<unsigned>(std::lower_bound(divs.begin(), divs.end(), x) - divs.begin()));
  }
  return c;
}

TransferResult transfer_ap(const std::vector<Rational>& values, const CoverSpec& cover, unsigned k) {
  if (!is_exact_ap(values)) throw DomainError("input values must form an exact non-constant progression");
  if (cover.divisors.size() != values.size()) throw DomainError("one divisor per value required");
  const Coloring col = cover.coloring();
  const auto sub = mono_ap(col, k);
  if (!sub) {
    throw SearchExhausted("no monochromatic " + std::to_string(k) + "-term progression among " +
                          std::to_string(values.size()) + " values");
  }
  TransferResult r{*sub, cover.divisors[sub->start - 1], {}};
  for (unsigned i = 0; i < k; ++i) {
    r.values.push_back(transfer(values[sub->start - 1 + i * sub->difference], r.divisor, cover.direction));
  }
  if (!is_exact_ap(r.values)) throw InternalError("transferred values are not a progression");
  return r;
}

DoubleTransferResult double_transfer(const std::vector<Rational>& values, const CoverSpec& up,
                                     const CoverSpec& down, unsigned k) {
  if (!is_exact_ap(values) || values.size() < 2) {
    throw DomainError("input values must form an exact non-constant progression");
  }
  const std::size_t n1 = down.divisors.size();
  if (n1 < k) throw DomainError("the second cover must colour at least k values");
  CoverSpec lift = up;
  lift.direction = CoverDirection::lift;
  CoverSpec project = down;
  project.direction = CoverDirection::project;

  TransferResult first;
  try {
    first = transfer_ap(values, lift, static_cast<unsigned>(n1));
  } catch (const SearchExhausted& e) {
    throw SearchExhausted(std::string("stage 1: ") + e.what());
  }
  TransferResult second;
  try {
    second = transfer_ap(first.values, project, k);
  } catch (const SearchExhausted& e) {
    throw SearchExhausted(std::string("stage 2: ") + e.what());
  }

  DoubleTransferResult r{first.sub, second.sub, first.divisor, second.divisor, second.values, 0, 0};
  r.b = r.values[1] - r.values[0];
  r.a = r.values[0] - r.b;
  // Closed form: with offsets a' = start1 - b', a'' = start2 - b'', the
  // combined index is a' + b' a'' + b' b'' s.
  const Rational v1 = values[0];
  const Rational delta = values[1] - values[0];
  const BigInt b1 = BigInt(static_cast<unsigned long>(first.sub.difference));
  const BigInt b2 = BigInt(static_cast<unsigned long>(second.sub.difference));
  const BigInt a1 = BigInt(static_cast<unsigned long>(first.sub.start)) - b1;
  const BigInt a2 = BigInt(static_cast<unsigned long>(second.sub.start)) - b2;
  Rational scale(first.divisor, second.divisor);
  scale.canonicalize();
  Rational a = scale * (v1 - delta + delta * (a1 + b1 * a2));
  Rational b = scale * delta * b1 * b2;
  a.canonicalize();
  b.canonicalize();
  if (a != r.a || b != r.b) throw InternalError("double transfer disagrees with its closed form");
  for (unsigned s = 1; s <= k; ++s) {
    if (r.values[s - 1] != r.a + r.b * s) throw InternalError("double transfer is not affine in s");
  }
  return r;
}

Coloring coloring_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    Coloring c{doc.at("d").get<unsigned>(), doc.at("colors").get<std::vector<unsigned>>()};
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed colouring: ") + e.what());
  }
}

std::string coloring_to_json(const Coloring& c) {
  return nlohmann::json{{"v", 1}, {"d", c.d}, {"n", c.n()}, {"colors", c.colors}}.dump();
}

CoverSpec cover_from_json(const std::string& text) {
  auto big = [](const nlohmann::json& j) {
    return j.is_string() ? parse_bigint(j.get<std::string>()) : BigInt(j.get<long>());
  };
  try {
    const auto doc = nlohmann::json::parse(text);
    CoverSpec c;
    c.degree = big(doc.at("degree"));
    for (const auto& x : doc.at("lift_divisor")) c.divisors.push_back(big(x));
    const std::string dir = doc.value("direction", "lift");
    if (dir == "lift") {
      c.direction = CoverDirection::lift;
    } else if (dir == "project") {
      c.direction = CoverDirection::project;
    } else {
      throw DomainError("direction must be lift or project");
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed cover: ") + e.what());
  }
}

}  // namespace geoprog
