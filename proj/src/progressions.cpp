#include "geoprog/progressions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "geoprog/errors.hpp"

namespace geoprog {

namespace {

Real rational_to_real(const Rational& q) {
  return to_real(q.get_num()) / to_real(q.get_den());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  return out;
}

std::uint64_t least_m(double eps) {
  return static_cast<std::uint64_t>(std::floor(1.0 + 2.0 / eps)) + 1;
}

}  // namespace

// ExactTag ---------------------------------------------------------------------

ExactTag ExactTag::linear(Rational value) {
  ExactTag t;
  t.coefficient_ = std::move(value);
  t.coefficient_.canonicalize();
  return t;
}

ExactTag ExactTag::of_trace(const BigInt& trace) {
  ExactTag t;
  t.coefficient_ = 1;
  t.unit_ = eigenvalue_for_trace(trace).value();
  return t;
}

std::optional<ExactTag> ExactTag::reflect(const ExactTag& prev) const {
  if (is_linear() != prev.is_linear()) return std::nullopt;
  if (is_linear()) return linear(2 * coefficient_ - prev.coefficient_);
  if (unit_->d() != prev.unit_->d()) return std::nullopt;
  ExactTag t;
  t.coefficient_ = 1;
  // Norm-one units: the inverse is the conjugate.
  t.unit_ = *unit_ * *unit_ * prev.unit_->conj();
  return t;
}

ExactTag ExactTag::scaled(const Rational& c) const {
  if (is_linear()) return linear(coefficient_ * c);
  if (c.get_den() != 1 || c <= 0 || !c.get_num().fits_ulong_p()) {
    throw DomainError("unit tags scale only by positive integers");
  }
  ExactTag t;
  t.coefficient_ = 1;
  t.unit_ = unit_->pow(c.get_num().get_ui());
  return t;
}

std::string ExactTag::key() const {
  if (is_linear()) return "L" + coefficient_.get_str();
  return "U" + unit_->d().get_str() + ":" + unit_->twice_x().get_str() + ":" + unit_->twice_y().get_str();
}

// RealMultiset -------------------------------------------------------------------

RealMultiset::RealMultiset(std::vector<Real> values) : values_(std::move(values)) {
  for (const auto& v : values_) {
    if (!boost::multiprecision::isfinite(v) || v < 0) throw DomainError("values must be finite and non-negative");
  }
  std::sort(values_.begin(), values_.end());
}

RealMultiset::RealMultiset(std::vector<Real> values, std::vector<ExactTag> tags) {
  if (values.size() != tags.size()) throw DomainError("one tag per value required");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  for (auto i : order) {
    if (!boost::multiprecision::isfinite(values[i]) || values[i] < 0) {
      throw DomainError("values must be finite and non-negative");
    }
    values_.push_back(values[i]);
    tags_.push_back(tags[i]);
  }
}

RealMultiset RealMultiset::integers(const std::vector<BigInt>& values) {
  std::vector<Rational> q(values.begin(), values.end());
  return rationals(q);
}

RealMultiset RealMultiset::rationals(const std::vector<Rational>& values) {
  std::vector<Real> v;
  std::vector<ExactTag> tags;
  for (const auto& x : values) {
    v.push_back(rational_to_real(x));
    tags.push_back(ExactTag::linear(x));
  }
  return RealMultiset(std::move(v), std::move(tags));
}

RealMultiset RealMultiset::lengths(const LengthSet& set) {
  std::vector<Real> v;
  std::vector<ExactTag> tags;
  for (const auto& e : set.entries) {
    v.push_back(e.length);
    tags.push_back(ExactTag::of_trace(e.trace));
  }
  return RealMultiset(std::move(v), std::move(tags));
}

RealMultiset RealMultiset::scaled(const Rational& c) const {
  if (c <= 0) throw DomainError("scale factor must be positive");
  const Real factor = rational_to_real(c);
  std::vector<Real> v;
  for (const auto& x : values_) v.push_back(x * factor);
  if (!has_tags()) return RealMultiset(std::move(v));
  std::vector<ExactTag> tags;
  for (const auto& t : tags_) tags.push_back(t.scaled(c));
  return RealMultiset(std::move(v), std::move(tags));
}

// Detectors ----------------------------------------------------------------------

std::optional<Progression> find_k_ap(const RealMultiset& s, unsigned k, double tol) {
  if (k < 3) throw DomainError("progression length must be at least 3");
  if (tol < 0) throw DomainError("tolerance must be non-negative");
  const bool exact = s.has_tags();
  if (!exact && tol == 0) throw DomainError("tolerance 0 requires exact tags");
  const auto& v = s.values();
  const std::size_t n = v.size();

  std::unordered_map<std::string, std::size_t> first_with_key;
  std::vector<std::string> keys;
  if (exact) {
    for (std::size_t i = 0; i < n; ++i) {
      keys.push_back(s.tags()[i].key());
      first_with_key.emplace(keys.back(), i);
    }
  }
  auto same = [&](std::size_t a, std::size_t b) { return exact ? keys[a] == keys[b] : v[a] == v[b]; };
  auto locate = [&](std::size_t prev, std::size_t cur) -> std::optional<std::size_t> {
    if (exact) {
      const auto next = s.tags()[cur].reflect(s.tags()[prev]);
      if (!next) return std::nullopt;
      const auto it = first_with_key.find(next->key());
      if (it == first_with_key.end() || it->second <= cur) return std::nullopt;
      return it->second;
    }
    const Real target = 2 * v[cur] - v[prev];
    const Real slack = tol * abs(target);
    const auto it = std::lower_bound(v.begin() + cur + 1, v.end(), target - slack);
    if (it == v.end() || *it > target + slack) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && same(i, i - 1)) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (same(j, i) || same(j, j - 1)) continue;
      if (!exact && v[j] - v[i] <= tol * v[j]) continue;
      Progression p{{i, j}, {v[i], v[j]}};
      while (p.indices.size() < k) {
        const auto next = locate(p.indices[p.indices.size() - 2], p.indices.back());
        if (!next) break;
        p.indices.push_back(*next);
        p.values.push_back(v[*next]);
      }
      if (p.indices.size() == k) return p;
    }
  }
  return std::nullopt;
}

std::optional<Progression> has_3term_ap(const RealMultiset& s, double tol) { return find_k_ap(s, 3, tol); }

AlmostAPCheck is_eps_almost_ap(const std::vector<Real>& seq, double eps) {
  if (seq.size() < 2) throw DomainError("need at least two terms");
  std::vector<Real> gaps;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (!(seq[i] > seq[i - 1])) throw DomainError("sequence must be strictly increasing");
    gaps.push_back(seq[i] - seq[i - 1]);
  }
  Real dev = 0;
  for (const auto& gi : gaps) {
    for (const auto& gj : gaps) dev = std::max<Real>(dev, abs(gi / gj - 1));
  }
  return {dev < Real(eps), dev};
}

AlmostAPOutcome find_almost_ap(const RealMultiset& s, double eps, unsigned k, const Real& t) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  if (k < 2) throw DomainError("k must be at least 2");
  if (!(t > 0)) throw DomainError("bucket width must be positive");
  AlmostAPOutcome out;
  // (bucket, index of its smallest element), buckets increasing.
  std::vector<std::pair<std::uint64_t, std::size_t>> buckets;
  const auto& v = s.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Real q = boost::multiprecision::ceil(v[i] / t);
    if (q < 1) continue;
    if (q > Real(1e18)) throw DomainError("bucket width too small for the data range");
    const auto b = static_cast<std::uint64_t>(q);
    if (buckets.empty() || buckets.back().first != b) buckets.emplace_back(b, i);
  }
  if (buckets.empty()) {
    out.first_empty_bucket = 1;
    return out;
  }
  std::size_t tail = buckets.size() - 1;
  while (tail > 0 && buckets[tail - 1].first + 1 == buckets[tail].first) --tail;
  const std::uint64_t n0 = buckets[tail].first;
  const std::uint64_t last = buckets.back().first;
  out.tail_start = n0;

  const std::uint64_t m = least_m(eps);
  AlmostAPResult r{eps, k, t, m, n0, {}, {}, 0};
  for (unsigned j = 1; j <= k; ++j) {
    const std::uint64_t b = n0 - 1 + j * m;
    if (b > last) {
      out.first_empty_bucket = b;
      return out;
    }
    r.buckets.push_back(b);
    r.values.push_back(v[buckets[tail + (b - n0)].second]);
  }
  const AlmostAPCheck check = is_eps_almost_ap(r.values, eps);
  if (!check.ok) throw InternalError("bucket construction produced deviation " + format_real(check.deviation));
  r.deviation = check.deviation;
  out.result = std::move(r);
  return out;
}

AlmostAPOutcome find_almost_ap_scan(const RealMultiset& s, double eps, unsigned k, Real t_max, unsigned steps) {
  if (steps < 1) throw DomainError("scan needs at least one step");
  if (s.size() == 0 || !(s.values().back() > 0)) {
    AlmostAPOutcome empty;
    empty.first_empty_bucket = 1;
    return empty;
  }
  if (!(eps > 0)) throw DomainError("eps must be positive");
  if (k < 2) throw DomainError("k must be at least 2");
  if (t_max <= 0) t_max = s.values().back() / Real((k - 1) * least_m(eps) + 1);
  AlmostAPOutcome out;
  for (unsigned i = 0; i < steps; ++i) {
    out = find_almost_ap(s, eps, k, t_max * (1 - Real(i) / steps));
    if (out.found()) break;
  }
  return out;
}

Real growth_ratio(const RealMultiset& s, const Real& t, const Real& x) {
  const auto& v = s.values();
  auto count = [&](const Real& y) { return std::upper_bound(v.begin(), v.end(), y) - v.begin(); };
  const auto sx = count(x);
  if (sx == 0) throw DomainError("S(x) = 0 at x = " + format_real(x));
  return Real(count(x - t)) / Real(sx);
}

RealMultiset load_multiset_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv(line));
  }
  if (rows.empty()) return RealMultiset(std::vector<Real>{});
  std::optional<std::size_t> value_col, trace_col;
  std::size_t start = 0;
  const bool header = std::any_of(rows[0].begin(), rows[0].end(), [](const std::string& c) {
    return std::any_of(c.begin(), c.end(), [](char ch) { return std::isalpha(static_cast<unsigned char>(ch)) && ch != 'e' && ch != 'E'; });
  });
  if (header) {
    start = 1;
    for (std::size_t i = 0; i < rows[0].size(); ++i) {
      if (rows[0][i] == "trace") trace_col = i;
      if (rows[0][i] == "value" || rows[0][i] == "length") value_col = i;
    }
    if (!value_col && !trace_col) throw DomainError("CSV header needs a value, length or trace column");
  } else {
    value_col = 0;
  }
  std::vector<Real> values;
  std::vector<ExactTag> tags;
  for (std::size_t r = start; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&](std::size_t c) -> const std::string& {
      if (c >= row.size()) throw DomainError("CSV row " + std::to_string(r + 1) + " is short");
      return row[c];
    };
    std::optional<BigInt> trace;
    if (trace_col) trace = parse_bigint(cell(*trace_col));
    values.push_back(value_col ? parse_real(cell(*value_col)) : trace_to_length(*trace));
    if (trace) tags.push_back(ExactTag::of_trace(*trace));
  }
  if (trace_col) return RealMultiset(std::move(values), std::move(tags));
  return RealMultiset(std::move(values));
}

std::string almost_ap_to_json(const AlmostAPOutcome& outcome, int indent) {
  nlohmann::json doc{{"v", 1}, {"found", outcome.found()}, {"tail_start", outcome.tail_start}};
  if (outcome.result) {
    const auto& r = *outcome.result;
    nlohmann::json values = nlohmann::json::array();
    for (const auto& x : r.values) values.push_back(format_real(x));
    doc["eps"] = r.eps;
    doc["k"] = r.k;
    doc["t"] = format_real(r.t);
    doc["m"] = r.m;
    doc["buckets"] = r.buckets;
    doc["values"] = values;
    doc["deviation"] = format_real(r.deviation);
  } else {
    doc["first_empty_bucket"] = outcome.first_empty_bucket;
  }
  return doc.dump(indent);
}

}  // namespace geoprog
