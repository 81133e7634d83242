#include <json.hpp>

#include "geoprog/ap_engine.hpp"
#include "geoprog/errors.hpp"

namespace geoprog {

namespace {

using nlohmann::json;

constexpr int kWitnessVersion = 1;

json mat_json(const Mat& m) {
  json out = json::array();
  for (const auto& x : m.entries()) out.push_back(x.get_str());
  return out;
}

Mat mat_from_json(const json& j) {
  std::vector<BigInt> e;
  for (const auto& x : j) e.push_back(parse_bigint(x.get<std::string>()));
  if (e.size() != 4) throw DomainError("witness matrices must have four entries");
  return Mat(2, std::move(e));
}

BigInt big(const json& j) { return parse_bigint(j.get<std::string>()); }

}  // namespace

std::string witness_to_json(const APWitness& w, int indent) {
  json items = json::array();
  for (const auto& it : w.items) {
    items.push_back({{"r", it.r.get_str()},
                     {"modulus", it.modulus.get_str()},
                     {"exponent", it.exponent.get_str()},
                     {"theta", mat_json(it.theta)},
                     {"trace", it.trace.get_str()},
                     {"length_multiplier", it.length_multiplier.get_str()}});
  }
  json missing = json::array();
  for (const auto& r : w.missing) missing.push_back(r.get_str());
  json doc{{"v", kWitnessVersion},
           {"gamma", mat_json(w.gamma)},
           {"trace", w.trace.get_str()},
           {"d", w.d.get_str()},
           {"k", w.k},
           {"C", w.C.get_str()},
           {"step", w.step.get_str()},
           {"base_length", format_real(w.base_length)},
           {"items", items},
           {"missing", missing},
           {"verified", w.verified}};
  if (w.requested) doc["requested"] = {{"trace", w.requested->trace.get_str()}, {"D", w.requested->D}};
  return doc.dump(indent);
}

APWitness witness_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("v", 0) != kWitnessVersion) throw DomainError("unsupported witness version");
    APWitness w{mat_from_json(doc.at("gamma")),
                big(doc.at("trace")),
                big(doc.at("d")),
                doc.at("k").get<unsigned>(),
                big(doc.at("C")),
                big(doc.at("step")),
                parse_real(doc.at("base_length").get<std::string>()),
                {},
                {},
                std::nullopt,
                doc.at("verified").get<bool>()};
    for (const auto& it : doc.at("items")) {
      w.items.push_back({big(it.at("r")), big(it.at("modulus")), big(it.at("exponent")),
                         mat_from_json(it.at("theta")), big(it.at("trace")),
                         big(it.at("length_multiplier"))});
    }
    for (const auto& r : doc.at("missing")) w.missing.push_back(big(r));
    if (doc.contains("requested")) {
      const auto& req = doc.at("requested");
      w.requested = RequestedLength{big(req.at("trace")), req.at("D").get<std::uint64_t>()};
    }
    return w;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed witness: ") + e.what());
  }
}

}  // namespace geoprog
