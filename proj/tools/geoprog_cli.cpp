// geoprog: command-line front end.
//
// Exit codes: 0 ok, 1 internal error, 2 usage, 3 domain precondition,
// 4 verification failure, 5 search exhausted (budget or data range).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geoprog/ap_engine.hpp"
#include "geoprog/errors.hpp"
#include "geoprog/geodesics.hpp"
#include "geoprog/orders.hpp"
#include "geoprog/progressions.hpp"
#include "geoprog/ramsey.hpp"

namespace {

using namespace geoprog;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerify = 4;
constexpr int kExitExhausted = 5;

struct RunConfig {
  int precision = kLengthDigits;
  unsigned budget = kDefaultTowerBudget;
  unsigned jobs = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

/// "1..N" or "a,b,c" (integers or fractions).
std::vector<Rational> parse_values(const std::string& text) {
  std::vector<Rational> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const BigInt lo = parse_bigint(text.substr(0, dots));
    const BigInt hi = parse_bigint(text.substr(dots + 2));
    for (BigInt x = lo; x <= hi; ++x) out.emplace_back(x);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      Rational q(item);
      q.canonicalize();
      out.push_back(q);
    } catch (const std::invalid_argument&) {
      throw DomainError("not a rational number: '" + item + "'");
    }
  }
  return out;
}

std::string join(const std::vector<BigInt>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].get_str();
  return s;
}

RealMultiset load_source(const std::string& source, const std::string& max, const std::string& csv,
                         unsigned jobs) {
  if (!csv.empty()) {
    std::ifstream in(csv);
    if (!in) throw DomainError("cannot read " + csv);
    return load_multiset_csv(in);
  }
  if (source == "modular") {
    const LengthSet set = enumerate_length_set(parse_bigint(max), jobs);
    std::vector<Real> v;
    v.reserve(set.entries.size());
    for (const auto& e : set.entries) v.push_back(e.length);
    return RealMultiset(std::move(v));
  }
  if (source == "log") {
    const BigInt n = parse_bigint(max);
    if (n < 1 || !n.fits_ulong_p()) throw DomainError("--max must be a positive machine integer");
    std::vector<Real> v;
    for (unsigned long i = 1; i <= n.get_ui(); ++i) v.push_back(boost::multiprecision::log(Real(i)));
    return RealMultiset(std::move(v));
  }
  throw DomainError("unknown source '" + source + "' (modular, log, or --csv)");
}

std::string transfer_json(const std::vector<Rational>& values, const std::optional<MonoAP>& s1,
                          const std::optional<MonoAP>& s2, const std::optional<std::pair<Rational, Rational>>& ab) {
  nlohmann::json doc{{"v", 1}};
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& q : values) vals.push_back(q.get_str());
  doc["values"] = vals;
  auto ap_json = [](const MonoAP& m) {
    return nlohmann::json{{"start", m.start}, {"difference", m.difference}, {"color", m.color}};
  };
  if (s1) doc["stage1"] = ap_json(*s1);
  if (s2) doc["stage2"] = ap_json(*s2);
  if (ab) {
    doc["a"] = ab->first.get_str();
    doc["b"] = ab->second.get_str();
  }
  return doc.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic progressions in primitive length spectra of arithmetic surfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("GEOPROG_PRECISION")) {
    try {
      cfg.precision = std::stoi(env);
    } catch (const std::exception&) {
      cfg.precision = 0;
    }
    if (cfg.precision < kLengthDigits || cfg.precision > kMaxRealDigits) {
      std::cerr << "error: GEOPROG_PRECISION must be an integer in [25, 33]\n";
      return kExitUsage;
    }
  }
  app.add_option("--precision", cfg.precision, "Significant digits for lengths (25..33)")
      ->check(CLI::Range(25, kMaxRealDigits));
  app.add_option("--budget", cfg.budget, "Prime-power tower depth budget")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);

  int code = kExitOk;
  std::string out_path;

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Write the trace/length table as CSV");
  std::string max_trace;
  spectrum->add_option("--max-trace", max_trace, "Largest trace")->required();
  spectrum->add_option("--out", out_path, "Output CSV (stdout if omitted)");
  spectrum->callback([&] {
    if (parse_bigint(max_trace) < 3) throw CLI::ValidationError("--max-trace", "must be at least 3");
    const LengthSet set = enumerate_length_set(parse_bigint(max_trace), cfg.jobs);
    std::ostringstream os;
    write_length_csv(os, set, cfg.precision);
    write_output(out_path, os.str());
    if (!out_path.empty()) std::cout << set.entries.size() << " rows written to " << out_path << '\n';
  });

  // order
  auto* order = app.add_subcommand("order", "P(gamma, eta_m), or a prime-power tower");
  std::string gamma_text, modulus_text, prime_text;
  unsigned depth = 0;
  order->add_option("--gamma", gamma_text, "a,b,c,d")->required();
  auto* mod_opt = order->add_option("--modulus", modulus_text, "Modulus m");
  auto* prime_opt = order->add_option("--prime", prime_text, "Prime p for a tower");
  order->add_option("--depth", depth, "Tower depth")->needs(prime_opt);
  mod_opt->excludes(prime_opt);
  order->callback([&] {
    const Mat g = parse_mat(gamma_text);
    if (!modulus_text.empty()) {
      std::cout << order_P(g, parse_bigint(modulus_text)) << '\n';
    } else if (!prime_text.empty()) {
      const TowerProfile t = prime_tower(g, parse_bigint(prime_text), depth ? depth : 1);
      std::cout << join(t.values) << '\n';
    } else {
      throw CLI::ValidationError("order", "give --modulus or --prime with --depth");
    }
  });

  // crt
  auto* crt = app.add_subcommand("crt", "Compare P(gamma, mn) with lcm(P(gamma, m), P(gamma, n))");
  std::string m_text, n_text;
  crt->add_option("--gamma", gamma_text, "a,b,c,d")->required();
  crt->add_option("--m", m_text)->required();
  crt->add_option("--n", n_text)->required();
  crt->callback([&] {
    const CrtCheck c = crt_check(parse_mat(gamma_text), parse_bigint(m_text), parse_bigint(n_text));
    std::cout << "P(mn)=" << c.lhs << " lcm=" << c.rhs << " equal=" << (c.equal ? "true" : "false") << '\n';
    if (!c.equal) code = kExitVerify;
  });

  // find-modulus
  auto* findmod = app.add_subcommand("find-modulus", "Smallest m with P(gamma, eta_m) = target");
  std::string target_text, bound_text = "0";
  findmod->add_option("--gamma", gamma_text, "a,b,c,d")->required();
  findmod->add_option("--target", target_text)->required();
  findmod->add_option("--prime-bound", bound_text, "Also try primes up to this bound");
  findmod->callback([&] {
    const ModulusSearch s =
        find_modulus_with_P(parse_mat(gamma_text), parse_bigint(target_text), cfg.budget, parse_bigint(bound_text));
    if (s.found()) {
      std::cout << *s.modulus << '\n';
    } else {
      std::cerr << s.describe() << '\n';
      code = kExitExhausted;
    }
  });

  // ap / occurs
  std::string trace_text;
  unsigned k = 3;
  auto witness_summary = [&](const APWitness& w) {
    std::cout << "gamma " << w.gamma.str() << " C=" << w.C << " step=" << w.step << " multipliers";
    for (const auto& it : w.items) std::cout << ' ' << it.length_multiplier;
    std::cout << (w.verified ? " verified" : " unverified") << '\n';
    if (!w.complete()) {
      std::cerr << "modulus search failed for r =";
      for (const auto& r : w.missing) std::cerr << ' ' << r;
      std::cerr << '\n';
      code = kExitExhausted;
    }
  };
  auto* ap = app.add_subcommand("ap", "Build a progression witness for gamma or for a trace");
  auto* ap_trace = ap->add_option("--trace", trace_text, "Trace of the length to realise");
  auto* ap_gamma = ap->add_option("--gamma", gamma_text, "Absolutely primitive a,b,c,d");
  ap_trace->excludes(ap_gamma);
  ap->add_option("--k", k, "Progression length")->check(CLI::Range(2u, 1000u));
  ap->add_option("--out", out_path, "Witness JSON (stdout if omitted)");
  ap->callback([&] {
    if (trace_text.empty() && gamma_text.empty()) throw CLI::ValidationError("ap", "give --trace or --gamma");
    const APWitness w = !trace_text.empty() ? occurs_in_ap(parse_bigint(trace_text), k, cfg.budget, cfg.jobs)
                                            : build_ap_witness(parse_mat(gamma_text), k, cfg.budget, cfg.jobs);
    write_output(out_path, witness_to_json(w));
    if (!out_path.empty()) witness_summary(w);
    else if (!w.complete()) code = kExitExhausted;
  });

  auto* occurs = app.add_subcommand("occurs", "Show that the length of a trace lies in a k-term progression");
  occurs->add_option("--trace", trace_text)->required();
  occurs->add_option("--k", k)->check(CLI::Range(2u, 1000u));
  occurs->add_option("--out", out_path, "Witness JSON");
  occurs->callback([&] {
    const APWitness w = occurs_in_ap(parse_bigint(trace_text), k, cfg.budget, cfg.jobs);
    if (!out_path.empty()) write_output(out_path, witness_to_json(w));
    std::cout << "trace " << trace_text << " D=" << w.step << ":";
    witness_summary(w);
  });

  // check
  auto* check = app.add_subcommand("check", "Re-verify a witness JSON file");
  std::string check_path;
  check->add_option("file", check_path)->required();
  check->callback([&] {
    const Verification v = verify_witness(witness_from_json(read_file(check_path)));
    if (v.ok) {
      std::cout << "verified\n";
    } else {
      std::cout << "FAILED\n";
      for (const auto& r : v.reasons) std::cout << "  " << r << '\n';
      code = kExitVerify;
    }
  });

  // almost-ap
  auto* almost = app.add_subcommand("almost-ap", "Bucket construction of an eps-almost progression");
  std::string source = "modular", csv_path, max_text = "100000", t_text;
  double eps = 0.1;
  almost->add_option("--source", source, "modular or log");
  almost->add_option("--max-trace,--max", max_text, "Truncation of the source");
  almost->add_option("--csv", csv_path, "Load the multiset from CSV instead");
  almost->add_option("--eps", eps)->check(CLI::PositiveNumber);
  almost->add_option("--k", k)->check(CLI::Range(2u, 1000u));
  almost->add_option("--t", t_text, "Bucket width (scanned downward if omitted)");
  almost->add_option("--out", out_path, "Result JSON (stdout if omitted)");
  almost->callback([&] {
    const RealMultiset s = load_source(source, max_text, csv_path, cfg.jobs);
    const AlmostAPOutcome o = t_text.empty() ? find_almost_ap_scan(s, eps, k)
                                             : find_almost_ap(s, eps, k, parse_real(t_text));
    write_output(out_path, almost_ap_to_json(o));
    if (!o.found()) code = kExitExhausted;
  });

  // growth
  auto* growth = app.add_subcommand("growth", "S(x - t) / S(x) for a counting function");
  std::string x_text, gt_text = "1";
  growth->add_option("--source", source, "modular or log");
  growth->add_option("--max", max_text, "Truncation of the source");
  growth->add_option("--csv", csv_path);
  growth->add_option("--t", gt_text);
  growth->add_option("--x", x_text)->required();
  growth->callback([&] {
    const RealMultiset s = load_source(source, max_text, csv_path, cfg.jobs);
    std::cout << format_real(growth_ratio(s, parse_real(gt_text), parse_real(x_text)), cfg.precision) << '\n';
  });

  // vdw
  auto* vdw = app.add_subcommand("vdw", "Van der Waerden number by exhaustive search");
  unsigned colors = 2, n_max = 64;
  double seconds = 60;
  bool long_run = false;
  std::string witness_path;
  vdw->add_option("--colors", colors)->check(CLI::Range(2u, 16u));
  vdw->add_option("--k", k)->check(CLI::Range(3u, 64u));
  vdw->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  vdw->add_option("--time-budget", seconds, "Wall-clock seconds")->check(CLI::PositiveNumber);
  vdw->add_flag("--long", long_run, "Allow up to 30 minutes");
  vdw->add_option("--witness-out", witness_path, "Write the longest progression-free colouring");
  vdw->callback([&] {
    const auto ms = std::chrono::milliseconds(static_cast<long long>((long_run ? 1800 : seconds) * 1000));
    const VdwResult r = vdw_number(colors, k, n_max, ms);
    if (!witness_path.empty()) write_output(witness_path, coloring_to_json(r.witness));
    if (r.number) {
      std::cout << *r.number << '\n';
    } else {
      std::cout << "unknown (" << (r.timed_out ? "time budget" : "n-max") << " reached; longest free colouring "
                << r.witness.n() << ")\n";
      code = kExitExhausted;
    }
  });

  // transfer
  auto* xfer = app.add_subcommand("transfer", "Transfer a progression through divisor-coloured covers");
  std::string values_text, cover_path, down_path;
  xfer->add_option("--values", values_text, "1..N or a,b,c")->required();
  xfer->add_option("--cover", cover_path, "CoverSpec JSON")->required();
  xfer->add_option("--cover-down", down_path, "Second CoverSpec for the double transfer");
  xfer->add_option("--k", k)->check(CLI::Range(3u, 1000u));
  xfer->callback([&] {
    const auto values = parse_values(values_text);
    const CoverSpec up = cover_from_json(read_file(cover_path));
    if (down_path.empty()) {
      const TransferResult r = transfer_ap(values, up, k);
      std::cout << transfer_json(r.values, r.sub, std::nullopt, std::nullopt) << '\n';
    } else {
      const DoubleTransferResult r = double_transfer(values, up, cover_from_json(read_file(down_path)), k);
      std::cout << transfer_json(r.values, r.stage1, r.stage2, std::pair{r.a, r.b}) << '\n';
    }
  });

  // sl3
  auto* sl3 = app.add_subcommand("sl3", "SL(3, Z) parabolic orders");
  auto* sl3_order = sl3->add_subcommand("order", "Least j with gamma^j in the parabolic mod p^k");
  sl3->require_subcommand(1);
  std::string poly_text;
  int parabolic = 1;
  bool primed = false;
  unsigned power = 1;
  auto* poly_opt = sl3_order->add_option("--poly", poly_text, "Monic cubic 1,a,b,c");
  auto* g3_opt = sl3_order->add_option("--gamma", gamma_text, "Nine entries");
  poly_opt->excludes(g3_opt);
  sl3_order->add_option("--parabolic", parabolic)->check(CLI::Range(1, 3));
  sl3_order->add_flag("--primed", primed, "Use P_j' instead of P_j");
  sl3_order->add_option("--prime", prime_text)->required();
  sl3_order->add_option("--power", power, "Exponent k of p^k")->check(CLI::PositiveNumber);
  sl3_order->callback([&] {
    Mat g = Mat::identity(3);
    if (!poly_text.empty()) {
      std::vector<BigInt> coeffs;
      for (const auto& q : parse_values(poly_text)) {
        if (q.get_den() != 1) throw DomainError("polynomial coefficients must be integers");
        coeffs.push_back(q.get_num());
      }
      g = companion_matrix(coeffs);
    } else if (!gamma_text.empty()) {
      g = parse_mat(gamma_text);
    } else {
      throw CLI::ValidationError("sl3 order", "give --poly or --gamma");
    }
    const auto spec = make_parabolic(parabolic, primed ? ParabolicSide::primed : ParabolicSide::standard);
    std::cout << order_P_parabolic(g, spec, pow(parse_bigint(prime_text), power)) << '\n';
  });

  // bianchi
  auto* bianchi = app.add_subcommand("bianchi", "Bianchi-group order P(gamma, alpha)");
  long d = -1;
  bianchi->add_option("--d", d, "One of -1, -2, -3, -7, -11");
  bianchi->add_option("--gamma", gamma_text, "Entries u:v meaning u + v*omega, comma separated")->required();
  bianchi->add_option("--modulus", modulus_text, "Rational prime power alpha")->required();
  bianchi->callback([&] {
    const BianchiMat g = parse_bianchi(BigInt(d), gamma_text);
    std::cout << order_P_bianchi(g, parse_bigint(modulus_text)) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << '\n';
    return kExitExhausted;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return code;
}
