// Command-line front end: compute digit-sum values, verify inequality suites
// over exhaustive grids, construct counterexamples, and emit scan or
// fluctuation data as JSON/CSV. Exit status: 0 all checks hold (or a pure
// computation succeeded), 1 a violation was found, 2 usage error.

#include "digitsum/digitsum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace {

using namespace digitsum;

Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw error(error::kind::usage, "expected a nonnegative integer, got '" + text + "'");
  return Natural(text);
}

Natural resolve_oracle_cap(const std::string& flag_value) {
  if (!flag_value.empty()) return parse_natural(flag_value);
  if (const char* env = std::getenv("DIGITSUM_ORACLE_CAP")) return parse_natural(env);
  return default_oracle_cap;
}

DigitVector parse_pattern(const std::string& text, Base b) {
  if (text.empty()) throw error(error::kind::usage, "pattern must be nonempty");
  std::vector<std::uint64_t> reading;
  if (text.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      const std::string piece = text.substr(start, comma - start);
      reading.push_back(parse_natural(piece).convert_to<std::uint64_t>());
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw error(error::kind::usage,
                    "pattern must be decimal digits (use comma-separated digits for b > 10)");
      reading.push_back(static_cast<std::uint64_t>(c - '0'));
    }
  }
  for (auto digit : reading)
    if (digit >= b.value())
      throw error(error::kind::usage, "pattern digit " + std::to_string(digit) +
                                          " out of range for base " + std::to_string(b.value()));
  return DigitVector{{reading.rbegin(), reading.rend()}, b};
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&] {
    return error(error::kind::usage, "expected a nonnegative rational (a, a/b, or a.b): '" +
                                         text + "'");
  };
  std::int64_t num = 0, den = 1;
  try {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
      num = std::stoll(text.substr(0, slash));
      den = std::stoll(text.substr(slash + 1));
    } else if (const auto dot = text.find('.'); dot != std::string::npos) {
      const std::string frac = text.substr(dot + 1);
      if (frac.empty() || frac.size() > 9) throw bad();
      num = std::stoll(text.substr(0, dot) + frac);
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    } else {
      num = std::stoll(text);
    }
  } catch (const std::exception&) {
    throw bad();
  }
  if (num < 0 || den <= 0) throw bad();
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / (g ? g : 1), den / (g ? g : 1)};
}

void print_json(const json& doc) { std::cout << doc.dump() << "\n"; }

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::optional<std::uint64_t> max;
  std::optional<std::uint64_t> base;
  std::optional<std::uint64_t> r;
  std::optional<double> p;
  bool sharp = true;
  std::string format = "json";
  ScanOptions options;
  Natural oracle_cap;
};

std::vector<std::uint64_t> base_list(const VerifyArgs& args, std::vector<std::uint64_t> defaults) {
  if (args.base) return {*args.base};
  return defaults;
}

int run_verify(const VerifyArgs& args) {
  std::vector<ScanReport> reports;
  bool known = false;
  const bool all = args.suite == "all";
  auto want = [&](const char* name) {
    if (all || args.suite == name) {
      known = true;
      return true;
    }
    return false;
  };
  auto max_or = [&](std::uint64_t fallback) { return args.max.value_or(fallback); };

  if (want("graham")) reports.push_back(scan_graham(max_or(2048), args.options));
  if (want("bio"))
    for (auto b : base_list(args, {2, 3, 4}))
      reports.push_back(scan_bio(Base(b), max_or(40), args.options));
  if (want("partial"))
    for (auto b : base_list(args, {3, 4, 5}))
      for (std::uint64_t r = args.r.value_or(1); r <= (args.r ? *args.r : b); ++r)
        reports.push_back(scan_partial_tuple(Base(b), r, max_or(30), args.options));
  if (want("variation"))
    for (auto b : base_list(args, {2, 3, 4}))
      reports.push_back(scan_variation(Base(b), max_or(25), args.options));
  if (want("variation-partial"))
    for (auto b : base_list(args, {2, 3, 4}))
      for (std::uint64_t r = args.r.value_or(1); r <= (args.r ? *args.r : b); ++r)
        reports.push_back(scan_variation_partial(Base(b), r, max_or(25), args.options));
  if (want("base3")) reports.push_back(scan_base3(max_or(200), args.options));
  if (want("symmetric"))
    for (auto b : base_list(args, {2, 3, 4, 5, 6}))
      reports.push_back(scan_symmetric(Base(b), max_or(500), args.sharp, args.options));
  if (want("allaart")) {
    std::vector<double> ps = args.p ? std::vector<double>{*args.p}
                                    : std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0};
    for (double p : ps) reports.push_back(scan_allaart(p, max_or(512), args.options));
  }
  if (want("subadditivity"))
    for (auto b : base_list(args, {2, 3, 10}))
      reports.push_back(scan_subadditivity(Base(b), max_or(300), args.options));
  if (want("carry"))
    for (auto b : base_list(args, {2, 3, 5, 7}))
      reports.push_back(scan_carry_identity(Base(b), max_or(300), args.options));
  if (!all && args.suite == "oracle") {
    known = true;
    for (auto b : base_list(args, {2, 3, 5, 10}))
      reports.push_back(
          scan_oracle_equivalence(Base(b), max_or(100'000), args.oracle_cap, args.options));
  }
  if (!all && args.suite == "lemma1") {
    known = true;
    reports.push_back(scan_lemma1_random(1000, 1'000'000, 2, 10, lemma1_default_seed,
                                         args.options));
    reports.push_back(scan_lemma1_powers(max_or(1000), 10, 2, 6, args.options));
  }
  if (!known) throw error(error::kind::usage, "unknown verify suite: " + args.suite);

  const bool all_hold =
      std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.holds(); });

  if (args.format == "json") {
    if (reports.size() == 1 && !all) {
      print_json(to_json(reports.front()));
    } else {
      json doc{{"suite", args.suite}, {"all_hold", all_hold}};
      json list = json::array();
      for (const auto& report : reports) list.push_back(to_json(report));
      doc["reports"] = std::move(list);
      print_json(doc);
    }
  } else if (args.format == "csv") {
    write_scan_csv_header(std::cout);
    for (const auto& report : reports) write_scan_csv_row(std::cout, report);
  } else {
    for (const auto& report : reports) std::cout << plain_line(report) << "\n";
  }
  return all_hold ? 0 : 1;
}

// ---- scan ------------------------------------------------------------------

struct ScanArgs {
  std::string id;
  std::uint64_t max = 0;
  std::uint64_t base = 2;
  std::uint64_t r = 0;
  double p = 0.0;
  bool sharp = true;
  std::string pattern;
  std::string coefficient = "1";
  std::string format = "json";
  ScanOptions options;
  Natural oracle_cap;
};

template <class Defect>
bool csv_defect_violates(Defect defect) {
  if constexpr (std::is_floating_point_v<Defect>) return defect < -real_tolerance;
  else return defect < 0;
}

int run_scan_csv(const ScanArgs& args, const ScanParams& params) {
  bool violated = false;
  const auto header = [&](const char* names) { std::cout << names << ",defect\n"; };
  auto row = [&](std::span<const std::uint64_t> witness, auto defect) {
    for (auto coordinate : witness) std::cout << coordinate << ',';
    using D = std::decay_t<decltype(defect)>;
    if constexpr (std::is_floating_point_v<D>) std::cout << format_real(defect) << '\n';
    else std::cout << defect << '\n';
    violated = violated || csv_defect_violates(defect);
  };

  if (args.id == "graham") {
    header("n1,n2");
    scan_graham_rows(args.max, row);
  } else if (args.id == "bio") {
    std::string names;
    for (std::uint64_t i = 1; i <= args.base; ++i)
      names += (i > 1 ? ",n" : "n") + std::to_string(i);
    header(names.c_str());
    scan_bio_rows(Base(args.base), args.max, row);
  } else if (args.id == "partial_tuple") {
    const std::uint64_t r = args.r ? args.r : args.base;
    std::string names;
    for (std::uint64_t i = 1; i <= r; ++i) names += (i > 1 ? ",n" : "n") + std::to_string(i);
    header(names.c_str());
    scan_partial_tuple_rows(Base(args.base), r, args.max, row);
  } else if (args.id == "variation") {
    std::string names;
    for (std::uint64_t i = 1; i <= args.base; ++i)
      names += (i > 1 ? ",k" : "k") + std::to_string(i);
    header(names.c_str());
    scan_variation_rows(Base(args.base), args.max, row);
  } else if (args.id == "variation_partial") {
    const std::uint64_t r = args.r ? args.r : args.base;
    std::string names;
    for (std::uint64_t i = 1; i <= r; ++i) names += (i > 1 ? ",m" : "m") + std::to_string(i);
    header(names.c_str());
    scan_variation_partial_rows(Base(args.base), r, args.max, row);
  } else if (args.id == "base3") {
    header("m,k,l");
    scan_base3_rows(args.max, row);
  } else if (args.id == "symmetric") {
    header("m,k");
    scan_symmetric_rows(Base(args.base), args.max, args.sharp, row);
  } else if (args.id == "allaart_p") {
    header("m,l");
    scan_allaart_rows(args.p, args.max, row);
  } else if (args.id == "subadditivity") {
    header("n,m");
    scan_subadditivity_rows(Base(args.base), args.max, row);
  } else if (args.id == "carry_identity") {
    header("n,m");
    scan_carry_identity_rows(Base(args.base), args.max, row);
  } else if (args.id == "block") {
    header("n1,n2");
    block_scan_rows(params.pattern, Base(args.base), args.max, params.coefficient, row);
  } else {
    // aggregate scans (oracle_equivalence, lemma1_*) have no per-point dump
    const ScanReport report = scan(args.id, params);
    write_scan_csv_header(std::cout);
    write_scan_csv_row(std::cout, report);
    return report.holds() ? 0 : 1;
  }
  return violated ? 1 : 0;
}

int run_scan(const ScanArgs& args) {
  ScanParams params;
  params.max = args.max;
  params.b = args.base;
  params.r = args.r;
  params.p = args.p;
  params.sharp = args.sharp;
  params.oracle_cap = args.oracle_cap;
  params.options = args.options;
  if (args.id == "block" || !args.pattern.empty())
    params.pattern = parse_pattern(args.pattern, Base(args.base));
  params.coefficient = parse_rational(args.coefficient);

  if (args.format == "csv") return run_scan_csv(args, params);

  const ScanReport report = scan(args.id, params);
  if (args.format == "json") print_json(to_json(report));
  else std::cout << plain_line(report) << "\n";
  return report.holds() ? 0 : 1;
}

// ---- search ----------------------------------------------------------------

int run_search_optimality(std::uint64_t base, std::uint64_t r, std::uint64_t x,
                          const std::string& format) {
  const CounterexampleWitness witness = optimality_counterexample(Base(base), r, x);
  if (format == "json") {
    print_json(to_json(witness));
  } else {
    std::cout << "b=" << witness.b.value() << " r=" << witness.r << " x=" << witness.x << " ns=(";
    for (std::size_t i = 0; i < witness.ns.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << witness.ns[i].str();
    }
    std::cout << ") lhs=" << witness.lhs.str() << " rhs=" << witness.rhs.str()
              << " margin=" << witness.margin.str() << "\n";
  }
  return witness.margin > 0 ? 1 : 0;
}

int run_search_divergence(double p, std::uint64_t k, const std::string& format) {
  const DefectReport report = p_gt_one_divergence(p, k);
  if (format == "json") print_json(to_json(report));
  else
    std::cout << report.inequality_id << " p=" << format_real(p) << " k=" << k
              << " delta=" << to_plain(report.rhs) << " defect=" << to_plain(report.defect)
              << (report.holds ? " DIVERGES" : " within-bound") << "\n";
  return report.holds ? 1 : 0;
}

// ---- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string op;
  std::uint64_t base = 2;
  std::string n_text;
  std::optional<double> p;
  std::string pattern;
  std::string format = "plain";
  Natural oracle_cap;
};

int run_compute(const ComputeArgs& args) {
  const Base base(args.base);
  const Natural n = parse_natural(args.n_text);
  Value result;
  if (args.op == "s") {
    result = Value(digit_sum(n, base));
  } else if (args.op == "S") {
    result = Value(summatory_digit_sum(n, base));
  } else if (args.op == "S-oracle") {
    result = Value(summatory_digit_sum_oracle(n, base, args.oracle_cap));
  } else if (args.op == "w" || args.op == "W") {
    if (!args.p) throw error(error::kind::usage, "op '" + args.op + "' requires -p");
    const WeightSequence weights = WeightSequence::power(*args.p);
    result = Value(args.op == "w" ? weighted_digit_sum(n, weights)
                                  : weighted_summatory(n, weights));
  } else if (args.op == "valuation") {
    result = Value(valuation(n, base));
  } else if (args.op == "factorial-valuation") {
    result = Value(factorial_valuation(n, base));
  } else if (args.op == "pattern-count") {
    if (args.pattern.empty())
      throw error(error::kind::usage, "op 'pattern-count' requires --pattern");
    result = Value(pattern_count(n, base, parse_pattern(args.pattern, base)));
  } else {
    throw error(error::kind::usage, "unknown compute op: " + args.op);
  }

  if (args.format == "json") {
    json doc{{"op", args.op}, {"base", args.base}, {"n", n.str()}};
    if (args.p) doc["p"] = json::parse(format_real(*args.p));
    if (!args.pattern.empty()) doc["pattern"] = args.pattern;
    doc["value"] = to_json(result);
    print_json(doc);
  } else {
    std::cout << to_plain(result) << "\n";
  }
  return 0;
}

// ---- fluctuation -----------------------------------------------------------

int run_fluctuation(std::uint64_t base, const std::string& max_text, const std::string& format) {
  const Base b(base);
  const Natural n_max = parse_natural(max_text);
  if (format == "json") {
    json series = json::array();
    fluctuation_series(b, n_max, [&](std::uint64_t n, double residual) {
      series.push_back(json::array({n, json::parse(format_real(residual))}));
    });
    print_json(json{{"b", base}, {"max", n_max.str()}, {"series", std::move(series)}});
  } else if (format == "csv") {
    std::cout << "n,residual\n";
    fluctuation_series(b, n_max, [&](std::uint64_t n, double residual) {
      std::cout << n << ',' << format_real(residual) << '\n';
    });
  } else {
    fluctuation_series(b, n_max, [&](std::uint64_t n, double residual) {
      std::cout << n << ' ' << format_real(residual) << '\n';
    });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digit-sum summatory functions, inequality grids, and counterexamples"};
  app.require_subcommand(1);

  std::string format;
  unsigned parallelism = 1;
  std::size_t violation_cap = 32;
  std::string oracle_cap_text;

  // compute
  auto* compute = app.add_subcommand("compute", "evaluate one quantity");
  ComputeArgs compute_args;
  compute->add_option("op", compute_args.op,
                      "one of: s S S-oracle w W valuation factorial-valuation pattern-count")
      ->required();
  compute->add_option("--base,-b", compute_args.base, "base (default 2)");
  compute->add_option("--n", compute_args.n_text, "operand")->required();
  double compute_p = 0.0;
  auto* compute_p_opt = compute->add_option("-p", compute_p, "weight exponent for w/W");
  compute->add_option("--pattern", compute_args.pattern, "digit word for pattern-count");
  compute->add_option("--oracle-cap", oracle_cap_text, "override the oracle cap");
  compute->add_option("--format", format, "plain|json (default plain)");

  // verify
  auto* verify = app.add_subcommand("verify", "sweep an inequality suite");
  VerifyArgs verify_args;
  verify->add_option("suite", verify_args.suite,
                     "graham bio partial variation variation-partial base3 symmetric allaart "
                     "subadditivity carry oracle lemma1 all")
      ->required();
  std::uint64_t verify_max = 0, verify_base = 0, verify_r = 0;
  double verify_p = 0.0;
  auto* vmax = verify->add_option("--max", verify_max, "grid bound (default: suite-specific)");
  auto* vbase = verify->add_option("--base,-b", verify_base, "restrict to one base");
  auto* vr = verify->add_option("-r", verify_r, "restrict to one tuple length");
  auto* vp = verify->add_option("-p", verify_p, "restrict to one weight exponent");
  verify->add_flag("--sharp,!--no-sharp", verify_args.sharp,
                   "symmetric constant floor((b+1)/2) vs b-1 (default sharp)");
  verify->add_option("--parallelism,-j", parallelism, "scan threads (default 1)");
  verify->add_option("--violation-cap", violation_cap, "violations kept per report (default 32)");
  verify->add_option("--oracle-cap", oracle_cap_text, "override the oracle cap");
  verify->add_option("--format", format, "json|csv|plain (default json)");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "sweep one grid and report it");
  ScanArgs scan_args;
  scan_cmd->add_option("id", scan_args.id,
                       "graham bio partial_tuple variation variation_partial base3 symmetric "
                       "allaart_p subadditivity carry_identity oracle_equivalence lemma1_random "
                       "lemma1_powers block")
      ->required();
  scan_cmd->add_option("--max", scan_args.max, "grid bound")->required();
  scan_cmd->add_option("--base,-b", scan_args.base, "base (default 2)");
  scan_cmd->add_option("-r", scan_args.r, "tuple length (default b)");
  scan_cmd->add_option("-p", scan_args.p, "weight exponent for allaart_p");
  scan_cmd->add_flag("--sharp,!--no-sharp", scan_args.sharp, "symmetric constant choice");
  scan_cmd->add_option("--pattern", scan_args.pattern, "digit word for block scans");
  scan_cmd->add_option("--coefficient", scan_args.coefficient,
                       "rational coefficient for block scans (default 1)");
  scan_cmd->add_option("--parallelism,-j", parallelism, "scan threads (default 1)");
  scan_cmd->add_option("--violation-cap", violation_cap, "violations kept (default 32)");
  scan_cmd->add_option("--oracle-cap", oracle_cap_text, "override the oracle cap");
  scan_cmd->add_option("--format", format, "json|csv|plain (default json; csv dumps grid points)");

  // search
  auto* search = app.add_subcommand("search", "construct a violation");
  std::string search_target;
  search->add_option("target", search_target, "optimality|divergence")->required();
  std::uint64_t search_base = 2, search_r = 0, search_x = 2, search_k = 1;
  double search_p = 2.0;
  search->add_option("--base,-b", search_base, "base");
  search->add_option("-r", search_r, "tuple length (optimality; requires r >= b+1)");
  search->add_option("-x", search_x, "power exponent (optimality; requires x >= 2)");
  search->add_option("-p", search_p, "weight exponent (divergence; requires p > 1)");
  search->add_option("-k", search_k, "bit position (divergence; m = 2^k)");
  search->add_option("--format", format, "json|plain (default json)");

  // fluctuation
  auto* fluctuation = app.add_subcommand("fluctuation", "emit the S_b(n)/n residual series");
  std::uint64_t fluctuation_base = 2;
  std::string fluctuation_max;
  fluctuation->add_option("--base,-b", fluctuation_base, "base (default 2)");
  fluctuation->add_option("--max", fluctuation_max, "series length N >= 2")->required();
  fluctuation->add_option("--format", format, "csv|json|plain (default csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!format.empty() && format != "json" && format != "csv" && format != "plain")
      throw error(error::kind::usage, "unknown format: " + format);
    const Natural oracle_cap = resolve_oracle_cap(oracle_cap_text);
    if (compute->parsed()) {
      compute_args.format = format.empty() ? "plain" : format;
      compute_args.oracle_cap = oracle_cap;
      if (compute_p_opt->count()) compute_args.p = compute_p;
      return run_compute(compute_args);
    }
    if (verify->parsed()) {
      verify_args.format = format.empty() ? "json" : format;
      if (vmax->count()) verify_args.max = verify_max;
      if (vbase->count()) verify_args.base = verify_base;
      if (vr->count()) verify_args.r = verify_r;
      if (vp->count()) verify_args.p = verify_p;
      verify_args.options = ScanOptions{parallelism, violation_cap};
      verify_args.oracle_cap = oracle_cap;
      return run_verify(verify_args);
    }
    if (scan_cmd->parsed()) {
      scan_args.format = format.empty() ? "json" : format;
      scan_args.options = ScanOptions{parallelism, violation_cap};
      scan_args.oracle_cap = oracle_cap;
      return run_scan(scan_args);
    }
    if (search->parsed()) {
      const std::string search_format = format.empty() ? "json" : format;
      if (search_target == "optimality") {
        const std::uint64_t r = search_r ? search_r : search_base + 1;
        return run_search_optimality(search_base, r, search_x, search_format);
      }
      if (search_target == "divergence")
        return run_search_divergence(search_p, search_k, search_format);
      throw error(error::kind::usage, "unknown search target: " + search_target);
    }
    if (fluctuation->parsed()) {
      return run_fluctuation(fluctuation_base, fluctuation_max,
                             format.empty() ? "csv" : format);
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
