// wgcalc: batch front end for enumeration, Weingarten matrices, moments,
// oracles, classification and the verification suites.

#include "wg/verify.hpp"
#include "wg/wg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace wg;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_validation = 2;
constexpr int exit_singular = 3;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string format = "json";
  std::optional<std::string> cache_dir;
  std::optional<unsigned> digits;
  int max_k = default_max_k;
  bool strict = false;
  bool timing = false;

  std::string family = "classical";
  std::string sphere;
  bool twisted = false;
  std::optional<int> k;
  int N = 0;
  std::string indices, i, j, profile, generators, suite = "all", oracle_kind;
  int lmax = 4;
  int l = 1;
  int kmax = default_saturation_kmax;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ValidationError(std::string("--") + what + ": bad entry '" + tok + "'");
    }
    if (used != tok.size()) throw ValidationError(std::string("--") + what + ": bad entry '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

PairingFamily family_arg(const std::string& s, const char* flag) {
  try {
    return parse_family(s);
  } catch (const std::invalid_argument&) {
    throw ValidationError(std::string(flag) + ": expected classical, half or free, got '" + s + "'");
  }
}

/// Exact value, with a decimal rendering only when --digits is given.
ordered_json rational_json(const Rational& r, const Options& opt) {
  auto [num, den] = to_num_den(r);
  ordered_json j = {{"num", num}, {"den", den}};
  if (opt.digits) {
    with_digits scope(*opt.digits + 10);
    j["decimal"] = Real(r).str(*opt.digits);
    j["digits"] = *opt.digits;
  }
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "," : "") + std::to_string(v[t]);
  return s;
}

void print_csv(const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? "," : "") << csv_field(row[c]);
    std::cout << '\n';
  }
}

struct Output {
  ordered_json json;
  std::vector<std::vector<std::string>> csv;
  int exit_code = exit_ok;
};

WeingartenCache make_cache(const Options& opt) { return WeingartenCache(resolve_cache_dir(opt.cache_dir), opt.max_k); }

MomentOptions moment_options(WeingartenCache& cache, const Options& opt) {
  return {&cache, opt.strict ? SingularPolicy::strict : SingularPolicy::reduced_basis};
}

void require_N(const Options& opt) {
  if (opt.N < 1) throw ValidationError("--N must be a positive integer");
}

int require_k(const Options& opt) {
  if (!opt.k) throw ValidationError("--k is required");
  if (*opt.k < 0 || *opt.k % 2) throw ValidationError("--k must be a nonnegative even integer");
  if (*opt.k > opt.max_k)
    throw ValidationError("--k " + std::to_string(*opt.k) + " exceeds --max-k " + std::to_string(opt.max_k));
  return *opt.k;
}

ordered_json cache_json(const WeingartenCache& cache) {
  return {{"memory_hits", cache.memory_hits()}, {"disk_hits", cache.disk_hits()}, {"computed", cache.computed()}};
}

Output cmd_pairings(const Options& opt) {
  const int k = require_k(opt);
  const PairingFamily f = family_arg(opt.family, "--family");
  const auto ps = enumerate_pairings(k, f);
  Output out;
  out.json = {{"command", "pairings"}, {"family", family_name(f)}, {"k", k}, {"count", ps.size()}};
  auto& list = out.json["pairings"] = ordered_json::array();
  out.csv.push_back({"index", "pairing"});
  for (std::size_t t = 0; t < ps.size(); ++t) {
    list.push_back(ps[t].to_string());
    out.csv.push_back({std::to_string(t), ps[t].to_string()});
  }
  return out;
}

Output matrix_output(const char* command, const RationalMatrix& m, const Options& opt) {
  Output out;
  out.json = {{"command", command}, {"family", family_name(m.family)}, {"k", m.k}, {"N", m.N}};
  auto& basis = out.json["basis"] = ordered_json::array();
  for (const auto& p : m.basis) basis.push_back(p.to_string());
  auto& rows = out.json["matrix"] = ordered_json::array();
  out.csv.push_back({"row", "col", "num", "den"});
  for (std::size_t r = 0; r < m.order(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.order(); ++c) {
      row.push_back(rational_json(m(r, c), opt));
      auto [num, den] = to_num_den(m(r, c));
      out.csv.push_back({std::to_string(r), std::to_string(c), num, den});
    }
    rows.push_back(std::move(row));
  }
  return out;
}

Output cmd_gram(const Options& opt) {
  const int k = require_k(opt);
  require_N(opt);
  const PairingFamily f = family_arg(opt.family, "--family");
  const RationalMatrix g = gram_matrix(f, k, opt.N, opt.max_k);
  Output out = matrix_output("gram", g, opt);
  out.json["rank"] = exact_rank(gram_integer(f, k, opt.N, opt.max_k));
  return out;
}

Output cmd_weingarten(const Options& opt) {
  const int k = require_k(opt);
  require_N(opt);
  const PairingFamily f = family_arg(opt.family, "--family");
  WeingartenCache cache = make_cache(opt);
  const auto w = cache.get(f, k, opt.N);
  Output out = matrix_output("weingarten", *w, opt);
  out.json["cache"] = cache_json(cache);
  return out;
}

Output moment_output(const char* command, ordered_json query, const std::string& family, bool twisted, int N,
                     const Rational& value, const std::vector<std::string>& csv_query, const Options& opt,
                     const WeingartenCache& cache) {
  Output out;
  out.json = {{"command", command}, {"query", std::move(query)}, {"family", family}, {"twisted", twisted}, {"N", N}};
  out.json["value"] = rational_json(value, opt);
  out.json["cache"] = cache_json(cache);
  auto [num, den] = to_num_den(value);
  std::vector<std::string> header = {"family", "twisted", "N"};
  std::vector<std::string> row = {family, twisted ? "true" : "false", std::to_string(N)};
  for (std::size_t t = 0; t + 1 < csv_query.size(); t += 2) {
    header.push_back(csv_query[t]);
    row.push_back(csv_query[t + 1]);
  }
  header.insert(header.end(), {"num", "den"});
  row.insert(row.end(), {num, den});
  out.csv = {header, row};
  return out;
}

Output cmd_moment(const Options& opt) {
  require_N(opt);
  const PairingFamily f = family_arg(opt.family, "--family");
  const auto i = parse_int_list(opt.i, "i");
  const auto j = parse_int_list(opt.j, "j");
  if (i.size() != j.size()) throw ValidationError("--i and --j must have the same length");
  if (opt.k && *opt.k != static_cast<int>(i.size()))
    throw ValidationError("--k does not match the length of --i");
  if (static_cast<int>(i.size()) > opt.max_k) throw ValidationError("tuple length exceeds --max-k");
  for (int v : i)
    if (v < 1 || v > opt.N) throw ValidationError("--i entries must lie in 1..N");
  for (int v : j)
    if (v < 1 || v > opt.N) throw ValidationError("--j entries must lie in 1..N");
  WeingartenCache cache = make_cache(opt);
  const Rational v = haar_integral(f, opt.twisted, opt.N, i, j, moment_options(cache, opt));
  return moment_output("moment", {{"i", i}, {"j", j}}, std::string(family_name(f)), opt.twisted, opt.N, v,
                       {"i", join_ints(i), "j", join_ints(j)}, opt, cache);
}

Output cmd_sphere_moment(const Options& opt) {
  require_N(opt);
  const PairingFamily f = family_arg(opt.sphere.empty() ? opt.family : opt.sphere, "--sphere");
  const auto idx = parse_int_list(opt.indices, "indices");
  if (static_cast<int>(idx.size()) > opt.max_k) throw ValidationError("tuple length exceeds --max-k");
  for (int v : idx)
    if (v < 1 || v > opt.N) throw ValidationError("--indices entries must lie in 1..N");
  WeingartenCache cache = make_cache(opt);
  const Rational v = sphere_moment(f, opt.twisted, idx, opt.N, moment_options(cache, opt));
  return moment_output("sphere-moment", {{"indices", idx}}, std::string(family_name(f)), opt.twisted, opt.N, v,
                       {"indices", join_ints(idx)}, opt, cache);
}

Output cmd_law(const Options& opt) {
  require_N(opt);
  const PairingFamily f = family_arg(opt.sphere.empty() ? opt.family : opt.sphere, "--sphere");
  if (opt.lmax < 1 || 2 * opt.lmax > opt.max_k) throw ValidationError("--lmax must satisfy 1 <= 2*lmax <= --max-k");
  WeingartenCache cache = make_cache(opt);
  const auto m = law_moments(f, opt.twisted, opt.N, opt.lmax, moment_options(cache, opt));
  Output out;
  out.json = {{"command", "law"}, {"family", family_name(f)}, {"twisted", opt.twisted}, {"N", opt.N},
              {"variable", "sqrt(N) x_1"}};
  auto& list = out.json["moments"] = ordered_json::array();
  out.csv.push_back({"order", "num", "den", "reference"});
  for (int l = 1; l <= opt.lmax; ++l) {
    const std::string ref = asymptotic_reference(f, l).str();
    list.push_back({{"order", 2 * l}, {"value", rational_json(m[l - 1], opt)}, {"reference", ref}});
    auto [num, den] = to_num_den(m[l - 1]);
    out.csv.push_back({std::to_string(2 * l), num, den, ref});
  }
  out.json["cache"] = cache_json(cache);
  return out;
}

Output cmd_oracle(const Options& opt) {
  require_N(opt);
  Output out;
  out.json = {{"command", "oracle"}, {"kind", opt.oracle_kind}, {"N", opt.N}};
  if (opt.oracle_kind == "classical" || opt.oracle_kind == "half") {
    const auto prof = parse_int_list(opt.profile, "profile");
    if (static_cast<int>(prof.size()) > opt.N) throw ValidationError("--profile has more entries than N");
    for (int v : prof)
      if (v < 0) throw ValidationError("--profile entries must be nonnegative");
    out.json["profile"] = prof;
    out.csv.push_back({"formula", "num", "den"});
    auto add = [&](const char* formula, const Rational& v) {
      out.json["results"].push_back({{"formula", formula}, {"value", rational_json(v, opt)}});
      auto [num, den] = to_num_den(v);
      out.csv.push_back({formula, num, den});
    };
    if (opt.oracle_kind == "classical") {
      add("double_factorial_closed_form", classical_sphere_integral(prof, opt.N));
      out.json["provenance"] = "(N-1)!! prod l_a!! / (N + sum l - 1)!!, with m!! = (m-1)(m-3)...";
    } else {
      const Rational sum = half_liberated_integral_sum(prof, opt.N);
      const Rational stated = half_liberated_integral_stated(prof, opt.N);
      add("binomial_sum", sum);
      add("product_closed_form", stated);
      out.json["provenance"] =
          "binomial expansion over the real sphere of dimension 2N-1 (reference); product closed form for comparison";
      out.json["discrepant"] = sum != stated;
    }
    return out;
  }
  if (opt.oracle_kind == "free") {
    if (opt.N < 3) throw ValidationError("free oracle needs N >= 3");
    if (opt.l < 1) throw ValidationError("--l must be positive");
    const unsigned digits = opt.digits.value_or(50);
    if (digits < 10 || digits > 10000) throw ValidationError("--digits must lie in 10..10000");
    with_digits scope(digits);
    const Real v = free_moment(opt.l, opt.N, digits);
    const Real stated = free_moment_stated(opt.l, opt.N, digits);
    const Real q = q_parameter(opt.N);
    out.json["l"] = opt.l;
    out.json["digits"] = digits;
    out.json["q"] = q.str(digits);
    out.json["results"] = ordered_json::array(
        {{{"formula", "q_sum_prefactor_N_plus_2"}, {"decimal", v.str(digits)}},
         {{"formula", "q_sum_prefactor_N_plus_1"}, {"decimal", stated.str(digits)}}});
    out.json["provenance"] = "q-sum with q + 1/q = -N; the (N+2)^-l prefactor matches the exact values";
    out.csv = {{"formula", "decimal", "digits"},
               {"q_sum_prefactor_N_plus_2", v.str(digits), std::to_string(digits)},
               {"q_sum_prefactor_N_plus_1", stated.str(digits), std::to_string(digits)}};
    return out;
  }
  throw ValidationError("oracle kind must be classical, half or free");
}

std::vector<Permutation> parse_generators(const std::string& text) {
  std::vector<Permutation> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ValidationError("--generators: expected k:(images) in '" + item + "'");
    int k = 0;
    try {
      k = std::stoi(item.substr(0, colon));
    } catch (const std::exception&) {
      throw ValidationError("--generators: bad size in '" + item + "'");
    }
    Permutation p;
    try {
      p = parse_permutation(item.substr(colon + 1));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("--generators: ") + e.what());
    }
    if (p.size() != k) throw ValidationError("--generators: size " + std::to_string(k) + " does not match " + p.to_string());
    out.push_back(p);
  }
  return out;
}

Output cmd_classify(const Options& opt) {
  if (opt.kmax < 2 || opt.kmax > max_saturation_kmax)
    throw ValidationError("--kmax must lie in 2.." + std::to_string(max_saturation_kmax));
  const auto gens = parse_generators(opt.generators);
  for (const auto& g : gens)
    if (g.size() > opt.kmax) throw ValidationError("generator " + g.to_string() + " is larger than --kmax");
  const auto t = saturate(gens, opt.kmax);
  const GroupLabel label = classify(t);
  static const char* untwisted[] = {"free", "half", "real", "unknown"};
  static const char* twisted[] = {"free", "twisted_half", "twisted_real", "unknown"};
  Output out;
  out.json = {{"command", "classify"}, {"kmax", opt.kmax}, {"twisted", opt.twisted}};
  auto& g = out.json["generators"] = ordered_json::array();
  for (const auto& p : gens) g.push_back(p.to_string());
  auto& levels = out.json["levels"] = ordered_json::array();
  out.csv.push_back({"k", "order", "labels"});
  for (int k = 2; k <= opt.kmax; ++k) {
    std::string labs;
    ordered_json lj = ordered_json::array();
    for (GroupLabel x : level_labels(t.levels[k], k)) {
      lj.push_back(label_name(x));
      labs += (labs.empty() ? "" : " ") + std::string(label_name(x));
    }
    levels.push_back({{"k", k}, {"order", t.order(k)}, {"labels", lj}});
    out.csv.push_back({std::to_string(k), std::to_string(t.order(k)), labs});
  }
  out.json["label"] = label_name(label);
  out.json["sphere"] = (opt.twisted ? twisted : untwisted)[static_cast<int>(label)];
  auto& rc = out.json["rule_counts"] = ordered_json::object();
  for (Rule r : all_rules) rc[std::string(rule_name(r))] = t.rule_counts.at(r);
  out.json["idle_sweeps"] = t.idle_sweeps;
  out.csv.push_back({"all", "", std::string(label_name(label))});
  if (label == GroupLabel::unknown) {
    std::cerr << ordered_json{{"warning", "classification is not uniform across levels"}}.dump() << '\n';
    out.exit_code = exit_failure;
  }
  return out;
}

Output cmd_verify(const Options& opt) {
  VerifyReport report;
  try {
    report = run_verify(opt.suite);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  Output out;
  out.json = {{"command", "verify"}, {"suite", opt.suite}};
  auto& checks = out.json["checks"] = ordered_json::array();
  out.csv.push_back({"suite", "check", "status", "detail"});
  std::size_t passed = 0, failed = 0, mismatches = 0;
  for (const auto& c : report.checks) {
    checks.push_back({{"suite", c.suite}, {"check", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
    out.csv.push_back({c.suite, c.name, std::string(status_name(c.status)), c.detail});
    if (c.status == CheckStatus::pass) ++passed;
    else if (c.status == CheckStatus::fail) ++failed;
    else ++mismatches;
  }
  out.json["passed"] = passed;
  out.json["failed"] = failed;
  out.json["expected_mismatches"] = mismatches;
  out.exit_code = report.ok() ? exit_ok : exit_failure;
  return out;
}

void error_line(const ordered_json& j) { std::cerr << j.dump() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact Weingarten calculus for orthogonal quantum groups and their spheres"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache-dir", opt.cache_dir, "Weingarten cache directory (else $WG_CACHE_DIR, else the data dir)");
  app.add_option("--digits", opt.digits, "Also print decimals with this many digits; working precision for oracles");
  app.add_option("--max-k", opt.max_k, "Largest number of points for Gram and Weingarten matrices")
      ->check(CLI::Range(0, 16));
  app.add_flag("--strict", opt.strict, "Fail with exit 3 on singular Gram matrices instead of reducing the basis");
  app.add_flag("--timing", opt.timing, "Add elapsed wall time to the JSON output");

  std::unordered_map<CLI::App*, std::function<Output(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<Output(const Options&)> h) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[s] = std::move(h);
    return s;
  };
  auto family = [&](CLI::App* s) { s->add_option("--family", opt.family, "classical, half or free"); };

  auto* pairings = sub("pairings", "Enumerate one-row pairings in canonical order", cmd_pairings);
  family(pairings);
  pairings->add_option("--k", opt.k, "Number of points")->required();

  auto* gram = sub("gram", "Gram matrix N^|π∨σ|", cmd_gram);
  family(gram);
  gram->add_option("--k", opt.k)->required();
  gram->add_option("--N", opt.N)->required();

  auto* wein = sub("weingarten", "Exact Weingarten matrix (cached)", cmd_weingarten);
  family(wein);
  wein->add_option("--k", opt.k)->required();
  wein->add_option("--N", opt.N)->required();

  auto* moment = sub("moment", "Haar integral of u_{i1 j1} ... u_{ik jk}", cmd_moment);
  family(moment);
  moment->add_flag("--twisted", opt.twisted);
  moment->add_option("--k", opt.k);
  moment->add_option("--N", opt.N)->required();
  moment->add_option("--i", opt.i, "Comma separated row indices")->required();
  moment->add_option("--j", opt.j, "Comma separated column indices")->required();

  auto* sm = sub("sphere-moment", "Sphere integral of x_{i1} ... x_{ik}", cmd_sphere_moment);
  sm->add_option("--sphere", opt.sphere, "classical, half or free")->required();
  sm->add_flag("--twisted", opt.twisted);
  sm->add_option("--N", opt.N)->required();
  sm->add_option("--indices", opt.indices, "Comma separated indices")->required();

  auto* law = sub("law", "Even moments of sqrt(N) x_1", cmd_law);
  law->add_option("--sphere", opt.sphere, "classical, half or free")->required();
  law->add_flag("--twisted", opt.twisted);
  law->add_option("--N", opt.N)->required();
  law->add_option("--lmax", opt.lmax, "Largest l (moments up to order 2l)");

  auto* oracle = sub("oracle", "Closed-form and numeric reference values", cmd_oracle);
  oracle->add_option("kind", opt.oracle_kind, "classical, half or free")->required();
  oracle->add_option("--N", opt.N)->required();
  oracle->add_option("--profile", opt.profile, "Exponents (classical) or common occurrence counts (half)");
  oracle->add_option("--l", opt.l, "Moment x_1^{2l} (free)");

  auto* cls = sub("classify", "Saturate permutation relations and classify the filtered group", cmd_classify);
  cls->add_option("--generators", opt.generators, "e.g. \"3:(3,2,1);5:(2,1,3,4,5)\"");
  cls->add_option("--kmax", opt.kmax);
  cls->add_flag("--twisted", opt.twisted, "Read the relations as twisted ones");

  auto* ver = sub("verify", "Run invariant suites", cmd_verify);
  ver->add_option("--suite", opt.suite)->check(CLI::IsMember({"all", "categorical", "weingarten", "oracles", "laws", "classify"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_line({{"error", "validation"}, {"message", e.what()}});
    return exit_validation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  try {
    Output out = handlers.at(chosen)(opt);
    if (opt.format == "csv") {
      print_csv(out.csv);
    } else {
      if (opt.timing)
        out.json["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cout << out.json.dump(2) << '\n';
    }
    return out.exit_code;
  } catch (const GramSingular& e) {
    error_line({{"error", "gram_singular"}, {"family", family_name(e.family())}, {"k", e.k()}, {"N", e.N()},
                {"rank", e.rank()}, {"order", e.order()}, {"message", e.what()}});
    return exit_singular;
  } catch (const ValidationError& e) {
    error_line({{"error", "validation"}, {"message", e.what()}});
    return exit_validation;
  } catch (const BoundExceeded& e) {
    error_line({{"error", "validation"}, {"message", e.what()}});
    return exit_validation;
  } catch (const std::invalid_argument& e) {
    error_line({{"error", "validation"}, {"message", e.what()}});
    return exit_validation;
  } catch (const std::exception& e) {
    error_line({{"error", "internal"}, {"message", e.what()}});
    return exit_failure;
  }
}
