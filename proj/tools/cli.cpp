#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "multiquad/asymptotics.hpp"
#include "multiquad/countform.hpp"
#include "multiquad/fields.hpp"
#include "multiquad/globalcount.hpp"
#include "multiquad/oracle.hpp"
#include "report.hpp"
#include "verify.hpp"

namespace multiquad::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decimal integer, optionally written as AeB (e.g. 1e14).
mpz_class parse_integer(const std::string& text, const std::string& what) {
  const auto e = text.find_first_of("eE");
  mpz_class out;
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (e == std::string::npos) {
    if (!digits(text)) throw UsageError(what + ": not a nonnegative integer: '" + text + "'");
    out.set_str(text, 10);
    return out;
  }
  const std::string mant = text.substr(0, e), exp = text.substr(e + 1);
  if (!digits(mant) || !digits(exp) || exp.size() > 3) {
    throw UsageError(what + ": not a nonnegative integer: '" + text + "'");
  }
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, std::stoul(exp));
  out.set_str(mant, 10);
  return out * p;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  const mpz_class v = parse_integer(text, what);
  if (v > mpz_class("18446744073709551615")) throw UsageError(what + ": value too large: '" + text + "'");
  return std::stoull(v.get_str());
}

// Comma list; "AeB..CeD" expands to every power of ten in between.
std::vector<mpz_class> parse_grid(const std::string& text) {
  std::vector<mpz_class> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    mpz_class lo = parse_integer(text.substr(0, dots), "--grid");
    const mpz_class hi = parse_integer(text.substr(dots + 2), "--grid");
    if (lo < 1) throw UsageError("--grid: range must start at a positive value");
    for (; lo <= hi; lo *= 10) out.push_back(lo);
    return out;
  }
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(parse_integer(item, "--grid"));
  if (out.empty()) throw UsageError("--grid: empty");
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string residue_class_text(const FieldKey& key) {
  return key.k() >= 2 ? std::string(to_string(mod4_class(key))) : std::string();
}

struct Globals {
  std::string format = "csv";
  std::string out_path;
  unsigned threads = 1;
  bool timing = false;

  SieveOptions sieve() const {
    SieveOptions o;
    o.threads = threads;
    return o;
  }
};

Report count_report(int k, const std::string& x_text, bool tr, bool with_oracle, const Globals& g) {
  const mpz_class x = parse_integer(x_text, "--x");
  Report r;
  r.command = "count";
  r.parameters = {{"k", std::to_string(k)}, {"x", x.get_str()}, {"totally_real", bool_text(tr)}};
  r.columns = {"k", "x", "totally_real", "radical_bound", "sum_11", "sum_31", "sum_21", "sum_23", "value", "oracle"};
  const NkBreakdown b = count_N_breakdown(k, x, tr, g.sieve());
  std::string oracle;
  if (with_oracle) {
    if (!x.fits_ulong_p()) throw Error(ErrorCode::budget_exceeded, "oracle: x too large");
    oracle = std::to_string(enumerate_by_discriminant(x.get_ui(), k, {.totally_real_only = tr}).size());
  }
  r.add_row({std::to_string(k), x.get_str(), bool_text(tr), std::to_string(b.radical_bound), b.class_sums[0].get_str(),
             b.class_sums[1].get_str(), b.class_sums[2].get_str(), b.class_sums[3].get_str(), b.total.get_str(), oracle});
  return r;
}

FieldFilter parse_filter(const std::string& filter, const std::string& cls) {
  FieldFilter f;
  if (filter == "i-free") {
    f.i_free_only = true;
  } else if (filter == "totally-real") {
    f.totally_real_only = true;
  } else if (filter != "none") {
    throw UsageError("--filter must be none, i-free or totally-real");
  }
  if (!cls.empty()) {
    try {
      f.mod4 = parse_mod4_class(cls);
    } catch (const Error&) {
      throw UsageError("--class must be one of (1,1), (3,1), (2,1), (2,3)");
    }
  }
  return f;
}

Report radical_report(int k, const std::string& P_text, const std::string& filter, const std::string& cls,
                      const std::string& method) {
  const std::uint64_t P = parse_u64(P_text, "--P");
  if (method != "subgroups" && method != "patterns") throw UsageError("--method must be subgroups or patterns");
  const FieldFilter f = parse_filter(filter, cls);
  Report r;
  r.command = "radical";
  r.parameters = {{"k", std::to_string(k)}, {"P", std::to_string(P)}, {"filter", filter}, {"class", cls},
                  {"method", method}};
  r.columns = {"k", "P", "key", "class", "discriminant"};
  const auto keys = enumerate_by_radical(
      P, k, f, method == "patterns" ? OracleMethod::normal_patterns : OracleMethod::subgroups);
  for (const FieldKey& key : keys) {
    r.add_row({std::to_string(k), std::to_string(P), key.to_string(), residue_class_text(key),
               k >= 2 ? std::to_string(discriminant(key)) : std::string()});
  }
  r.extra["count"] = std::to_string(keys.size());
  return r;
}

Report normalize_report(const std::string& text) {
  const Presentation p = Presentation::parse(text);
  const Presentation n = normalize(p);
  Report r;
  r.command = "normalize";
  r.parameters = {{"presentation", p.to_string()}};
  r.columns = {"input", "normal", "key", "input_is_normal"};
  r.add_row({p.to_string(), n.to_string(), field_key(p).to_string(), bool_text(is_normal(p))});
  return r;
}

Report disc_report(const std::string& presentation, const std::string& key_text) {
  const FieldKey key = presentation.empty() ? FieldKey::parse(key_text) : field_key(Presentation::parse(presentation));
  if (key.k() < 2) throw Error(ErrorCode::domain, "disc: needs k >= 2");
  Report r;
  r.command = "disc";
  r.parameters = presentation.empty() ? Json{{"key", key.to_string()}} : Json{{"presentation", presentation}};
  r.columns = {"key", "k", "i_free", "class", "two_power", "radical", "discriminant", "mod4_presentation", "normal"};
  const Mod4Class c = mod4_class(key);
  r.add_row({key.to_string(), std::to_string(key.k()), bool_text(is_i_free(key)), std::string(to_string(c)),
             std::to_string(discriminant_two_power(c)), std::to_string(key.radical()), std::to_string(discriminant(key)),
             to_mod4_presentation(key).to_string(),
             is_i_free(key) ? normalize(to_mod4_presentation(key)).to_string() : std::string()});
  return r;
}

std::string exceptions_text(const CountFamily& f) {
  std::string out;
  for (const auto& [point, value] : f.exceptions) {
    if (!out.empty()) out += ";";
    out += f.poly.is_bivariate()
               ? "omega1=" + std::to_string(point.first) + " omega3=" + std::to_string(point.second)
               : "omega=" + std::to_string(point.first);
    out += ":" + value.get_str();
  }
  return out;
}

Report formula_report(int k, const std::string& kind_text) {
  std::vector<FamilyKind> kinds;
  if (kind_text == "all") {
    for (FamilyKind kind : kAllFamilyKinds) {
      if (k >= 2 || !is_mod4_kind(kind)) kinds.push_back(kind);
    }
  } else {
    kinds.push_back(parse_family_kind(kind_text));
  }
  Report r;
  r.command = "formula";
  r.parameters = {{"k", std::to_string(k)}, {"kind", kind_text}};
  r.columns = {"k", "kind", "formula", "omega3_zero_formula", "exceptions", "leading_coefficient",
               "expected_leading_coefficient"};
  Json terms = Json::array();
  for (FamilyKind kind : kinds) {
    const CountFamily& f = cached_family(k, kind);
    r.add_row({std::to_string(k), std::string(to_string(kind)), f.poly.to_text(),
               f.omega3_zero ? f.omega3_zero->to_text() : std::string(), exceptions_text(f),
               f.leading_coefficient().get_str(), expected_leading_coefficient(k, kind).get_str()});
    terms.push_back({{"kind", std::string(to_string(kind))}, {"terms", Json::parse(f.poly.to_json())}});
  }
  r.extra["terms"] = std::move(terms);
  return r;
}

Report constant_report(int k, const std::string& bound_text) {
  const std::uint64_t B = parse_u64(bound_text, "--prime-bound");
  const ConstantCk c = constant_Ck(k, B);
  Report r;
  r.command = "constant";
  r.parameters = {{"k", std::to_string(k)}, {"prime_bound", std::to_string(B)}};
  r.columns = {"k", "prime_bound", "prefactor", "closed_form", "lower", "upper", "class_sum", "residual"};
  r.add_row({std::to_string(k), std::to_string(B), ck_closed_form_prefactor(k).get_str(), to_decimal(c.closed_form),
             to_decimal(c.lower), to_decimal(c.upper), to_decimal(c.class_sum), to_decimal(c.residual, 6)});
  return r;
}

Report fit_report(int k, const std::string& grid_text, bool tr, const std::string& bound_text, const Globals& g) {
  const std::vector<mpz_class> grid = parse_grid(grid_text);
  const std::uint64_t B = parse_u64(bound_text, "--prime-bound");
  const FitResult f = fit_leading(k, grid, tr, B, g.sieve());
  Report r;
  r.command = "fit";
  std::string grid_param;
  for (const mpz_class& x : grid) grid_param += (grid_param.empty() ? "" : ",") + x.get_str();
  r.parameters = {{"k", std::to_string(k)}, {"grid", grid_param}, {"totally_real", bool_text(tr)},
                  {"prime_bound", std::to_string(B)}};
  r.columns = {"x", "count", "relative_residual", "residual_to_leading", "alpha", "reference", "ratio"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.add_row({grid[i].get_str(), f.counts[i].get_str(), to_decimal(f.relative_residuals[i], 6),
               to_decimal(f.residual_to_leading[i], 6), to_decimal(f.alpha), to_decimal(f.reference),
               to_decimal(f.ratio)});
  }
  Json coef = Json::array();
  for (const Real& c : f.coefficients) coef.push_back(to_decimal(c));
  r.extra["coefficients"] = std::move(coef);
  r.extra["within_band"] = bool_text(fit_within_band(f));
  r.extra["residuals_shrink"] = bool_text(fit_residuals_shrink(f));
  return r;
}

Report verify_report(const VerifyOptions& opts, bool& ok, std::string& first_failure) {
  Report r;
  r.command = "verify";
  r.parameters = {{"suite", opts.suite}, {"seed", std::to_string(opts.seed)},
                  {"max_omega", std::to_string(opts.max_omega)}};
  r.columns = {"suite", "check", "cases", "status", "detail"};
  ok = true;
  for (const CheckResult& c : run_verify(opts)) {
    r.add_row({c.suite, c.check, std::to_string(c.cases), c.ok ? "pass" : "fail", c.detail});
    if (!c.ok && ok) {
      ok = false;
      first_failure = c.suite + "/" + c.check + ": " + c.detail;
    }
  }
  r.extra["status"] = ok ? "pass" : "fail";
  return r;
}

void emit_error(const std::string& command, const std::string& code, const std::string& message, const Globals& g,
                std::ostream& out, std::ostream& err) {
  err << "error: " << code << ": " << message << '\n';
  if (g.format == "json") {
    Json j;
    j["command"] = command;
    j["error"] = {{"code", code}, {"message", message}};
    out << j.dump(2) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting multi-quadratic number fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "Write the report to this file instead of standard output");
  app.add_option("--threads", g.threads, "Worker threads for sieve segments")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", g.timing, "Report wall time (stderr for CSV, a JSON field otherwise)");

  int k = 2;
  bool tr = false, with_oracle = false;
  std::string x_text, P_text, filter = "none", cls, method = "subgroups", presentation, key_text, kind = "all",
                                  grid_text, bound_text = "10000000";
  VerifyOptions vopts;

  auto* count = app.add_subcommand("count", "Exact N_k(x) or N_k^+(x)");
  count->add_option("--k", k, "Extension exponent")->required();
  count->add_option("--x", x_text, "Discriminant bound")->required();
  count->add_flag("--totally-real", tr, "Count totally real fields only");
  count->add_flag("--oracle", with_oracle, "Also count by brute-force enumeration");

  auto* radical = app.add_subcommand("radical", "Enumerate fields with a given radical");
  radical->add_option("--k", k, "Extension exponent")->required();
  radical->add_option("--P", P_text, "Squarefree radical")->required();
  radical->add_option("--filter", filter, "none, i-free or totally-real");
  radical->add_option("--class", cls, "Mod-4 class: (1,1), (3,1), (2,1) or (2,3)");
  radical->add_option("--method", method, "subgroups or patterns");

  auto* norm = app.add_subcommand("normalize", "Normal presentation of an i-free field");
  norm->add_option("--presentation", presentation, "Comma-separated generators, e.g. 6,10")->required();

  auto* disc = app.add_subcommand("disc", "Mod-4 class and discriminant");
  auto* disc_p = disc->add_option("--presentation", presentation, "Comma-separated generators");
  auto* disc_k = disc->add_option("--key", key_text, "Closed key, sorted and comma-separated");
  disc_p->excludes(disc_k);
  disc->require_option(1);

  auto* formula = app.add_subcommand("formula", "Derived counting formula");
  formula->add_option("--k", k, "Extension exponent")->required();
  formula->add_option("--kind", kind, "R, Q, R11 ... Q23, or all");

  auto* constant = app.add_subcommand("constant", "Leading constant C_k");
  constant->add_option("--k", k, "Extension exponent")->required();
  constant->add_option("--prime-bound", bound_text, "Euler product truncation");

  auto* fit = app.add_subcommand("fit", "Fit the leading constant from exact counts");
  fit->add_option("--k", k, "Extension exponent")->required();
  fit->add_option("--grid", grid_text, "x values: comma list or 1e8..1e14")->required();
  fit->add_flag("--totally-real", tr, "Fit N_k^+");
  fit->add_option("--prime-bound", bound_text, "Euler product truncation for C_k");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", vopts.suite, "formulas, global, asymptotics or all")
      ->check(CLI::IsMember({"formulas", "global", "asymptotics", "all"}));
  verify->add_option("--max-omega", vopts.max_omega, "Largest omega(P) in formula checks")->check(CLI::Range(0, 6));
  verify->add_option("--seed", vopts.seed, "Seed for randomized checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  int status = 0;
  std::string first_failure;
  try {
    if (command == "count") {
      report = count_report(k, x_text, tr, with_oracle, g);
    } else if (command == "radical") {
      report = radical_report(k, P_text, filter, cls, method);
    } else if (command == "normalize") {
      report = normalize_report(presentation);
    } else if (command == "disc") {
      report = disc_report(presentation, key_text);
    } else if (command == "formula") {
      report = formula_report(k, kind);
    } else if (command == "constant") {
      report = constant_report(k, bound_text);
    } else if (command == "fit") {
      report = fit_report(k, grid_text, tr, bound_text, g);
    } else {
      vopts.sieve = g.sieve();
      bool ok = true;
      report = verify_report(vopts, ok, first_failure);
      status = ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    emit_error(command, std::string(to_string(e.code())), e.what(), g, out, err);
    return 1;
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (g.timing) {
    std::ostringstream s;
    s.precision(6);
    s << std::fixed << seconds;
    if (g.format == "json") {
      report.extra["wall_time_s"] = s.str();
    } else {
      err << "wall_time_s=" << s.str() << '\n';
    }
  }
  const Format format = g.format == "json" ? Format::json : Format::csv;
  if (g.out_path.empty()) {
    write_report(report, format, out);
  } else {
    std::ofstream file(g.out_path);
    if (!file) {
      err << "error: io: cannot open " << g.out_path << '\n';
      return 1;
    }
    write_report(report, format, file);
  }
  if (status != 0) err << "verify: first counterexample: " << first_failure << '\n';
  return status;
}

}  // namespace multiquad::cli
