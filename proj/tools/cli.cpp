#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "liouville/certify.hpp"
#include "liouville/diophantine.hpp"
#include "liouville/errors.hpp"
#include "liouville/schedule.hpp"
#include "liouville/selfpower.hpp"

namespace liouville::cli {
namespace {

using nlohmann::json;

constexpr long kMinBudget = 32;
constexpr long kMaxBudget = 1L << 20;

struct Diagnostic : std::runtime_error {
  Diagnostic(int code, std::string kind, const std::string& msg)
      : std::runtime_error(msg), code(code), kind(std::move(kind)) {}
  int code;
  std::string kind;
};

[[noreturn]] void invalid(const std::string& msg) { throw Diagnostic(kExitInvalid, "invalid-config", msg); }

void diagnose(std::ostream& err, const std::string& kind, const std::string& msg) {
  err << json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

long checked_budget(long bits) {
  if (bits < kMinBudget || bits > kMaxBudget) {
    invalid("precision must be between " + std::to_string(kMinBudget) + " and " + std::to_string(kMaxBudget) +
            " bits");
  }
  return bits;
}

// --precision, else LIOUVILLE_PRECISION, else the library default.
long resolve_budget(std::optional<long> flag) {
  if (flag) return checked_budget(*flag);
  if (const char* env = std::getenv("LIOUVILLE_PRECISION")) {
    std::string_view s(env);
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) invalid("LIOUVILLE_PRECISION is not an integer: " + std::string(s));
    return checked_budget(v);
  }
  return kDefaultBudgetBits;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Diagnostic(kExitInvalid, "io", "cannot write " + path);
  f << text;
}

json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Diagnostic(kExitInvalid, "io", "cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw Diagnostic(kExitInvalid, "malformed", path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json enclosure(const IntervalReal& x) {
  IntervalReal r = x.rounded(32);
  return {{"lower", to_string(r.lower())}, {"upper", to_string(r.upper())}};
}

// ------------------------------------------------------------ table output

std::string approx(const BigRational& q) {
  std::ostringstream os;
  os << std::setprecision(8) << to_double(q);
  return os.str();
}

std::string approx_enclosure(const json& e) {
  if (!e.is_object()) return "-";
  BigRational mid = (parse_rational(e.at("lower").get<std::string>()) + parse_rational(e.at("upper").get<std::string>())) / 2;
  return approx(mid);
}

std::string short_int(const BigInt& z) {
  std::string s = z.get_str();
  if (s.size() <= 24) return s;
  return "<" + std::to_string(s.size()) + " digits>";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& os, bool csv = false) const {
    if (csv) {
      auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
      };
      line(header);
      for (const auto& r : rows) line(r);
      return;
    }
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        os << (i ? "  " : "");
        if (i + 1 < r.size()) {
          os << std::left << std::setw(static_cast<int>(w[i])) << r[i];
        } else {
          os << r[i];
        }
      }
      os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

// ------------------------------------------------------------ input files

std::vector<SpiffyNumber> numbers_in(const json& j) {
  std::vector<SpiffyNumber> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(spiffy_from_json(e));
  } else if (j.is_object() && j.contains("inputs")) {
    for (const auto& e : j.at("inputs")) out.push_back(spiffy_from_json(e));
  } else if (j.is_object() && j.contains("number")) {
    out.push_back(spiffy_from_json(j.at("number")));
  } else if (j.is_object() && j.contains("schedule")) {
    out.push_back(spiffy_from_json(j));
  } else {
    throw MalformedError("no spiffy numbers found (expected 'inputs', 'number' or a schedule/digits object)");
  }
  return out;
}

std::vector<SpiffyNumber> load_numbers(const std::vector<std::string>& paths) {
  std::vector<SpiffyNumber> out;
  for (const auto& p : paths) {
    auto more = numbers_in(read_json(p));
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

std::vector<BigInt> parse_targets(const std::vector<std::string>& raw) {
  std::vector<BigInt> out;
  for (const auto& s : raw) {
    BigInt N = parse_integer(s);
    if (N < 1) invalid("target N must be >= 1");
    out.push_back(N);
  }
  return out;
}

void check_levels(const std::vector<long>& levels) {
  if (levels.empty()) invalid("at least one level is required");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) invalid("levels must be >= 1");
    if (i > 0 && levels[i] <= levels[i - 1]) invalid("levels must be strictly increasing");
  }
}

// ------------------------------------------------------------ reports

Table stage_table(const json& cert) {
  const std::string type = cert.at("type").get<std::string>();
  const char* key = type == "tuned" ? "j" : type == "selfpower" ? "n" : type == "poly" ? "m" : "k";
  Table t{{"stage", key, "achieved_exponent", "error", "dominant"}, {}};
  std::size_t i = 0;
  for (const auto& s : cert.at("stages")) {
    ++i;
    std::string idx = s.at(key).is_string() ? s.at(key).get<std::string>() : s.at(key).dump();
    const json& e = s.contains("achieved_exponent_qm") ? s.at("achieved_exponent_qm") : s.at("achieved_exponent");
    const json& err = s.at("error");
    std::string total = "-", dominant = "-";
    if (err.is_object() && err.contains("total")) {
      total = magnitude_from_json(err.at("total")).to_display();
      dominant = err.value("dominant", "-");
    } else if (!err.is_null()) {
      total = magnitude_from_json(err).to_display();
    }
    t.rows.push_back({std::to_string(i), idx, approx_enclosure(e), total, dominant});
  }
  return t;
}

void print_targets(const json& cert, std::ostream& os) {
  const json& v = cert.at("verdict");
  os << "verdict: " << v.at("status").get<std::string>();
  if (v.contains("rational_value")) os << " " << v.at("rational_value").get<std::string>();
  os << "\n";
  for (const auto& t : v.at("targets")) {
    os << "N=" << t.at("N").get<std::string>() << ": "
       << (t.at("stage").is_null() ? std::string("not met") : "stage " + t.at("stage").get<std::string>()) << "\n";
  }
  if (v.contains("conditions_met")) os << "conditions_met: " << (v.at("conditions_met").get<bool>() ? "yes" : "no") << "\n";
  if (cert.at("constants").contains("gap_rule_satisfied")) {
    os << "gap_rule_satisfied: " << (cert.at("constants").at("gap_rule_satisfied").get<bool>() ? "yes" : "no") << "\n";
  }
}

bool is_certificate(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("schema_version")) return false;
  std::string t = j.at("type").get<std::string>();
  return t == "tuned" || t == "selfpower" || t == "poly" || t == "pairwise";
}

void report(const json& doc, std::ostream& os, bool csv) {
  if (is_certificate(doc)) {
    stage_table(doc).print(os, csv);
    if (!csv) print_targets(doc, os);
    return;
  }
  const std::string type = doc.is_object() ? doc.value("type", "") : "";
  if (type == "spiffy") {
    Table t{{"m", "e_m", "exponent_lower", "achieved_exponent"}, {}};
    for (const auto& lv : doc.at("levels")) {
      std::string lower = lv.at("exponent_lower").is_null() ? "-" : approx(parse_rational(lv.at("exponent_lower").get<std::string>()));
      t.rows.push_back({lv.at("m").dump(), magnitude_from_json(lv.at("e_m")).to_display(), lower,
                        approx_enclosure(lv.at("achieved_exponent"))});
    }
    t.print(os, csv);
  } else if (type == "jarnik") {
    Table t{{"n", "index", "forced_quotient", "log_B", "achieved_exponent"}, {}};
    for (const auto& s : doc.at("stages")) {
      t.rows.push_back({s.at("n").dump(), s.at("index").dump(), short_int(parse_integer(s.at("forced_quotient").get<std::string>())),
                        approx_enclosure(s.at("log_denominator")), approx_enclosure(s.at("achieved_exponent"))});
    }
    t.print(os, csv);
  } else if (type == "tuned-params") {
    Table t{{"j", "V", "B"}, {{doc.at("j").dump(), doc.at("V").get<std::string>(), doc.at("B").get<std::string>()}}};
    t.print(os, csv);
  } else if (type == "pair") {
    Table t{{"input", "schedule", "digits"}, {}};
    std::size_t i = 0;
    for (const auto& x : doc.at("inputs")) t.rows.push_back({std::to_string(++i), x.at("schedule").dump(), x.at("digits").dump()});
    t.print(os, csv);
  } else {
    throw MalformedError("unknown document type '" + type + "'");
  }
}

// ------------------------------------------------------------ construct

json construct_spiffy(const std::string& schedule, const std::string& digits, long levels, long budget) {
  if (levels < 1) invalid("--levels must be >= 1");
  SpiffyNumber x{parse_schedule_spec(schedule), parse_digit_spec(digits)};
  json lv = json::array();
  for (long m = 1; m <= levels; ++m) {
    json l{{"m", m}, {"e_m", to_json(schedule_exponent(x.schedule, m))}};
    try {
      l["truncation"] = to_string(truncate(x, m));
    } catch (const UnmaterializableError&) {
      l["truncation"] = nullptr;
    }
    TailBound tb = tail_bound(x, m);
    l["tail_bound"] = {{"generic", to_json(tb.generic)}, {"refined", to_json(tb.refined)}};
    l["first_two_after"] = tb.first_two ? json(*tb.first_two) : json(nullptr);
    try {
      l["exponent_lower"] = to_string(liouville_exponent_lower(x, m));
    } catch (const UnmaterializableError&) {
      l["exponent_lower"] = nullptr;
    }
    std::optional<IntervalReal> a;
    try {
      a = achieved_exponent(x, m, budget);
    } catch (const UnmaterializableError&) {
    }
    l["achieved_exponent"] = a ? enclosure(*a) : json(nullptr);
    lv.push_back(std::move(l));
  }
  return {{"type", "spiffy"}, {"number", to_json(x)}, {"spiffy", x.digits.spiffy()}, {"levels", lv}};
}

// ------------------------------------------------------------ certify

int finish_certificate(const json& cert, const std::string& out_path, std::ostream& out, std::ostream& err) {
  emit(out_path, dump(cert), out);
  std::ostream& table_os = (out_path.empty() || out_path == "-") ? err : out;
  stage_table(cert).print(table_os);
  print_targets(cert, table_os);
  return certificate_succeeded(cert) ? kExitOk : kExitFailed;
}

// ------------------------------------------------------------ scan

IntervalReal parse_xi(const std::string& spec, long budget) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) invalid("xi spec must be rational:P/Q, invert:Y[:lower|upper] or enclosure:LO,HI");
  std::string kind = spec.substr(0, colon), body = spec.substr(colon + 1);
  if (kind == "rational") {
    BigRational q = parse_rational(body);
    if (q <= 0) invalid("xi must be positive");
    return IntervalReal(q, budget);
  }
  if (kind == "enclosure") {
    auto comma = body.find(',');
    if (comma == std::string::npos) invalid("enclosure needs LO,HI");
    BigRational lo = parse_rational(body.substr(0, comma)), hi = parse_rational(body.substr(comma + 1));
    if (lo <= 0 || hi < lo) invalid("enclosure needs 0 < LO <= HI");
    return IntervalReal(lo, hi, budget);
  }
  if (kind == "invert") {
    std::string branch = "upper";
    if (auto c2 = body.find(':'); c2 != std::string::npos) {
      branch = body.substr(c2 + 1);
      body = body.substr(0, c2);
    }
    if (branch != "lower" && branch != "upper") invalid("branch must be lower or upper");
    auto pre = invert_self_power(IntervalReal(parse_rational(body), budget + 64), budget + 64);
    if (pre.empty()) invalid("y lies below the minimum of x^x: no preimage");
    return branch == "lower" ? pre.front() : pre.back();
  }
  invalid("unknown xi kind '" + kind + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Liouville-type numbers: construction, certificates, verification and scans", "liouville"};
  app.require_subcommand(1);
  std::optional<long> precision;
  app.add_option("--precision", precision, "working precision in bits (default: LIOUVILLE_PRECISION or 256)");
  app.fallthrough();

  // construct
  auto* construct = app.add_subcommand("construct", "build a number or parameter set and write it as JSON");
  construct->require_subcommand(1);
  std::string out_path;
  std::string schedule = "paper", digits = "all2", x_digits = "all2", y_digits;
  long levels_n = 0, stages_n = 0, j_index = 0;
  std::string forced, filler = "2";
  auto* c_spiffy = construct->add_subcommand("spiffy", "truncations, tail bounds and exponents per level");
  c_spiffy->add_option("--schedule", schedule, "paper | tower:B:E1 | factorial[:OFFSET] | list:E1,E2,...[+STEP]");
  c_spiffy->add_option("--digits", digits, "all2 | all0 | alt | list:D1,...;tail:P1,...");
  c_spiffy->add_option("--levels", levels_n, "number of levels")->required();
  c_spiffy->add_option("--out", out_path);
  auto* c_jarnik = construct->add_subcommand("jarnik", "continued fraction with forced partial quotients");
  c_jarnik->add_option("--forced", forced, "2^(2^n) | ceil(e^(n^3)) | const:K | list:K1,K2,...")->required();
  c_jarnik->add_option("--filler", filler);
  c_jarnik->add_option("--stages", stages_n)->required();
  c_jarnik->add_option("--out", out_path);
  auto* c_tuned = construct->add_subcommand("tuned-params", "V_j and B_j");
  c_tuned->add_option("--j", j_index)->required();
  c_tuned->add_option("--out", out_path);
  auto* c_pair = construct->add_subcommand("pair", "two numbers on one schedule, as certificate inputs");
  c_pair->add_option("--schedule", schedule);
  c_pair->add_option("--x", x_digits);
  c_pair->add_option("--y", y_digits)->required();
  c_pair->add_option("--out", out_path);

  // certify
  auto* certify = app.add_subcommand("certify", "build an approximation certificate");
  certify->require_subcommand(1);
  std::vector<std::string> targets_raw, inputs;
  std::vector<long> levels;
  std::string from, l_rule = "n^2", poly_text, gap_rule = "relaxed";
  auto target_opt = [&](CLI::App* sc) {
    sc->add_option("--target-N", targets_raw, "exponents to reach (repeat or comma separate)")->delimiter(',');
    sc->add_option("--out", out_path);
  };
  auto* k_self = certify->add_subcommand("selfpower", "e^u for a Jarnik target u");
  k_self->add_option("--from", from, "JSON from 'construct jarnik'")->required();
  k_self->add_option("--stages", stages_n)->required();
  k_self->add_option("--L-rule", l_rule, "Taylor degree per stage: n^K | const:K");
  target_opt(k_self);
  auto* k_poly = certify->add_subcommand("poly", "integer polynomial of spiffy numbers");
  k_poly->add_option("--poly", poly_text)->required();
  k_poly->add_option("--inputs", inputs, "JSON files with the inputs, in variable order")->required();
  k_poly->add_option("--m,--levels", levels, "truncation levels")->required()->delimiter(',');
  target_opt(k_poly);
  auto* k_pair = certify->add_subcommand("pairwise", "x^y for a synchronized pair");
  k_pair->add_option("--inputs", inputs, "JSON file(s) holding x then y")->required();
  k_pair->add_option("--levels", levels, "anchor levels m_1 < m_2 < ...")->required()->delimiter(',');
  k_pair->add_option("--gap-rule", gap_rule, "literal | relaxed");
  target_opt(k_pair);
  auto* k_tuned = certify->add_subcommand("tuned", "tuned stages (U/V, A/B) for a spiffy number");
  k_tuned->add_option("--inputs", inputs, "JSON file holding x")->required();
  k_tuned->add_option("--levels", levels, "truncation level m_j for j = 1, 2, ...")->required()->delimiter(',');
  k_tuned->add_option("--out", out_path);

  // verify
  auto* verify = app.add_subcommand("verify", "re-derive a certificate; exit 0 accepted, 1 rejected, 2 malformed");
  std::string cert_path;
  verify->add_option("certificate", cert_path)->required();

  // scan
  auto* scan = app.add_subcommand("scan", "rational approximations to xi^xi of quality b^-tau");
  std::string xi_spec = "rational:1/2", tau_text = "3", format = "csv";
  long bmax = 0;
  int jobs = 0;
  scan->add_option("--xi", xi_spec, "rational:P/Q | invert:Y[:upper|lower] | enclosure:LO,HI");
  scan->add_option("--tau", tau_text);
  scan->add_option("--bmax", bmax)->required();
  scan->add_option("--jobs", jobs, "worker cap (0: runtime default)");
  scan->add_option("--format", format, "csv | json");
  scan->add_option("--out", out_path);

  // report
  auto* rep = app.add_subcommand("report", "tabulate a certificate or constructed object");
  std::string report_path, report_format = "table";
  rep->add_option("file", report_path)->required();
  rep->add_option("--format", report_format, "table | csv");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnose(err, "invalid-config", e.what());
    return kExitInvalid;
  }

  try {
    const long budget = resolve_budget(precision);
    if (construct->parsed()) {
      json doc;
      if (c_spiffy->parsed()) {
        doc = construct_spiffy(schedule, digits, levels_n, budget);
      } else if (c_jarnik->parsed()) {
        if (stages_n < 1) invalid("--stages must be >= 1");
        BigInt f = parse_integer(filler);
        if (f < 1) invalid("--filler must be >= 1");
        doc = to_json(jarnik_generate(ForcedSchedule::parse(forced), f, stages_n, budget));
      } else if (c_tuned->parsed()) {
        if (j_index < 1) invalid("--j must be >= 1");
        TunedParameters p = build_tuned_parameters(j_index);
        doc = {{"type", "tuned-params"}, {"j", j_index}, {"V", to_string(p.V)}, {"B", to_string(p.B)}};
      } else {
        ExponentSchedule s = parse_schedule_spec(schedule);
        doc = {{"type", "pair"},
               {"inputs", {to_json(SpiffyNumber{s, parse_digit_spec(x_digits)}),
                           to_json(SpiffyNumber{s, parse_digit_spec(y_digits)})}}};
      }
      emit(out_path, dump(doc), out);
      if (!out_path.empty() && out_path != "-") report(doc, out, false);
      return kExitOk;
    }

    if (certify->parsed()) {
      if (k_self->parsed()) {
        std::vector<BigInt> targets = parse_targets(targets_raw);
        if (stages_n < 1) invalid("--stages must be >= 1");
        apply_degree_rule(l_rule, 1);
        JarnikTarget u = jarnik_from_json(read_json(from), budget);
        if (static_cast<long>(u.stages.size()) < stages_n) {
          u = jarnik_generate(ForcedSchedule::parse(u.forced_spec), u.filler, stages_n, budget);
        }
        std::vector<long> st;
        for (long n = 1; n <= stages_n; ++n) st.push_back(n);
        return finish_certificate(selfpower_certificate(u, st, l_rule, targets, budget), out_path, out, err);
      }
      if (k_poly->parsed()) {
        std::vector<BigInt> targets = parse_targets(targets_raw);
        check_levels(levels);
        Polynomial P = parse_polynomial(poly_text);
        return finish_certificate(poly_certificate(P, load_numbers(inputs), levels, targets, budget), out_path, out,
                                  err);
      }
      if (k_pair->parsed()) {
        std::vector<BigInt> targets = parse_targets(targets_raw);
        check_levels(levels);
        if (gap_rule != "literal" && gap_rule != "relaxed") invalid("--gap-rule must be literal or relaxed");
        auto xy = load_numbers(inputs);
        if (xy.size() != 2) invalid("pairwise needs exactly two numbers, got " + std::to_string(xy.size()));
        GapRule rule = gap_rule == "literal" ? GapRule::Literal : GapRule::Relaxed;
        return finish_certificate(pairwise_certificate(xy[0], xy[1], levels, rule, targets, budget), out_path, out,
                                  err);
      }
      check_levels(levels);
      auto xs = load_numbers(inputs);
      if (xs.size() != 1) invalid("tuned needs exactly one number");
      std::vector<TunedStage> st;
      for (std::size_t j = 0; j < levels.size(); ++j) {
        st.push_back(build_tuned_stage(xs[0], static_cast<long>(j + 1), levels[j], budget));
      }
      return finish_certificate(tuned_certificate(xs[0], st, budget), out_path, out, err);
    }

    if (verify->parsed()) {
      json doc = read_json(cert_path);
      VerifyReport r = verify_certificate(doc, precision ? std::optional<long>(checked_budget(*precision)) : std::nullopt);
      switch (r.status) {
        case VerifyReport::Status::Malformed:
          diagnose(err, "malformed", r.failing_check);
          return kExitInvalid;
        case VerifyReport::Status::Rejected:
          out << "rejected: " << r.failing_check << "\n";
          return kExitFailed;
        case VerifyReport::Status::Accepted:
          break;
      }
      out << "accepted: " << r.verdict << "\n";
      Table t{{"stage", "achieved_exponent"}, {}};
      for (const auto& [k, e] : r.achieved) t.rows.push_back({std::to_string(k), e ? approx(e->midpoint()) : "-"});
      t.print(out);
      return kExitOk;
    }

    if (scan->parsed()) {
      if (bmax < 0) invalid("--bmax must be >= 0");
      if (jobs < 0) invalid("--jobs must be >= 0");
      if (format != "csv" && format != "json") invalid("--format must be csv or json");
      BigRational tau = parse_rational(tau_text);
      if (tau <= 0) invalid("--tau must be positive");
      IntervalReal xi = parse_xi(xi_spec, budget);
      ExclusionReport r = non_liouville_scan(xi, tau, bmax, jobs, budget);
      emit(out_path, format == "csv" ? to_csv(r) : dump(to_json(r)), out);
      std::ostream& summary = (out_path.empty() || out_path == "-") ? err : out;
      summary << "scanned " << r.scanned << " fractions with b <= " << bmax << ", " << r.violations.size()
              << " violations\n";
      return kExitOk;
    }

    if (report_format != "table" && report_format != "csv") invalid("--format must be table or csv");
    report(read_json(report_path), out, report_format == "csv");
    return kExitOk;
  } catch (const Diagnostic& d) {
    diagnose(err, d.kind, d.what());
    return d.code;
  } catch (const AnchorMismatchError& e) {
    diagnose(err, "anchor-mismatch", e.what());
    return kExitInvalid;
  } catch (const MalformedError& e) {
    diagnose(err, "malformed", e.what());
    return kExitInvalid;
  } catch (const DomainError& e) {
    diagnose(err, "invalid-config", e.what());
    return kExitInvalid;
  } catch (const json::exception& e) {
    diagnose(err, "malformed", e.what());
    return kExitInvalid;
  } catch (const IncomparableError& e) {
    diagnose(err, "precision-insufficient", e.what());
    return kExitPrecision;
  } catch (const AmbiguousEnclosureError& e) {
    diagnose(err, "precision-insufficient", e.what());
    return kExitPrecision;
  } catch (const UnmaterializableError& e) {
    diagnose(err, "unmaterializable", e.what());
    return kExitPrecision;
  }
}

}  // namespace liouville::cli
