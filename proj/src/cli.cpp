#include "pbias/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "pbias/errors.hpp"
#include "pbias/report.hpp"

namespace pbias {

using nlohmann::json;

namespace {

enum class Format { text, csv, json };

struct Common {
  int order = 200;
  int max_n = 200;
  std::optional<int> m;
  Format format = Format::text;
  std::string out_path;
};

// Usage errors detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FamilyId parse_family(const std::string& name) {
  if (auto id = family_from_name(name)) return *id;
  throw UsageError("unknown family '" + name + "'");
}

FamilyParams family_params(FamilyId id, const std::optional<int>& m) {
  const bool wants_m = family_info(id).params != ParamKind::none;
  if (wants_m && !m) {
    throw UsageError(std::string(family_name(id)) + " requires --m (" +
                     std::string(param_description(family_info(id).params)) + ")");
  }
  if (!wants_m && m) throw UsageError(std::string(family_name(id)) + " takes no --m");
  FamilyParams params{m.value_or(0)};
  validate_params(id, params);
  return params;
}

// "0", "1", "-1", "q", "-q", "q^3", "-q^3"
Monomial parse_monomial(std::string text) {
  int sign = 1;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    sign = text[0] == '-' ? -1 : 1;
    text.erase(0, 1);
  }
  if (text == "0") return Monomial::zero();
  if (text == "1") return Monomial(sign, 0);
  if (text.empty() || text[0] != 'q') throw UsageError("bad monomial '" + text + "'");
  int exponent = 1;
  if (text.size() > 1) {
    if (text[1] != '^' || text.size() < 3) throw UsageError("bad monomial '" + text + "'");
    size_t used = 0;
    try {
      exponent = std::stoi(text.substr(2), &used);
    } catch (const std::exception&) {
      throw UsageError("bad exponent in '" + text + "'");
    }
    if (used != text.size() - 2) throw UsageError("bad exponent in '" + text + "'");
  }
  return Monomial(sign, exponent);
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string format_report_text(const InequalityReport& r, const std::string& title) {
  std::ostringstream os;
  os << title << ": " << r.lhs_id << ' ' << relation_symbol(r.relation) << ' ' << r.rhs_id << " on [" << r.lo
     << ", " << r.hi << "]";
  if (r.filter != IndexFilter::all) os << (r.filter == IndexFilter::even ? " (even n)" : " (odd n)");
  os << "\n  result: " << (r.vacuous ? "holds (vacuous)" : r.holds ? "holds" : "VIOLATED") << "\n";
  os << "  tiers: lhs";
  for (Tier t : r.lhs_sources) os << ' ' << tier_name(t);
  os << "; rhs";
  for (Tier t : r.rhs_sources) os << ' ' << tier_name(t);
  os << (r.confirmed ? " (confirmed)" : " (unconfirmed)") << "\n";
  if (r.threshold) os << "  threshold: " << *r.threshold << "\n";
  for (const auto& v : r.violations) os << "  violation n=" << v.n << ": " << v.lhs << " vs " << v.rhs << "\n";
  for (const auto& c : r.side_checks) os << "  check: " << c.description << (c.holds ? " ok" : " FAILED") << "\n";
  for (const auto& note : r.notes) os << "  note: " << note << "\n";
  return os.str();
}

std::string format_check_text(const CheckResult& r, const std::string& title) {
  std::ostringstream os;
  os << (r.passed ? "pass " : "FAIL ") << title;
  if (r.first_mismatch) {
    os << "  first mismatch at " << r.first_mismatch->exponent << ": " << r.first_mismatch->lhs << " vs "
       << r.first_mismatch->rhs;
  }
  if (!r.detail.empty() && r.detail != title) os << "  (" << r.detail << ")";
  return os.str() + "\n";
}

int cmd_expand(const std::string& family, const Common& c, std::string& text) {
  const FamilyId id = parse_family(family);
  const auto params = family_params(id, c.m);
  const auto s = build_series(id, params, c.order);
  std::ostringstream os;
  switch (c.format) {
    case Format::text:
      os << family << (c.m ? "(m=" + std::to_string(*c.m) + ")" : "") << " to order " << c.order << "\n";
      for (int n = 0; n <= c.order; ++n) os << std::setw(6) << n << "  " << s[n] << "\n";
      break;
    case Format::csv:
      os << "n,coefficient\n";
      for (int n = 0; n <= c.order; ++n) os << n << ',' << s[n] << "\n";
      break;
    case Format::json: {
      json coeffs = json::array();
      for (int n = 0; n <= c.order; ++n) coeffs.push_back(s[n].get_str());
      os << json_text({{"family", family}, {"params", c.m ? json{{"m", *c.m}} : json::object()},
                       {"order", c.order}, {"coefficients", coeffs}});
      break;
    }
  }
  text = os.str();
  return 0;
}

int cmd_oracle(const std::string& family, const Common& c, const OracleLimits& limits, std::string& text) {
  const FamilyId id = parse_family(family);
  const auto params = family_params(id, c.m);
  const auto series = build_series(id, params, c.max_n);
  const auto dp = family_oracle(id, params, std::min(c.max_n, limits.dp_cap), Tier::dp, limits);
  const auto en = family_oracle(id, params, std::min(c.max_n, limits.enum_cap), Tier::enumeration, limits);
  auto cell = [](const std::optional<std::vector<BigInt>>& v, int n) -> std::string {
    if (!v || static_cast<size_t>(n) >= v->size()) return "";
    return (*v)[static_cast<size_t>(n)].get_str();
  };
  std::optional<int> disagreement;
  json rows = json::array();
  std::ostringstream os;
  if (c.format == Format::csv) os << "n,series,dp,enum\n";
  if (c.format == Format::text) os << std::setw(6) << "n" << std::setw(24) << "series" << std::setw(24) << "dp" << std::setw(24) << "enum" << "\n";
  for (int n = 0; n <= c.max_n; ++n) {
    const std::string s = series[n].get_str(), d = cell(dp, n), e = cell(en, n);
    if (!disagreement && ((!d.empty() && d != s) || (!e.empty() && e != s))) disagreement = n;
    if (c.format == Format::csv) os << n << ',' << s << ',' << d << ',' << e << "\n";
    if (c.format == Format::text) os << std::setw(6) << n << std::setw(24) << s << std::setw(24) << d << std::setw(24) << e << "\n";
    rows.push_back({{"n", n}, {"series", s}, {"dp", d.empty() ? json(nullptr) : json(d)},
                    {"enum", e.empty() ? json(nullptr) : json(e)}});
  }
  if (c.format == Format::text) {
    os << (disagreement ? "tiers DISAGREE at n = " + std::to_string(*disagreement) : std::string("tiers agree"))
       << "\n";
  }
  if (c.format == Format::json) {
    os << json_text({{"family", family}, {"params", c.m ? json{{"m", *c.m}} : json::object()},
                     {"agree", !disagreement}, {"rows", rows}});
  }
  text = os.str();
  return disagreement ? 2 : 0;
}

int cmd_verify(const std::string& theorem, const Common& c, std::optional<int> from, const OracleLimits& limits,
               std::string& text) {
  const auto id = theorem_from_name(theorem);
  if (!id) throw UsageError("unknown theorem '" + theorem + "'");
  VerifyOptions options;
  options.series_order = c.order;
  options.limits = limits;
  options.range_lo = from;
  const auto start = std::chrono::steady_clock::now();
  const auto report = verify_theorem(make_theorem(*id, c.m), c.max_n, options);
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  switch (c.format) {
    case Format::text: text = format_report_text(report, theorem); break;
    case Format::csv: {
      std::ostringstream os;
      os << "n,lhs,rhs\n";
      for (const auto& v : report.violations) os << v.n << ',' << v.lhs << ',' << v.rhs << "\n";
      text = os.str();
      break;
    }
    case Format::json:
      text = json_text(make_record(theorem, *id == TheoremId::conj_3_2 ? "conjecture" : "theorem",
                                   c.m ? json{{"m", *c.m}} : json::object(), to_json(report), elapsed.count()));
      break;
  }
  return report.holds ? 0 : 1;
}

int cmd_identities(const std::string& name, const std::vector<std::string>& sets, int step, const Common& c,
                   std::string& text) {
  std::vector<IdentityCheck> checks;
  if (name.empty()) {
    if (!sets.empty()) throw UsageError("--set requires an identity name");
    checks = builtin_substitutions(c.order);
  } else {
    const auto id = identity_from_name(name);
    if (!id) throw UsageError("unknown identity '" + name + "'");
    IdentityCheck check{*id, {}, c.order, name};
    check.substitution.step = step;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--set expects name=value, got '" + s + "'");
      check.substitution.params.insert_or_assign(s.substr(0, eq), parse_monomial(s.substr(eq + 1)));
    }
    checks.push_back(std::move(check));
  }
  bool all = true;
  std::ostringstream os;
  json records = json::array();
  if (c.format == Format::csv) os << "identity,substitution,holds,verified_order,mismatch_exponent\n";
  for (const auto& check : checks) {
    const auto r = check_identity(check);
    all = all && r.passed;
    const std::string id(identity_name(check.id));
    switch (c.format) {
      case Format::text: os << format_check_text(r, check.label); break;
      case Format::csv:
        os << id << ',' << csv_escape(check.label) << ',' << (r.passed ? "true" : "false") << ','
           << r.verified_order << ',' << (r.first_mismatch ? std::to_string(r.first_mismatch->exponent) : "")
           << "\n";
        break;
      case Format::json: records.push_back(make_record(id, "identity", {{"substitution", check.label}}, to_json(r), 0)); break;
    }
  }
  if (c.format == Format::json) {
    for (auto& r : records) r.erase("elapsed_ms");
    os << json_text({{"order", c.order}, {"all_hold", all}, {"records", records}});
  }
  text = os.str();
  return all ? 0 : 1;
}

int cmd_scan(const Common& c, const OracleLimits& limits, std::string& text) {
  const int m = c.m.value_or(3);
  const auto rows = scan_residue_pairs(m, c.max_n, limits);
  std::ostringstream os;
  json out = json::array();
  if (c.format == Format::csv) os << "a,b,m,less,equal,greater,last_greater\n";
  if (c.format == Format::text) {
    os << "q_{a,b,m}(n) against q_{b,a,m}(n), 1 <= n <= " << c.max_n << " (observations only)\n";
  }
  for (const auto& r : rows) {
    const std::string last = r.last_greater ? std::to_string(*r.last_greater) : "";
    switch (c.format) {
      case Format::text:
        os << "  a=" << r.a << " b=" << r.b << ": less " << r.less << ", equal " << r.equal << ", greater "
           << r.greater << (r.last_greater ? ", last greater at n=" + last : "") << "\n";
        break;
      case Format::csv:
        os << r.a << ',' << r.b << ',' << r.m << ',' << r.less << ',' << r.equal << ',' << r.greater << ',' << last
           << "\n";
        break;
      case Format::json:
        out.push_back({{"a", r.a}, {"b", r.b}, {"m", r.m}, {"less", r.less}, {"equal", r.equal},
                       {"greater", r.greater},
                       {"last_greater", r.last_greater ? json(*r.last_greater) : json(nullptr)}});
        break;
    }
  }
  if (c.format == Format::json) os << json_text({{"m", m}, {"max_n", c.max_n}, {"observations", out}});
  text = os.str();
  return 0;
}

int cmd_report(bool all, const Common& c, bool format_given, const OracleLimits& limits, std::string& text) {
  if (!all) throw UsageError("report requires --all");
  if (c.m) throw UsageError("report takes no --m");
  const auto report = run_report_all({c.max_n, c.order, limits});
  if (format_given && c.format == Format::text) {
    std::ostringstream os;
    for (const auto& r : report.at("records")) {
      os << (r.at("holds").get<bool>() ? "holds    " : "VIOLATED ") << r.at("kind").get<std::string>() << ' '
         << r.at("id").get<std::string>();
      if (!r.at("params").empty()) os << ' ' << r.at("params").dump();
      os << "\n";
    }
    text = os.str();
  } else if (format_given && c.format == Format::csv) {
    std::ostringstream os;
    os << "id,kind,params,holds\n";
    for (const auto& r : report.at("records")) {
      os << csv_escape(r.at("id").get<std::string>()) << ',' << r.at("kind").get<std::string>() << ','
         << csv_escape(r.at("params").dump()) << ',' << (r.at("holds").get<bool>() ? "true" : "false") << "\n";
    }
    text = os.str();
  } else {
    text = json_text(report);
  }
  return report_exit_code(report);
}

std::string family_choices() {
  std::string out = "family id, one of:";
  for (const auto& f : list_families()) out += " " + std::string(f.name);
  return out;
}

std::string theorem_choices() {
  std::string out = "theorem id, one of:";
  for (TheoremId id : all_theorems()) out += " " + std::string(theorem_name(id));
  return out;
}

void add_common(CLI::App* app, Common& c, bool order, bool max_n) {
  if (order) app->add_option("--order", c.order, "truncation order")->check(CLI::NonNegativeNumber);
  if (max_n) app->add_option("--max-n", c.max_n, "largest n checked")->check(CLI::NonNegativeNumber);
  app->add_option("--m", c.m, "family or theorem parameter m");
  const std::map<std::string, Format> formats{{"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}};
  app->add_option("--format", c.format, "text, csv or json")->transform(CLI::CheckedTransformer(formats));
  app->add_option("--out", c.out_path, "write output to this file");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series and partition-oracle checks for parity bias inequalities", "pbias"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactName) + " " + kArtifactVersion);

  Common c;
  std::string target;
  std::optional<int> from;
  std::vector<std::string> sets;
  int step = 1;
  bool all = false;

  auto* expand = app.add_subcommand("expand", "print coefficients of a generating function");
  expand->add_option("family", target, family_choices())->required();
  add_common(expand, c, true, false);

  auto* oracle = app.add_subcommand("oracle", "series coefficients beside DP and enumeration counts");
  oracle->add_option("family", target, family_choices())->required();
  add_common(oracle, c, false, true);

  auto* verify = app.add_subcommand("verify", "check a theorem's inequality");
  verify->add_option("theorem", target, theorem_choices())->required();
  verify->add_option("--from", from, "start of the checked range (default: the claimed start)")
      ->check(CLI::NonNegativeNumber);
  add_common(verify, c, true, true);

  auto* identities = app.add_subcommand("identities", "check q-series identities");
  identities->add_option("identity", target, "identity id (default: every built-in substitution)");
  identities->add_option("--set", sets, "parameter as name=value, value one of 0, 1, -1, q^e, -q^e");
  identities->add_option("--step", step, "base replacement q -> q^step")->check(CLI::PositiveNumber);
  add_common(identities, c, true, false);

  auto* scan = app.add_subcommand("scan", "compare q_{a,b,m} with q_{b,a,m} for all residue pairs");
  add_common(scan, c, false, true);

  auto* report = app.add_subcommand("report", "run every check and write a JSON report");
  report->add_flag("--all", all, "include every check");
  add_common(report, c, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kArtifactName << ' ' << kArtifactVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string text;
  int code = 0;
  try {
    const auto limits = OracleLimits::from_environment();
    if (expand->parsed()) code = cmd_expand(target, c, text);
    else if (oracle->parsed()) code = cmd_oracle(target, c, limits, text);
    else if (verify->parsed()) code = cmd_verify(target, c, from, limits, text);
    else if (identities->parsed()) code = cmd_identities(target, sets, step, c, text);
    else if (scan->parsed()) code = cmd_scan(c, limits, text);
    else code = cmd_report(all, c, report->count("--format") > 0, limits, text);
  } catch (const TierDisagreement& e) {
    err << "tier disagreement: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (c.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write " << c.out_path << "\n";
      return 2;
    }
  }
  return code;
}

}  // namespace pbias
