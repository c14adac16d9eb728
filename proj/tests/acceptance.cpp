// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "pbias/errors.hpp"
#include "pbias/report.hpp"

using namespace pbias;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream why;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      why << (why.tellp() > 0 ? "; " : "") << what;
    }
  }
};

std::string first_violation(const InequalityReport& r) {
  if (r.violations.empty()) return "none";
  const auto& v = r.violations.front();
  return "n=" + std::to_string(v.n) + " (" + v.lhs.get_str() + " vs " + v.rhs.get_str() + ")";
}

std::vector<int> params_for(ParamKind kind) {
  switch (kind) {
    case ParamKind::none: return {0};
    case ParamKind::modulus: return {2, 3, 4, 5, 6};
    case ParamKind::min_part: return {1, 2, 3, 4, 5};
    case ParamKind::min_part_odd: return {1, 3, 5};
    case ParamKind::min_part_even: return {2, 4};
  }
  return {};
}

InequalityReport theorem(TheoremId id, std::optional<int> m, int max_n, int order = 200) {
  VerifyOptions o;
  o.series_order = order;
  return verify_theorem(make_theorem(id, m), max_n, o);
}

void c1(Outcome& o) {
  const auto start = Clock::now();
  const auto po = build_series(FamilyId::po, {}, 8), pe = build_series(FamilyId::pe, {}, 8);
  const FormalSeries po_expected({0, 0, 0, 1, 0, 1, 1, 1, 2}, 8), pe_expected({0, 0, 1, 0, 2, 0, 3, 1, 5}, 8);
  o.require(po == po_expected, "po expansion differs");
  o.require(pe == pe_expected, "pe expansion differs");
  const double t = seconds_since(start);
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
}

void c2(Outcome& o) {
  const auto start = Clock::now();
  for (const auto& r : family_relations()) {
    const auto res = check_relation(r, 200);
    o.require(res.passed, r.label + " fails at q^" +
                              (res.first_mismatch ? std::to_string(res.first_mismatch->exponent) : "?"));
  }
  const double t = seconds_since(start);
  o.require(t < 30.0, "took " + std::to_string(t) + " s");
}

void c3(Outcome& o) {
  int checked = 0;
  for (const auto& f : list_families()) {
    for (int m : params_for(f.params)) {
      const auto r = verify_family_oracles(f.id, {m}, 200);
      ++checked;
      o.require(r.passed, std::string(f.name) + " m=" + std::to_string(m) + ": " + r.detail);
    }
  }
  o.require(checked > 0, "no families checked");
}

void c4(Outcome& o) {
  const auto r = theorem(TheoremId::thm_mm, std::nullopt, 300);
  o.require(r.holds && r.lo == 8 && r.hi == 300, "violation " + first_violation(r));
  o.require(r.confirmed, "unconfirmed");
  VerifyOptions low;
  low.range_lo = 1;
  const auto below = verify_theorem(make_theorem(TheoremId::thm_mm), 7, low);
  std::vector<int> ns;
  for (const auto& v : below.violations) ns.push_back(v.n);
  o.require(ns == std::vector<int>{3, 5, 7}, "violations below 8 are not {3,5,7}");
}

void c5(Outcome& o) {
  for (int m = 2; m <= 6; ++m) {
    const auto r = theorem(TheoremId::thm_kim_new, m, 200);
    o.require(r.holds, "m=" + std::to_string(m) + " violation " + first_violation(r));
    o.require(r.confirmed, "m=" + std::to_string(m) + " unconfirmed");
    o.require(r.side_checks.size() == 1 && r.side_checks[0].holds, "m=" + std::to_string(m) + " coefficient at 4m");
  }
}

void c6(Outcome& o) {
  const auto r2 = theorem(TheoremId::thm_reverse_2, std::nullopt, 200);
  o.require(r2.holds && r2.lo == 1 && r2.confirmed, "inequality (2): " + first_violation(r2));
  const auto r3 = theorem(TheoremId::thm_reverse_3, std::nullopt, 200);
  o.require(r3.holds && r3.lo == 9 && r3.confirmed, "inequality (3): " + first_violation(r3));
  const auto r1 = theorem(TheoremId::thm_reverse_1, std::nullopt, 300);
  const auto mm = theorem(TheoremId::thm_mm, std::nullopt, 300);
  o.require(r1.holds && r1.lo == mm.lo && r1.violations == mm.violations, "inequality (1) differs from thm_mm");
}

void c7(Outcome& o) {
  for (int m = 2; m <= 5; ++m) {
    const auto r = theorem(TheoremId::kimkim_original, m, 150);
    o.require(r.holds && r.lo == m * m - m + 1, "m=" + std::to_string(m) + " violation " + first_violation(r));
    o.require(std::find(r.lhs_sources.begin(), r.lhs_sources.end(), Tier::dp) != r.lhs_sources.end(),
              "m=" + std::to_string(m) + " without DP tier");
  }
}

void c8(Outcome& o) {
  for (int m = 1; m <= 5; ++m) {
    const auto even = theorem(TheoremId::thm_minpart_even, m, 200);
    o.require(even.holds, "even n, m=" + std::to_string(m) + ": " + std::to_string(even.violations.size()) +
                              " violations, first " + first_violation(even));
    o.require(even.confirmed, "even n, m=" + std::to_string(m) + " unconfirmed");
    const auto odd = theorem(TheoremId::thm_minpart_odd, m, 199);
    o.require(odd.holds, "odd n, m=" + std::to_string(m) + ": " + std::to_string(odd.violations.size()) +
                             " violations, first " + first_violation(odd));
    o.require(odd.confirmed, "odd n, m=" + std::to_string(m) + " unconfirmed");
  }
}

void c9(Outcome& o) {
  const auto peu = theorem(TheoremId::thm_peu, std::nullopt, 300, 300);
  o.require(peu.holds && peu.confirmed, "p_ou^eu > p_eu^ou: " + first_violation(peu));
  const auto qeu = theorem(TheoremId::thm_qeu, std::nullopt, 300, 300);
  o.require(qeu.holds && qeu.confirmed, "q_ou^eu < q_eu^ou: " + first_violation(qeu));
  auto values = [](FamilyId id) {
    const auto s = build_series(id, {}, 300);
    return std::vector<BigInt>(s.coeffs().begin(), s.coeffs().end());
  };
  const auto tp = find_threshold(values(FamilyId::pou_eu), values(FamilyId::peu_ou), Relation::gt, 300);
  o.require(tp.threshold == 7, "p threshold is not 7");
  const auto tq = find_threshold(values(FamilyId::qou_eu), values(FamilyId::qeu_ou), Relation::lt, 300);
  o.require(tq.threshold == 4, "q threshold is not 4");
}

void c10(Outcome& o) {
  const auto [pairs, sums] = verify_a_sequence(301);
  o.require(pairs.passed, "a_{2n} != a_{2n+1}");
  o.require(sums.passed, "a_{2n} != partial sums of b");
  const auto [partial, window] = verify_b_inequalities(200);
  o.require(partial.holds && partial.lo == 7 && partial.hi == 200, "partial-sum inequality: " + first_violation(partial));
  o.require(window.holds && window.lo == 7 && window.hi == 200, "four-term inequality: " + first_violation(window));
}

void c11(Outcome& o) {
  for (int two_n = 14; two_n <= 60; two_n += 2) {
    const auto r = verify_phi_injective(two_n);
    o.require(r.passed, "2n=" + std::to_string(two_n) + ": " + r.detail);
  }
}

void c12(Outcome& o) {
  const auto checks = builtin_substitutions(200);
  const auto results = run_all_builtin_substitutions(200);
  o.require(results.size() == checks.size() && results.size() >= 9, "substitution list too short");
  for (size_t i = 0; i < results.size(); ++i) o.require(results[i].passed, checks[i].label);
}

void c13(Outcome& o) {
  const auto r = theorem(TheoremId::conj_3_2, std::nullopt, 300);
  o.require(r.holds && r.lo == 10 && r.confirmed, "3q_o < 2q_e: " + first_violation(r));
  const auto nonneg = check_nonnegative(FamilyId::diff_2pe_3po, {}, 300, IndexFilter::even);
  o.require(nonneg.passed, nonneg.detail);
}

void c14(Outcome& o) {
  const auto start = Clock::now();
  const auto report = run_report_all({200, 200, OracleLimits{}});
  const double t = seconds_since(start);
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double mb = static_cast<double>(usage.ru_maxrss) / 1024.0;
  o.require(t < 120.0, "report took " + std::to_string(t) + " s");
  o.require(mb < 2048.0, "peak memory " + std::to_string(mb) + " MB");
  o.require(report.at("records").size() >= 14, "fewer than 14 records");
  o.why << (o.why.tellp() > 0 ? "; " : "") << "report " << static_cast<int>(t * 1000) << " ms, peak "
        << static_cast<int>(mb) << " MB, " << report.at("records").size() << " records";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"series expansions of po and pe at order 8", c1},
      {"transform-chain identities to order 200", c2},
      {"series equals enumeration (n <= 40) and DP (n <= 200)", c3},
      {"q_o < q_e on [8, 300]; violations below 8 are {3,5,7}", c4},
      {"q_{0,1,m} > q_{1,0,m} on [4m+3, 200], m = 2..6; positive at 4m", c5},
      {"forbidden-part inequalities (1), (2), (3)", c6},
      {"p_{1,0,m} > p_{0,1,m} on [m^2-m+1, 150], m = 2..5", c7},
      {"minimum-part parity bias, m = 1..5", c8},
      {"separated-parity inequalities to 300, thresholds 7 and 4", c9},
      {"a/b sequence facts and inequalities", c10},
      {"phi injective for 14 <= 2n <= 60", c11},
      {"identity substitutions to order 200", c12},
      {"3q_o < 2q_e on [10, 300]; even coefficients of 2pe - 3po nonnegative", c13},
      {"full report within 2 minutes and 2 GB", c14},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.why << (o.why.tellp() > 0 ? "; " : "") << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ["
              << static_cast<int>(seconds_since(start) * 1000) << " ms]";
    if (o.why.tellp() > 0) std::cout << " -- " << o.why.str();
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - static_cast<size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
