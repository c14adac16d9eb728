#include "pbias/report.hpp"

#include <chrono>
#include <functional>

#include "pbias/errors.hpp"

namespace pbias {

using nlohmann::json;

namespace {

json tier_list(const std::vector<Tier>& tiers) {
  json out = json::array();
  for (Tier t : tiers) out.push_back(std::string(tier_name(t)));
  return out;
}

std::string filter_name(IndexFilter f) {
  switch (f) {
    case IndexFilter::all: return "all";
    case IndexFilter::even: return "even";
    case IndexFilter::odd: return "odd";
  }
  return "all";
}

json disagreement_body(const TierDisagreement& e) {
  return {{"holds", false}, {"tier_disagreement", true}, {"first_disagreeing_n", e.n()}, {"error", e.what()}};
}

class Collector {
 public:
  explicit Collector(json& records) : records_(records) {}

  void add(std::string id, std::string kind, json params, const std::function<json()>& body) {
    const auto start = std::chrono::steady_clock::now();
    json b;
    try {
      b = body();
    } catch (const TierDisagreement& e) {
      b = disagreement_body(e);
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    records_.push_back(make_record(std::move(id), std::move(kind), std::move(params), std::move(b), elapsed.count()));
  }

 private:
  json& records_;
};

json m_params(std::optional<int> m) { return m ? json{{"m", *m}} : json::object(); }

}  // namespace

json to_json(const InequalityReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"n", v.n}, {"lhs", v.lhs.get_str()}, {"rhs", v.rhs.get_str()}});
  json checks = json::array();
  for (const auto& c : r.side_checks) checks.push_back({{"description", c.description}, {"holds", c.holds}});
  return {
      {"lhs", r.lhs_id},
      {"rhs", r.rhs_id},
      {"relation", std::string(relation_symbol(r.relation))},
      {"range", {r.lo, r.hi}},
      {"filter", filter_name(r.filter)},
      {"holds", r.holds},
      {"vacuous", r.vacuous},
      {"violations", violations},
      {"threshold", r.threshold ? json(*r.threshold) : json(nullptr)},
      {"tiers", {{"lhs", tier_list(r.lhs_sources)}, {"rhs", tier_list(r.rhs_sources)}}},
      {"confirmed", r.confirmed},
      {"side_checks", checks},
      {"notes", r.notes},
  };
}

json to_json(const CheckResult& r) {
  json mismatch = nullptr;
  if (r.first_mismatch) {
    mismatch = {{"exponent", r.first_mismatch->exponent},
                {"lhs", r.first_mismatch->lhs.get_str()},
                {"rhs", r.first_mismatch->rhs.get_str()}};
  }
  return {{"holds", r.passed}, {"verified_order", r.verified_order}, {"first_mismatch", mismatch},
          {"detail", r.detail}};
}

json make_record(std::string id, std::string kind, json params, json body, double elapsed_ms) {
  json record = {{"id", std::move(id)}, {"kind", std::move(kind)}, {"params", std::move(params)}};
  for (auto& [key, value] : body.items()) record[key] = value;
  record["elapsed_ms"] = elapsed_ms;
  return record;
}

json run_report_all(const ReportConfig& config) {
  if (config.max_n < 0 || config.order < 0) throw ParameterError("max_n and order must be nonnegative");
  json records = json::array();
  Collector add(records);
  VerifyOptions options;
  options.series_order = config.order;
  options.limits = config.limits;

  for (TheoremId id : all_theorems()) {
    std::vector<std::optional<int>> ms;
    switch (id) {
      case TheoremId::thm_kim_new: for (int m = 2; m <= 6; ++m) ms.push_back(m); break;
      case TheoremId::thm_minpart_even:
      case TheoremId::thm_minpart_odd: for (int m = 1; m <= 5; ++m) ms.push_back(m); break;
      case TheoremId::kimkim_original: for (int m = 2; m <= 5; ++m) ms.push_back(m); break;
      default: ms.push_back(std::nullopt);
    }
    const std::string kind = id == TheoremId::conj_3_2 ? "conjecture" : "theorem";
    for (auto m : ms) {
      add.add(std::string(theorem_name(id)), kind, m_params(m),
              [&] { return to_json(verify_theorem(make_theorem(id, m), config.max_n, options)); });
    }
  }
  add.add("diff_2pe_3po_even_nonnegative", "conjecture", json::object(), [&] {
    return to_json(check_nonnegative(FamilyId::diff_2pe_3po, {}, config.order, IndexFilter::even));
  });

  for (const auto& check : builtin_substitutions(config.order)) {
    add.add(std::string(identity_name(check.id)), "identity", {{"substitution", check.label}},
            [&] { return to_json(check_identity(check)); });
  }
  for (const auto& relation : family_relations()) {
    add.add(relation.label, "relation", m_params(relation.params.m ? std::optional(relation.params.m) : std::nullopt),
            [&] { return to_json(check_relation(relation, config.order)); });
  }

  for (const auto& info : list_families()) {
    std::vector<int> ms;
    switch (info.params) {
      case ParamKind::none: ms = {0}; break;
      case ParamKind::modulus: ms = {2, 3, 4, 5, 6}; break;
      case ParamKind::min_part: ms = {1, 2, 3, 4, 5}; break;
      case ParamKind::min_part_odd: ms = {1, 3, 5}; break;
      case ParamKind::min_part_even: ms = {2, 4}; break;
    }
    for (int m : ms) {
      const FamilyParams params{m};
      if (!family_oracle(info.id, params, 0, Tier::dp, config.limits)) continue;
      add.add(std::string(info.name), "oracle", m_params(m ? std::optional(m) : std::nullopt), [&] {
        const auto r = verify_family_oracles(info.id, params, std::min(config.max_n, config.order), config.limits);
        json body = to_json(r);
        if (!r.passed) body["tier_disagreement"] = true;
        return body;
      });
    }
  }

  const int phi_hi = std::min(60, 2 * config.limits.enum_cap);
  for (int two_n = 14; two_n <= phi_hi; two_n += 2) {
    add.add("phi_injective", "injection", {{"two_n", two_n}},
            [&] { return to_json(verify_phi_injective(two_n, config.limits)); });
  }

  const int b_hi = config.max_n;
  add.add("b_partial_sum_inequality", "sequence", json::object(),
          [&] { return to_json(verify_b_inequalities(b_hi).first); });
  add.add("b_four_term_inequality", "sequence", json::object(),
          [&] { return to_json(verify_b_inequalities(b_hi).second); });
  add.add("a_even_odd_equal", "sequence", json::object(),
          [&] { return to_json(verify_a_sequence(config.order).first); });
  add.add("a_partial_sums", "sequence", json::object(),
          [&] { return to_json(verify_a_sequence(config.order).second); });

  bool all_hold = true;
  for (const auto& r : records) all_hold = all_hold && r.at("holds").get<bool>();
  return {
      {"artifact", kArtifactName},
      {"version", kArtifactVersion},
      {"config",
       {{"max_n", config.max_n},
        {"order", config.order},
        {"enum_cap", config.limits.enum_cap},
        {"dp_cap", config.limits.dp_cap}}},
      {"all_hold", all_hold},
      {"records", records},
  };
}

int report_exit_code(const json& report) {
  bool violated = false;
  for (const auto& r : report.at("records")) {
    if (r.value("tier_disagreement", false)) return 2;
    violated = violated || !r.at("holds").get<bool>();
  }
  return violated ? 1 : 0;
}

json without_timings(json report) {
  for (auto& r : report["records"]) r.erase("elapsed_ms");
  return report;
}

}  // namespace pbias
