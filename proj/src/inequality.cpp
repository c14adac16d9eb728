#include "pbias/inequality.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

#include "pbias/errors.hpp"

namespace pbias {

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::lt: return "<";
    case Relation::gt: return ">";
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
  }
  return "?";
}

Relation flipped(Relation r) {
  switch (r) {
    case Relation::lt: return Relation::gt;
    case Relation::gt: return Relation::lt;
    case Relation::le: return Relation::ge;
    case Relation::ge: return Relation::le;
  }
  return r;
}

bool relation_holds(const BigInt& lhs, Relation r, const BigInt& rhs) {
  switch (r) {
    case Relation::lt: return lhs < rhs;
    case Relation::gt: return lhs > rhs;
    case Relation::le: return lhs <= rhs;
    case Relation::ge: return lhs >= rhs;
  }
  return false;
}

std::string_view tier_name(Tier t) {
  switch (t) {
    case Tier::series: return "series";
    case Tier::dp: return "dp";
    case Tier::enumeration: return "enum";
  }
  return "?";
}

bool admits(IndexFilter f, int n) {
  switch (f) {
    case IndexFilter::all: return true;
    case IndexFilter::even: return n % 2 == 0;
    case IndexFilter::odd: return n % 2 == 1;
  }
  return false;
}

InequalityReport compare(std::span<const BigInt> lhs, std::span<const BigInt> rhs, Relation relation,
                         int lo, int hi, IndexFilter filter) {
  InequalityReport report;
  report.relation = relation;
  report.lo = lo;
  report.hi = hi;
  report.filter = filter;
  if (lo < 0) throw ParameterError("range must start at n >= 0");
  int admitted = 0;
  for (int n = lo; n <= hi; ++n) admitted += admits(filter, n) ? 1 : 0;
  if (admitted == 0) {
    report.vacuous = true;
    return report;
  }
  const auto needed = static_cast<size_t>(hi) + 1;
  if (lhs.size() < needed || rhs.size() < needed) {
    throw ParameterError("range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "] exceeds sequence coverage");
  }
  for (int n = lo; n <= hi; ++n) {
    if (!admits(filter, n)) continue;
    const auto i = static_cast<size_t>(n);
    if (!relation_holds(lhs[i], relation, rhs[i])) report.violations.push_back({n, lhs[i], rhs[i]});
  }
  report.holds = report.violations.empty();
  if (report.holds) {
    report.threshold = lo;
  } else {
    const int last = report.violations.back().n;
    int next = last + 1;
    while (next <= hi && !admits(filter, next)) ++next;
    if (next <= hi) report.threshold = last + 1;
  }
  return report;
}

ThresholdResult find_threshold(std::span<const BigInt> lhs, std::span<const BigInt> rhs,
                               Relation relation, int max_n) {
  const auto needed = static_cast<size_t>(max_n) + 1;
  if (max_n < 0 || lhs.size() < needed || rhs.size() < needed) {
    throw ParameterError("threshold scan exceeds sequence coverage");
  }
  int start = 0;
  while (start <= max_n && lhs[static_cast<size_t>(start)] == 0 && rhs[static_cast<size_t>(start)] == 0) {
    ++start;
  }
  ThresholdResult out;
  out.scan_start = start;
  if (start > max_n) return out;
  const auto report = compare(lhs, rhs, relation, start, max_n);
  out.threshold = report.threshold;
  out.violations = report.violations;
  return out;
}

namespace {

constexpr std::array<std::pair<TheoremId, std::string_view>, 11> kTheorems = {{
    {TheoremId::thm_reverse_1, "thm_reverse_1"},
    {TheoremId::thm_reverse_2, "thm_reverse_2"},
    {TheoremId::thm_reverse_3, "thm_reverse_3"},
    {TheoremId::thm_mm, "thm_mm"},
    {TheoremId::thm_kim_new, "thm_kim_new"},
    {TheoremId::thm_minpart_even, "thm_minpart_even"},
    {TheoremId::thm_minpart_odd, "thm_minpart_odd"},
    {TheoremId::thm_peu, "thm_peu"},
    {TheoremId::thm_qeu, "thm_qeu"},
    {TheoremId::conj_3_2, "conj_3_2"},
    {TheoremId::kimkim_original, "kimkim_original"},
}};

constexpr std::array kTheoremOrder = {
    TheoremId::thm_reverse_1, TheoremId::thm_reverse_2, TheoremId::thm_reverse_3,
    TheoremId::thm_mm,        TheoremId::thm_kim_new,   TheoremId::thm_minpart_even,
    TheoremId::thm_minpart_odd, TheoremId::thm_peu,     TheoremId::thm_qeu,
    TheoremId::conj_3_2,      TheoremId::kimkim_original,
};

std::vector<BigInt> combine(const std::vector<BigInt>& a, long fa, const std::vector<BigInt>& b, long fb) {
  std::vector<BigInt> out(std::min(a.size(), b.size()));
  for (size_t i = 0; i < out.size(); ++i) out[i] = fa * a[i] + fb * b[i];
  return out;
}

BiasTable bias_counts(int max_n, const ConstraintSpec& c, const BiasSpec& b, Tier tier,
                      const OracleLimits& limits) {
  if (tier == Tier::dp) return bias_table_dp(max_n, c, b, limits);
  BiasTable out;
  for (int n = 0; n <= max_n; ++n) {
    BigInt more_j = 0, more_k = 0, tied = 0;
    for (const auto& p : enumerate(n, c, limits)) {
      const auto r = residue_counts(p, b.m);
      const int d = r[static_cast<size_t>(b.j)] - r[static_cast<size_t>(b.k)];
      if (d > 0) ++more_j;
      else if (d < 0) ++more_k;
      else ++tied;
    }
    out.more_j.push_back(more_j);
    out.more_k.push_back(more_k);
    out.tied.push_back(tied);
  }
  return out;
}

std::vector<BigInt> parity_counts(int max_n, int m, ParityFamily which, Tier tier,
                                  const OracleLimits& limits) {
  if (tier == Tier::dp) return parity_family_table_dp(max_n, m, which, limits);
  std::vector<BigInt> out;
  for (int n = 0; n <= max_n; ++n) out.push_back(count_parity_family_enum(n, m, which, limits));
  return out;
}

std::vector<BigInt> separated_counts(int max_n, SeparationMode mode, bool non_unitary, Tier tier,
                                     const OracleLimits& limits) {
  if (tier == Tier::dp) return separated_table_dp(max_n, mode, non_unitary, limits);
  std::vector<BigInt> out;
  for (int n = 0; n <= max_n; ++n) out.push_back(count_separated_enum(n, mode, non_unitary, limits));
  return out;
}

std::vector<BigInt> even_part_counts(int max_n, Tier tier, const OracleLimits& limits) {
  ConstraintSpec c;
  for (int p = 1; p <= max_n; p += 2) c.forbidden_parts.insert(p);
  if (tier == Tier::dp) return count_table_dp(max_n, c, limits);
  std::vector<BigInt> out;
  for (int n = 0; n <= max_n; ++n) {
    out.emplace_back(static_cast<unsigned long>(enumerate(n, c, limits).size()));
  }
  return out;
}

ConstraintSpec non_unitary() {
  ConstraintSpec c;
  c.min_part = 2;
  return c;
}

// Length of the usable prefix of each tier, clamped to its cap.
int tier_reach(Tier tier, int max_n, const VerifyOptions& options) {
  switch (tier) {
    case Tier::series: return std::min(max_n, options.series_order);
    case Tier::dp: return std::min(max_n, options.limits.dp_cap);
    case Tier::enumeration: return std::min(max_n, options.limits.enum_cap);
  }
  return -1;
}

// Cross-checks every pair of tiers on their common prefix and keeps the
// longest sequence.
TieredSequence merge_tiers(const std::string& label, std::vector<std::pair<Tier, std::vector<BigInt>>> tiers,
                           int max_n) {
  TieredSequence out;
  for (size_t a = 0; a < tiers.size(); ++a) {
    for (size_t b = a + 1; b < tiers.size(); ++b) {
      const auto& x = tiers[a].second;
      const auto& y = tiers[b].second;
      const size_t common = std::min(x.size(), y.size());
      for (size_t n = 0; n < common; ++n) {
        if (x[n] != y[n]) {
          throw TierDisagreement(label + ": " + std::string(tier_name(tiers[a].first)) + " and " +
                                     std::string(tier_name(tiers[b].first)) + " disagree at n = " +
                                     std::to_string(n) + " (" + x[n].get_str() + " vs " +
                                     y[n].get_str() + ")",
                                 static_cast<int>(n));
        }
      }
    }
  }
  for (auto& [tier, values] : tiers) {
    out.tiers.push_back(tier);
    if (values.size() > out.values.size()) out.values = values;
  }
  if (out.values.size() < static_cast<size_t>(max_n) + 1) {
    throw CapExceeded(label + ": no tier covers n = " + std::to_string(max_n));
  }
  out.values.resize(static_cast<size_t>(max_n) + 1);
  return out;
}

std::vector<BigInt> series_values(FamilyId id, const FamilyParams& params, int order) {
  const auto s = build_series(id, params, order);
  return {s.coeffs().begin(), s.coeffs().end()};
}

TieredSequence family_side(FamilyId id, const FamilyParams& params, int max_n, const VerifyOptions& options) {
  std::vector<std::pair<Tier, std::vector<BigInt>>> tiers;
  tiers.emplace_back(Tier::series, series_values(id, params, tier_reach(Tier::series, max_n, options)));
  for (Tier t : {Tier::dp, Tier::enumeration}) {
    const int reach = tier_reach(t, max_n, options);
    if (reach < 0) continue;
    if (auto v = family_oracle(id, params, reach, t, options.limits)) tiers.emplace_back(t, std::move(*v));
  }
  std::string label(family_name(id));
  if (params.m > 0) label += "(m=" + std::to_string(params.m) + ")";
  return merge_tiers(label, std::move(tiers), max_n);
}

// more_j and more_k of a bias split, from the DP and enumeration tiers.
std::pair<TieredSequence, TieredSequence> bias_sides(const std::string& label, const ConstraintSpec& c,
                                                     const BiasSpec& b, int max_n,
                                                     const VerifyOptions& options) {
  std::vector<std::pair<Tier, std::vector<BigInt>>> js, ks;
  for (Tier t : {Tier::dp, Tier::enumeration}) {
    const int reach = tier_reach(t, max_n, options);
    auto table = bias_counts(reach, c, b, t, options.limits);
    js.emplace_back(t, std::move(table.more_j));
    ks.emplace_back(t, std::move(table.more_k));
  }
  return {merge_tiers(label + " more j", std::move(js), max_n),
          merge_tiers(label + " more k", std::move(ks), max_n)};
}

void scale(TieredSequence& s, long factor) {
  for (auto& v : s.values) v *= factor;
}

std::string with_m(std::string_view base, int m) {
  return std::string(base) + "(m=" + std::to_string(m) + ")";
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
  for (const auto& [key, name] : kTheorems) {
    if (key == id) return name;
  }
  return "unknown";
}

std::optional<TheoremId> theorem_from_name(std::string_view name) {
  for (const auto& [key, value] : kTheorems) {
    if (value == name) return key;
  }
  return std::nullopt;
}

std::span<const TheoremId> all_theorems() { return kTheoremOrder; }

bool theorem_takes_m(TheoremId id) {
  return id == TheoremId::thm_kim_new || id == TheoremId::thm_minpart_even ||
         id == TheoremId::thm_minpart_odd || id == TheoremId::kimkim_original;
}

TheoremSpec make_theorem(TheoremId id, std::optional<int> m) {
  if (theorem_takes_m(id) && !m) {
    throw ParameterError(std::string(theorem_name(id)) + " requires --m");
  }
  if (!theorem_takes_m(id) && m) {
    throw ParameterError(std::string(theorem_name(id)) + " takes no m");
  }
  const int mm = m.value_or(0);
  switch (id) {
    case TheoremId::thm_reverse_1: return {id, m, 8};
    case TheoremId::thm_reverse_2: return {id, m, 1};
    case TheoremId::thm_reverse_3: return {id, m, 9};
    case TheoremId::thm_mm: return {id, m, 8};
    case TheoremId::thm_kim_new:
      if (mm < 2) throw ParameterError("thm_kim_new requires m >= 2");
      return {id, m, 4 * mm + 3};
    case TheoremId::thm_minpart_even:
      if (mm < 1) throw ParameterError("thm_minpart_even requires m >= 1");
      return {id, m, 2 * mm};
    case TheoremId::thm_minpart_odd:
      if (mm < 1) throw ParameterError("thm_minpart_odd requires m >= 1");
      return {id, m, mm};
    case TheoremId::thm_peu: return {id, m, 7};
    case TheoremId::thm_qeu: return {id, m, 4};
    case TheoremId::conj_3_2: return {id, m, 10};
    case TheoremId::kimkim_original:
      if (mm < 2) throw ParameterError("kimkim_original requires m >= 2");
      return {id, m, mm * mm - mm + 1};
  }
  throw ParameterError("unknown theorem");
}

InequalityReport verify_theorem(const TheoremSpec& theorem, int max_n, const VerifyOptions& options) {
  if (max_n < 0) throw ParameterError("max_n must be nonnegative");
  const int m = theorem.m.value_or(0);
  TieredSequence lhs, rhs;
  std::string lhs_id, rhs_id;
  Relation relation = Relation::gt;
  IndexFilter filter = IndexFilter::all;
  std::vector<SideCheck> side_checks;
  std::vector<std::string> notes;

  switch (theorem.id) {
    case TheoremId::thm_mm:
    case TheoremId::thm_reverse_1:
    case TheoremId::conj_3_2: {
      lhs = family_side(FamilyId::po, {}, max_n, options);
      rhs = family_side(FamilyId::pe, {}, max_n, options);
      relation = Relation::lt;
      lhs_id = "q_o";
      rhs_id = "q_e";
      if (theorem.id == TheoremId::thm_reverse_1) {
        lhs_id = "p_o^{1}";
        rhs_id = "p_e^{1}";
      }
      if (theorem.id == TheoremId::conj_3_2) {
        scale(lhs, 3);
        scale(rhs, 2);
        lhs_id = "3 q_o";
        rhs_id = "2 q_e";
      }
      break;
    }
    case TheoremId::thm_kim_new: {
      lhs = family_side(FamilyId::p01m, {m}, max_n, options);
      rhs = family_side(FamilyId::p10m, {m}, max_n, options);
      lhs_id = with_m("q_{0,1,m}", m);
      rhs_id = with_m("q_{1,0,m}", m);
      const int at = 4 * m;
      if (at <= max_n) {
        const BigInt diff = lhs.values[static_cast<size_t>(at)] - rhs.values[static_cast<size_t>(at)];
        side_checks.push_back({"difference at n = 4m = " + std::to_string(at) + " is " + diff.get_str() +
                                   " (must be positive)",
                               diff > 0});
      }
      for (int n = at + 1; n <= std::min(at + 2, max_n); ++n) {
        const BigInt diff = lhs.values[static_cast<size_t>(n)] - rhs.values[static_cast<size_t>(n)];
        notes.push_back("difference at n = " + std::to_string(n) + " is " + diff.get_str() +
                        " (not asserted)");
      }
      break;
    }
    case TheoremId::thm_reverse_2:
    case TheoremId::thm_reverse_3:
    case TheoremId::kimkim_original: {
      ConstraintSpec c;
      BiasSpec b{1, 0, 2};
      std::string label;
      if (theorem.id == TheoremId::thm_reverse_2) {
        c.forbidden_parts = {2};
        label = "{2}";
      } else if (theorem.id == TheoremId::thm_reverse_3) {
        c.forbidden_parts = {1, 2};
        label = "{1,2}";
      } else {
        b.m = m;
        label = "m=" + std::to_string(m);
      }
      auto [more_j, more_k] = bias_sides(std::string(theorem_name(theorem.id)), c, b, max_n, options);
      lhs = std::move(more_j);
      rhs = std::move(more_k);
      if (theorem.id == TheoremId::kimkim_original) {
        lhs_id = with_m("p_{1,0,m}", m);
        rhs_id = with_m("p_{0,1,m}", m);
      } else {
        lhs_id = "p_o^" + label;
        rhs_id = "p_e^" + label;
      }
      break;
    }
    case TheoremId::thm_minpart_even:
    case TheoremId::thm_minpart_odd: {
      const bool even_n = theorem.id == TheoremId::thm_minpart_even;
      const FamilyId e_id = even_n ? FamilyId::eme : FamilyId::emo;
      const FamilyId o_id = even_n ? FamilyId::ome : FamilyId::omo;
      auto e_side = family_side(e_id, {m}, max_n, options);
      auto o_side = family_side(o_id, {m}, max_n, options);
      const std::string e_name = with_m(even_n ? "E_me" : "E_mo", m);
      const std::string o_name = with_m(even_n ? "O_me" : "O_mo", m);
      filter = even_n ? IndexFilter::even : IndexFilter::odd;
      if (m % 2 == 1) {
        lhs = std::move(o_side);
        rhs = std::move(e_side);
        lhs_id = o_name;
        rhs_id = e_name;
      } else {
        lhs = std::move(e_side);
        rhs = std::move(o_side);
        lhs_id = e_name;
        rhs_id = o_name;
      }
      break;
    }
    case TheoremId::thm_peu: {
      lhs = family_side(FamilyId::pou_eu, {}, max_n, options);
      rhs = family_side(FamilyId::peu_ou, {}, max_n, options);
      lhs_id = "p_ou^eu";
      rhs_id = "p_eu^ou";
      break;
    }
    case TheoremId::thm_qeu: {
      lhs = family_side(FamilyId::qou_eu, {}, max_n, options);
      rhs = family_side(FamilyId::qeu_ou, {}, max_n, options);
      relation = Relation::lt;
      lhs_id = "q_ou^eu";
      rhs_id = "q_eu^ou";
      break;
    }
  }

  int lo = options.range_lo.value_or(theorem.claimed_range_lo);
  if (options.range_lo && lo < theorem.claimed_range_lo) {
    // Below the claimed start, indices where both classes are empty carry no claim.
    int support = 0;
    while (support <= max_n && lhs.values[static_cast<size_t>(support)] == 0 &&
           rhs.values[static_cast<size_t>(support)] == 0) {
      ++support;
    }
    if (support > lo) {
      notes.push_back("range start moved from " + std::to_string(lo) + " to " + std::to_string(support) +
                      " (both sides zero before)");
      lo = support;
    }
  }
  InequalityReport report = compare(lhs.values, rhs.values, relation, lo, max_n, filter);
  report.lhs_id = std::move(lhs_id);
  report.rhs_id = std::move(rhs_id);
  report.lhs_sources = lhs.tiers;
  report.rhs_sources = rhs.tiers;
  report.confirmed = lhs.tiers.size() >= 2 && rhs.tiers.size() >= 2;
  report.side_checks = std::move(side_checks);
  for (const auto& check : report.side_checks) report.holds = report.holds && check.holds;

  // Empirical starting point over admitted n, for the record.
  std::vector<BigInt> l, r;
  for (int n = 0; n <= max_n; ++n) {
    const bool keep = admits(filter, n);
    l.push_back(keep ? lhs.values[static_cast<size_t>(n)] : BigInt(0));
    r.push_back(keep ? rhs.values[static_cast<size_t>(n)] : BigInt(0));
  }
  if (filter == IndexFilter::all) {
    const auto scan = find_threshold(l, r, relation, max_n);
    if (scan.threshold) {
      notes.push_back("observed threshold " + std::to_string(*scan.threshold) + " (scan from n = " +
                      std::to_string(scan.scan_start) + ")");
    }
  } else {
    const auto full = compare(l, r, relation, 0, max_n, filter);
    if (full.threshold) notes.push_back("observed threshold " + std::to_string(*full.threshold));
  }
  if (!report.confirmed) notes.push_back("unconfirmed: fewer than two tiers on a side");
  report.notes = std::move(notes);
  return report;
}

std::optional<std::vector<BigInt>> family_oracle(FamilyId id, const FamilyParams& params, int max_n,
                                                 Tier tier, const OracleLimits& limits) {
  validate_params(id, params);
  if (tier == Tier::series) return std::nullopt;
  const int m = params.m;
  auto parity = [&](ParityFamily which) { return parity_counts(max_n, m, which, tier, limits); };
  auto separated = [&](SeparationMode mode, bool nu) {
    return separated_counts(max_n, mode, nu, tier, limits);
  };
  switch (id) {
    case FamilyId::po:
    case FamilyId::po_transformed:
      return bias_counts(max_n, non_unitary(), {1, 0, 2}, tier, limits).more_j;
    case FamilyId::pe:
    case FamilyId::pe_transformed:
      return bias_counts(max_n, non_unitary(), {1, 0, 2}, tier, limits).more_k;
    case FamilyId::diff_pe_po: {
      auto t = bias_counts(max_n, non_unitary(), {1, 0, 2}, tier, limits);
      return combine(t.more_k, 1, t.more_j, -1);
    }
    case FamilyId::diff_2pe_3po: {
      auto t = bias_counts(max_n, non_unitary(), {1, 0, 2}, tier, limits);
      return combine(t.more_k, 2, t.more_j, -3);
    }
    case FamilyId::p10m:
    case FamilyId::p10m_transformed:
      return bias_counts(max_n, non_unitary(), {1, 0, m}, tier, limits).more_j;
    case FamilyId::p01m:
    case FamilyId::p01m_transformed:
      return bias_counts(max_n, non_unitary(), {1, 0, m}, tier, limits).more_k;
    case FamilyId::eme: return parity(ParityFamily::E_me);
    case FamilyId::ome: return parity(ParityFamily::O_me);
    case FamilyId::emo: return parity(ParityFamily::E_mo);
    case FamilyId::omo: return parity(ParityFamily::O_mo);
    case FamilyId::diff_ome_eme: return combine(parity(ParityFamily::O_me), 1, parity(ParityFamily::E_me), -1);
    case FamilyId::diff_eme_ome: return combine(parity(ParityFamily::E_me), 1, parity(ParityFamily::O_me), -1);
    case FamilyId::peu_ou:
    case FamilyId::a_seq: return separated(SeparationMode::even_below_odd, false);
    case FamilyId::pou_eu: return separated(SeparationMode::odd_below_even, false);
    case FamilyId::qeu_ou: return separated(SeparationMode::even_below_odd, true);
    case FamilyId::qou_eu:
    case FamilyId::qou_eu_sumform: return separated(SeparationMode::odd_below_even, true);
    case FamilyId::diff_qeu_qou:
      return combine(separated(SeparationMode::even_below_odd, true), 1,
                     separated(SeparationMode::odd_below_even, true), -1);
    case FamilyId::diff_pou_peu:
      return combine(separated(SeparationMode::odd_below_even, false), 1,
                     separated(SeparationMode::even_below_odd, false), -1);
    case FamilyId::b_seq: return even_part_counts(max_n, tier, limits);
  }
  return std::nullopt;
}

Partition phi_map(const Partition& p, int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw DomainError("phi is defined on partitions of a positive even number");
  if (p.size() != two_n) throw DomainError("partition does not sum to " + std::to_string(two_n));
  for (size_t i = 0; i < p.parts.size(); ++i) {
    if (p.parts[i] % 2 != 0) throw DomainError("phi requires even parts");
    if (i > 0 && p.parts[i] > p.parts[i - 1]) throw DomainError("parts must be non-increasing");
  }
  const bool all_twos = std::all_of(p.parts.begin(), p.parts.end(), [](int x) { return x == 2; });
  if (all_twos) {
    if (two_n - 6 <= 0) throw DomainError("(2,...,2) has no image: 2n - 6 <= 0");
    return Partition{{two_n - 6}};
  }
  if (p.parts.size() == 1) {
    if (two_n - 4 <= 0) throw DomainError("(2n) has no image: 2n - 4 <= 0");
    return Partition{{two_n - 4}};
  }
  return Partition{{p.parts.begin() + 1, p.parts.end()}};
}

CheckResult verify_phi_injective(int two_n, const OracleLimits& limits) {
  if (two_n < 2 || two_n % 2 != 0) throw DomainError("phi is defined on partitions of a positive even number");
  if (two_n > 2 * limits.enum_cap) {
    throw CapExceeded("2n = " + std::to_string(two_n) + " exceeds twice the enumeration cap");
  }
  const int n = two_n / 2;
  CheckResult result;
  result.verified_order = two_n;
  std::map<Partition, Partition> preimage;
  for (const auto& half : enumerate(n, ConstraintSpec{}, limits)) {
    Partition p;
    for (int part : half.parts) p.parts.push_back(2 * part);
    const Partition image = phi_map(p, two_n);
    const int size = image.size();
    const auto describe = [](const Partition& q) {
      std::string s = "(";
      for (size_t i = 0; i < q.parts.size(); ++i) s += (i ? "," : "") + std::to_string(q.parts[i]);
      return s + ")";
    };
    if (size < 2 || size > two_n - 4) {
      result.passed = false;
      result.first_mismatch = Mismatch{size, 1, 0};
      result.detail = describe(p) + " maps to " + describe(image) + ", outside sizes 2..2n-4";
      return result;
    }
    auto [it, inserted] = preimage.emplace(image, p);
    if (!inserted) {
      result.passed = false;
      result.first_mismatch = Mismatch{size, 2, 1};
      result.detail = describe(it->second) + " and " + describe(p) + " both map to " + describe(image);
      return result;
    }
  }
  result.detail = std::to_string(preimage.size()) + " distinct images";
  return result;
}

std::pair<InequalityReport, InequalityReport> verify_b_inequalities(int max_n) {
  if (max_n < 0) throw ParameterError("max_n must be nonnegative");
  const auto b = build_series(FamilyId::b_seq, {}, 2 * max_n);
  auto b2 = [&](int i) -> BigInt { return i < 0 ? BigInt(0) : b[2 * i]; };
  std::vector<BigInt> partial(static_cast<size_t>(max_n) + 1), window(partial.size()), target(partial.size());
  BigInt running = 0;  // sum_{i=0}^{n-2} b_{2i}
  for (int n = 0; n <= max_n; ++n) {
    if (n >= 2) running += b2(n - 2);
    partial[static_cast<size_t>(n)] = running;
    window[static_cast<size_t>(n)] = b2(n - 2) + b2(n - 3) + b2(n - 4) + b2(n - 5);
    target[static_cast<size_t>(n)] = b2(n);
  }
  auto first = compare(partial, target, Relation::gt, 7, max_n);
  first.lhs_id = "sum_{i=0}^{n-2} b_{2i}";
  first.rhs_id = "b_{2n}";
  auto second = compare(window, target, Relation::gt, 7, max_n);
  second.lhs_id = "b_{2n-4}+b_{2n-6}+b_{2n-8}+b_{2n-10}";
  second.rhs_id = "b_{2n}";
  for (auto* r : {&first, &second}) {
    r->lhs_sources = {Tier::series};
    r->rhs_sources = {Tier::series};
  }
  return {std::move(first), std::move(second)};
}

std::vector<ScanObservation> scan_residue_pairs(int m, int max_n, const OracleLimits& limits) {
  if (m < 2) throw ParameterError("scan requires m >= 2");
  std::vector<ScanObservation> out;
  for (int a = 1; a < m; ++a) {
    for (int b = a + 1; b <= m; ++b) {
      const auto table = bias_table_dp(max_n, non_unitary(), {a % m, b % m, m}, limits);
      ScanObservation obs{a, b, m, 0, 0, 0, std::nullopt};
      for (int n = 1; n <= max_n; ++n) {
        const auto& x = table.more_j[static_cast<size_t>(n)];
        const auto& y = table.more_k[static_cast<size_t>(n)];
        if (x < y) ++obs.less;
        else if (x == y) ++obs.equal;
        else {
          ++obs.greater;
          obs.last_greater = n;
        }
      }
      out.push_back(obs);
    }
  }
  return out;
}

}  // namespace pbias

namespace pbias {

CheckResult verify_family_oracles(FamilyId id, const FamilyParams& params, int max_n,
                                  const OracleLimits& limits) {
  if (max_n < 0) throw ParameterError("max_n must be nonnegative");
  const auto series = build_series(id, params, max_n);
  CheckResult result;
  std::string tiers = "series";
  for (Tier t : {Tier::dp, Tier::enumeration}) {
    const int reach = std::min(max_n, t == Tier::dp ? limits.dp_cap : limits.enum_cap);
    if (reach < 0) continue;
    const auto values = family_oracle(id, params, reach, t, limits);
    if (!values) continue;
    tiers += ", " + std::string(tier_name(t)) + " to " + std::to_string(reach);
    for (int n = 0; n <= reach; ++n) {
      const auto& v = (*values)[static_cast<size_t>(n)];
      if (series[n] != v) {
        result.passed = false;
        result.first_mismatch = Mismatch{n, series[n], v};
        result.detail = "series and " + std::string(tier_name(t)) + " disagree at n = " + std::to_string(n);
        return result;
      }
    }
    result.verified_order = std::max(result.verified_order, reach);
  }
  result.detail = tiers;
  return result;
}

std::vector<SeriesRelation> family_relations() {
  using F = FamilyId;
  std::vector<SeriesRelation> out = {
      {"po = po_transformed", {}, {{1, F::po}}, {{1, F::po_transformed}}},
      {"pe = pe_transformed", {}, {{1, F::pe}}, {{1, F::pe_transformed}}},
      {"pe - po = diff_pe_po", {}, {{1, F::pe}, {-1, F::po}}, {{1, F::diff_pe_po}}},
      {"2pe - 3po = diff_2pe_3po", {}, {{2, F::pe}, {-3, F::po}}, {{1, F::diff_2pe_3po}}},
  };
  for (int m = 2; m <= 6; ++m) {
    const std::string tag = " (m=" + std::to_string(m) + ")";
    out.push_back({"p10m = p10m_transformed" + tag, {m}, {{1, F::p10m}}, {{1, F::p10m_transformed}}});
    out.push_back({"p01m = p01m_transformed" + tag, {m}, {{1, F::p01m}}, {{1, F::p01m_transformed}}});
  }
  for (int m = 1; m <= 5; ++m) {
    const std::string tag = " (m=" + std::to_string(m) + ")";
    if (m % 2 == 1) {
      out.push_back({"ome - eme = diff_ome_eme" + tag, {m}, {{1, F::ome}, {-1, F::eme}}, {{1, F::diff_ome_eme}}});
    } else {
      out.push_back({"eme - ome = diff_eme_ome" + tag, {m}, {{1, F::eme}, {-1, F::ome}}, {{1, F::diff_eme_ome}}});
    }
  }
  out.push_back({"qou_eu = qou_eu_sumform", {}, {{1, F::qou_eu}}, {{1, F::qou_eu_sumform}}});
  out.push_back({"qeu_ou - qou_eu = diff_qeu_qou", {}, {{1, F::qeu_ou}, {-1, F::qou_eu}}, {{1, F::diff_qeu_qou}}});
  out.push_back({"pou_eu - peu_ou = diff_pou_peu", {}, {{1, F::pou_eu}, {-1, F::peu_ou}}, {{1, F::diff_pou_peu}}});
  return out;
}

CheckResult check_relation(const SeriesRelation& relation, int order) {
  auto side = [&](const std::vector<std::pair<long, FamilyId>>& terms) {
    FormalSeries sum(order);
    for (const auto& [factor, id] : terms) sum += build_series(id, relation.params, order) * BigInt(factor);
    return sum;
  };
  return compare_sides(side(relation.lhs), side(relation.rhs));
}

CheckResult check_nonnegative(FamilyId id, const FamilyParams& params, int order, IndexFilter filter) {
  const auto s = build_series(id, params, order);
  CheckResult result;
  result.verified_order = order;
  for (int n = 0; n <= order; ++n) {
    if (admits(filter, n) && s[n] < 0) {
      result.passed = false;
      result.first_mismatch = Mismatch{n, s[n], 0};
      result.detail = "negative coefficient at q^" + std::to_string(n);
      return result;
    }
  }
  return result;
}

std::pair<CheckResult, CheckResult> verify_a_sequence(int order) {
  const auto a = build_series(FamilyId::a_seq, {}, order);
  const auto b = build_series(FamilyId::b_seq, {}, order);
  CheckResult equal_pairs, partial_sums;
  equal_pairs.verified_order = partial_sums.verified_order = order;
  BigInt running = 0;
  for (int n = 0; 2 * n <= order; ++n) {
    running += b[2 * n];
    if (partial_sums.passed && a[2 * n] != running) {
      partial_sums.passed = false;
      partial_sums.first_mismatch = Mismatch{2 * n, a[2 * n], running};
    }
    if (2 * n + 1 <= order && equal_pairs.passed && a[2 * n] != a[2 * n + 1]) {
      equal_pairs.passed = false;
      equal_pairs.first_mismatch = Mismatch{2 * n + 1, a[2 * n], a[2 * n + 1]};
    }
  }
  equal_pairs.detail = "a_{2n} = a_{2n+1}";
  partial_sums.detail = "a_{2n} = sum_{i<=n} b_{2i}";
  return {equal_pairs, partial_sums};
}

}  // namespace pbias
