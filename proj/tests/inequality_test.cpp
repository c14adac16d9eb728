#include <gtest/gtest.h>

#include "pbias/errors.hpp"
#include "pbias/inequality.hpp"

using namespace pbias;

namespace {

std::vector<BigInt> series_values(FamilyId id, int order, int m = 0) {
  const auto s = build_series(id, {m}, order);
  return {s.coeffs().begin(), s.coeffs().end()};
}

std::vector<int> violation_ns(const InequalityReport& r) {
  std::vector<int> out;
  for (const auto& v : r.violations) out.push_back(v.n);
  return out;
}

Partition P(std::vector<int> parts) { return Partition{std::move(parts)}; }

}  // namespace

TEST(Compare, EvenBiasAgainstOddBias) {
  const auto pe = series_values(FamilyId::pe, 8), po = series_values(FamilyId::po, 8);
  const auto r = compare(pe, po, Relation::gt, 2, 8);
  EXPECT_EQ(violation_ns(r), (std::vector<int>{3, 5, 7}));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.threshold, 8);
  const auto tail = compare(pe, po, Relation::gt, 8, 8);
  EXPECT_TRUE(tail.holds);
  EXPECT_EQ(tail.threshold, 8);
}

TEST(Compare, StrictRelationOnEqualSequences) {
  const auto x = series_values(FamilyId::b_seq, 10);
  EXPECT_EQ(compare(x, x, Relation::gt, 0, 10).violations.size(), 11u);
  EXPECT_TRUE(compare(x, x, Relation::ge, 0, 10).holds);
}

TEST(Compare, EmptyRangeIsVacuous) {
  const std::vector<BigInt> x(3);
  const auto r = compare(x, x, Relation::lt, 11, 10);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.vacuous);
}

TEST(Compare, CoverageError) {
  const std::vector<BigInt> x(5);
  EXPECT_THROW(compare(x, x, Relation::lt, 0, 5), ParameterError);
}

TEST(Compare, AntisymmetricUnderSwap) {
  const auto a = series_values(FamilyId::p01m, 40, 3), b = series_values(FamilyId::p10m, 40, 3);
  for (auto rel : {Relation::lt, Relation::gt, Relation::le, Relation::ge}) {
    const auto r1 = compare(a, b, rel, 0, 40);
    const auto r2 = compare(b, a, flipped(rel), 0, 40);
    EXPECT_EQ(r1.holds, r2.holds);
    EXPECT_EQ(r1.threshold, r2.threshold);
    ASSERT_EQ(r1.violations.size(), r2.violations.size());
    for (size_t i = 0; i < r1.violations.size(); ++i) {
      EXPECT_EQ(r1.violations[i].n, r2.violations[i].n);
      EXPECT_EQ(r1.violations[i].lhs, r2.violations[i].rhs);
    }
  }
}

TEST(Compare, ParityFilter) {
  const std::vector<BigInt> a{0, 1, 0, 1, 0}, b{0, 0, 0, 0, 0};
  EXPECT_TRUE(compare(a, b, Relation::gt, 1, 4, IndexFilter::odd).holds);
  EXPECT_FALSE(compare(a, b, Relation::gt, 1, 4, IndexFilter::even).holds);
}

TEST(Threshold, RecoversStartingPoints) {
  const auto pe = series_values(FamilyId::pe, 300), po = series_values(FamilyId::po, 300);
  const auto t = find_threshold(pe, po, Relation::gt, 300);
  EXPECT_EQ(t.threshold, 8);
  std::vector<int> ns;
  for (const auto& v : t.violations) ns.push_back(v.n);
  EXPECT_EQ(ns, (std::vector<int>{3, 5, 7}));

  const auto qe = series_values(FamilyId::qeu_ou, 200), qo = series_values(FamilyId::qou_eu, 200);
  EXPECT_EQ(find_threshold(qe, qo, Relation::gt, 200).threshold, 4);
  const auto pou = series_values(FamilyId::pou_eu, 200), peu = series_values(FamilyId::peu_ou, 200);
  EXPECT_EQ(find_threshold(pou, peu, Relation::gt, 200).threshold, 7);
}

TEST(Theorems, ClaimedStartingPoints) {
  EXPECT_EQ(make_theorem(TheoremId::thm_mm).claimed_range_lo, 8);
  EXPECT_EQ(make_theorem(TheoremId::thm_kim_new, 3).claimed_range_lo, 15);
  EXPECT_EQ(make_theorem(TheoremId::thm_peu).claimed_range_lo, 7);
  EXPECT_EQ(make_theorem(TheoremId::thm_qeu).claimed_range_lo, 4);
  EXPECT_EQ(make_theorem(TheoremId::conj_3_2).claimed_range_lo, 10);
  EXPECT_EQ(make_theorem(TheoremId::kimkim_original, 4).claimed_range_lo, 13);
  EXPECT_EQ(make_theorem(TheoremId::thm_reverse_1).claimed_range_lo, 8);
  EXPECT_EQ(make_theorem(TheoremId::thm_reverse_2).claimed_range_lo, 1);
  EXPECT_EQ(make_theorem(TheoremId::thm_reverse_3).claimed_range_lo, 9);
  EXPECT_THROW(make_theorem(TheoremId::thm_kim_new), ParameterError);
  EXPECT_THROW(make_theorem(TheoremId::thm_kim_new, 1), ParameterError);
  EXPECT_THROW(make_theorem(TheoremId::thm_mm, 2), ParameterError);
  for (auto id : all_theorems()) EXPECT_EQ(theorem_from_name(theorem_name(id)), id);
}

TEST(Theorems, MmHoldsWithDualTiers) {
  const auto r = verify_theorem(make_theorem(TheoremId::thm_mm), 120);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.confirmed);
  EXPECT_EQ(r.lo, 8);
  EXPECT_EQ(r.lhs_sources.size(), 3u);
}

TEST(Theorems, MmBelowClaimedStart) {
  VerifyOptions o;
  o.range_lo = 1;
  const auto r = verify_theorem(make_theorem(TheoremId::thm_mm), 6, o);
  EXPECT_EQ(violation_ns(r), (std::vector<int>{3, 5}));
}

TEST(Theorems, KimNewSideCheck) {
  const auto r = verify_theorem(make_theorem(TheoremId::thm_kim_new, 2), 60);
  EXPECT_TRUE(r.holds);
  ASSERT_EQ(r.side_checks.size(), 1u);
  EXPECT_TRUE(r.side_checks[0].holds);
}

TEST(Theorems, KimNewVacuousRange) {
  const auto r = verify_theorem(make_theorem(TheoremId::thm_kim_new, 2), 10);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.holds);
}

TEST(Theorems, ReverseTwoFromOne) {
  const auto r = verify_theorem(make_theorem(TheoremId::thm_reverse_2), 100);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.lo, 1);
  EXPECT_TRUE(r.confirmed);
}

TEST(Theorems, MinPartEvenHasTieAtSix) {
  // Parts >= 2, n = 6: (4,2) and (3,3) are the only candidates.
  const auto r = verify_theorem(make_theorem(TheoremId::thm_minpart_even, 2), 40);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().n, 6);
  EXPECT_EQ(r.violations.front().lhs, 1);
  EXPECT_EQ(r.violations.front().rhs, 1);
}

TEST(Theorems, UncoveredRangeIsRefused) {
  // Series order 20 and DP cap 30 leave n = 31..50 without any tier.
  VerifyOptions o;
  o.series_order = 20;
  o.limits.dp_cap = 30;
  EXPECT_THROW(verify_theorem(make_theorem(TheoremId::thm_mm), 50, o), CapExceeded);
}

TEST(FamilyOracle, TiersAgreeForEveryFamily) {
  for (const auto& f : list_families()) {
    std::vector<int> ms;
    switch (f.params) {
      case ParamKind::none: ms = {0}; break;
      case ParamKind::modulus: ms = {2, 5}; break;
      case ParamKind::min_part: ms = {1, 2, 3}; break;
      case ParamKind::min_part_odd: ms = {1, 3}; break;
      case ParamKind::min_part_even: ms = {2, 4}; break;
    }
    for (int m : ms) {
      OracleLimits limits;
      limits.enum_cap = 24;
      const auto r = verify_family_oracles(f.id, {m}, 80, limits);
      EXPECT_TRUE(r.passed) << f.name << " m=" << m << ": " << r.detail;
    }
  }
}

TEST(FamilyOracle, SeriesTierHasNoOracle) {
  EXPECT_FALSE(family_oracle(FamilyId::po, {}, 5, Tier::series));
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi_map(P({14}), 14), P({10}));
  EXPECT_EQ(phi_map(P({2, 2, 2, 2, 2, 2, 2}), 14), P({8}));
  EXPECT_EQ(phi_map(P({8, 6}), 14), P({6}));
  EXPECT_THROW(phi_map(P({2}), 2), DomainError);
  EXPECT_THROW(phi_map(P({7, 7}), 14), DomainError);
  EXPECT_THROW(phi_map(P({8, 4}), 14), DomainError);
}

TEST(Phi, ImageSizes) {
  for (const auto& half : enumerate(9, ConstraintSpec{})) {
    Partition p;
    for (int x : half.parts) p.parts.push_back(2 * x);
    const auto image = phi_map(p, 18);
    if (p.parts.size() == 1) {
      EXPECT_EQ(image.size(), 14);
    } else if (p.parts.front() == 2) {
      EXPECT_EQ(image.size(), 12);
    } else {
      EXPECT_EQ(image.size(), 18 - p.parts.front());
    }
  }
}

TEST(Phi, Injectivity) {
  EXPECT_TRUE(verify_phi_injective(14).passed);
  const auto small = verify_phi_injective(10);
  EXPECT_FALSE(small.passed);
  EXPECT_FALSE(small.detail.empty());
  EXPECT_THROW(verify_phi_injective(2), DomainError);
  EXPECT_THROW(verify_phi_injective(100), CapExceeded);
}

TEST(BSequence, Inequalities) {
  const auto [partial, window] = verify_b_inequalities(200);
  EXPECT_TRUE(partial.holds);
  EXPECT_TRUE(window.holds);
  const auto [p7, w7] = verify_b_inequalities(7);
  EXPECT_TRUE(p7.holds);
  EXPECT_TRUE(w7.holds);
}

TEST(ASequence, Facts) {
  const auto [pairs, sums] = verify_a_sequence(301);
  EXPECT_TRUE(pairs.passed);
  EXPECT_TRUE(sums.passed);
}

TEST(Relations, TransformChainHolds) {
  for (const auto& r : family_relations()) EXPECT_TRUE(check_relation(r, 80).passed) << r.label;
}

TEST(Scan, ObservationsCoverAllPairs) {
  const auto rows = scan_residue_pairs(4, 60);
  EXPECT_EQ(rows.size(), 6u);
  for (const auto& r : rows) EXPECT_EQ(r.less + r.equal + r.greater, 60);
  EXPECT_THROW(scan_residue_pairs(1, 10), ParameterError);
}
