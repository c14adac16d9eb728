#pragma once

// Coefficient-wise inequality checks between integer sequences, the theorem
// table with dual-tier evaluation, and the combinatorial pieces used for the
// separated-parity theorems (the injection on even-part partitions and the
// partial-sum inequalities between even-part partition counts).

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbias/genfunc.hpp"
#include "pbias/identities.hpp"
#include "pbias/partition_oracle.hpp"
#include "pbias/series.hpp"

namespace pbias {

enum class Relation { lt, gt, le, ge };
enum class Tier { series, dp, enumeration };
enum class IndexFilter { all, even, odd };

std::string_view relation_symbol(Relation r);
Relation flipped(Relation r);
bool relation_holds(const BigInt& lhs, Relation r, const BigInt& rhs);
std::string_view tier_name(Tier t);
bool admits(IndexFilter f, int n);

struct Violation {
  int n;
  BigInt lhs;
  BigInt rhs;

  bool operator==(const Violation&) const = default;
};

struct SideCheck {
  std::string description;
  bool holds;
};

struct InequalityReport {
  std::string lhs_id;
  std::string rhs_id;
  Relation relation = Relation::lt;
  int lo = 0;
  int hi = 0;
  IndexFilter filter = IndexFilter::all;
  bool holds = true;
  bool vacuous = false;
  std::vector<Violation> violations;
  /// Smallest t with the relation holding on every admitted n in [t, hi].
  std::optional<int> threshold;
  std::vector<Tier> lhs_sources;
  std::vector<Tier> rhs_sources;
  /// At least two independent tiers agreed wherever they overlapped.
  bool confirmed = false;
  std::vector<SideCheck> side_checks;
  std::vector<std::string> notes;
};

/// Compares lhs[n] `relation` rhs[n] for admitted n in [lo, hi].  An empty
/// range is vacuous and holds.  Throws ParameterError if a sequence does not
/// cover the range.
InequalityReport compare(std::span<const BigInt> lhs, std::span<const BigInt> rhs, Relation relation,
                         int lo, int hi, IndexFilter filter = IndexFilter::all);

struct ThresholdResult {
  std::optional<int> threshold;
  std::vector<Violation> violations;  // all below the threshold
  int scan_start = 0;
};

/// Scans n in [s, max_n], where s is the first index at which either
/// sequence is nonzero (below it both classes are empty).
ThresholdResult find_threshold(std::span<const BigInt> lhs, std::span<const BigInt> rhs,
                               Relation relation, int max_n);

enum class TheoremId {
  thm_reverse_1,
  thm_reverse_2,
  thm_reverse_3,
  thm_mm,
  thm_kim_new,
  thm_minpart_even,
  thm_minpart_odd,
  thm_peu,
  thm_qeu,
  conj_3_2,
  kimkim_original,
};

struct TheoremSpec {
  TheoremId id;
  std::optional<int> m;
  int claimed_range_lo;
};

std::string_view theorem_name(TheoremId id);
std::optional<TheoremId> theorem_from_name(std::string_view name);
std::span<const TheoremId> all_theorems();
bool theorem_takes_m(TheoremId id);

/// Theorem with its claimed starting point.  Throws ParameterError when m is
/// missing or out of range for the theorem.
TheoremSpec make_theorem(TheoremId id, std::optional<int> m = std::nullopt);

struct VerifyOptions {
  int series_order = 200;
  OracleLimits limits;
  /// Overrides the claimed starting point of the checked range.  An override
  /// below the claimed start skips leading n where both sides are zero.
  std::optional<int> range_lo;
};

/// Evaluates both sides with every tier available for the theorem, throws
/// TierDisagreement on the first n where two tiers differ, and compares over
/// [claimed_range_lo, max_n].
InequalityReport verify_theorem(const TheoremSpec& theorem, int max_n, const VerifyOptions& options = {});

/// A sequence of counts with the tiers that produced it.
struct TieredSequence {
  std::vector<BigInt> values;
  std::vector<Tier> tiers;
};

/// Oracle counts for a family with a combinatorial meaning, or nullopt when
/// the family has none in the requested tier.  Differences of families map
/// to differences of counts.
std::optional<std::vector<BigInt>> family_oracle(FamilyId id, const FamilyParams& params, int max_n,
                                                 Tier tier, const OracleLimits& limits = {});

/// For (2n): (2n-4); for (2,...,2): (2n-6); otherwise drops the largest part.
/// Throws DomainError for odd parts, a size other than two_n, or an empty image.
Partition phi_map(const Partition& p, int two_n);

/// Applies phi_map to every partition of two_n into even parts and checks the
/// images are distinct partitions of some 2i with 1 <= i <= n - 2.
CheckResult verify_phi_injective(int two_n, const OracleLimits& limits = {});

/// First: sum_{i=0}^{n-2} b_{2i} > b_{2n}; second: b_{2n-4} + b_{2n-6} +
/// b_{2n-8} + b_{2n-10} > b_{2n}; both for 7 <= n <= max_n.
std::pair<InequalityReport, InequalityReport> verify_b_inequalities(int max_n);

/// Counts, over 1 <= n <= max_n, of how q_{a,b,m}(n) compares to q_{b,a,m}(n)
/// for residues 1 <= a < b <= m (b = m meaning residue 0).
struct ScanObservation {
  int a;
  int b;
  int m;
  int less = 0;
  int equal = 0;
  int greater = 0;
  std::optional<int> last_greater;
};

/// Series coefficients against every oracle tier that applies, up to
/// min(max_n, tier cap).  A mismatch records (n, series, oracle) and names
/// the tier in the detail.
CheckResult verify_family_oracles(FamilyId id, const FamilyParams& params, int max_n,
                                  const OracleLimits& limits = {});

/// A linear relation sum(lhs) = sum(rhs) between families at one parameter.
struct SeriesRelation {
  std::string label;
  FamilyParams params;
  std::vector<std::pair<long, FamilyId>> lhs;
  std::vector<std::pair<long, FamilyId>> rhs;
};

/// The transform chain: defining forms against transformed, sum and
/// difference forms, including p10m/p01m for m in 2..6.
std::vector<SeriesRelation> family_relations();

CheckResult check_relation(const SeriesRelation& relation, int order);

/// Every coefficient at an admitted index is nonnegative.
CheckResult check_nonnegative(FamilyId id, const FamilyParams& params, int order,
                              IndexFilter filter = IndexFilter::all);

/// First: a_{2n} = a_{2n+1}; second: a_{2n} = sum_{i<=n} b_{2i}; both for
/// 2n+1 <= order.
std::pair<CheckResult, CheckResult> verify_a_sequence(int order);

std::vector<ScanObservation> scan_residue_pairs(int m, int max_n, const OracleLimits& limits = {});

}  // namespace pbias
