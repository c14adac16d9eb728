#pragma once

// Ground-truth counts for restricted partitions, computed by explicit
// enumeration (small n) or by dynamic programming over parts.  Nothing here
// touches q-series machinery.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pbias/series.hpp"

namespace pbias {

/// Parts in non-increasing order.
struct Partition {
  std::vector<int> parts;

  int size() const;
  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;
};

enum class SeparationMode {
  ordinary,
  even_below_odd,  // max even part < min odd part (vacuous if either is absent)
  odd_below_even,  // max odd part < min even part
};

enum class Parity { even, odd };

struct ConstraintSpec {
  int min_part = 1;
  std::set<int> forbidden_parts;
  SeparationMode mode = SeparationMode::ordinary;
  /// Required parities of (#even parts, #odd parts).
  std::optional<std::pair<Parity, Parity>> count_parity;
  /// For odd_below_even: reject partitions without odd parts (all even, or empty).
  bool all_even_excluded = false;

  bool allows_part(int p) const { return p >= min_part && !forbidden_parts.contains(p); }
};

/// "More parts congruent to j than to k modulo m", strictly.
struct BiasSpec {
  int j = 1;
  int k = 0;
  int m = 2;
};

struct OracleLimits {
  int enum_cap = 40;
  int dp_cap = 300;

  /// Defaults overridden by PB_ENUM_CAP / PB_DP_CAP when set.
  static OracleLimits from_environment();
};

/// All partitions of n satisfying c, in reverse-lexicographic order.
/// Throws CapExceeded above limits.enum_cap.
std::vector<Partition> enumerate(int n, const ConstraintSpec& c, const OracleLimits& limits = {});

/// Number of parts in each residue class modulo m.
std::vector<int> residue_counts(const Partition& p, int m);

BigInt count_bias_enum(int n, const ConstraintSpec& c, const BiasSpec& b,
                       const OracleLimits& limits = {});

/// Per-n split of the constrained partitions by the sign of
/// (#parts = j) - (#parts = k).
struct BiasTable {
  std::vector<BigInt> more_j;
  std::vector<BigInt> more_k;
  std::vector<BigInt> tied;

  BigInt total(int n) const;
};

/// DP over (part, remaining sum, count difference) for every n in [0, max_n].
/// Only the ordinary mode without count-parity requirements is supported.
BiasTable bias_table_dp(int max_n, const ConstraintSpec& c, const BiasSpec& b,
                        const OracleLimits& limits = {});

BigInt count_bias_dp(int n, const ConstraintSpec& c, const BiasSpec& b,
                     const OracleLimits& limits = {});

enum class ParityFamily { E_me, O_me, E_mo, O_mo };

/// Partitions with all parts >= m, the given parities of the even-part and
/// odd-part counts, and the given strict majority.
ConstraintSpec parity_family_constraint(int m, ParityFamily which);

BigInt count_parity_family_enum(int n, int m, ParityFamily which, const OracleLimits& limits = {});

/// DP over (part, remaining sum, #even mod 2, #even - #odd) for n in [0, max_n].
std::vector<BigInt> parity_family_table_dp(int max_n, int m, ParityFamily which,
                                           const OracleLimits& limits = {});

BigInt count_parity_family(int n, int m, ParityFamily which, const OracleLimits& limits = {});

/// Constraint describing P_eu^ou / P_ou^eu and their non-unitary versions.
ConstraintSpec separated_constraint(SeparationMode mode, bool non_unitary);

BigInt count_separated_enum(int n, SeparationMode mode, bool non_unitary,
                            const OracleLimits& limits = {});

/// Counts for n in [0, max_n], splitting on the largest part of the lower parity class.
std::vector<BigInt> separated_table_dp(int max_n, SeparationMode mode, bool non_unitary,
                                       const OracleLimits& limits = {});

BigInt count_separated(int n, SeparationMode mode, bool non_unitary,
                       const OracleLimits& limits = {});

/// Number of constrained partitions of each n in [0, max_n] (ordinary mode).
std::vector<BigInt> count_table_dp(int max_n, const ConstraintSpec& c,
                                   const OracleLimits& limits = {});

}  // namespace pbias
