#pragma once

// Classical q-series identities checked as truncated-series equalities.
// Parameters are monomials c q^e; the base may be replaced by q^s.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbias/series.hpp"

namespace pbias {

enum class IdentityId {
  heine,                    // params a, b, c, z
  euler_transform,          // params a, b, c, z
  sylvester,                // param x
  euler_expansion,          // param a
  gauss_triangular,         // no params
  theta_aux_z_q,            // no params
  theta_aux_z_q2,           // no params
  sylvester_x1_rearranged,  // no params
};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);

struct Substitution {
  std::map<std::string, Monomial> params;
  int step = 1;  // base replacement q -> q^step
};

struct IdentityCheck {
  IdentityId id;
  Substitution substitution;
  int order = 0;
  std::string label;  // human-readable description of the substitution
};

struct Mismatch {
  int exponent;
  BigInt lhs;
  BigInt rhs;
};

struct CheckResult {
  bool passed = true;
  int verified_order = 0;
  std::optional<Mismatch> first_mismatch;
  std::string detail;
};

struct IdentitySides {
  FormalSeries lhs;
  FormalSeries rhs;
};

/// Both sides of the identity at the check's order.  Throws ParameterError
/// for missing, unexpected or divergent substitutions.
IdentitySides identity_sides(const IdentityCheck& check);

/// Coefficient-wise comparison up to the smaller order.
CheckResult compare_sides(const FormalSeries& lhs, const FormalSeries& rhs);

CheckResult check_identity(const IdentityCheck& check);

/// The substitutions used by the parity-bias proofs, in a fixed order.
std::vector<IdentityCheck> builtin_substitutions(int order);

std::vector<CheckResult> run_all_builtin_substitutions(int order);

}  // namespace pbias
