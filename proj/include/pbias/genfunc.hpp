#pragma once

// Generating functions for the parity-bias families, both in their defining
// form and in the transformed forms whose coefficient signs are evident.

#include <optional>
#include <span>
#include <string_view>

#include "pbias/series.hpp"

namespace pbias {

enum class FamilyId {
  po,                // non-unitary, more odd parts than even
  pe,                // non-unitary, more even parts than odd
  p10m,              // non-unitary, more parts = 1 (mod m) than = 0 (mod m)
  p01m,              // non-unitary, more parts = 0 (mod m) than = 1 (mod m)
  p10m_transformed,
  p01m_transformed,
  po_transformed,
  pe_transformed,
  diff_pe_po,
  diff_2pe_3po,
  eme,               // parts >= m, #even and #odd both even, more even parts
  ome,               // parts >= m, #even and #odd both even, more odd parts
  emo,               // parts >= m, #even and #odd both odd, more even parts
  omo,               // parts >= m, #even and #odd both odd, more odd parts
  diff_ome_eme,      // m odd
  diff_eme_ome,      // m even
  peu_ou,            // every even part below every odd part
  pou_eu,            // every odd part below every even part, some odd part
  qeu_ou,            // non-unitary peu_ou
  qou_eu,            // non-unitary pou_eu
  qou_eu_sumform,
  diff_qeu_qou,
  diff_pou_peu,
  a_seq,
  b_seq,
};

struct FamilyParams {
  int m = 0;
};

enum class ParamKind {
  none,
  modulus,       // m >= 2
  min_part,      // m >= 1
  min_part_odd,  // m >= 1, m odd
  min_part_even, // m >= 2, m even
};

struct FamilyInfo {
  FamilyId id;
  std::string_view name;
  ParamKind params;
  std::string_view description;
  std::string_view location;
};

/// Catalog of every family in a stable order.
std::span<const FamilyInfo> list_families();

const FamilyInfo& family_info(FamilyId id);
std::string_view family_name(FamilyId id);
std::optional<FamilyId> family_from_name(std::string_view name);
std::string_view param_description(ParamKind kind);

/// Throws ParameterError if params are not valid for the family.
void validate_params(FamilyId id, const FamilyParams& params);

/// Coefficients 0..order of the family's generating function.
FormalSeries build_series(FamilyId id, const FamilyParams& params, int order);

}  // namespace pbias
