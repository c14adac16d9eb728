#include "pbias/genfunc.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "pbias/errors.hpp"

namespace pbias {

namespace {

constexpr std::array kFamilies = {
    FamilyInfo{FamilyId::po, "po", ParamKind::none,
               "non-unitary partitions with more odd parts than even parts",
               "q_o < q_e for n >= 8"},
    FamilyInfo{FamilyId::pe, "pe", ParamKind::none,
               "non-unitary partitions with more even parts than odd parts",
               "q_o < q_e for n >= 8"},
    FamilyInfo{FamilyId::p10m, "p10m", ParamKind::modulus,
               "non-unitary partitions with more parts = 1 than = 0 (mod m)",
               "q_{0,1,m} > q_{1,0,m} for n >= 4m+3"},
    FamilyInfo{FamilyId::p01m, "p01m", ParamKind::modulus,
               "non-unitary partitions with more parts = 0 than = 1 (mod m)",
               "q_{0,1,m} > q_{1,0,m} for n >= 4m+3"},
    FamilyInfo{FamilyId::p10m_transformed, "p10m_transformed", ParamKind::modulus,
               "p10m after the Euler transformation with base q^m",
               "q_{0,1,m} > q_{1,0,m} for n >= 4m+3"},
    FamilyInfo{FamilyId::p01m_transformed, "p01m_transformed", ParamKind::modulus,
               "p01m rewritten through the Durfee-square expansion",
               "q_{0,1,m} > q_{1,0,m} for n >= 4m+3"},
    FamilyInfo{FamilyId::po_transformed, "po_transformed", ParamKind::none,
               "po after the Euler transformation with c = q^4, z = q^3, base q^2",
               "q_o < q_e for n >= 8"},
    FamilyInfo{FamilyId::pe_transformed, "pe_transformed", ParamKind::none,
               "pe after the Euler transformation with c = q^2, z = q^3, base q^2",
               "q_o < q_e for n >= 8"},
    FamilyInfo{FamilyId::diff_pe_po, "diff_pe_po", ParamKind::none,
               "pe - po as a single sum with factor (1 - q^n)",
               "q_o < q_e for n >= 8"},
    FamilyInfo{FamilyId::diff_2pe_3po, "diff_2pe_3po", ParamKind::none,
               "2 pe - 3 po as a single sum with factor (1 - q^n)^2 (2 + q^n)",
               "conjecture 3 q_o < 2 q_e for n > 9"},
    FamilyInfo{FamilyId::eme, "eme", ParamKind::min_part,
               "parts >= m, even count of each parity, more even parts",
               "minimum-part bias, even n"},
    FamilyInfo{FamilyId::ome, "ome", ParamKind::min_part,
               "parts >= m, even count of each parity, more odd parts",
               "minimum-part bias, even n"},
    FamilyInfo{FamilyId::emo, "emo", ParamKind::min_part,
               "parts >= m, odd count of each parity, more even parts",
               "minimum-part bias, odd n"},
    FamilyInfo{FamilyId::omo, "omo", ParamKind::min_part,
               "parts >= m, odd count of each parity, more odd parts",
               "minimum-part bias, odd n"},
    FamilyInfo{FamilyId::diff_ome_eme, "diff_ome_eme", ParamKind::min_part_odd,
               "ome - eme as a double sum with factor (1 - q^{n-k})",
               "minimum-part bias, m odd"},
    FamilyInfo{FamilyId::diff_eme_ome, "diff_eme_ome", ParamKind::min_part_even,
               "eme - ome as a double sum with factor (1 - q^{n-k})",
               "minimum-part bias, m even"},
    FamilyInfo{FamilyId::peu_ou, "peu_ou", ParamKind::none,
               "partitions with every even part below every odd part",
               "p_ou^eu > p_eu^ou for n > 6"},
    FamilyInfo{FamilyId::pou_eu, "pou_eu", ParamKind::none,
               "partitions with every odd part below every even part, at least one odd part",
               "p_ou^eu > p_eu^ou for n > 6"},
    FamilyInfo{FamilyId::qeu_ou, "qeu_ou", ParamKind::none,
               "non-unitary partitions with every even part below every odd part",
               "q_ou^eu < q_eu^ou for n > 3"},
    FamilyInfo{FamilyId::qou_eu, "qou_eu", ParamKind::none,
               "non-unitary partitions with every odd part below every even part",
               "q_ou^eu < q_eu^ou for n > 3"},
    FamilyInfo{FamilyId::qou_eu_sumform, "qou_eu_sumform", ParamKind::none,
               "qou_eu summed over the least odd part",
               "q_ou^eu < q_eu^ou for n > 3"},
    FamilyInfo{FamilyId::diff_qeu_qou, "diff_qeu_qou", ParamKind::none,
               "qeu_ou - qou_eu through the triangular-number theta series",
               "q_ou^eu < q_eu^ou for n > 3"},
    FamilyInfo{FamilyId::diff_pou_peu, "diff_pou_peu", ParamKind::none,
               "pou_eu - peu_ou through Gauss's triangular-number identity",
               "p_ou^eu > p_eu^ou for n > 6"},
    FamilyInfo{FamilyId::a_seq, "a_seq", ParamKind::none,
               "1/((1-q)(q^2;q^2)_inf), satisfies a_{2n} = a_{2n+1}",
               "p_ou^eu > p_eu^ou, even coefficients"},
    FamilyInfo{FamilyId::b_seq, "b_seq", ParamKind::none,
               "partitions into even parts, 1/(q^2;q^2)_inf",
               "p_ou^eu > p_eu^ou, even coefficients"},
};

using Terms = std::vector<std::pair<long, long>>;  // (exponent, factor)

// sum_{n >= start} (sum_i factor_i q^{e_i(n)}) / (q^step; q^step)_n^power.
// Terms are dropped once every exponent exceeds order; the summand exponents
// are increasing in n so the first fully truncated n ends the sum.
template <class TermFn>
FormalSeries pochhammer_sum(int order, int step, int power, int start, TermFn terms) {
  FormalSeries acc(order);
  FormalSeries inv = FormalSeries::one(order);
  for (int n = 0;; ++n) {
    if (n > 0) {
      for (int p = 0; p < power; ++p) inv.divide_binomial(Monomial::q(step * n));
    }
    if (n < start) continue;
    bool any = false;
    for (const auto& [e, factor] : terms(n)) {
      if (e > order) continue;
      any = true;
      acc.add_shifted(inv, static_cast<int>(e), factor);
    }
    if (!any) break;
  }
  return acc;
}

void divide_poch_infinite(FormalSeries& s, int first, int step) {
  for (int e = first; e <= s.order(); e += step) s.divide_binomial(Monomial::q(e));
}

void multiply_poch_infinite(FormalSeries& s, int first, int step) {
  for (int e = first; e <= s.order(); e += step) s.multiply_binomial(Monomial::q(e));
}

// 1/(q^2;q)_inf: generating function of non-unitary partitions.
FormalSeries non_unitary_partitions(int order) {
  FormalSeries s = FormalSeries::one(order);
  divide_poch_infinite(s, 2, 1);
  return s;
}

FormalSeries build_po(int order) {
  return pochhammer_sum(order, 2, 2, 0, [](long n) {
    return Terms{{3 * n, 1}, {5 * n, -1}};
  });
}

FormalSeries build_pe(int order) {
  return non_unitary_partitions(order) -
         pochhammer_sum(order, 2, 2, 0, [](long n) { return Terms{{3 * n, 1}}; });
}

// (1/(q^3;q^2)_inf) * sum_{n>=1} q^{2n^2} P(q^n) / (q^2;q^2)_n^2
FormalSeries transformed_parity(int order, const Terms& poly_in_qn) {
  FormalSeries s = pochhammer_sum(order, 2, 2, 1, [&](long n) {
    Terms t;
    for (const auto& [k, f] : poly_in_qn) t.emplace_back(2 * n * n + k * n, f);
    return t;
  });
  divide_poch_infinite(s, 3, 2);
  return s;
}

// (q^{m+1}, q^m; q^m)_inf / (q^2; q)_inf
void apply_residue_prefactor(FormalSeries& s, int m) {
  multiply_poch_infinite(s, m + 1, m);
  multiply_poch_infinite(s, m, m);
  divide_poch_infinite(s, 2, 1);
}

FormalSeries build_p10m(int order, int m) {
  FormalSeries s = pochhammer_sum(order, m, 2, 0, [m](long n) {
    return Terms{{(m + 1) * n, 1}, {(2 * m + 1) * n, -1}};
  });
  apply_residue_prefactor(s, m);
  return s;
}

FormalSeries build_p01m(int order, int m) {
  FormalSeries s = pochhammer_sum(order, m, 2, 0, [m](long n) { return Terms{{(m + 1) * n, 1}}; });
  apply_residue_prefactor(s, m);
  return non_unitary_partitions(order) - s;
}

// (q^m;q^m)_inf / (q^2;q)_inf * sum_{n>=1} q^{m n^2} P(q^n) / (q^m;q^m)_n^2
FormalSeries transformed_residue(int order, int m, const Terms& poly_in_qn) {
  FormalSeries s = pochhammer_sum(order, m, 2, 1, [&](long n) {
    Terms t;
    for (const auto& [k, f] : poly_in_qn) t.emplace_back(m * n * n + k * n, f);
    return t;
  });
  multiply_poch_infinite(s, m, m);
  divide_poch_infinite(s, 2, 1);
  return s;
}

// Double sums over the number n of "majority" parts and the number k < n of
// "minority" parts, both of the given parity:
//   sum_n q^{outer n}/(q^2;q^2)_n * sum_{k <= n-2} q^{inner k}/(q^2;q^2)_k * (1 - q^{n-k})^diff
FormalSeries parity_double_sum(int order, int outer, int inner, int parity, bool diff) {
  std::vector<FormalSeries> inv;  // inv[n] = 1/(q^2;q^2)_n
  inv.push_back(FormalSeries::one(order));
  auto inverse = [&](int n) -> const FormalSeries& {
    while (static_cast<int>(inv.size()) <= n) {
      FormalSeries next = inv.back();
      next.divide_binomial(Monomial::q(2 * static_cast<int>(inv.size())));
      inv.push_back(std::move(next));
    }
    return inv[static_cast<size_t>(n)];
  };

  FormalSeries acc(order);
  FormalSeries inner_sum(order);    // sum_k q^{inner k} / (q^2;q^2)_k
  FormalSeries shifted_sum(order);  // sum_k q^{outer k} / (q^2;q^2)_k, for the diff form
  int next_k = parity;
  const long min_inner = static_cast<long>(inner) * parity;
  for (int n = parity + 2; static_cast<long>(outer) * n + min_inner <= order; n += 2) {
    for (; next_k <= n - 2; next_k += 2) {
      inner_sum.add_shifted(inverse(next_k), inner * next_k);
      if (diff) shifted_sum.add_shifted(inverse(next_k), outer * next_k);
    }
    FormalSeries bracket = inner_sum;
    if (diff) bracket.add_shifted(shifted_sum, n, -1);
    acc += shift(inverse(n), outer * n) * bracket;
  }
  return acc;
}

int least_even_at_least(int m) { return m % 2 == 0 ? m : m + 1; }
int least_odd_at_least(int m) { return m % 2 == 1 ? m : m + 1; }

FormalSeries odd_parts(int order) { return poch_infinite_inverse(Monomial::q(1), 2, order); }
FormalSeries even_parts(int order) { return poch_infinite_inverse(Monomial::q(2), 2, order); }

FormalSeries build_peu_ou(int order) {
  FormalSeries s = even_parts(order);
  s.divide_binomial(Monomial::q(1));
  return s;
}

FormalSeries build_pou_eu(int order) {
  FormalSeries s = odd_parts(order) - even_parts(order);
  s.divide_binomial(Monomial::q(1));
  return s;
}

FormalSeries build_qeu_ou(int order) { return build_peu_ou(order) - shift(odd_parts(order), 1); }

FormalSeries build_qou_eu(int order) {
  const FormalSeries even = even_parts(order);
  return odd_parts(order) - even - shift(even, 1);
}

FormalSeries build_qou_eu_sumform(int order) {
  // term(n) = q^{2n+3} / ((q^3;q^2)_{n+1} (q^{2n+4};q^2)_inf)
  FormalSeries acc(order);
  FormalSeries term = poch_infinite_inverse(Monomial::q(4), 2, order);
  term.divide_binomial(Monomial::q(3));
  for (int n = 0; 2 * n + 3 <= order; ++n) {
    if (n > 0) {
      term.multiply_binomial(Monomial::q(2 * n + 2));
      term.divide_binomial(Monomial::q(2 * n + 3));
    }
    acc.add_shifted(term, 2 * n + 3);
  }
  return acc;
}

FormalSeries build_diff_qeu_qou(int order) {
  FormalSeries poly = FormalSeries::one(order);
  for (long n = 1; (n + 1) * (n + 2) / 2 + 2 <= order; ++n) {
    const long base = (n + 1) * (n + 2) / 2;
    for (long i = 2; i <= n + 1 && base + i <= order; ++i) {
      poly.add_shifted(FormalSeries::one(order), static_cast<int>(base + i));
    }
  }
  return poly * even_parts(order);
}

FormalSeries build_diff_pou_peu(int order) {
  FormalSeries poly(order);
  for (long n = 0; n * (n + 1) / 2 <= order; ++n) {
    poly.add_shifted(FormalSeries::one(order), static_cast<int>(n * (n + 1) / 2));
  }
  poly -= 2 * FormalSeries::one(order);
  FormalSeries s = poly * even_parts(order);
  s.divide_binomial(Monomial::q(1));
  return s;
}

}  // namespace

std::span<const FamilyInfo> list_families() { return kFamilies; }

const FamilyInfo& family_info(FamilyId id) {
  for (const auto& f : kFamilies) {
    if (f.id == id) return f;
  }
  throw ParameterError("unknown family id");
}

std::string_view family_name(FamilyId id) { return family_info(id).name; }

std::optional<FamilyId> family_from_name(std::string_view name) {
  for (const auto& f : kFamilies) {
    if (f.name == name) return f.id;
  }
  return std::nullopt;
}

std::string_view param_description(ParamKind kind) {
  switch (kind) {
    case ParamKind::none: return "no params";
    case ParamKind::modulus: return "m >= 2";
    case ParamKind::min_part: return "m >= 1";
    case ParamKind::min_part_odd: return "m >= 1, m odd";
    case ParamKind::min_part_even: return "m >= 2, m even";
  }
  return "";
}

void validate_params(FamilyId id, const FamilyParams& params) {
  const auto& info = family_info(id);
  const int m = params.m;
  bool ok = true;
  switch (info.params) {
    case ParamKind::none: break;
    case ParamKind::modulus: ok = m >= 2; break;
    case ParamKind::min_part: ok = m >= 1; break;
    case ParamKind::min_part_odd: ok = m >= 1 && m % 2 == 1; break;
    case ParamKind::min_part_even: ok = m >= 2 && m % 2 == 0; break;
  }
  if (!ok) {
    throw ParameterError(std::string(info.name) + " requires " +
                         std::string(param_description(info.params)) + ", got m = " +
                         std::to_string(m));
  }
}

FormalSeries build_series(FamilyId id, const FamilyParams& params, int order) {
  if (order < 0) throw ParameterError("truncation order must be nonnegative");
  validate_params(id, params);
  const int m = params.m;
  switch (id) {
    case FamilyId::po: return build_po(order);
    case FamilyId::pe: return build_pe(order);
    case FamilyId::p10m: return build_p10m(order, m);
    case FamilyId::p01m: return build_p01m(order, m);
    case FamilyId::p10m_transformed:
      return transformed_residue(order, m, {{1, 1}, {1 + m, -1}});
    case FamilyId::p01m_transformed:
      return transformed_residue(order, m, {{0, 1}, {m + 1, -1}});
    case FamilyId::po_transformed: return transformed_parity(order, {{1, 1}, {3, -1}});
    case FamilyId::pe_transformed: return transformed_parity(order, {{0, 1}, {3, -1}});
    case FamilyId::diff_pe_po: return transformed_parity(order, {{0, 1}, {1, -1}});
    // (1 - x)^2 (2 + x) = 2 - 3x + x^3
    case FamilyId::diff_2pe_3po: return transformed_parity(order, {{0, 2}, {1, -3}, {3, 1}});
    case FamilyId::eme:
      return parity_double_sum(order, least_even_at_least(m), least_odd_at_least(m), 0, false);
    case FamilyId::ome:
      return parity_double_sum(order, least_odd_at_least(m), least_even_at_least(m), 0, false);
    case FamilyId::emo:
      return parity_double_sum(order, least_even_at_least(m), least_odd_at_least(m), 1, false);
    case FamilyId::omo:
      return parity_double_sum(order, least_odd_at_least(m), least_even_at_least(m), 1, false);
    case FamilyId::diff_ome_eme:
    case FamilyId::diff_eme_ome:
      // The majority parity has least part m, the minority m + 1.
      return parity_double_sum(order, m, m + 1, 0, true);
    case FamilyId::peu_ou: return build_peu_ou(order);
    case FamilyId::pou_eu: return build_pou_eu(order);
    case FamilyId::qeu_ou: return build_qeu_ou(order);
    case FamilyId::qou_eu: return build_qou_eu(order);
    case FamilyId::qou_eu_sumform: return build_qou_eu_sumform(order);
    case FamilyId::diff_qeu_qou: return build_diff_qeu_qou(order);
    case FamilyId::diff_pou_peu: return build_diff_pou_peu(order);
    case FamilyId::a_seq: return build_peu_ou(order);
    case FamilyId::b_seq: return even_parts(order);
  }
  throw ParameterError("unknown family id");
}

}  // namespace pbias
