#include "pbias/identities.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <set>
#include <utility>
#include <vector>

#include "pbias/errors.hpp"

namespace pbias {

namespace {

constexpr std::array<std::pair<IdentityId, std::string_view>, 8> kNames = {{
    {IdentityId::heine, "heine"},
    {IdentityId::euler_transform, "euler_transform"},
    {IdentityId::sylvester, "sylvester"},
    {IdentityId::euler_expansion, "euler_expansion"},
    {IdentityId::gauss_triangular, "gauss_triangular"},
    {IdentityId::theta_aux_z_q, "theta_aux_z_q"},
    {IdentityId::theta_aux_z_q2, "theta_aux_z_q2"},
    {IdentityId::sylvester_x1_rearranged, "sylvester_x1_rearranged"},
}};

std::set<std::string> required_params(IdentityId id) {
  switch (id) {
    case IdentityId::heine:
    case IdentityId::euler_transform: return {"a", "b", "c", "z"};
    case IdentityId::sylvester: return {"x"};
    case IdentityId::euler_expansion: return {"a"};
    default: return {};
  }
}

void validate(const IdentityCheck& check) {
  if (check.order < 0) throw ParameterError("order must be nonnegative");
  if (check.substitution.step < 1) throw ParameterError("base step must be positive");
  const auto required = required_params(check.id);
  for (const auto& name : required) {
    if (!check.substitution.params.contains(name)) {
      throw ParameterError(std::string(identity_name(check.id)) + " needs parameter " + name);
    }
  }
  for (const auto& [name, value] : check.substitution.params) {
    if (!required.contains(name)) {
      throw ParameterError(std::string(identity_name(check.id)) + " takes no parameter " + name);
    }
  }
  const bool fixed = check.id == IdentityId::gauss_triangular ||
                     check.id == IdentityId::theta_aux_z_q ||
                     check.id == IdentityId::theta_aux_z_q2 ||
                     check.id == IdentityId::sylvester_x1_rearranged;
  if (fixed && check.substitution.step != 1) {
    throw ParameterError(std::string(identity_name(check.id)) + " has no base parameter");
  }
}

// Parameters entering a Pochhammer symbol in a denominator, or an infinite
// product, must vanish at q = 0.
void require_positive_exponent(const Monomial& m, std::string_view what) {
  if (!m.is_zero() && m.exponent() < 1) {
    throw ParameterError(std::string(what) + " must be 0 or have positive exponent");
  }
}

// s * (u - v), for monomials u and v, applied to a series in place.
FormalSeries times_difference(const FormalSeries& s, const Monomial& u, const Monomial& v) {
  FormalSeries out(s.order());
  if (!u.is_zero()) out.add_shifted(s, u.exponent(), u.coefficient());
  if (!v.is_zero()) out.add_shifted(s, v.exponent(), -v.coefficient());
  return out;
}

constexpr long kNoBound = LONG_MAX / 4;

long min_exponent(const Monomial& u, const Monomial& v) {
  long lo = kNoBound;
  if (!u.is_zero()) lo = std::min<long>(lo, u.exponent());
  if (!v.is_zero()) lo = std::min<long>(lo, v.exponent());
  return lo;
}

// Largest n whose summand can reach q^order, given a lower bound on the
// valuation of summand n that changes by step_bound(k) from n = k-1 to n = k.
// step_bound must be nondecreasing in k.
template <class StepBound>
int last_contributing_term(int order, StepBound step_bound) {
  long bound = 0;
  int last = 0;
  const int limit = 4 * order + 64;
  for (int k = 1; k <= limit; ++k) {
    const long delta = step_bound(k);
    if (delta >= kNoBound) return last;  // every later summand vanishes
    bound += delta;
    if (bound <= order) last = k;
    if (bound > order && delta > 0) return last;
  }
  throw ParameterError("divergent sum: summand valuations do not grow");
}

// sum_{n>=0} coef(z)^n q^{n e_z} (a;q^s)_n (b;q^s)_n / ((q^s;q^s)_n (c;q^s)_n)
FormalSeries basic_2phi1_lhs(const Monomial& a, const Monomial& b, const Monomial& c,
                             const Monomial& z, int s, int order) {
  require_positive_exponent(c, "c");
  if (!z.is_zero() && z.exponent() < 1) throw ParameterError("divergent sum: z must vanish at q = 0");
  FormalSeries acc = FormalSeries::one(order);
  if (z.is_zero()) return acc;
  FormalSeries term = FormalSeries::one(order);
  for (int n = 1; static_cast<long>(n) * z.exponent() <= order; ++n) {
    term.multiply_binomial(a.shifted(s * (n - 1)));
    term.multiply_binomial(b.shifted(s * (n - 1)));
    term.divide_binomial(Monomial::q(s * n));
    term.divide_binomial(c.shifted(s * (n - 1)));
    const int sign = (n % 2 == 1 && z.coefficient() < 0) ? -1 : 1;
    acc.add_shifted(term, n * z.exponent(), sign);
  }
  return acc;
}

// The product W_n of the factors (u_k - v_k), kept up to exponent limit, is
// multiplied by sign^n q^{n * net_shift} and by the unit series unit_n, and the
// results are summed for n = 0..last.
struct ProductSum {
  int order;
  int last;
  long net_shift;  // exponent change per term applied to W_n
  int sign;        // +1 or -1, raised to the n-th power

  template <class Factors, class UnitUpdate>
  FormalSeries run(Factors factors, UnitUpdate unit_update) const {
    const long extra = std::max<long>(0, -net_shift) * last;
    const int limit = static_cast<int>(order + extra);
    FormalSeries product = FormalSeries::one(limit);
    FormalSeries unit = FormalSeries::one(order);
    FormalSeries acc(order);
    for (int n = 0; n <= last; ++n) {
      if (n > 0) {
        for (const auto& [u, v] : factors(n)) product = times_difference(product, u, v);
        unit_update(unit, n);
      }
      const long shift = net_shift * n;
      const bool negate = sign < 0 && n % 2 == 1;
      std::vector<BigInt> moved(static_cast<size_t>(order) + 1);
      for (int i = 0; i <= limit; ++i) {
        const BigInt& c = product[i];
        if (c == 0) continue;
        const long target = i + shift;
        if (target < 0) throw ParameterError("substitution produces negative powers of q");
        if (target > order) break;
        moved[static_cast<size_t>(target)] = negate ? BigInt(-c) : c;
      }
      acc += FormalSeries(moved, order) * unit;
    }
    return acc;
  }
};

IdentitySides heine_sides(const Substitution& sub, int order) {
  const auto& p = sub.params;
  const Monomial a = p.at("a"), b = p.at("b"), c = p.at("c"), z = p.at("z");
  const int s = sub.step;
  const Monomial az = a * z;
  require_positive_exponent(b, "b");
  require_positive_exponent(az, "az");
  require_positive_exponent(z, "z");
  FormalSeries lhs = basic_2phi1_lhs(a, b, c, z, s, order);

  // (b)_inf (az)_inf / ((c)_inf (z)_inf)
  FormalSeries prefactor = poch_infinite(b, s, order) * poch_infinite(az, s, order);
  prefactor *= poch_infinite_inverse(c, s, order);
  prefactor *= poch_infinite_inverse(z, s, order);

  // sum_n (z)_n / ((q)_n (az)_n) * prod_{k=1}^n (b - c q^{s(k-1)})
  auto factors = [&](int k) {
    return std::vector<std::pair<Monomial, Monomial>>{{b, c.shifted(s * (k - 1))}};
  };
  const int last = last_contributing_term(order, [&](int k) {
    return min_exponent(b, c.shifted(s * (k - 1)));
  });
  auto unit_update = [&](FormalSeries& u, int n) {
    u.multiply_binomial(z.shifted(s * (n - 1)));
    u.divide_binomial(Monomial::q(s * n));
    u.divide_binomial(az.shifted(s * (n - 1)));
  };
  FormalSeries sum = ProductSum{order, last, 0, 1}.run(factors, unit_update);
  return {std::move(lhs), prefactor * sum};
}

IdentitySides euler_transform_sides(const Substitution& sub, int order) {
  const auto& p = sub.params;
  const Monomial a = p.at("a"), b = p.at("b"), c = p.at("c"), z = p.at("z");
  const int s = sub.step;
  if (c.is_zero()) throw ParameterError("c must be nonzero");
  require_positive_exponent(c, "c");
  require_positive_exponent(z, "z");
  FormalSeries lhs = basic_2phi1_lhs(a, b, c, z, s, order);

  // abz/c as a monomial, when a and b are nonzero.
  Monomial abz_over_c;
  if (!a.is_zero() && !b.is_zero() && !z.is_zero()) {
    const int e = a.exponent() + b.exponent() + z.exponent() - c.exponent();
    if (e < 1) throw ParameterError("divergent product: abz/c must vanish at q = 0");
    abz_over_c = Monomial(a.coefficient() * b.coefficient() * z.coefficient() * c.coefficient(), e);
  }
  FormalSeries prefactor = poch_infinite(abz_over_c, s, order) * poch_infinite_inverse(z, s, order);
  if (z.is_zero()) return {std::move(lhs), prefactor};

  // sum_n prod_k (a - c q^{s(k-1)}) (b - c q^{s(k-1)}) (z/c)^n / ((q)_n (c)_n)
  auto factors = [&](int k) {
    const Monomial ck = c.shifted(s * (k - 1));
    return std::vector<std::pair<Monomial, Monomial>>{{a, ck}, {b, ck}};
  };
  const long net = static_cast<long>(z.exponent()) - c.exponent();
  const int last = last_contributing_term(order, [&](int k) {
    const Monomial ck = c.shifted(s * (k - 1));
    return min_exponent(a, ck) + min_exponent(b, ck) + net;
  });
  auto unit_update = [&](FormalSeries& u, int n) {
    u.divide_binomial(Monomial::q(s * n));
    u.divide_binomial(c.shifted(s * (n - 1)));
  };
  const int sign = z.coefficient() * c.coefficient();
  FormalSeries sum = ProductSum{order, last, net, sign}.run(factors, unit_update);
  return {std::move(lhs), prefactor * sum};
}

IdentitySides sylvester_sides(const Substitution& sub, int order) {
  const Monomial x = sub.params.at("x");
  const int s = sub.step;
  // -x q^s
  const Monomial minus_xq = x.is_zero() ? Monomial{} : Monomial(-x.coefficient(), x.exponent() + s);
  FormalSeries lhs = poch_infinite(minus_xq, s, order);

  FormalSeries rhs = FormalSeries::one(order);
  if (x.is_zero()) return {std::move(lhs), std::move(rhs)};
  rhs.add_shifted(FormalSeries::one(order), x.exponent() + s, x.coefficient());  // n = 0: 1 + x q
  FormalSeries ratio = FormalSeries::one(order);  // (-xq)_n / (q)_n
  for (long n = 1;; ++n) {
    const long base = n * x.exponent() + s * n * (3 * n + 1) / 2;
    if (base > order) break;
    ratio.multiply_binomial(minus_xq.shifted(static_cast<int>(s * (n - 1))));
    ratio.divide_binomial(Monomial::q(static_cast<int>(s * n)));
    const int sign = (x.coefficient() < 0 && n % 2 == 1) ? -1 : 1;
    FormalSeries term(order);
    term.add_shifted(ratio, static_cast<int>(base), sign);
    // (1 + x q^{s(2n+1)})
    FormalSeries with_tail = term;
    with_tail.add_shifted(term, static_cast<int>(x.exponent() + s * (2 * n + 1)), x.coefficient());
    rhs += with_tail;
  }
  return {std::move(lhs), std::move(rhs)};
}

IdentitySides euler_expansion_sides(const Substitution& sub, int order) {
  const Monomial a = sub.params.at("a");
  const int s = sub.step;
  if (!a.is_zero() && a.exponent() < 1) throw ParameterError("divergent product: a must vanish at q = 0");
  FormalSeries lhs = poch_infinite_inverse(a, s, order);
  FormalSeries rhs = FormalSeries::one(order);
  if (a.is_zero()) return {std::move(lhs), std::move(rhs)};
  FormalSeries inv = FormalSeries::one(order);
  for (int n = 1; static_cast<long>(n) * a.exponent() <= order; ++n) {
    inv.divide_binomial(Monomial::q(s * n));
    const int sign = (a.coefficient() < 0 && n % 2 == 1) ? -1 : 1;
    rhs.add_shifted(inv, n * a.exponent(), sign);
  }
  return {std::move(lhs), std::move(rhs)};
}

FormalSeries triangular_theta(int order) {
  FormalSeries out(order);
  for (long n = 0; n * (n + 1) / 2 <= order; ++n) {
    out.add_shifted(FormalSeries::one(order), static_cast<int>(n * (n + 1) / 2));
  }
  return out;
}

IdentitySides gauss_sides(int order) {
  FormalSeries even = poch_infinite(Monomial::q(2), 2, order);
  FormalSeries lhs = even * even;
  lhs *= poch_infinite_inverse(Monomial::q(1), 1, order);
  return {std::move(lhs), triangular_theta(order)};
}

// sum_n q^{k n} / ((-q)_n (q)_n)
FormalSeries theta_aux_lhs(int k, int order) {
  FormalSeries acc = FormalSeries::one(order);
  FormalSeries inv = FormalSeries::one(order);
  for (int n = 1; k * n <= order; ++n) {
    inv.divide_binomial(Monomial::minus_q(n));
    inv.divide_binomial(Monomial::q(n));
    acc.add_shifted(inv, k * n);
  }
  return acc;
}

FormalSeries inverse_theta_prefactor(int order) {
  FormalSeries pre = poch_infinite_inverse(Monomial::minus_q(1), 1, order);
  pre *= poch_infinite_inverse(Monomial::q(1), 1, order);
  return pre;
}

IdentitySides theta_aux_z_q_sides(int order) {
  return {theta_aux_lhs(1, order), inverse_theta_prefactor(order) * triangular_theta(order)};
}

IdentitySides theta_aux_z_q2_sides(int order) {
  FormalSeries sum(order);
  for (long n = 0; n * (n + 1) / 2 <= order; ++n) {
    const long e = n * (n + 1) / 2;
    sum.add_shifted(FormalSeries::one(order), static_cast<int>(e));
    if (e + n + 1 <= order) sum.add_shifted(FormalSeries::one(order), static_cast<int>(e + n + 1), -1);
  }
  return {theta_aux_lhs(2, order), inverse_theta_prefactor(order) * sum};
}

IdentitySides sylvester_rearranged_sides(int order) {
  // 1/(q^3;q^2)_inf * q^2 (1-q) / (1-q^2)^2
  FormalSeries lhs = poch_infinite_inverse(Monomial::q(3), 2, order);
  lhs = shift(lhs, 2);
  lhs.multiply_binomial(Monomial::q(1));
  lhs.divide_binomial(Monomial::q(2));
  lhs.divide_binomial(Monomial::q(2));

  // -q^3 - q^5 + q^2 (1+q^2)/(1-q^2)
  //   + q^2/(1-q^2) sum_{n>=2} (-q^2;q)_{n-1}/(q^2;q)_{n-1} (1 + q^{2n+1}) q^{(3n^2+n)/2}
  FormalSeries rhs(order);
  FormalSeries head = FormalSeries::one(order);
  head.add_shifted(FormalSeries::one(order), 2);
  head.divide_binomial(Monomial::q(2));
  rhs.add_shifted(head, 2);
  rhs.add_shifted(FormalSeries::one(order), 3, -1);
  rhs.add_shifted(FormalSeries::one(order), 5, -1);

  FormalSeries tail(order);
  FormalSeries ratio = FormalSeries::one(order);  // (-q^2;q)_{n-1} / (q^2;q)_{n-1}
  for (long n = 2; (3 * n * n + n) / 2 <= order; ++n) {
    const int k = static_cast<int>(n - 1);  // factor index k = n-1 has exponent k + 1
    ratio.multiply_binomial(Monomial::minus_q(k + 1));
    ratio.divide_binomial(Monomial::q(k + 1));
    const int base = static_cast<int>((3 * n * n + n) / 2);
    tail.add_shifted(ratio, base);
    if (base + 2 * n + 1 <= order) tail.add_shifted(ratio, static_cast<int>(base + 2 * n + 1));
  }
  tail.divide_binomial(Monomial::q(2));
  rhs.add_shifted(tail, 2);
  return {std::move(lhs), std::move(rhs)};
}

std::string describe(const Monomial& m) {
  if (m.is_zero()) return "0";
  std::string out = m.coefficient() < 0 ? "-" : "";
  if (m.exponent() == 0) return out + "1";
  out += "q";
  if (m.exponent() > 1) out += "^" + std::to_string(m.exponent());
  return out;
}

IdentityCheck make_check(IdentityId id, std::map<std::string, Monomial> params, int step, int order) {
  IdentityCheck check{id, Substitution{std::move(params), step}, order, ""};
  std::string label(identity_name(id));
  if (!check.substitution.params.empty() || step != 1) {
    label += "[";
    bool first = true;
    for (const auto& [name, value] : check.substitution.params) {
      label += (first ? "" : ",") + name + "=" + describe(value);
      first = false;
    }
    label += (first ? "" : ",") + std::string("q->q^") + std::to_string(step) + "]";
  }
  check.label = std::move(label);
  return check;
}

}  // namespace

std::string_view identity_name(IdentityId id) {
  for (const auto& [key, name] : kNames) {
    if (key == id) return name;
  }
  return "unknown";
}

std::optional<IdentityId> identity_from_name(std::string_view name) {
  for (const auto& [key, value] : kNames) {
    if (value == name) return key;
  }
  return std::nullopt;
}

IdentitySides identity_sides(const IdentityCheck& check) {
  validate(check);
  const int order = check.order;
  try {
    switch (check.id) {
      case IdentityId::heine: return heine_sides(check.substitution, order);
      case IdentityId::euler_transform: return euler_transform_sides(check.substitution, order);
      case IdentityId::sylvester: return sylvester_sides(check.substitution, order);
      case IdentityId::euler_expansion: return euler_expansion_sides(check.substitution, order);
      case IdentityId::gauss_triangular: return gauss_sides(order);
      case IdentityId::theta_aux_z_q: return theta_aux_z_q_sides(order);
      case IdentityId::theta_aux_z_q2: return theta_aux_z_q2_sides(order);
      case IdentityId::sylvester_x1_rearranged: return sylvester_rearranged_sides(order);
    }
  } catch (const DomainError& e) {
    throw ParameterError(std::string("invalid substitution: ") + e.what());
  }
  throw ParameterError("unknown identity");
}

CheckResult compare_sides(const FormalSeries& lhs, const FormalSeries& rhs) {
  CheckResult result;
  result.verified_order = std::min(lhs.order(), rhs.order());
  for (int i = 0; i <= result.verified_order; ++i) {
    if (lhs[i] != rhs[i]) {
      result.passed = false;
      result.first_mismatch = Mismatch{i, lhs[i], rhs[i]};
      result.detail = "coefficient of q^" + std::to_string(i) + ": lhs " + lhs[i].get_str() +
                      ", rhs " + rhs[i].get_str();
      break;
    }
  }
  return result;
}

CheckResult check_identity(const IdentityCheck& check) {
  const auto sides = identity_sides(check);
  CheckResult result = compare_sides(sides.lhs, sides.rhs);
  if (result.passed) result.detail = check.label;
  else result.detail = check.label + ": " + result.detail;
  return result;
}

std::vector<IdentityCheck> builtin_substitutions(int order) {
  const Monomial zero;
  std::vector<IdentityCheck> out;
  // More-odd and more-even sums of non-unitary partitions.
  out.push_back(make_check(IdentityId::euler_transform,
                           {{"a", zero}, {"b", zero}, {"c", Monomial::q(4)}, {"z", Monomial::q(3)}},
                           2, order));
  out.push_back(make_check(IdentityId::euler_transform,
                           {{"a", zero}, {"b", zero}, {"c", Monomial::q(2)}, {"z", Monomial::q(3)}},
                           2, order));
  // Residue-class bias, base q^m; m = 2 is the first substitution above.
  for (int m = 3; m <= 6; ++m) {
    out.push_back(make_check(
        IdentityId::euler_transform,
        {{"a", zero}, {"b", zero}, {"c", Monomial::q(2 * m)}, {"z", Monomial::q(m + 1)}}, m, order));
  }
  out.push_back(make_check(IdentityId::sylvester, {{"x", Monomial::q(0)}}, 1, order));
  out.push_back(make_check(IdentityId::sylvester_x1_rearranged, {}, 1, order));
  out.push_back(make_check(IdentityId::euler_expansion, {{"a", Monomial::q(1)}}, 2, order));
  out.push_back(make_check(IdentityId::euler_expansion, {{"a", Monomial::q(2)}}, 2, order));
  out.push_back(make_check(IdentityId::heine,
                           {{"a", zero}, {"b", zero}, {"c", Monomial::minus_q(1)}, {"z", Monomial::q(1)}},
                           1, order));
  out.push_back(make_check(IdentityId::heine,
                           {{"a", zero}, {"b", zero}, {"c", Monomial::minus_q(1)}, {"z", Monomial::q(2)}},
                           1, order));
  out.push_back(make_check(IdentityId::theta_aux_z_q, {}, 1, order));
  out.push_back(make_check(IdentityId::theta_aux_z_q2, {}, 1, order));
  out.push_back(make_check(IdentityId::gauss_triangular, {}, 1, order));
  return out;
}

std::vector<CheckResult> run_all_builtin_substitutions(int order) {
  std::vector<CheckResult> out;
  for (const auto& check : builtin_substitutions(order)) out.push_back(check_identity(check));
  return out;
}

}  // namespace pbias
