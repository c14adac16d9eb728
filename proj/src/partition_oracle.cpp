#include "pbias/partition_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "pbias/errors.hpp"

namespace pbias {

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {

int env_cap(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    size_t used = 0;
    const int v = std::stoi(raw, &used);
    if (used != std::string(raw).size() || v < 0) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ParameterError(std::string(name) + " must be a nonnegative integer, got '" + raw + "'");
  }
}

void check_enum_cap(int n, const OracleLimits& limits) {
  if (n < 0) throw ParameterError("n must be nonnegative");
  if (n > limits.enum_cap) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                      std::to_string(limits.enum_cap) + " (PB_ENUM_CAP)");
  }
}

void check_dp_cap(int n, const OracleLimits& limits) {
  if (n < 0) throw ParameterError("n must be nonnegative");
  if (n > limits.dp_cap) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the DP cap " +
                      std::to_string(limits.dp_cap) + " (PB_DP_CAP)");
  }
}

void check_bias(const BiasSpec& b) {
  if (b.m < 2) throw ParameterError("bias modulus must be >= 2");
  if (b.j < 0 || b.j >= b.m || b.k < 0 || b.k >= b.m || b.j == b.k) {
    throw ParameterError("bias residues must be distinct and in [0, m)");
  }
}

void check_constraint(const ConstraintSpec& c) {
  if (c.min_part < 1) throw ParameterError("min_part must be >= 1");
}

bool satisfies_shape(const std::vector<int>& parts, const ConstraintSpec& c) {
  int evens = 0;
  int odds = 0;
  int max_even = 0;
  int max_odd = 0;
  int min_even = 0;
  int min_odd = 0;
  for (int p : parts) {
    if (p % 2 == 0) {
      if (evens++ == 0) min_even = max_even = p;
      max_even = std::max(max_even, p);
      min_even = std::min(min_even, p);
    } else {
      if (odds++ == 0) min_odd = max_odd = p;
      max_odd = std::max(max_odd, p);
      min_odd = std::min(min_odd, p);
    }
  }
  switch (c.mode) {
    case SeparationMode::ordinary: break;
    case SeparationMode::even_below_odd:
      if (evens > 0 && odds > 0 && max_even >= min_odd) return false;
      break;
    case SeparationMode::odd_below_even:
      if (evens > 0 && odds > 0 && max_odd >= min_even) return false;
      if (c.all_even_excluded && odds == 0) return false;
      break;
  }
  if (c.count_parity) {
    const auto want = [](Parity p) { return p == Parity::even ? 0 : 1; };
    if (evens % 2 != want(c.count_parity->first)) return false;
    if (odds % 2 != want(c.count_parity->second)) return false;
  }
  return true;
}

void enumerate_into(int remaining, int max_part, const ConstraintSpec& c, std::vector<int>& prefix,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    if (satisfies_shape(prefix, c)) out.push_back(Partition{prefix});
    return;
  }
  for (int p = std::min(remaining, max_part); p >= c.min_part; --p) {
    if (!c.allows_part(p)) continue;
    prefix.push_back(p);
    enumerate_into(remaining - p, p, c, prefix, out);
    prefix.pop_back();
  }
}

int bias_delta(int part, const BiasSpec& b) {
  const int r = part % b.m;
  if (r == b.j) return 1;
  if (r == b.k) return -1;
  return 0;
}

}  // namespace

OracleLimits OracleLimits::from_environment() {
  OracleLimits limits;
  limits.enum_cap = env_cap("PB_ENUM_CAP", limits.enum_cap);
  limits.dp_cap = env_cap("PB_DP_CAP", limits.dp_cap);
  return limits;
}

std::vector<Partition> enumerate(int n, const ConstraintSpec& c, const OracleLimits& limits) {
  check_enum_cap(n, limits);
  check_constraint(c);
  std::vector<Partition> out;
  std::vector<int> prefix;
  enumerate_into(n, n, c, prefix, out);
  return out;
}

std::vector<int> residue_counts(const Partition& p, int m) {
  if (m < 2) throw ParameterError("modulus must be >= 2");
  std::vector<int> counts(static_cast<size_t>(m));
  for (int part : p.parts) ++counts[static_cast<size_t>(part % m)];
  return counts;
}

BigInt count_bias_enum(int n, const ConstraintSpec& c, const BiasSpec& b,
                       const OracleLimits& limits) {
  check_bias(b);
  BigInt count = 0;
  for (const auto& p : enumerate(n, c, limits)) {
    const auto r = residue_counts(p, b.m);
    if (r[static_cast<size_t>(b.j)] > r[static_cast<size_t>(b.k)]) ++count;
  }
  return count;
}

BigInt BiasTable::total(int n) const {
  const auto i = static_cast<size_t>(n);
  return more_j[i] + more_k[i] + tied[i];
}

BiasTable bias_table_dp(int max_n, const ConstraintSpec& c, const BiasSpec& b,
                        const OracleLimits& limits) {
  check_dp_cap(max_n, limits);
  check_constraint(c);
  check_bias(b);
  if (c.mode != SeparationMode::ordinary || c.count_parity) {
    throw ParameterError("bias DP supports only the ordinary mode without count parity");
  }
  const int width = 2 * max_n + 1;
  const int offset = max_n;
  // table[s * width + d + offset]: partitions of s with difference d.
  std::vector<BigInt> table(static_cast<size_t>((max_n + 1) * width));
  auto at = [&](int s, int d) -> BigInt& {
    return table[static_cast<size_t>(s * width + d + offset)];
  };
  at(0, 0) = 1;
  for (int p = 1; p <= max_n; ++p) {
    if (!c.allows_part(p)) continue;
    const int delta = bias_delta(p, b);
    for (int s = p; s <= max_n; ++s) {
      const int reach = s - p;  // |d| <= number of parts <= s - p
      for (int d = -reach; d <= reach; ++d) {
        const BigInt& src = at(s - p, d);
        if (src == 0) continue;
        at(s, d + delta) += src;
      }
    }
  }
  BiasTable out;
  out.more_j.resize(static_cast<size_t>(max_n) + 1);
  out.more_k.resize(static_cast<size_t>(max_n) + 1);
  out.tied.resize(static_cast<size_t>(max_n) + 1);
  for (int s = 0; s <= max_n; ++s) {
    const auto i = static_cast<size_t>(s);
    for (int d = -s; d <= s; ++d) {
      const BigInt& v = at(s, d);
      if (d > 0) out.more_j[i] += v;
      else if (d < 0) out.more_k[i] += v;
      else out.tied[i] += v;
    }
  }
  return out;
}

BigInt count_bias_dp(int n, const ConstraintSpec& c, const BiasSpec& b,
                     const OracleLimits& limits) {
  return bias_table_dp(n, c, b, limits).more_j[static_cast<size_t>(n)];
}

ConstraintSpec parity_family_constraint(int m, ParityFamily which) {
  if (m < 1) throw ParameterError("minimum part must be >= 1");
  ConstraintSpec c;
  c.min_part = m;
  const bool even_counts = which == ParityFamily::E_me || which == ParityFamily::O_me;
  const Parity par = even_counts ? Parity::even : Parity::odd;
  c.count_parity = std::make_pair(par, par);
  return c;
}

namespace {

bool wants_more_even(ParityFamily which) {
  return which == ParityFamily::E_me || which == ParityFamily::E_mo;
}

}  // namespace

BigInt count_parity_family_enum(int n, int m, ParityFamily which, const OracleLimits& limits) {
  const ConstraintSpec c = parity_family_constraint(m, which);
  BigInt count = 0;
  for (const auto& p : enumerate(n, c, limits)) {
    const auto r = residue_counts(p, 2);
    if (wants_more_even(which) ? r[0] > r[1] : r[1] > r[0]) ++count;
  }
  return count;
}

std::vector<BigInt> parity_family_table_dp(int max_n, int m, ParityFamily which,
                                           const OracleLimits& limits) {
  check_dp_cap(max_n, limits);
  if (m < 1) throw ParameterError("minimum part must be >= 1");
  const int width = 2 * max_n + 1;
  const int offset = max_n;
  // table[(s * 2 + e) * width + d + offset], e = #even mod 2, d = #even - #odd.
  std::vector<BigInt> table(static_cast<size_t>((max_n + 1) * 2 * width));
  auto at = [&](int s, int e, int d) -> BigInt& {
    return table[static_cast<size_t>((s * 2 + e) * width + d + offset)];
  };
  at(0, 0, 0) = 1;
  for (int p = m; p <= max_n; ++p) {
    const bool even = p % 2 == 0;
    for (int s = p; s <= max_n; ++s) {
      const int reach = s - p;
      for (int e = 0; e < 2; ++e) {
        for (int d = -reach; d <= reach; ++d) {
          const BigInt& src = at(s - p, e, d);
          if (src == 0) continue;
          if (even) at(s, e ^ 1, d + 1) += src;
          else at(s, e, d - 1) += src;
        }
      }
    }
  }
  const int want = (which == ParityFamily::E_me || which == ParityFamily::O_me) ? 0 : 1;
  std::vector<BigInt> out(static_cast<size_t>(max_n) + 1);
  for (int s = 0; s <= max_n; ++s) {
    for (int d = -s; d <= s; ++d) {
      if (wants_more_even(which) ? d <= 0 : d >= 0) continue;
      // #odd = #even - d, so its parity is e + d mod 2.
      const int odd_parity = ((want + d) % 2 + 2) % 2;
      if (odd_parity != want) continue;
      out[static_cast<size_t>(s)] += at(s, want, d);
    }
  }
  return out;
}

BigInt count_parity_family(int n, int m, ParityFamily which, const OracleLimits& limits) {
  return parity_family_table_dp(n, m, which, limits)[static_cast<size_t>(n)];
}

ConstraintSpec separated_constraint(SeparationMode mode, bool non_unitary) {
  if (mode == SeparationMode::ordinary) {
    throw ParameterError("separated counts need a separation mode");
  }
  ConstraintSpec c;
  c.mode = mode;
  c.min_part = non_unitary ? 2 : 1;
  c.all_even_excluded = mode == SeparationMode::odd_below_even;
  return c;
}

BigInt count_separated_enum(int n, SeparationMode mode, bool non_unitary,
                            const OracleLimits& limits) {
  return BigInt(static_cast<unsigned long>(
      enumerate(n, separated_constraint(mode, non_unitary), limits).size()));
}

std::vector<BigInt> separated_table_dp(int max_n, SeparationMode mode, bool non_unitary,
                                       const OracleLimits& limits) {
  check_dp_cap(max_n, limits);
  const ConstraintSpec c = separated_constraint(mode, non_unitary);
  const auto size = static_cast<size_t>(max_n) + 1;
  // Lower parity class: the one whose parts sit below the other's.
  const int lower = mode == SeparationMode::even_below_odd ? 0 : 1;
  const int upper = 1 - lower;

  // above[t]: partitions into allowed upper-parity parts all > t.
  std::vector<std::vector<BigInt>> above(size);
  std::vector<BigInt> cur(size);
  cur[0] = 1;
  for (int p = max_n; p >= 0; --p) {
    above[static_cast<size_t>(p)] = cur;
    if (p == 0 || p % 2 != upper || !c.allows_part(p)) continue;
    for (int s = p; s <= max_n; ++s) cur[static_cast<size_t>(s)] += cur[static_cast<size_t>(s - p)];
  }

  std::vector<BigInt> out(size);
  auto accumulate_product = [&](const std::vector<BigInt>& low, const std::vector<BigInt>& high) {
    for (int s = 0; s <= max_n; ++s) {
      const BigInt& a = low[static_cast<size_t>(s)];
      if (a == 0) continue;
      for (int t = 0; s + t <= max_n; ++t) {
        const BigInt& b = high[static_cast<size_t>(t)];
        if (b == 0) continue;
        mpz_addmul(out[static_cast<size_t>(s + t)].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      }
    }
  };

  // No lower-class parts at all: admitted for even_below_odd; for
  // odd_below_even this is the all-even class, which is excluded.
  if (!c.all_even_excluded) {
    std::vector<BigInt> empty_only(size);
    empty_only[0] = 1;
    accumulate_product(empty_only, above[0]);
  }

  std::vector<BigInt> at_most(size);
  at_most[0] = 1;
  for (int p = 1; p <= max_n; ++p) {
    if (p % 2 != lower || !c.allows_part(p)) continue;
    std::vector<BigInt> next = at_most;
    for (int s = p; s <= max_n; ++s) next[static_cast<size_t>(s)] += next[static_cast<size_t>(s - p)];
    std::vector<BigInt> exact(size);
    for (size_t s = 0; s < size; ++s) exact[s] = next[s] - at_most[s];
    accumulate_product(exact, above[static_cast<size_t>(p)]);
    at_most = std::move(next);
  }
  return out;
}

BigInt count_separated(int n, SeparationMode mode, bool non_unitary, const OracleLimits& limits) {
  return separated_table_dp(n, mode, non_unitary, limits)[static_cast<size_t>(n)];
}

std::vector<BigInt> count_table_dp(int max_n, const ConstraintSpec& c, const OracleLimits& limits) {
  check_dp_cap(max_n, limits);
  check_constraint(c);
  if (c.mode != SeparationMode::ordinary || c.count_parity) {
    throw ParameterError("count DP supports only the ordinary mode without count parity");
  }
  std::vector<BigInt> out(static_cast<size_t>(max_n) + 1);
  out[0] = 1;
  for (int p = 1; p <= max_n; ++p) {
    if (!c.allows_part(p)) continue;
    for (int s = p; s <= max_n; ++s) out[static_cast<size_t>(s)] += out[static_cast<size_t>(s - p)];
  }
  return out;
}

}  // namespace pbias
