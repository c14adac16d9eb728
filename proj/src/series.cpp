#include "pbias/series.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "pbias/errors.hpp"

namespace pbias {

namespace {

void check_order(int order) {
  if (order < 0) throw ParameterError("truncation order must be nonnegative");
}

}  // namespace

Monomial::Monomial(int coefficient, int exponent) {
  if (coefficient < -1 || coefficient > 1) {
    throw ParameterError("monomial coefficient must be -1, 0 or 1");
  }
  if (exponent < 0) throw ParameterError("monomial exponent must be nonnegative");
  coefficient_ = coefficient;
  exponent_ = coefficient == 0 ? 0 : exponent;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  return {coefficient_ * other.coefficient_, exponent_ + other.exponent_};
}

Monomial Monomial::shifted(int k) const {
  if (is_zero()) return {};
  return {coefficient_, exponent_ + k};
}

FormalSeries::FormalSeries(int order) {
  check_order(order);
  coeffs_.resize(static_cast<size_t>(order) + 1);
}

FormalSeries::FormalSeries(std::span<const BigInt> coeffs, int order) : FormalSeries(order) {
  if (coeffs.size() > coeffs_.size()) {
    throw ParameterError("more coefficients than order + 1");
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

FormalSeries::FormalSeries(std::initializer_list<long> coeffs, int order) : FormalSeries(order) {
  if (coeffs.size() > coeffs_.size()) {
    throw ParameterError("more coefficients than order + 1");
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

FormalSeries FormalSeries::one(int order) {
  FormalSeries s(order);
  s.coeffs_[0] = 1;
  return s;
}

FormalSeries FormalSeries::monomial(const Monomial& m, int order) {
  FormalSeries s(order);
  if (!m.is_zero() && m.exponent() <= order) {
    s.coeffs_[static_cast<size_t>(m.exponent())] = m.coefficient();
  }
  return s;
}

const BigInt& FormalSeries::coefficient(int n) const {
  if (n < 0 || n > order()) {
    throw DomainError("beyond truncation: coefficient " + std::to_string(n) +
                      " requested from a series of order " + std::to_string(order()));
  }
  return coeffs_[static_cast<size_t>(n)];
}

FormalSeries FormalSeries::truncated(int new_order) const {
  check_order(new_order);
  if (new_order > order()) throw DomainError("cannot raise truncation order");
  FormalSeries s(new_order);
  std::copy_n(coeffs_.begin(), new_order + 1, s.coeffs_.begin());
  return s;
}

int FormalSeries::valuation() const {
  for (int i = 0; i <= order(); ++i) {
    if (coeffs_[static_cast<size_t>(i)] != 0) return i;
  }
  return order() + 1;
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()));
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

FormalSeries& FormalSeries::operator*=(const FormalSeries& rhs) {
  *this = *this * rhs;
  return *this;
}

FormalSeries& FormalSeries::operator*=(const BigInt& k) {
  for (auto& c : coeffs_) c *= k;
  return *this;
}

FormalSeries& FormalSeries::add_shifted(const FormalSeries& rhs, int k, long factor) {
  if (k < 0) throw ParameterError("shift must be nonnegative");
  const int top = std::min(order(), rhs.order() + k);
  for (int i = k; i <= top; ++i) {
    const auto& src = rhs.coeffs_[static_cast<size_t>(i - k)];
    if (src == 0) continue;
    auto& dst = coeffs_[static_cast<size_t>(i)];
    if (factor == 1) {
      dst += src;
    } else if (factor == -1) {
      dst -= src;
    } else if (factor > 0) {
      mpz_addmul_ui(dst.get_mpz_t(), src.get_mpz_t(), static_cast<unsigned long>(factor));
    } else {
      mpz_submul_ui(dst.get_mpz_t(), src.get_mpz_t(), static_cast<unsigned long>(-factor));
    }
  }
  return *this;
}

FormalSeries& FormalSeries::multiply_binomial(const Monomial& m) {
  if (m.is_zero()) return *this;
  const int e = m.exponent();
  // Descending so every read sees the unmodified input.
  for (int i = order(); i >= e; --i) {
    auto& dst = coeffs_[static_cast<size_t>(i)];
    const auto& src = coeffs_[static_cast<size_t>(i - e)];
    if (e == 0) {
      if (m.coefficient() == 1) {
        dst = 0;
      } else {
        dst *= 2;
      }
    } else if (m.coefficient() == 1) {
      dst -= src;
    } else {
      dst += src;
    }
  }
  return *this;
}

FormalSeries& FormalSeries::divide_binomial(const Monomial& m) {
  if (m.is_zero()) return *this;
  const int e = m.exponent();
  if (e == 0) throw DomainError("non-invertible series: constant term of divisor is not a unit");
  for (int i = e; i <= order(); ++i) {
    auto& dst = coeffs_[static_cast<size_t>(i)];
    const auto& src = coeffs_[static_cast<size_t>(i - e)];
    if (m.coefficient() == 1) {
      dst += src;
    } else {
      dst -= src;
    }
  }
  return *this;
}

FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }

FormalSeries operator-(FormalSeries a) {
  a *= BigInt(-1);
  return a;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  const int n = std::min(a.order(), b.order());
  FormalSeries out(n);
  std::vector<BigInt> acc(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const auto& ai = a[i];
    if (ai == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      const auto& bj = b[j];
      if (bj == 0) continue;
      mpz_addmul(acc[static_cast<size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
    }
  }
  return FormalSeries(acc, n);
}

FormalSeries operator*(FormalSeries a, const BigInt& k) { return a *= k; }
FormalSeries operator*(const BigInt& k, FormalSeries a) { return a *= k; }

FormalSeries shift(const FormalSeries& a, int k) {
  FormalSeries out(a.order());
  out.add_shifted(a, k);
  return out;
}

FormalSeries reciprocal(const FormalSeries& a) {
  const BigInt& a0 = a[0];
  if (a0 != 1 && a0 != -1) {
    throw DomainError("non-invertible series: constant term is not +1 or -1");
  }
  const int n = a.order();
  std::vector<BigInt> b(static_cast<size_t>(n) + 1);
  b[0] = a0;
  BigInt sum;
  for (int i = 1; i <= n; ++i) {
    sum = 0;
    for (int k = 1; k <= i; ++k) {
      const auto& ak = a[k];
      if (ak == 0) continue;
      mpz_addmul(sum.get_mpz_t(), ak.get_mpz_t(), b[static_cast<size_t>(i - k)].get_mpz_t());
    }
    // a0 is its own inverse.
    b[static_cast<size_t>(i)] = a0 == 1 ? BigInt(-sum) : sum;
  }
  return FormalSeries(b, n);
}

namespace {

void check_step(int step) {
  if (step < 1) throw ParameterError("pochhammer step must be positive");
}

}  // namespace

FormalSeries poch_finite(const Monomial& a, int step, int n, int order) {
  check_step(step);
  if (n < 0) throw ParameterError("pochhammer length must be nonnegative");
  FormalSeries out = FormalSeries::one(order);
  if (a.is_zero()) return out;
  for (int k = 0; k < n; ++k) {
    const Monomial factor = a.shifted(step * k);
    if (factor.exponent() > order) break;
    out.multiply_binomial(factor);
  }
  return out;
}

FormalSeries poch_infinite(const Monomial& a, int step, int order) {
  check_step(step);
  if (!a.is_zero() && a.exponent() == 0) throw DomainError("divergent product");
  FormalSeries out = FormalSeries::one(order);
  if (a.is_zero()) return out;
  for (int e = a.exponent(); e <= order; e += step) out.multiply_binomial(Monomial(a.coefficient(), e));
  return out;
}

FormalSeries poch_finite_inverse(const Monomial& a, int step, int n, int order) {
  check_step(step);
  if (n < 0) throw ParameterError("pochhammer length must be nonnegative");
  FormalSeries out = FormalSeries::one(order);
  if (a.is_zero()) return out;
  for (int k = 0; k < n; ++k) {
    const Monomial factor = a.shifted(step * k);
    if (factor.exponent() > order) break;
    out.divide_binomial(factor);
  }
  return out;
}

FormalSeries poch_infinite_inverse(const Monomial& a, int step, int order) {
  check_step(step);
  if (!a.is_zero() && a.exponent() == 0) throw DomainError("divergent product");
  FormalSeries out = FormalSeries::one(order);
  if (a.is_zero()) return out;
  for (int e = a.exponent(); e <= order; e += step) out.divide_binomial(Monomial(a.coefficient(), e));
  return out;
}

std::ostream& operator<<(std::ostream& os, const FormalSeries& s) {
  bool first = true;
  for (int i = 0; i <= s.order(); ++i) {
    const auto& c = s[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << '-';
    const BigInt mag = abs(c);
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i > 0) os << 'q';
    if (i > 1) os << '^' << i;
    first = false;
  }
  if (first) os << '0';
  return os << " + O(q^" << s.order() + 1 << ')';
}

}  // namespace pbias
