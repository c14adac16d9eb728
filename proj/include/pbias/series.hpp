#pragma once

// Truncated power series in one variable q with arbitrary-precision integer
// coefficients. Every value carries its own truncation order N and stores
// exactly N + 1 coefficients; binary operations truncate to the smaller order.

#include <gmpxx.h>

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace pbias {

using BigInt = mpz_class;

/// A substitution value c * q^e with c in {-1, 0, +1}.
///
/// Every parameter the identities and generating functions need (a, b, c, z,
/// x and the base replacement q -> q^s) has this shape.  The zero monomial
/// always has exponent 0.
class Monomial {
 public:
  constexpr Monomial() = default;

  /// Throws ParameterError unless coefficient is -1, 0 or 1 and exponent >= 0.
  Monomial(int coefficient, int exponent);

  static Monomial zero() { return {}; }
  static Monomial q(int exponent) { return {1, exponent}; }
  static Monomial minus_q(int exponent) { return {-1, exponent}; }

  int coefficient() const { return coefficient_; }
  int exponent() const { return exponent_; }
  bool is_zero() const { return coefficient_ == 0; }

  /// Product of two monomials (zero absorbs).
  Monomial operator*(const Monomial& other) const;

  /// this * q^k, k >= 0.
  Monomial shifted(int k) const;

  bool operator==(const Monomial&) const = default;

 private:
  int coefficient_ = 0;
  int exponent_ = 0;
};

class FormalSeries {
 public:
  /// The zero series at order 0.
  FormalSeries() : FormalSeries(0) {}

  /// The zero series at the given order.
  explicit FormalSeries(int order);

  /// Series with the given low coefficients, zero-padded to order + 1 terms.
  /// Throws ParameterError if more than order + 1 coefficients are supplied.
  FormalSeries(std::span<const BigInt> coeffs, int order);
  FormalSeries(std::initializer_list<long> coeffs, int order);

  static FormalSeries one(int order);
  /// c * q^e truncated at order.
  static FormalSeries monomial(const Monomial& m, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const BigInt> coeffs() const { return coeffs_; }

  /// Unchecked access, n in [0, order].
  const BigInt& operator[](int n) const { return coeffs_[static_cast<size_t>(n)]; }

  /// Checked access; throws DomainError("beyond truncation") if n > order.
  const BigInt& coefficient(int n) const;

  /// Coefficients above new_order dropped; new_order must not exceed order().
  FormalSeries truncated(int new_order) const;

  /// Lowest index with a nonzero coefficient, or order() + 1 for the zero series.
  int valuation() const;
  bool is_zero() const { return valuation() > order(); }

  FormalSeries& operator+=(const FormalSeries& rhs);
  FormalSeries& operator-=(const FormalSeries& rhs);
  FormalSeries& operator*=(const FormalSeries& rhs);
  FormalSeries& operator*=(const BigInt& k);

  /// this += factor * q^k * rhs, truncated at this->order().
  FormalSeries& add_shifted(const FormalSeries& rhs, int k, long factor = 1);

  /// this *= (1 - m), in place and in O(N).
  FormalSeries& multiply_binomial(const Monomial& m);

  /// this /= (1 - m), in place and in O(N).  m must be zero or have exponent
  /// >= 1; otherwise DomainError("non-invertible series").
  FormalSeries& divide_binomial(const Monomial& m);

  bool operator==(const FormalSeries&) const = default;

 private:
  std::vector<BigInt> coeffs_;
};

FormalSeries operator+(FormalSeries a, const FormalSeries& b);
FormalSeries operator-(FormalSeries a, const FormalSeries& b);
FormalSeries operator-(FormalSeries a);
FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator*(FormalSeries a, const BigInt& k);
FormalSeries operator*(const BigInt& k, FormalSeries a);

inline FormalSeries add(const FormalSeries& a, const FormalSeries& b) { return a + b; }
inline FormalSeries sub(const FormalSeries& a, const FormalSeries& b) { return a - b; }
inline FormalSeries mul(const FormalSeries& a, const FormalSeries& b) { return a * b; }
inline FormalSeries scale(const FormalSeries& a, const BigInt& k) { return a * k; }

/// Multiplication by q^k: coefficients move up by k, truncated at a.order().
FormalSeries shift(const FormalSeries& a, int k);

/// Inverse under multiplication.  The constant term must be +1 or -1,
/// otherwise DomainError("non-invertible series").
FormalSeries reciprocal(const FormalSeries& a);

/// (a; q^step)_n = prod_{k=1}^{n} (1 - a q^{step (k-1)}), truncated at order.
FormalSeries poch_finite(const Monomial& a, int step, int n, int order);

/// (a; q^step)_inf.  Requires a.exponent() >= 1 unless a is zero, otherwise
/// DomainError("divergent product").
FormalSeries poch_infinite(const Monomial& a, int step, int order);

/// 1 / (a; q^step)_n, computed factor by factor.
FormalSeries poch_finite_inverse(const Monomial& a, int step, int n, int order);

/// 1 / (a; q^step)_inf, computed factor by factor.
FormalSeries poch_infinite_inverse(const Monomial& a, int step, int order);

std::ostream& operator<<(std::ostream& os, const FormalSeries& s);

}  // namespace pbias
