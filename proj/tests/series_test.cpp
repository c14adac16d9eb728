#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "pbias/errors.hpp"
#include "pbias/series.hpp"

using namespace pbias;

namespace {

FormalSeries random_series(std::mt19937& rng, int order, bool unit_constant = false) {
  std::uniform_int_distribution<long> coef(-9, 9);
  std::vector<BigInt> c;
  for (int i = 0; i <= order; ++i) c.emplace_back(coef(rng));
  if (unit_constant) c[0] = (rng() % 2) ? 1 : -1;
  return FormalSeries(c, order);
}

}  // namespace

TEST(Series, MakeZeroPads) {
  const FormalSeries s({1}, 3);
  EXPECT_EQ(s.order(), 3);
  EXPECT_EQ(s, FormalSeries({1, 0, 0, 0}, 3));
  EXPECT_EQ(FormalSeries({0, 1}, 2), FormalSeries::monomial(Monomial::q(1), 2));
  EXPECT_THROW(FormalSeries({1, 2, 3}, 1), ParameterError);
}

TEST(Series, AddSubScale) {
  EXPECT_EQ(FormalSeries({1, -1}, 1) + FormalSeries({0, 1}, 1), FormalSeries::one(1));
  EXPECT_TRUE((FormalSeries::one(2) - FormalSeries::one(2)).is_zero());
  EXPECT_EQ(scale(FormalSeries({1, 1}, 1), 3), FormalSeries({3, 3}, 1));
}

TEST(Series, MixedOrderTruncatesToMinimum) {
  const auto s = FormalSeries({1, 1, 1, 1}, 3) + FormalSeries({1, 1}, 1);
  EXPECT_EQ(s.order(), 1);
  EXPECT_EQ(s, FormalSeries({2, 2}, 1));
}

TEST(Series, Multiplication) {
  EXPECT_EQ(FormalSeries({1, 1}, 2) * FormalSeries({1, -1}, 2), FormalSeries({1, 0, -1}, 2));
  EXPECT_EQ(FormalSeries({1, -1}, 3) * FormalSeries({1, 1, 1, 1}, 3), FormalSeries::one(3));
  const auto q = FormalSeries::monomial(Monomial::q(1), 1);
  EXPECT_TRUE((q * q).is_zero());
}

TEST(Series, Shift) {
  EXPECT_EQ(shift(FormalSeries::one(3), 2), FormalSeries({0, 0, 1, 0}, 3));
  EXPECT_EQ(shift(FormalSeries({1, 1}, 1), 0), FormalSeries({1, 1}, 1));
  EXPECT_TRUE(shift(FormalSeries::one(3), 5).is_zero());
}

TEST(Series, Reciprocal) {
  EXPECT_EQ(reciprocal(FormalSeries({1, -1}, 3)), FormalSeries({1, 1, 1, 1}, 3));
  EXPECT_EQ(reciprocal(FormalSeries::one(4)), FormalSeries::one(4));
  try {
    reciprocal(FormalSeries({0, 1, 1}, 2));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("non-invertible series"), std::string::npos);
  }
}

TEST(Series, Coefficient) {
  const FormalSeries s({1, -1}, 1);
  EXPECT_EQ(s.coefficient(1), -1);
  EXPECT_EQ(s.coefficient(0), 1);
  try {
    (void)s.coefficient(5);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("beyond truncation"), std::string::npos);
  }
}

TEST(Series, MonomialValidation) {
  EXPECT_THROW(Monomial(2, 1), ParameterError);
  EXPECT_THROW(Monomial(1, -1), ParameterError);
  EXPECT_EQ(Monomial(0, 5), Monomial::zero());
  EXPECT_EQ(Monomial::q(2) * Monomial::minus_q(3), Monomial::minus_q(5));
  EXPECT_EQ(Monomial::zero() * Monomial::q(3), Monomial::zero());
}

TEST(Pochhammer, Finite) {
  EXPECT_EQ(poch_finite(Monomial::q(1), 1, 2, 3), FormalSeries({1, -1, -1, 1}, 3));
  EXPECT_EQ(poch_finite(Monomial::q(7), 3, 0, 4), FormalSeries::one(4));
  EXPECT_EQ(poch_finite(Monomial::q(2), 2, 1, 4), FormalSeries({1, 0, -1}, 4));
}

TEST(Pochhammer, Infinite) {
  EXPECT_EQ(poch_infinite(Monomial::q(1), 1, 5), FormalSeries({1, -1, -1, 0, 0, 1}, 5));
  EXPECT_EQ(poch_infinite(Monomial::q(2), 2, 3), FormalSeries({1, 0, -1, 0}, 3));
  EXPECT_EQ(poch_infinite(Monomial::zero(), 1, 3), FormalSeries::one(3));
  try {
    poch_infinite(Monomial::q(0), 1, 3);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("divergent product"), std::string::npos);
  }
}

TEST(Pochhammer, EulerPentagonalToOrder100) {
  const int order = 100;
  FormalSeries expected(order);
  std::vector<BigInt> c(order + 1);
  for (int k = -10; k <= 10; ++k) {
    const int e = k * (3 * k - 1) / 2;
    if (e <= order) c[static_cast<size_t>(e)] += (k % 2 == 0) ? 1 : -1;
  }
  EXPECT_EQ(poch_infinite(Monomial::q(1), 1, order), FormalSeries(c, order));
}

TEST(Pochhammer, InverseMatchesReciprocal) {
  for (int step = 1; step <= 3; ++step) {
    const auto a = Monomial::minus_q(step);
    EXPECT_EQ(poch_infinite_inverse(a, step, 40), reciprocal(poch_infinite(a, step, 40)));
    EXPECT_EQ(poch_finite_inverse(a, step, 5, 40), reciprocal(poch_finite(a, step, 5, 40)));
  }
}

TEST(SeriesProperties, RingAxioms) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    const int order = static_cast<int>(rng() % 12);
    const auto a = random_series(rng, order), b = random_series(rng, order), c = random_series(rng, order);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(SeriesProperties, ReciprocalIsInverse) {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const int order = static_cast<int>(rng() % 15);
    const auto a = random_series(rng, order, true);
    EXPECT_EQ(a * reciprocal(a), FormalSeries::one(order));
  }
}

TEST(SeriesProperties, PochhammerRecurrence) {
  for (int s = 1; s <= 3; ++s) {
    for (int n = 0; n < 6; ++n) {
      const auto a = Monomial::minus_q(2);
      auto next = poch_finite(a, s, n, 30);
      next.multiply_binomial(a.shifted(s * n));
      EXPECT_EQ(poch_finite(a, s, n + 1, 30), next);
    }
  }
}

TEST(SeriesProperties, InfiniteAgreesWithLongFinite) {
  const int order = 25;
  for (int s = 1; s <= 3; ++s) {
    const auto a = Monomial::q(1);
    const int k = (order - 1) / s + 2;  // a.exponent + s(k-1) > order
    EXPECT_EQ(poch_infinite(a, s, order), poch_finite(a, s, k, order));
  }
}

TEST(SeriesProperties, TruncationMonotonicity) {
  for (int m = 0; m <= 30; m += 5) {
    EXPECT_EQ(poch_infinite_inverse(Monomial::q(1), 1, 60).truncated(m), poch_infinite_inverse(Monomial::q(1), 1, m));
  }
}

TEST(SeriesProperties, BinomialDivisionUndoesMultiplication) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(rng, 15);
    const Monomial m(rng() % 2 ? 1 : -1, 1 + static_cast<int>(rng() % 4));
    auto b = a;
    b.multiply_binomial(m);
    b.divide_binomial(m);
    EXPECT_EQ(a, b);
  }
  auto s = FormalSeries::one(3);
  EXPECT_THROW(s.divide_binomial(Monomial::q(0)), DomainError);
}

TEST(Series, PrettyPrint) {
  std::ostringstream os;
  os << FormalSeries({1, -1, 0, 2}, 3);
  EXPECT_EQ(os.str(), "1 - q + 2q^3 + O(q^4)");
}
