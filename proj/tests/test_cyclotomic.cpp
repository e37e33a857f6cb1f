#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ccm/cyclotomic.hpp"

namespace ccm {
namespace {

// Φ_n = Π_{d|n} (x^d - 1)^{μ(n/d)}, multiplying the μ = +1 factors and then
// dividing by the μ = -1 factors.
int mobius(int n) {
  int mu = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return 0;
      mu = -mu;
    }
  }
  return n > 1 ? -mu : mu;
}

IntPoly oracle_cyclotomic(int n) {
  IntPoly num{1};
  IntPoly den{1};
  auto times_xd_minus_1 = [](const IntPoly& a, int d) {
    IntPoly r(a.size() + static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i + static_cast<std::size_t>(d)] += a[i];
      r[i] -= a[i];
    }
    return r;
  };
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = mobius(n / d);
    if (mu == 1) num = times_xd_minus_1(num, d);
    if (mu == -1) den = times_xd_minus_1(den, d);
  }
  // den is monic up to sign; long division.
  IntPoly q(num.size() - den.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const std::int64_t lead = num[i + den.size() - 1] / den.back();
    q[i] = lead;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= lead * den[j];
  }
  for (auto c : num) EXPECT_EQ(c, 0) << "inexact division for n = " << n;
  return q;
}

// Field norm Π_{gcd(j,p)=1} σ_j(z): an integer, zero iff z is zero.
double oracle_norm(const std::vector<std::int64_t>& c, int p) {
  double norm = 1.0;
  for (int j = 1; j <= p; ++j) {
    if (std::gcd(j, p) != 1) continue;
    std::complex<double> z = 0;
    for (int k = 0; k < p; ++k) z += static_cast<double>(c[static_cast<std::size_t>(k)]) *
                                     std::polar(1.0, 2.0 * std::numbers::pi * j * k / p);
    norm *= std::abs(z);
  }
  return norm;
}

TEST(Cyclotomic, KnownPolynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (IntPoly{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(2), (IntPoly{1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (IntPoly{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (IntPoly{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(9), (IntPoly{1, 0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (IntPoly{1, 0, -1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(15), (IntPoly{1, -1, 0, 1, -1, 1, 0, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(30), (IntPoly{1, 1, 0, -1, -1, -1, 0, 1, 1}));
}

TEST(Cyclotomic, MatchesMobiusProductForAllModuli) {
  for (int p = 1; p <= kMaxModulus; ++p) {
    EXPECT_EQ(cyclotomic_polynomial(p), oracle_cyclotomic(p)) << "p = " << p;
  }
}

TEST(Cyclotomic, RejectsBadModulus) {
  EXPECT_THROW(cyclotomic_polynomial(0), std::invalid_argument);
  EXPECT_THROW(CycSum(kMaxModulus + 1), std::invalid_argument);
}

TEST(Cyclotomic, ZeroTestAgreesWithFieldNorm) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int p = 1; p <= kMaxModulus; ++p) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(p), 0);
      if (trial % 2 == 0) {
        // Sums of rotated complete d-th root sets are zero.
        for (int d = 2; d <= p; ++d) {
          if (p % d != 0 || coef(rng) <= 0) continue;
          const int shift = std::uniform_int_distribution<int>(0, p - 1)(rng);
          const int weight = coef(rng);
          for (int t = 0; t < d; ++t) c[static_cast<std::size_t>((shift + t * (p / d)) % p)] += weight;
        }
      } else {
        for (auto& x : c) x = coef(rng);
      }
      const CycSum s(p, c);
      const bool expect_zero = oracle_norm(c, p) < 0.5;
      EXPECT_EQ(s.is_zero(), expect_zero) << "p = " << p << " trial " << trial;
      EXPECT_EQ(cyc_is_zero(s), expect_zero);
    }
  }
}

TEST(Cyclotomic, ArithmeticMatchesComplex) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int p : {2, 3, 4, 5, 6, 8, 12}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::int64_t> a(static_cast<std::size_t>(p));
      std::vector<std::int64_t> b(static_cast<std::size_t>(p));
      for (auto& x : a) x = coef(rng);
      for (auto& x : b) x = coef(rng);
      const CycSum x(p, a);
      const CycSum y(p, b);
      EXPECT_LT(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()), 1e-9);
      EXPECT_LT(std::abs((x + y).to_complex() - (x.to_complex() + y.to_complex())), 1e-9);
      EXPECT_LT(std::abs(x.conj().to_complex() - std::conj(x.to_complex())), 1e-9);
      EXPECT_TRUE((x - x).is_zero());
      EXPECT_EQ(x * y, y * x);
    }
  }
}

TEST(Cyclotomic, ValueEqualityIgnoresRepresentation) {
  CycSum a(4, {1, 1, 1, 1});
  EXPECT_TRUE(a.is_zero());
  EXPECT_EQ(a, CycSum(4));
  EXPECT_EQ(CycSum(3, {2, 1, 1}), CycSum::integer(3, 1));
  EXPECT_EQ(CycSum::root(6, 3), CycSum::integer(6, -1));
  EXPECT_EQ(CycSum(6, {1, 0, 0, 0, 0, 0}), CycSum(6, {0, 1, 0, 0, 0, 1}));  // 1 = ω + ω^5
}

TEST(Cyclotomic, GaussianCoordinates) {
  auto g = CycSum(4, {3, 1, 1, 0}).gaussian();
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*g, std::make_pair(std::int64_t{2}, std::int64_t{1}));
  EXPECT_EQ(CycSum(2, {1, 4}).gaussian(), std::make_pair(std::int64_t{-3}, std::int64_t{0}));
  EXPECT_FALSE(CycSum(3, {1, 0, 0}).gaussian().has_value());
}

TEST(Cyclotomic, TaxicabNorm) {
  EXPECT_EQ(taxicab_norm(CycSum(4, {0, 0, 2, 1})), 3);  // -2 + i
  EXPECT_EQ(taxicab_norm(CycSum(4, {1, 1, 1, 1})), 0);
  EXPECT_EQ(taxicab_norm(CycSum(3, {1, 1, 1})), 0);
  EXPECT_GT(taxicab_norm(CycSum(3, {1, 0, 0})), 0);
}

TEST(Cyclotomic, ReduceHasDegreeLength) {
  const auto& ring = CyclotomicRing::get(12);
  EXPECT_EQ(ring.degree(), 4);
  std::vector<std::int64_t> c(12, 0);
  c[4] = 1;  // ω^4 = ω^2 - 1
  EXPECT_EQ(ring.reduce(c), (std::vector<std::int64_t>{-1, 0, 1, 0}));
}

}  // namespace
}  // namespace ccm
