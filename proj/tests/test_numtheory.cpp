#include <gtest/gtest.h>

#include "modcirc/error.hpp"
#include "modcirc/numtheory.hpp"
#include "oracles.hpp"

using namespace modcirc;

TEST(NumTheory, FactorizeListsPrimesAscending) {
  auto f = factorize(360);
  ASSERT_EQ(f.primes.size(), 3u);
  EXPECT_EQ(f.primes[0], (PrimePower{2, 3}));
  EXPECT_EQ(f.primes[1], (PrimePower{3, 2}));
  EXPECT_EQ(f.primes[2], (PrimePower{5, 1}));
  EXPECT_TRUE(factorize(8).is_prime_power());
  EXPECT_FALSE(factorize(6).is_prime_power());
  EXPECT_EQ(factorize(15).prime_list(), (std::vector<std::uint64_t>{3, 5}));
}

TEST(NumTheory, FactorizeRejectsSmallModulus) {
  EXPECT_THROW(factorize(1), Error);
  try {
    factorize(0);
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidModulus);
  }
}

TEST(NumTheory, FactorizationMultipliesBack) {
  for (std::uint64_t m = 2; m < 2000; ++m) {
    std::uint64_t prod = 1;
    for (auto pp : factorize(m).primes) {
      EXPECT_TRUE(is_prime(pp.prime));
      for (unsigned i = 0; i < pp.exponent; ++i) prod *= pp.prime;
    }
    EXPECT_EQ(prod, m);
  }
}

TEST(NumTheory, IntegerRootMatchesLinearSearch) {
  for (std::uint64_t n = 0; n < 3000; ++n) {
    for (unsigned r = 1; r <= 4; ++r) {
      std::uint64_t k = 0;
      while (true) {
        std::uint64_t p = 1;
        for (unsigned i = 0; i < r; ++i) p *= k + 1;
        if (p > n) break;
        ++k;
      }
      ASSERT_EQ(integer_root(n, r), k) << n << " " << r;
      std::uint64_t c = integer_root_ceil(n, r);
      std::uint64_t pc = 1, pb = 1;
      for (unsigned i = 0; i < r; ++i) {
        pc *= c;
        pb *= c ? c - 1 : 0;
      }
      EXPECT_GE(pc, n);
      if (c > 0) {
        EXPECT_LT(pb, n);
      }
    }
  }
  EXPECT_EQ(integer_root(100, 2), 10u);
  EXPECT_EQ(integer_root(UINT64_MAX, 2), 4294967295u);
}

TEST(NumTheory, FloorLog) {
  EXPECT_EQ(floor_log(2, 1), 0u);
  EXPECT_EQ(floor_log(2, 4), 2u);
  EXPECT_EQ(floor_log(3, 8), 1u);
  EXPECT_EQ(floor_log(3, 9), 2u);
}

TEST(NumTheory, CheckedPowDetectsOverflow) {
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_EQ(checked_pow(2, 63), std::uint64_t{1} << 63);
  EXPECT_FALSE(checked_pow(2, 64).has_value());
  EXPECT_FALSE(checked_pow(10, 30).has_value());
}

TEST(NumTheory, BinomialMatchesPascal) {
  auto rows = oracle::pascal(60, UINT64_MAX);
  for (std::size_t n = 0; n <= 60; ++n) {
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(binomial(n, k), BigInt(rows[n][k]));
    EXPECT_EQ(binomial(n, n + 1), 0);
  }
  BigInt direct = 1;
  for (int i = 0; i < 10; ++i) direct = direct * (600 - i) / (i + 1);
  EXPECT_EQ(binomial(600, 10), direct);
}

TEST(NumTheory, BinomialModAndTable) {
  for (std::uint64_t m : {2u, 3u, 6u, 10u, 12u}) {
    auto rows = oracle::pascal(40, m);
    BinomialTable table(40, m);
    for (std::size_t n = 0; n <= 40; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        EXPECT_EQ(binomial_mod(n, k, m), rows[n][k]);
        EXPECT_EQ(table(n, k), rows[n][k]);
      }
    }
  }
}

TEST(NumTheory, BinomialPeriodFormulaAgreesWithBruteForce) {
  for (std::uint64_t m : {2u, 3u, 4u, 6u, 9u, 10u, 12u, 15u, 30u}) {
    for (std::uint64_t x = 1; x <= 6; ++x) {
      const auto l = binomial_period_formula(m, x);
      const auto horizon = 4 * l;
      EXPECT_EQ(oracle::binomial_period(m, x, horizon), l) << m << " " << x;
      EXPECT_EQ(binomial_period_bruteforce(m, x, horizon), l) << m << " " << x;
    }
  }
  EXPECT_EQ(binomial_period_formula(6, 1), 6u);
  EXPECT_EQ(binomial_period_formula(6, 2), 12u);
  EXPECT_EQ(binomial_period_formula(6, 3), 36u);
  EXPECT_THROW(binomial_period_formula(6, 0), Error);
}

TEST(NumTheory, GatePeriodBound) {
  EXPECT_EQ(gate_period_bound(6, 4), 72u);
  EXPECT_EQ(gate_period_bound(6, 0), 6u);
  EXPECT_EQ(gate_period_bound(6, 1), 6u);
  EXPECT_EQ(gate_period_bound(10, 5), 10u * 4 * 5);
}

TEST(NumTheory, StructuredPeriods) {
  auto s = structured_periods(6, 4);
  EXPECT_EQ(s, (std::vector<std::uint64_t>{1, 6, 12, 18, 24, 36, 72}));
  EXPECT_EQ(structured_periods(6, 0), (std::vector<std::uint64_t>{1, 6}));
  EXPECT_EQ(s.back(), gate_period_bound(6, 4));
}
