#include <gtest/gtest.h>

#include "entropylab/nerode.hpp"
#include "entropylab/primes.hpp"
#include "entropylab/zoo.hpp"
#include "oracles.hpp"

using namespace entropylab;

TEST(Sieve, MatchesTrialDivision) {
  const SieveTable sieve(100'000);
  for (std::uint64_t n = 0; n <= 100'000; ++n) EXPECT_EQ(sieve.is_prime(n), oracle::is_prime_trial(n)) << n;
  EXPECT_FALSE(sieve.is_prime(100'003));
  EXPECT_EQ(primes_up_to(30), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(first_primes(10), primes_up_to(29));
}

TEST(Plausible, Examples) {
  EXPECT_TRUE(is_plausible(pattern_mask({0, 2}), 3));
  EXPECT_FALSE(is_plausible(pattern_mask({0, 1}), 2));
  for (std::size_t n = 0; n <= 20; ++n) EXPECT_TRUE(is_plausible(0, n));
  EXPECT_THROW(is_plausible(pattern_mask({3}), 3), ContractViolation);
}

TEST(Plausible, SmallCounts) {
  EXPECT_EQ(count_plausible(1), 2u);
  EXPECT_EQ(count_plausible(2), 3u);
  EXPECT_EQ(count_plausible(3), 5u);
  EXPECT_EQ(enumerate_plausible(3), (std::vector<PatternMask>{0, 1, 2, 4, 5}));
  EXPECT_THROW(count_plausible(25), Error);
}

TEST(Plausible, MatchesNaiveFilter) {
  for (std::size_t n = 0; n <= 16; ++n) {
    EXPECT_EQ(count_plausible(n), oracle::count_plausible_naive(n)) << n;
    if (n <= 10) {
      for (PatternMask m = 0; m < (PatternMask{1} << n); ++m) EXPECT_EQ(is_plausible(m, n), oracle::plausible_naive(m, n));
    }
  }
}

TEST(Occurrence, Examples) {
  EXPECT_EQ(occurrence_search(pattern_mask({0, 1}), 2, 1000), 2u);
  EXPECT_EQ(occurrence_search(pattern_mask({0, 2}), 3, 1000), 3u);
  EXPECT_EQ(occurrence_search(0, 1, 1000), 1u);
  // {0,1,2} is not plausible and never occurs
  EXPECT_FALSE(occurrence_search(pattern_mask({0, 1, 2}), 3, 10'000).has_value());
}

TEST(Occurrence, VerifyExamples) {
  auto r = verify_occurrence_conjecture(4, 10'000);
  EXPECT_TRUE(r.missing.empty());
  EXPECT_EQ(r.checked, count_plausible(4));
  EXPECT_EQ(r.k_max, 10'000u);
  r = verify_occurrence_conjecture(1, 10);
  EXPECT_TRUE(r.missing.empty());
  EXPECT_EQ(r.checked, 2u);
  r = verify_occurrence_conjecture(2, 2);
  EXPECT_EQ(r.k_max, 2u);
  EXPECT_FALSE(r.missing.empty());
}

TEST(Occurrence, UptoAgreesWithSingle) {
  auto all = verify_occurrence_conjecture_upto(8, 5000);
  ASSERT_EQ(all.size(), 8u);
  for (const auto& r : all) {
    auto single = verify_occurrence_conjecture(r.n, 5000);
    EXPECT_EQ(r.checked, single.checked);
    EXPECT_EQ(r.missing, single.missing);
  }
}

// every pattern observed at k > n is plausible
TEST(Occurrence, LateWindowsArePlausible) {
  const SieveTable sieve(100'020);
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint64_t k = n + 1; k <= 100'000; ++k) {
      const auto m = window_pattern(sieve, k, n);
      ASSERT_TRUE(is_plausible(m, n)) << "k=" << k << " n=" << n;
    }
  }
}

TEST(Occurrence, WindowPatternBits) {
  const SieveTable sieve(100);
  EXPECT_EQ(window_pattern(sieve, 2, 2), pattern_mask({0, 1}));
  EXPECT_EQ(window_pattern(sieve, 3, 3), pattern_mask({0, 2}));
  EXPECT_EQ(window_pattern(sieve, 24, 4), 0u);
}

TEST(Mertens, Examples) {
  EXPECT_EQ(mertens_product(1), Rational(1, 2));
  EXPECT_EQ(mertens_product(3), Rational(4, 15));
  EXPECT_LT(mertens_product(10), Rational(1, 5));
  EXPECT_NEAR(mertens_product(10).convert_to<double>(), 0.1579, 1e-4);
  EXPECT_THROW(mertens_product(0), Error);
}

TEST(Mertens, StrictlyDecreasing) {
  for (std::size_t k = 1; k < 60; ++k) EXPECT_LT(mertens_product(k + 1), mertens_product(k));
}

TEST(PrimeBound, Examples) {
  auto r = prime_bound_check(1, 2);
  EXPECT_EQ(r.n, 6u);
  EXPECT_EQ(r.bound, BigInt(24));
  EXPECT_TRUE(r.ok);
  r = prime_bound_check(1, 1);
  EXPECT_EQ(r.n, 2u);
  EXPECT_EQ(r.bound, BigInt(4));
  EXPECT_EQ(r.s_n, 3u);
  EXPECT_TRUE(r.ok);
  r = prime_bound_check(2, 1);
  EXPECT_EQ(r.n, 4u);
  EXPECT_EQ(r.bound, BigInt(8));
  EXPECT_EQ(r.s_n, count_plausible(4));
  EXPECT_TRUE(r.ok);
  EXPECT_THROW(prime_bound_check(0, 1), Error);
}

TEST(PrimeThetaUpper, Examples) {
  EXPECT_EQ(prime_theta_upper(1), 6u);
  EXPECT_EQ(prime_theta_upper(2), 9u);
  EXPECT_EQ(prime_theta_upper(0), 4u);
}

TEST(PrimeTheta, BelowUpperBound) {
  const auto probes = unary_range(100'000);
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_LE(theta_index_unary(prime_oracle(), n, probes).index(), prime_theta_upper(n)) << n;
  }
}

// bits of the signature of m > 2 all have the parity of m + 1
TEST(PrimeTheta, ParityStructure) {
  auto l = prime_oracle();
  for (std::uint64_t m = 3; m <= 10'000; ++m) {
    const auto sig = witness_signature_unary(l, Natural(m), 10);
    for (std::size_t j = 0; j < sig.size(); ++j) {
      if (sig.test(j)) {
        ASSERT_EQ((m + j) % 2, 1u) << "m=" << m << " j=" << j;
      }
    }
  }
}
