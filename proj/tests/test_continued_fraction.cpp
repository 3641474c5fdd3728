#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "icf/continued_fraction.hpp"

using namespace icf;

namespace {

// Plain Euclid on machine integers; the canonical form never ends in 1.
std::vector<long> euclid(long p, long q) {
  std::vector<long> out;
  long a0 = p / q;
  if (p % q != 0 && p < 0) --a0;
  out.push_back(a0);
  long r = p - a0 * q, d = q;
  while (r != 0) {
    out.push_back(d / r);
    const long next = d % r;
    d = r;
    r = next;
  }
  return out;
}

ContinuedFraction cf(long p, long q) { return cf_of_rational(BigInt(p), BigInt(q)); }

}  // namespace

TEST(CfOfRational, Examples) {
  EXPECT_EQ(cf(355, 113).str(), "[3; 7, 16]");
  EXPECT_EQ(cf(1, 2).str(), "[0; 2]");
  EXPECT_EQ(cf(2, 5).str(), "[0; 2, 2]");
  EXPECT_EQ(cf(0, 1).str(), "[0;]");
  EXPECT_EQ(cf(5, 1).str(), "[5;]");
}

TEST(CfOfRational, MatchesEuclidOracle) {
  for (long q = 1; q <= 60; ++q) {
    for (long p = -70; p <= 130; ++p) {
      const auto expected = euclid(p, q);
      const ContinuedFraction got = cf(p, q);
      ASSERT_EQ(got.a0, expected[0]) << p << "/" << q;
      ASSERT_EQ(got.quotients.size(), expected.size() - 1) << p << "/" << q;
      for (std::size_t i = 1; i < expected.size(); ++i) {
        EXPECT_EQ(got.quotients[i - 1], static_cast<Quotient>(expected[i]));
      }
    }
  }
}

TEST(CfOfRational, CanonicalLastQuotientAtLeastTwo) {
  for (long q = 2; q <= 200; ++q) {
    for (long p = 1; p < q; ++p) {
      const auto c = cf(p, q);
      ASSERT_FALSE(c.quotients.empty());
      EXPECT_GE(c.quotients.back(), 2u);
      for (const auto a : c.quotients) EXPECT_GE(a, 1u);
    }
  }
}

TEST(CfOfRational, RejectsBadDenominator) { EXPECT_THROW(cf(1, 0), InvalidDenominator); }

TEST(ValueOfCf, Examples) {
  EXPECT_EQ(value_of_cf(ContinuedFraction{0, {2, 3}}), (Fraction<BigInt>{3, 7}));
  EXPECT_EQ(value_of_cf(ContinuedFraction{0, {2}}), (Fraction<BigInt>{1, 2}));
  EXPECT_EQ(value_of_cf(ContinuedFraction{3, {7, 16}}), (Fraction<BigInt>{355, 113}));
  EXPECT_EQ(value_of_cf(ContinuedFraction{-1, {2}}), (Fraction<BigInt>{-1, 2}));
}

TEST(ValueOfCf, RoundTripsEveryFractionOfHeightAtMost500) {
  for (long q = 1; q <= 500; ++q) {
    for (long p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Fraction<BigInt> back = value_of_cf(cf(p, q));
      ASSERT_EQ(back.num, p);
      ASSERT_EQ(back.den, q);
    }
  }
}

TEST(ValueOfCf, NonCanonicalExpansionStillEvaluates) {
  // [0; 1, 1] = 1/2 as well.
  EXPECT_EQ(value_of_cf(ContinuedFraction{0, {1, 1}}), (Fraction<BigInt>{1, 2}));
}

TEST(TerminalQuotient, LastPartialQuotient) {
  EXPECT_EQ(terminal_quotient(reduce_mod1(BigInt(2), BigInt(5))), 2u);
  EXPECT_EQ(terminal_quotient(reduce_mod1(BigInt(3), BigInt(7))), 3u);
  EXPECT_EQ(terminal_quotient(reduce_mod1(BigInt(1), BigInt(9))), 9u);
  EXPECT_EQ(terminal_quotient(reduce_mod1(std::int64_t{355 - 339}, std::int64_t{113})), 16u);
}

TEST(TerminalQuotient, ZeroClassCountsAsOne) {
  EXPECT_EQ(terminal_quotient(FareyFraction()), 1u);
}

TEST(TerminalQuotient, AgreesWithExpansion) {
  for (std::int64_t q = 2; q <= 300; ++q) {
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const auto beta = BasicFareyFraction<std::int64_t>::from_reduced(p, q);
      EXPECT_EQ(terminal_quotient(beta), cf_of_rational(beta).quotients.back());
    }
  }
}

TEST(QuotientCap, LargeQuotientsUpToCapAreAccepted) {
  const BigInt cap(kQuotientCap);
  const ContinuedFraction c = cf_of_rational(BigInt(1), cap);
  EXPECT_EQ(c.quotients, std::vector<Quotient>{kQuotientCap});
  EXPECT_THROW(cf_of_rational(BigInt(1), cap + 1), QuotientOverflow);
}
