#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "icf/convergents.hpp"

using namespace icf;

namespace {

PartialQuotientStream golden() { return PartialQuotientStream::periodic(0, {}, {1}); }
PartialQuotientStream two_three() { return PartialQuotientStream::periodic(0, {}, {2, 3}); }

std::string str(const ConvergentPair& c) { return c.p.str() + "/" + c.q.str(); }

// E_n = {[0; a_1, ..., a_{n-1}, m] : 1 <= m <= a_n}, each fraction evaluated from the back.
std::set<std::pair<long, long>> brute_force_members(const std::vector<Quotient>& a, long Q) {
  std::set<std::pair<long, long>> out;
  for (std::size_t n = 1; n <= a.size(); ++n) {
    for (Quotient m = 1; m <= a[n - 1]; ++m) {
      // evaluate [0; a_1..a_{n-1}, m] from the back
      BigInt num = 1, den = m;
      for (std::size_t i = n - 1; i >= 1; --i) {
        BigInt next_den = BigInt(a[i - 1]) * den + num;
        num = den;
        den = next_den;
      }
      const BigInt g = mp::gcd(num, den);
      num /= g;
      den /= g;
      if (den > Q) break;  // heights grow with m
      out.emplace((num % den).convert_to<long>(), den.convert_to<long>());
    }
  }
  return out;
}

}  // namespace

TEST(Convergents, GoldenStream) {
  auto x = golden();
  const auto c = convergents(x, 4);
  std::vector<std::string> got;
  for (const auto& pair : c) got.push_back(str(pair));
  EXPECT_EQ(got, (std::vector<std::string>{"0/1", "1/1", "1/2", "2/3", "3/5"}));
  EXPECT_EQ(c[2].p * c[1].q - c[1].p * c[2].q, -1);
}

TEST(Convergents, RationalStream) {
  auto x = PartialQuotientStream::rational(355, 113);
  const auto c = convergents(x, 2);
  EXPECT_EQ(str(c[0]), "3/1");
  EXPECT_EQ(str(c[1]), "22/7");
  EXPECT_EQ(str(c[2]), "355/113");
  EXPECT_THROW(convergents(x, 3), OutOfQuotients);
}

TEST(Convergents, DeterminantAndMonotoneDenominators) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto x = PartialQuotientStream::dyadic(seed, 256);
    const auto c = convergents(x, 60);
    for (std::size_t n = 1; n < c.size(); ++n) {
      const BigInt det = c[n].p * c[n - 1].q - c[n - 1].p * c[n].q;
      EXPECT_EQ(det, (n % 2 == 1) ? 1 : -1) << "n=" << n;
      EXPECT_EQ(mp::gcd(c[n].p, c[n].q), 1);
      if (n >= 2) {
        EXPECT_GT(c[n].q, c[n - 1].q);
      }
    }
  }
}

TEST(Cutoff, Examples) {
  auto g = golden();
  const auto q3 = cutoff(g, 3);
  EXPECT_EQ(q3.N, 3u);
  EXPECT_EQ(q3.a, 1u);
  const auto q1 = cutoff(g, 1);
  EXPECT_EQ(q1.N, 1u);
  EXPECT_EQ(q1.a, 1u);
  auto x = two_three();
  const auto q7 = cutoff(x, 7);
  EXPECT_EQ(q7.N, 2u);
  EXPECT_EQ(q7.a, 3u);
  EXPECT_FALSE(q7.terminated);
}

TEST(Cutoff, DefiningInequalitiesHold) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto x = PartialQuotientStream::dyadic(seed, 256);
    const auto c = convergents(x, 80);
    auto q = [&c](long n) -> BigInt {
      if (n == -2) return 1;
      if (n == -1) return 0;
      return c[static_cast<std::size_t>(n)].q;
    };
    for (std::uint64_t Q : {1ull, 2ull, 10ull, 977ull, 100000ull, 1000000007ull}) {
      const CutoffData cut = cutoff(x, Q);
      const long N = static_cast<long>(cut.N);
      const BigInt bound(Q);
      EXPECT_LE(q(N - 1) + q(N - 2), bound);
      EXPECT_LT(bound, q(N) + q(N - 1));
      EXPECT_LE(BigInt(cut.a) * q(N - 1) + q(N - 2), bound);
      EXPECT_LT(bound, BigInt(cut.a + 1) * q(N - 1) + q(N - 2));
      EXPECT_GE(cut.a, 1u);
      EXPECT_LE(cut.a, x.quotient(cut.N));
    }
  }
}

TEST(Cutoff, TerminatedRational) {
  auto x = PartialQuotientStream::rational(2, 5);
  const auto cut = cutoff(x, 1000);
  EXPECT_TRUE(cut.terminated);
  EXPECT_EQ(cut.N, 2u);
  EXPECT_EQ(cut.a, 2u);
  auto zero = PartialQuotientStream::rational(0, 1);
  const auto z = cutoff(zero, 10);
  EXPECT_TRUE(z.terminated);
  EXPECT_EQ(z.N, 0u);
}

TEST(Intermediates, GoldenQ3) {
  auto x = golden();
  const auto list = intermediates(x, 3);
  ASSERT_EQ(list.records.size(), 3u);
  const std::vector<std::string> fr = {"0/1", "1/2", "2/3"};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(list.records[i].fraction.str(), fr[i]);
    EXPECT_EQ(list.records[i].level, i + 1);
    EXPECT_EQ(list.records[i].index, 1u);
    EXPECT_EQ(list.records[i].height, static_cast<long>(i + 1));
  }
  EXPECT_EQ(list.records[0].raw.str(), "1/1");
}

TEST(Intermediates, TwoThreeQ7) {
  auto x = two_three();
  const auto list = intermediates(x, 7);
  std::vector<std::string> raws;
  std::vector<std::pair<std::size_t, Quotient>> where;
  for (const auto& r : list.records) {
    raws.push_back(r.raw.str());
    where.emplace_back(r.level, r.index);
  }
  EXPECT_EQ(raws, (std::vector<std::string>{"1/1", "1/2", "1/3", "2/5", "3/7"}));
  EXPECT_EQ(where, (std::vector<std::pair<std::size_t, Quotient>>{
                       {1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}}));
}

TEST(Intermediates, HeightOneIsOnlyTheZeroClass) {
  for (auto x : {golden(), two_three(), PartialQuotientStream::dyadic(3, 256)}) {
    const auto list = intermediates(x, 1);
    ASSERT_EQ(list.records.size(), 1u);
    EXPECT_TRUE(list.records[0].fraction.is_zero());
    EXPECT_EQ(list.records[0].raw.str(), "1/1");
  }
}

TEST(Intermediates, StrictlyIncreasingHeightsAndMediantChain) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto x = PartialQuotientStream::dyadic(seed, 256);
    const auto list = intermediates(x, 5000000);
    const auto c = convergents(x, list.cutoff.N);
    for (std::size_t i = 1; i < list.records.size(); ++i) {
      EXPECT_LT(list.records[i - 1].height, list.records[i].height);
    }
    for (const auto& r : list.records) {
      // (m p_{n-1} + p_{n-2}) / (m q_{n-1} + q_{n-2})
      const long n = static_cast<long>(r.level);
      const BigInt& p1 = c[n - 1].p;
      const BigInt& q1 = c[n - 1].q;
      const BigInt p2 = n >= 2 ? c[n - 2].p : BigInt(1), q2 = n >= 2 ? c[n - 2].q : BigInt(0);
      EXPECT_EQ(r.raw.num, BigInt(r.index) * p1 + p2);
      EXPECT_EQ(r.raw.den, BigInt(r.index) * q1 + q2);
      EXPECT_EQ(mp::gcd(r.raw.num, r.raw.den), 1);
      EXPECT_EQ(r.height, r.raw.den);
    }
    EXPECT_EQ(intermediate_count(x, 5000000), list.records.size());
  }
}

TEST(Intermediates, MatchBruteForceMembership) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    auto x = PartialQuotientStream::dyadic(seed, 256);
    std::vector<Quotient> a;
    for (std::size_t n = 1; n <= 30; ++n) a.push_back(x.quotient(n));
    const long Q = 3000;
    const auto expected = brute_force_members(a, Q);
    std::set<std::pair<long, long>> got;
    for (const auto& r : intermediates(x, Q).records) {
      got.emplace(r.fraction.numerator().convert_to<long>(), r.fraction.denominator().convert_to<long>());
    }
    EXPECT_EQ(got, expected) << "seed " << seed;
  }
}

TEST(Intermediates, RationalEndsWithItself) {
  for (long q = 2; q <= 120; ++q) {
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      auto x = PartialQuotientStream::rational(p, q);
      const auto list = intermediates(x, static_cast<std::uint64_t>(q));
      ASSERT_FALSE(list.records.empty());
      EXPECT_EQ(list.records.back().fraction.str(), std::to_string(p) + "/" + std::to_string(q));
    }
  }
}
