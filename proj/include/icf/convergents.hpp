#pragma once

// Principal convergents, the cutoff N(Q,x), a(Q,x), and the intermediate convergents
// of height at most Q.

#include <cstdint>
#include <optional>
#include <vector>

#include "icf/exact_core.hpp"
#include "icf/stream.hpp"

namespace icf {

/// p_n/q_n with index n >= -2.
struct ConvergentPair {
  BigInt p;
  BigInt q;
  long index;

  Fraction<BigInt> fraction() const { return {p, q}; }
};

/// Walks the convergent recurrence p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2},
/// starting from p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0.
class ConvergentWalker {
 public:
  explicit ConvergentWalker(const BigInt& a0) : prev_{1, 0, -1}, cur_{a0, 1, 0} {}

  const ConvergentPair& previous() const noexcept { return prev_; }
  const ConvergentPair& current() const noexcept { return cur_; }
  long index() const noexcept { return cur_.index; }

  void advance(Quotient a) {
    const BigInt a_big(a);
    ConvergentPair next{a_big * cur_.p + prev_.p, a_big * cur_.q + prev_.q, cur_.index + 1};
    prev_ = std::move(cur_);
    cur_ = std::move(next);
  }

 private:
  ConvergentPair prev_;
  ConvergentPair cur_;
};

/// Convergents p_n/q_n for n = 0..n_max. Throws OutOfQuotients if the stream ends early.
inline std::vector<ConvergentPair> convergents(PartialQuotientStream& x, std::size_t n_max) {
  std::vector<ConvergentPair> out;
  out.reserve(n_max + 1);
  ConvergentWalker walk(x.a0());
  out.push_back(walk.current());
  for (std::size_t n = 1; n <= n_max; ++n) {
    walk.advance(x.quotient(n));
    out.push_back(walk.current());
  }
  return out;
}

/// N(Q,x) and a(Q,x). When a rational expansion ends before the cutoff is reached,
/// `terminated` is set, N is the length L of the expansion and a = a_L (0 when L = 0).
struct CutoffData {
  std::size_t N = 0;
  Quotient a = 0;
  bool terminated = false;
};

namespace detail {

/// Shared driver for cutoff and intermediates: calls level(n, a_n_effective, prev2, prev1)
/// for each level n = 1..N with the convergents of indices n-2 and n-1.
template <class OnLevel>
CutoffData walk_levels(PartialQuotientStream& x, std::uint64_t Q, OnLevel&& on_level) {
  if (Q == 0) throw Error("Q must be positive");
  const BigInt bound(Q);
  ConvergentWalker walk(x.a0());
  for (std::size_t n = 1;; ++n) {
    const std::optional<Quotient> a_n = x.try_quotient(n);
    if (!a_n) {
      CutoffData done{n - 1, 0, true};
      if (n > 1) done.a = x.quotient(n - 1);
      return done;
    }
    // q_n + q_{n-1} = (a_n + 1) q_{n-1} + q_{n-2}
    const BigInt& q_prev = walk.current().q;
    const BigInt& q_prev2 = walk.previous().q;
    if (bound < (BigInt(*a_n) + 1) * q_prev + q_prev2) {
      const Quotient a = detail::convert<Quotient>(BigInt((bound - q_prev2) / q_prev));
      on_level(n, a, walk.previous(), walk.current());
      return CutoffData{n, a, false};
    }
    on_level(n, *a_n, walk.previous(), walk.current());
    walk.advance(*a_n);
  }
}

}  // namespace detail

/// N(Q,x) = min{n >= 0 : Q < q_n + q_{n-1}} and the unique a with
/// a q_{N-1} + q_{N-2} <= Q < (a+1) q_{N-1} + q_{N-2}.
inline CutoffData cutoff(PartialQuotientStream& x, std::uint64_t Q) {
  return detail::walk_levels(x, Q, [](auto&&...) {});
}

/// Number of intermediate convergents of height <= Q, sum_{n<N} a_n + a(Q,x), without
/// building them.
inline BigInt intermediate_count(PartialQuotientStream& x, std::uint64_t Q) {
  BigInt total = 0;
  detail::walk_levels(x, Q, [&total](std::size_t, Quotient count, auto&&...) { total += count; });
  return total;
}

/// One element (m p_{n-1} + p_{n-2}) / (m q_{n-1} + q_{n-2}) of E_n(x).
struct IntermediateRecord {
  FareyFraction fraction;  ///< reduced representative in [0,1)
  Fraction<BigInt> raw;    ///< the unreduced mediant as generated (1/1 for the zero class)
  std::size_t level;       ///< n
  Quotient index;          ///< m
  BigInt height;
};

struct IntermediateList {
  std::vector<IntermediateRecord> records;
  CutoffData cutoff;
};

/// Every element of the union of the E_n(x) with height <= Q, in strictly increasing height.
/// Each level is produced by iterated mediants starting from p_{n-2}/q_{n-2}.
inline IntermediateList intermediates(PartialQuotientStream& x, std::uint64_t Q) {
  IntermediateList out;
  out.cutoff = detail::walk_levels(
      x, Q,
      [&out](std::size_t n, Quotient count, const ConvergentPair& older, const ConvergentPair& newer) {
        Fraction<BigInt> step = older.fraction();
        const Fraction<BigInt> parent = newer.fraction();
        for (Quotient m = 1; m <= count; ++m) {
          step = mediant(step, parent);
          out.records.push_back(IntermediateRecord{reduce_mod1(step), step, n, m, step.den});
        }
      });
  return out;
}

}  // namespace icf
