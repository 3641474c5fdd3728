#pragma once

// Farey neighbors, the indicator chi_beta, its expectation, Farey enumeration and
// related arithmetic sums.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "icf/continued_fraction.hpp"
#include "icf/exact_core.hpp"
#include "icf/stream.hpp"

namespace icf {

/// beta' < beta < beta'' consecutive in F_{h(beta)}. `upper` may be 1/1, the zero class
/// approached from below.
template <class Int>
struct NeighborPair {
  Fraction<Int> lower;
  Fraction<Int> upper;
};

/// Inverse of a modulo m in [1, m-1]; requires gcd(a, m) = 1 and m >= 2.
template <class Int>
Int mod_inverse(const Int& a, const Int& m) {
  Int old_r = detail::floor_mod(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    const Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = std::move(r);
    r = std::move(t);
    t = old_s - q * s;
    old_s = std::move(s);
    s = std::move(t);
  }
  if (old_r != 1) throw Error("mod_inverse: arguments not coprime");
  return detail::floor_mod(old_s, m);
}

/// Neighbors of beta = a/q in F_q from the modular inverse: h(beta') = a^{-1} mod q.
template <class Int>
NeighborPair<Int> farey_neighbors(const BasicFareyFraction<Int>& beta) {
  const Int& a = beta.numerator();
  const Int& q = beta.height();
  if (q == 1) throw NoNeighbors();
  const Int q_lo = mod_inverse(a, q);
  const Int a_lo = (a * q_lo - 1) / q;
  return {{a_lo, q_lo}, {Int(a - a_lo), Int(q - q_lo)}};
}

enum class Chi { zero, half, one };

inline BigRational to_rational(Chi c) {
  switch (c) {
    case Chi::zero: return BigRational(0);
    case Chi::half: return BigRational(1, 2);
    case Chi::one: return BigRational(1);
  }
  return BigRational(0);
}

inline std::string to_string(Chi c) {
  switch (c) {
    case Chi::zero: return "0";
    case Chi::half: return "1/2";
    case Chi::one: return "1";
  }
  return "?";
}

namespace detail {

inline bool is_integer_point(PartialQuotientStream& x) {
  const auto* r = x.as_rational();
  return r != nullptr && r->expansion().quotients.empty();
}

}  // namespace detail

/// chi_beta(x) given the neighbors of beta: 1 on the open interval (beta', beta''),
/// 1/2 at its endpoints, 0 elsewhere. x is taken modulo one.
template <class Int>
Chi chi_with_neighbors(const NeighborPair<Int>& nb, PartialQuotientStream& x) {
  if (detail::is_integer_point(x)) {
    // x is the class of 0, which is both 0/1 and 1/1.
    return (nb.lower.num == 0 || nb.upper.num == nb.upper.den) ? Chi::half : Chi::zero;
  }
  auto chi_for = [&x](const auto& lower, const auto& upper) {
    const auto lo = compare_real_rational(x, lower);
    if (lo == std::strong_ordering::less) return Chi::zero;
    if (lo == std::strong_ordering::equal) return Chi::half;
    const auto hi = compare_real_rational(x, upper);
    if (hi == std::strong_ordering::greater) return Chi::zero;
    if (hi == std::strong_ordering::equal) return Chi::half;
    return Chi::one;
  };
  const BigInt& a0 = x.a0();
  if (a0 == 0) return chi_for(nb.lower, nb.upper);
  auto shift = [&a0](const Fraction<Int>& f) {
    const BigInt den = detail::convert<BigInt>(f.den);
    return Fraction<BigInt>{detail::convert<BigInt>(f.num) + a0 * den, den};
  };
  return chi_for(shift(nb.lower), shift(nb.upper));
}

template <class Int>
Chi chi(const BasicFareyFraction<Int>& beta, PartialQuotientStream& x) {
  if (beta.height() == 1) return Chi::one;
  return chi_with_neighbors(farey_neighbors(beta), x);
}

/// E(chi_beta) = 1 / (h(beta') h(beta'')); 1 for the zero class.
template <class Int>
BigRational expected_chi(const BasicFareyFraction<Int>& beta) {
  if (beta.height() == 1) return BigRational(1);
  const auto nb = farey_neighbors(beta);
  return BigRational(BigInt(1), detail::convert<BigInt>(nb.lower.den) *
                                    detail::convert<BigInt>(nb.upper.den));
}

/// F_Q in increasing order from 0/1, using the next-term recurrence
/// c'/d' = (k c - a)/(k d - b) with k = floor((Q + b) / d).
template <class Int = std::int64_t>
class FareyEnumerator {
 public:
  explicit FareyEnumerator(Int Q) : Q_(Q), c_(1), d_(Q) {
    if (Q < 1) throw Error("Farey order must be positive");
  }

  std::optional<BasicFareyFraction<Int>> next() {
    if (finished_) return std::nullopt;
    if (!started_) {
      started_ = true;
      if (Q_ == 1) finished_ = true;
      return BasicFareyFraction<Int>();
    }
    auto out = BasicFareyFraction<Int>::from_reduced(c_, d_);
    const Int k = (Q_ + b_) / d_;
    Int next_c = k * c_ - a_;
    Int next_d = k * d_ - b_;
    a_ = std::exchange(c_, std::move(next_c));
    b_ = std::exchange(d_, std::move(next_d));
    if (c_ == d_) finished_ = true;  // reached 1/1
    return out;
  }

 private:
  Int Q_;
  Int a_{0}, b_{1};
  Int c_, d_;
  bool started_ = false;
  bool finished_ = false;
};

template <class Int = std::int64_t>
std::vector<BasicFareyFraction<Int>> enumerate_farey(Int Q) {
  std::vector<BasicFareyFraction<Int>> out;
  FareyEnumerator<Int> it(Q);
  while (auto f = it.next()) out.push_back(*f);
  return out;
}

/// Precomputed neighbors and terminal quotients of every element of F_Q.
class FareyTable {
 public:
  struct Entry {
    std::int32_t num, den;
    std::int32_t lo_num, lo_den;
    std::int32_t hi_num, hi_den;
    std::uint32_t terminal;  ///< last partial quotient of the canonical expansion

    BasicFareyFraction<std::int64_t> fraction() const {
      return BasicFareyFraction<std::int64_t>::from_reduced(num, den);
    }
    NeighborPair<std::int64_t> neighbors() const { return {{lo_num, lo_den}, {hi_num, hi_den}}; }
  };

  explicit FareyTable(std::uint32_t Q) : Q_(Q) {
    if (Q < 1 || Q > (1u << 30)) throw Error("unsupported Farey table order");
    FareyEnumerator<std::int64_t> it(Q);
    while (auto f = it.next()) {
      Entry e{static_cast<std::int32_t>(f->numerator()), static_cast<std::int32_t>(f->denominator()),
              0, 1, 1, 1, 1};
      if (f->height() >= 2) {
        const auto nb = farey_neighbors(*f);
        e.lo_num = static_cast<std::int32_t>(nb.lower.num);
        e.lo_den = static_cast<std::int32_t>(nb.lower.den);
        e.hi_num = static_cast<std::int32_t>(nb.upper.num);
        e.hi_den = static_cast<std::int32_t>(nb.upper.den);
        e.terminal = static_cast<std::uint32_t>(terminal_quotient(*f));
      }
      entries_.push_back(e);
    }
  }

  std::uint32_t order() const noexcept { return Q_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::uint32_t Q_;
  std::vector<Entry> entries_;
};

// ---------------------------------------------------------------------------
// Elementary arithmetic functions.

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t totient(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto p : prime_divisors(n)) phi = phi / p * (p - 1);
  return phi;
}

/// phi(0..n) by sieve.
inline std::vector<std::uint64_t> totient_table(std::uint64_t n) {
  std::vector<std::uint64_t> phi(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) phi[i] = i;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (phi[p] != p) continue;
    for (std::uint64_t k = p; k <= n; k += p) phi[k] -= phi[k] / p;
  }
  return phi;
}

inline Real euler_gamma() { return boost::math::constants::euler<Real>(); }
inline Real pi() { return boost::math::constants::pi<Real>(); }

// ---------------------------------------------------------------------------
// Expectations.

/// Sum of E(chi_beta) over the phi(q) fractions of height q, exactly.
/// h(beta') runs over the units u mod q as beta does and h(beta'') = q - u, so the row equals
/// sum_u 1/(u (q-u)) = (2/q) sum_u 1/u, accumulated over a common denominator.
inline BigRational row_sum_exact(std::uint64_t q) {
  if (q < 2) throw Error("row_sum_exact needs q >= 2");
  BigInt lcm = 1;
  std::vector<std::uint64_t> units;
  for (std::uint64_t u = 1; u < q; ++u) {
    if (std::gcd(u, q) != 1) continue;
    units.push_back(u);
    const std::uint64_t rem = static_cast<std::uint64_t>(lcm % u);
    const std::uint64_t g = std::gcd(rem, u);
    lcm *= u / g;
  }
  BigInt numer = 0;
  for (const auto u : units) numer += lcm / u;
  return BigRational(2 * numer, BigInt(q) * lcm);
}

/// 2 phi(q)/q^2 (log q + sum_{p|q} log p/(p-1) + c_0) with c_0 Euler's constant.
inline Real row_sum_formula(std::uint64_t q) {
  if (q < 2) throw Error("row_sum_formula needs q >= 2");
  Real prime_sum = 0;
  for (const auto p : prime_divisors(q)) {
    prime_sum += std::log(static_cast<Real>(p)) / static_cast<Real>(p - 1);
  }
  const Real qr = static_cast<Real>(q);
  return 2 * static_cast<Real>(totient(q)) / (qr * qr) * (std::log(qr) + prime_sum + euler_gamma());
}

struct ExpectedCount {
  BigRational exact;  ///< sum_{q=2}^{Q} row_sum_exact(q)
  Real asymptotic;    ///< (6/pi^2) (log Q)^2
};

inline ExpectedCount cumulative_expected_count(std::uint64_t Q) {
  if (Q < 2) throw Error("cumulative_expected_count needs Q >= 2");
  ExpectedCount out{BigRational(0), 0};
  for (std::uint64_t q = 2; q <= Q; ++q) out.exact += row_sum_exact(q);
  const Real lq = std::log(static_cast<Real>(Q));
  out.asymptotic = 6 / (pi() * pi()) * lq * lq;
  return out;
}

// ---------------------------------------------------------------------------
// Height sets.

/// A set of positive integers: `all`, `primes`, `mod:d,r`, or `file:<path>`.
class HeightSet {
 public:
  struct All {};
  struct Primes {};
  struct Residue {
    std::uint64_t modulus, residue;
  };
  using Explicit = std::set<std::uint64_t>;

  HeightSet() : rule_(All{}) {}
  static HeightSet all() { return HeightSet(All{}); }
  static HeightSet primes() { return HeightSet(Primes{}); }
  static HeightSet residue(std::uint64_t d, std::uint64_t r) {
    if (d == 0) throw InvalidSpec("mod: modulus must be positive");
    if (r >= d) throw InvalidSpec("mod: residue must be below the modulus");
    return HeightSet(Residue{d, r});
  }
  static HeightSet of(Explicit values) { return HeightSet(std::move(values)); }

  static HeightSet parse(const std::string& spec) {
    if (spec == "all") return all();
    if (spec == "primes") return primes();
    if (spec.rfind("mod:", 0) == 0) {
      const std::string body = spec.substr(4);
      const auto comma = body.find(',');
      if (comma == std::string::npos) throw InvalidSpec("mod:d,r expected: " + spec);
      return residue(detail::parse_u64(body.substr(0, comma), "modulus"),
                     detail::parse_u64(body.substr(comma + 1), "residue"));
    }
    if (spec.rfind("file:", 0) == 0) {
      const std::string path = spec.substr(5);
      std::ifstream in(path);
      if (!in) throw InvalidSpec("cannot open height set file: " + path);
      Explicit values;
      std::string line;
      while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        values.insert(detail::parse_u64(line.substr(start), "height"));
      }
      return of(std::move(values));
    }
    throw InvalidSpec("unknown height set: " + spec);
  }

  bool contains(std::uint64_t q) const {
    return std::visit(
        [q](const auto& rule) -> bool {
          using T = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<T, All>) {
            return q >= 1;
          } else if constexpr (std::is_same_v<T, Primes>) {
            if (q < 2) return false;
            for (std::uint64_t p = 2; p * p <= q; ++p) {
              if (q % p == 0) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, Residue>) {
            return q % rule.modulus == rule.residue;
          } else {
            return rule.count(q) != 0;
          }
        },
        rule_);
  }

 private:
  template <class Rule>
  explicit HeightSet(Rule r) : rule_(std::move(r)) {}

  std::variant<All, Primes, Residue, Explicit> rule_;
};

/// sum over q <= X in the set of phi(q) log q / q^2.
inline Real divergence_functional(const HeightSet& heights, std::uint64_t X) {
  const auto phi = totient_table(X);
  Real total = 0;
  for (std::uint64_t q = 2; q <= X; ++q) {
    if (!heights.contains(q)) continue;
    const Real qr = static_cast<Real>(q);
    total += static_cast<Real>(phi[q]) * std::log(qr) / (qr * qr);
  }
  return total;
}

}  // namespace icf
