#pragma once

// Canonical finite continued fractions of rationals.

#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "icf/exact_core.hpp"

namespace icf {

using Quotient = std::uint64_t;

/// Largest partial quotient any expansion or stream may report.
inline constexpr Quotient kQuotientCap = Quotient{1} << 63;

namespace detail {

template <class Int>
Quotient checked_quotient(const Int& v) {
  if constexpr (std::is_integral_v<Int>) {
    if (v < 0) throw QuotientOverflow();
    if constexpr (sizeof(Int) > sizeof(Quotient)) {
      if (v > static_cast<Int>(kQuotientCap)) throw QuotientOverflow();
    } else if (static_cast<Quotient>(v) > kQuotientCap) {
      throw QuotientOverflow();
    }
    return static_cast<Quotient>(v);
  } else {
    if (v < 0 || v > Int(kQuotientCap)) throw QuotientOverflow();
    return detail::convert<Quotient>(v);
  }
}

}  // namespace detail

/// [a0; a1, ..., aL] with every ai >= 1 and aL >= 2 when L >= 1.
struct ContinuedFraction {
  BigInt a0{0};
  std::vector<Quotient> quotients;

  std::size_t length() const noexcept { return quotients.size(); }

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

  std::string str() const {
    std::string out = "[" + a0.str() + ";";
    for (std::size_t i = 0; i < quotients.size(); ++i) {
      out += (i == 0 ? " " : ", ") + std::to_string(quotients[i]);
    }
    return out + "]";
  }
};

/// Canonical expansion of num/den by the Euclidean algorithm. Throws QuotientOverflow
/// for partial quotients beyond kQuotientCap.
template <class Int>
ContinuedFraction cf_of_rational(const Int& num, const Int& den) {
  if (den <= 0) throw InvalidDenominator();
  ContinuedFraction cf;
  cf.a0 = detail::convert<BigInt>(detail::floor_div(num, den));
  Int r = detail::floor_mod(num, den);
  Int d = den;
  // Euclid on d/r; the final quotient is >= 2 because r < d at every step.
  while (r != 0) {
    const Int q = d / r;
    const Int next = d % r;
    cf.quotients.push_back(detail::checked_quotient(q));
    d = r;
    r = next;
  }
  return cf;
}

template <class Int>
ContinuedFraction cf_of_rational(const Fraction<Int>& f) {
  return cf_of_rational(f.num, f.den);
}

template <class Int>
ContinuedFraction cf_of_rational(const BasicFareyFraction<Int>& f) {
  return cf_of_rational(f.numerator(), f.denominator());
}

/// Exact value by the convergent recurrence; the result is in lowest terms.
inline Fraction<BigInt> value_of_cf(const ContinuedFraction& cf) {
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = cf.a0, q = 1;
  for (const Quotient a : cf.quotients) {
    BigInt p_next = BigInt(a) * p + p_prev;
    BigInt q_next = BigInt(a) * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
  }
  return {p, q};
}

/// Last partial quotient of the canonical expansion of the element beta of Q/Z.
/// The zero class is expanded as [1], so its terminal quotient is 1.
template <class Int>
Quotient terminal_quotient(const BasicFareyFraction<Int>& beta) {
  if (beta.is_zero()) return 1;
  // beta in (0,1): a0 = 0 and the expansion is nonempty.
  Int r = beta.numerator();
  Int d = beta.denominator();
  Int q = 0;
  while (r != 0) {
    q = d / r;
    Int next = d % r;
    d = r;
    r = std::move(next);
  }
  return detail::checked_quotient(q);
}

}  // namespace icf
