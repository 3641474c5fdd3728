#pragma once

// Exact integer and rational foundation: reduced fractions modulo one,
// mediants and heights.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "icf/errors.hpp"

namespace icf {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using BigRational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

/// Floating type used wherever a quantity is not rational.
using Real = long double;

namespace detail {

template <class Int>
inline constexpr bool is_builtin_v = std::is_integral_v<Int>;

template <class Int>
Int gcd(const Int& a, const Int& b) {
  if constexpr (is_builtin_v<Int>) {
    return std::gcd(a, b);
  } else {
    return mp::gcd(a, b);
  }
}

template <class Int>
Int abs(const Int& a) {
  return a < 0 ? Int(-a) : a;
}

/// Remainder in [0, q) for q > 0.
template <class Int>
Int floor_mod(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

/// Floor division for q > 0.
template <class Int>
Int floor_div(const Int& a, const Int& q) {
  Int d = a / q;
  if ((a % q) < 0) d -= 1;
  return d;
}

template <class Int>
std::string to_string(const Int& v) {
  if constexpr (is_builtin_v<Int>) {
    return std::to_string(v);
  } else {
    return v.str();
  }
}

template <class To, class From>
To convert(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (is_builtin_v<To> && !is_builtin_v<From>) {
    return v.template convert_to<To>();
  } else {
    return To(v);
  }
}

}  // namespace detail

/// A raw numerator/denominator pair with positive denominator, not necessarily reduced.
template <class Int>
struct Fraction {
  Int num{0};
  Int den{1};

  friend bool operator==(const Fraction&, const Fraction&) = default;

  std::string str() const { return detail::to_string(num) + "/" + detail::to_string(den); }
};

/// Compares two fractions by value.
template <class Int>
std::strong_ordering compare_values(const Fraction<Int>& x, const Fraction<Int>& y) {
  const Int lhs = x.num * y.den;
  const Int rhs = y.num * x.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// Reduced representative a/q of an element of Q/Z, with 0 <= a < q and gcd(a, q) = 1.
/// The zero class is 0/1.
template <class Int>
class BasicFareyFraction {
 public:
  BasicFareyFraction() = default;

  /// Trusts the caller: (num, den) must already satisfy the invariants.
  static BasicFareyFraction from_reduced(Int num, Int den) {
    BasicFareyFraction f;
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    return f;
  }

  const Int& numerator() const noexcept { return num_; }
  const Int& denominator() const noexcept { return den_; }
  const Int& height() const noexcept { return den_; }
  bool is_zero() const { return num_ == 0; }

  Fraction<Int> fraction() const { return {num_, den_}; }

  template <class Other>
  BasicFareyFraction<Other> as() const {
    return BasicFareyFraction<Other>::from_reduced(detail::convert<Other>(num_),
                                                   detail::convert<Other>(den_));
  }

  friend bool operator==(const BasicFareyFraction&, const BasicFareyFraction&) = default;

  /// Ordering of the representatives in [0, 1).
  friend std::strong_ordering operator<=>(const BasicFareyFraction& x,
                                          const BasicFareyFraction& y) {
    return compare_values(x.fraction(), y.fraction());
  }

  std::string str() const { return detail::to_string(num_) + "/" + detail::to_string(den_); }

  friend std::ostream& operator<<(std::ostream& os, const BasicFareyFraction& f) {
    return os << f.str();
  }

 private:
  Int num_{0};
  Int den_{1};
};

using FareyFraction = BasicFareyFraction<BigInt>;

/// Reduced representative of a/q mod 1.
template <class Int>
BasicFareyFraction<Int> reduce_mod1(const Int& a, const Int& q) {
  if (q <= 0) throw InvalidDenominator();
  Int r = detail::floor_mod(a, q);
  if (r == 0) return BasicFareyFraction<Int>::from_reduced(Int(0), Int(1));
  const Int g = detail::gcd(r, q);
  return BasicFareyFraction<Int>::from_reduced(Int(r / g), Int(q / g));
}

template <class Int>
BasicFareyFraction<Int> reduce_mod1(const Fraction<Int>& f) {
  return reduce_mod1(f.num, f.den);
}

/// Componentwise sum. Not reduced; for unimodular parents the result is already in lowest terms.
template <class Int>
Fraction<Int> mediant(const Fraction<Int>& x, const Fraction<Int>& y) {
  return {x.num + y.num, x.den + y.den};
}

template <class Int>
Fraction<Int> mediant(const BasicFareyFraction<Int>& x, const BasicFareyFraction<Int>& y) {
  return mediant(x.fraction(), y.fraction());
}

template <class Int>
const Int& height(const BasicFareyFraction<Int>& beta) {
  return beta.height();
}

/// True when upper.num * lower.den - lower.num * upper.den == 1.
template <class Int>
bool is_unimodular(const Fraction<Int>& lower, const Fraction<Int>& upper) {
  return upper.num * lower.den - lower.num * upper.den == 1;
}

/// Running sum. Exact sums are combined pairwise like a binary counter so that long runs of
/// small terms never meet one huge partial sum.
template <class V>
class Accumulator {
 public:
  void add(V v) {
    if constexpr (std::is_same_v<V, BigRational>) {
      std::size_t rank = 0;
      while (!levels_.empty() && levels_.back().second == rank) {
        v += levels_.back().first;
        levels_.pop_back();
        ++rank;
      }
      levels_.emplace_back(std::move(v), rank);
    } else {
      plain_ += v;
    }
  }

  Accumulator& operator+=(V v) {
    add(std::move(v));
    return *this;
  }

  V total() const {
    if constexpr (std::is_same_v<V, BigRational>) {
      V sum(0);
      for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) sum += it->first;
      return sum;
    } else {
      return plain_;
    }
  }

 private:
  std::vector<std::pair<V, std::size_t>> levels_;
  V plain_{0};
};

inline std::string to_string(const BigRational& r) {
  const BigInt num = mp::numerator(r);
  const BigInt den = mp::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

template <class Int>
BigRational to_rational(const Fraction<Int>& f) {
  return BigRational(detail::convert<BigInt>(f.num), detail::convert<BigInt>(f.den));
}

/// Parses "p/q" or "p" into a raw fraction; q must be positive.
inline Fraction<BigInt> parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    auto parse_int = [](const std::string& s) {
      if (s.empty()) throw InvalidSpec("empty integer");
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) throw InvalidSpec("bad integer: " + s);
      for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') throw InvalidSpec("bad integer: " + s);
      }
      // strip leading zeros: the BigInt string constructor reads "0..." as octal
      std::size_t first = i;
      while (first + 1 < s.size() && s[first] == '0') ++first;
      return BigInt((s[0] == '-' ? "-" : "") + s.substr(first));
    };
    if (slash == std::string::npos) return {parse_int(text), BigInt(1)};
    Fraction<BigInt> f{parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
    if (f.den <= 0) throw InvalidDenominator();
    return f;
  } catch (const InvalidDenominator&) {
    throw InvalidSpec("denominator must be positive: " + text);
  }
}

inline BigRational parse_rational(const std::string& text) {
  const auto f = parse_fraction(text);
  return BigRational(f.num, f.den);
}

}  // namespace icf
