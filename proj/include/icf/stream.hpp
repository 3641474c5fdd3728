#pragma once

// Real numbers presented as exact, lazily extendable sequences of partial quotients.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "icf/continued_fraction.hpp"
#include "icf/exact_core.hpp"

namespace icf {

namespace detail {

/// Orders x against r by comparing partial quotients. A missing quotient acts as +infinity;
/// the first differing index i decides, with larger tails giving smaller values at odd i.
template <class Source>
std::strong_ordering compare_by_quotients(Source& x, const BigInt& x_a0, const ContinuedFraction& r) {
  if (x_a0 != r.a0) return x_a0 < r.a0 ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = 1;; ++i) {
    const std::optional<Quotient> xi = x.try_quotient(i);
    const std::optional<Quotient> ri =
        i <= r.quotients.size() ? std::optional<Quotient>(r.quotients[i - 1]) : std::nullopt;
    if (!xi && !ri) return std::strong_ordering::equal;
    if (xi && ri && *xi == *ri) continue;
    const bool x_tail_larger = !xi || (ri && *xi > *ri);
    const bool x_smaller = (i % 2 == 1) ? x_tail_larger : !x_tail_larger;
    return x_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
  }
}

}  // namespace detail

/// The finite expansion of a rational number.
class RationalStream {
 public:
  explicit RationalStream(const Fraction<BigInt>& value)
      : cf_(cf_of_rational(value)), value_(value_of_cf(cf_)) {}

  const ContinuedFraction& expansion() const noexcept { return cf_; }
  const Fraction<BigInt>& value() const noexcept { return value_; }
  const BigInt& a0() const noexcept { return cf_.a0; }

  std::optional<Quotient> try_quotient(std::size_t n) const {
    if (n == 0 || n > cf_.quotients.size()) return std::nullopt;
    return cf_.quotients[n - 1];
  }

  template <class Int>
  std::strong_ordering compare(const Fraction<Int>& r) const {
    return compare_values(value_, Fraction<BigInt>{detail::convert<BigInt>(r.num),
                                                   detail::convert<BigInt>(r.den)});
  }

  std::string spec() const { return "rational:" + value_.str(); }

 private:
  ContinuedFraction cf_;
  Fraction<BigInt> value_;
};

/// [a0; pre..., period, period, ...]: an eventually periodic infinite expansion.
class PeriodicStream {
 public:
  PeriodicStream(BigInt a0, std::vector<Quotient> preperiod, std::vector<Quotient> period)
      : a0_(std::move(a0)), pre_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw InvalidSpec("periodic stream needs a nonempty period");
    for (const auto* list : {&pre_, &period_}) {
      for (const Quotient a : *list) {
        if (a == 0) throw InvalidSpec("partial quotients must be positive");
        if (a > kQuotientCap) throw QuotientOverflow();
      }
    }
  }

  const BigInt& a0() const noexcept { return a0_; }
  const std::vector<Quotient>& preperiod() const noexcept { return pre_; }
  const std::vector<Quotient>& period() const noexcept { return period_; }

  std::optional<Quotient> try_quotient(std::size_t n) const {
    if (n == 0) return std::nullopt;
    if (n <= pre_.size()) return pre_[n - 1];
    return period_[(n - 1 - pre_.size()) % period_.size()];
  }

  template <class Int>
  std::strong_ordering compare(const Fraction<Int>& r) const {
    return detail::compare_by_quotients(
        *this, a0_, cf_of_rational(detail::convert<BigInt>(r.num), detail::convert<BigInt>(r.den)));
  }

  std::string spec() const {
    auto join = [](const std::vector<Quotient>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    return "periodic:[" + a0_.str() + ";" + join(pre_) + "|" + join(period_) + "]";
  }

 private:
  BigInt a0_;
  std::vector<Quotient> pre_;
  std::vector<Quotient> period_;
};

/// Partial quotients a_1, a_2, ... shared by the canonical expansions of lo and hi (lo < hi).
/// Every real in [lo, hi] has these leading quotients, since each cylinder set is an interval.
inline std::vector<Quotient> common_prefix(const Fraction<BigInt>& lo, const Fraction<BigInt>& hi) {
  std::vector<Quotient> out;
  if (detail::floor_div(lo.num, lo.den) != detail::floor_div(hi.num, hi.den)) return out;
  BigInt d1 = lo.den, r1 = detail::floor_mod(lo.num, lo.den);
  BigInt d2 = hi.den, r2 = detail::floor_mod(hi.num, hi.den);
  BigInt q1, q2, m1, m2;
  while (r1 != 0 && r2 != 0) {
    mp::divide_qr(d1, r1, q1, m1);
    mp::divide_qr(d2, r2, q2, m2);
    if (q1 != q2) break;
    out.push_back(detail::checked_quotient(q1));
    d1 = std::move(r1);
    r1 = std::move(m1);
    d2 = std::move(r2);
    r2 = std::move(m2);
  }
  return out;
}

/// A uniformly random x in [0,1) whose binary digits come from an endless mt19937_64 word
/// stream. x is enclosed by [K/2^B, (K+1)/2^B] where K is the concatenation of the words drawn
/// so far; a quotient is reported only once both endpoints agree on it.
class DyadicStream {
 public:
  static constexpr std::size_t kDefaultBitBudget = std::size_t{1} << 16;

  DyadicStream(std::uint64_t seed, std::size_t initial_bits,
               std::size_t bit_budget = kDefaultBitBudget)
      : seed_(seed), gen_(seed), budget_(bit_budget) {
    const std::size_t words = (std::max<std::size_t>(initial_bits, 64) + 63) / 64;
    words_.reserve(words);
    for (std::size_t i = 0; i < words; ++i) append_word();
    recompute_prefix();
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t bits() const noexcept { return words_.size() * 64; }
  std::size_t bit_budget() const noexcept { return budget_; }
  void set_bit_budget(std::size_t bits) noexcept { budget_ = bits; }
  const BigInt& a0() const noexcept { return kZero; }

  /// Number of partial quotients determined by the current enclosure.
  std::size_t determined() const noexcept { return prefix_.size(); }

  Fraction<BigInt> lower() const { return {numer_, BigInt(1) << bits()}; }
  Fraction<BigInt> upper() const { return {numer_ + 1, BigInt(1) << bits()}; }

  /// Appends one 64-bit block. Throws NeedsMoreBits once the budget is exhausted.
  void refine() {
    if (bits() + 64 > budget_) throw NeedsMoreBits(budget_);
    append_word();
  }

  std::optional<Quotient> try_quotient(std::size_t n) {
    if (n == 0) return std::nullopt;
    while (prefix_.size() < n) {
      refine();
      recompute_prefix();
    }
    return prefix_[n - 1];
  }

  template <class Int>
  std::strong_ordering compare(const Fraction<Int>& r) {
    if constexpr (detail::is_builtin_v<Int>) {
      // One-word enclosure [w0/2^64, (w0+1)/2^64] decides almost every query.
      const std::uint64_t w0 = words_.front();
      if (r.num >= 0 && r.num < r.den && w0 != UINT64_MAX) {
        using u128 = unsigned __int128;
        const u128 lhs = static_cast<u128>(static_cast<std::uint64_t>(r.num)) << 64;
        const u128 den = static_cast<std::uint64_t>(r.den);
        if (lhs < static_cast<u128>(w0) * den) return std::strong_ordering::greater;
        if (lhs > static_cast<u128>(w0 + 1) * den) return std::strong_ordering::less;
      }
    }
    const BigInt num = detail::convert<BigInt>(r.num);
    const BigInt den = detail::convert<BigInt>(r.den);
    for (;;) {
      const BigInt scaled = num << bits();
      const BigInt lo = numer_ * den;
      if (scaled < lo) return std::strong_ordering::greater;
      if (scaled > lo + den) return std::strong_ordering::less;
      refine();
    }
  }

  std::string spec() const {
    return "dyadic:seed=" + std::to_string(seed_) + ",bits=" + std::to_string(bits());
  }

 private:
  inline static const BigInt kZero{0};

  void append_word() {
    const std::uint64_t w = gen_();
    words_.push_back(w);
    numer_ <<= 64;
    numer_ |= BigInt(w);
  }

  void recompute_prefix() {
    std::vector<Quotient> fresh = common_prefix(lower(), upper());
    if (fresh.size() < prefix_.size() ||
        !std::equal(prefix_.begin(), prefix_.end(), fresh.begin())) {
      throw InvariantViolation("dyadic refinement changed an already reported quotient");
    }
    prefix_ = std::move(fresh);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
  std::size_t budget_;
  std::vector<std::uint64_t> words_;
  BigInt numer_{0};
  std::vector<Quotient> prefix_;
};

enum class StreamKind { rational, periodic, dyadic };

/// A real number x given by its partial quotients a_1(x), a_2(x), ...
/// Rational and periodic streams are immutable; dyadic streams refine on demand and must be
/// used by one thread at a time.
class PartialQuotientStream {
 public:
  PartialQuotientStream(RationalStream s) : impl_(std::move(s)) {}
  PartialQuotientStream(PeriodicStream s) : impl_(std::move(s)) {}
  PartialQuotientStream(DyadicStream s) : impl_(std::move(s)) {}

  static PartialQuotientStream rational(const BigInt& p, const BigInt& q) {
    if (q <= 0) throw InvalidDenominator();
    return RationalStream(Fraction<BigInt>{p, q});
  }
  static PartialQuotientStream periodic(BigInt a0, std::vector<Quotient> pre,
                                        std::vector<Quotient> period) {
    return PeriodicStream(std::move(a0), std::move(pre), std::move(period));
  }
  static PartialQuotientStream dyadic(std::uint64_t seed, std::size_t bits) {
    return DyadicStream(seed, bits);
  }

  StreamKind kind() const noexcept { return static_cast<StreamKind>(impl_.index()); }

  const BigInt& a0() const {
    return std::visit([](const auto& s) -> const BigInt& { return s.a0(); }, impl_);
  }

  /// a_n(x), or nullopt when a rational expansion has ended before n.
  std::optional<Quotient> try_quotient(std::size_t n) {
    return std::visit([n](auto& s) { return s.try_quotient(n); }, impl_);
  }

  Quotient quotient(std::size_t n) {
    if (n == 0) throw Error("partial quotients are indexed from 1");
    const auto a = try_quotient(n);
    if (!a) throw OutOfQuotients(n);
    return *a;
  }

  /// Length of the expansion for rational streams, nullopt for infinite ones.
  std::optional<std::size_t> length() const {
    if (const auto* r = std::get_if<RationalStream>(&impl_)) return r->expansion().length();
    return std::nullopt;
  }

  template <class Int>
  std::strong_ordering compare(const Fraction<Int>& r) {
    return std::visit([&r](auto& s) { return s.compare(r); }, impl_);
  }

  std::string spec() const {
    return std::visit([](const auto& s) { return s.spec(); }, impl_);
  }

  RationalStream* as_rational() noexcept { return std::get_if<RationalStream>(&impl_); }
  DyadicStream* as_dyadic() noexcept { return std::get_if<DyadicStream>(&impl_); }

 private:
  std::variant<RationalStream, PeriodicStream, DyadicStream> impl_;
};

/// a_n(x); throws OutOfQuotients past the end of a rational expansion.
inline Quotient quotient(PartialQuotientStream& x, std::size_t n) { return x.quotient(n); }

/// Exact ordering of x against r. Dyadic streams refine until r leaves the enclosure and throw
/// NeedsMoreBits when their budget runs out.
template <class Int>
std::strong_ordering compare_real_rational(PartialQuotientStream& x, const Fraction<Int>& r) {
  if (r.den <= 0) throw InvalidDenominator();
  return x.compare(r);
}

namespace detail {

inline std::uint64_t parse_u64(std::string_view text, const char* what) {
  if (text.empty()) throw InvalidSpec(std::string("missing ") + what);
  std::uint64_t v = 0;
  for (const char c : text) {
    if (c < '0' || c > '9') throw InvalidSpec(std::string("bad ") + what + ": " + std::string(text));
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (v > (UINT64_MAX - digit) / 10) throw InvalidSpec(std::string(what) + " out of range");
    v = v * 10 + digit;
  }
  return v;
}

inline std::vector<Quotient> parse_quotient_list(std::string_view text) {
  std::vector<Quotient> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_u64(item, "partial quotient"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Parses `rational:p/q`, `periodic:[a0;pre...|per...]` or `dyadic:seed=<u64>,bits=<B>`.
inline PartialQuotientStream parse_stream_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InvalidSpec("stream spec needs a kind prefix: " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (kind == "rational") {
    const auto f = parse_fraction(body);
    return PartialQuotientStream::rational(f.num, f.den);
  }
  if (kind == "periodic") {
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw InvalidSpec("periodic stream must look like [a0;pre|period]: " + spec);
    }
    const std::string inner = body.substr(1, body.size() - 2);
    const auto semi = inner.find(';');
    const auto bar = inner.find('|');
    if (semi == std::string::npos || bar == std::string::npos || bar < semi) {
      throw InvalidSpec("periodic stream must look like [a0;pre|period]: " + spec);
    }
    const auto a0 = parse_fraction(inner.substr(0, semi));
    if (a0.den != 1) throw InvalidSpec("a0 must be an integer");
    return PartialQuotientStream::periodic(
        a0.num, detail::parse_quotient_list(std::string_view(inner).substr(semi + 1, bar - semi - 1)),
        detail::parse_quotient_list(std::string_view(inner).substr(bar + 1)));
  }
  if (kind == "dyadic") {
    std::optional<std::uint64_t> seed;
    std::uint64_t bits = 256;
    std::string_view rest = body;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw InvalidSpec("dyadic option needs key=value: " + spec);
      const auto key = item.substr(0, eq);
      const auto value = item.substr(eq + 1);
      if (key == "seed") {
        seed = detail::parse_u64(value, "seed");
      } else if (key == "bits") {
        bits = detail::parse_u64(value, "bits");
      } else {
        throw InvalidSpec("unknown dyadic option: " + std::string(key));
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (!seed) throw InvalidSpec("dyadic stream needs seed=<u64>");
    if (bits < 64) throw InvalidSpec("dyadic stream needs bits >= 64");
    return PartialQuotientStream::dyadic(*seed, bits);
  }
  throw InvalidSpec("unknown stream kind: " + kind);
}

}  // namespace icf
