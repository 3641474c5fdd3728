#pragma once

// Weighted sums over intermediate convergents and the classical metric statistics of
// partial quotients.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <type_traits>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>

#include "icf/continued_fraction.hpp"
#include "icf/convergents.hpp"
#include "icf/exact_core.hpp"
#include "icf/farey.hpp"
#include "icf/stream.hpp"
#include "icf/weights.hpp"

namespace icf {

/// c(beta) = g(a_L) for beta = [a_0; a_1, ..., a_L]; g(1) for the zero class.
template <class V = Real, class Int>
V weight_c(const BasicFareyFraction<Int>& beta, const WeightFunction& g) {
  return g.template value<V>(terminal_quotient(beta));
}

namespace detail {

template <class V>
V scaled_by_chi(V value, Chi c) {
  if (c == Chi::half) value /= 2;
  return value;
}

}  // namespace detail

/// M_Q(x) = sum over beta in F_Q of c(beta) chi_beta(x), by full enumeration of a
/// precomputed table.
template <class V = Real>
V mq_via_farey(const FareyTable& table, PartialQuotientStream& x, const WeightFunction& g) {
  Accumulator<V> total;
  for (const auto& e : table.entries()) {
    const Chi c = e.den == 1 ? Chi::one : chi_with_neighbors(e.neighbors(), x);
    if (c == Chi::zero) continue;
    total += detail::scaled_by_chi(g.template value<V>(e.den == 1 ? 1 : e.terminal), c);
  }
  return total.total();
}

template <class V = Real>
V mq_via_farey(PartialQuotientStream& x, std::uint64_t Q, const WeightFunction& g) {
  return mq_via_farey<V>(FareyTable(static_cast<std::uint32_t>(Q)), x, g);
}

/// M_Q(x) as the sum of c(beta) over the intermediate convergents of height <= Q.
template <class V = Real>
V mq_via_intermediates(PartialQuotientStream& x, std::uint64_t Q, const WeightFunction& g) {
  Accumulator<V> total;
  for (const auto& rec : intermediates(x, Q).records) total += weight_c<V>(rec.fraction, g);
  return total.total();
}

/// M_Q(x) = g(1) + sum_{n<N} sum_{m=2}^{a_n+1} g(m) + sum_{m=2}^{a(Q,x)} g(m),
/// from the cutoff and partial quotients alone.
template <class V = Real>
V mq_closed_form(PartialQuotientStream& x, std::uint64_t Q, const WeightFunction& g) {
  const CutoffData cut = cutoff(x, Q);
  if (cut.N == 0) return V(0);
  Accumulator<V> total;
  total += g.template value<V>(1);
  for (std::size_t n = 1; n < cut.N; ++n) total += g.template range_sum<V>(2, x.quotient(n) + 1);
  total += g.template range_sum<V>(2, cut.a);
  return total.total();
}

// ---------------------------------------------------------------------------
// Series.

/// A series value with a bound on the neglected remainder.
struct SeriesValue {
  Real value;
  Real error_bound;
};

namespace detail {

/// sum_{m > M} m^{-s} for s > 1 by Euler-Maclaurin with three Bernoulli corrections.
/// t^{-s} is completely monotone, so the remainder is bounded by the first omitted term.
inline SeriesValue power_tail(Real s, Real M) {
  const Real ms = std::pow(M, -s);
  Real value = M * ms / (s - 1) - ms / 2;
  const Real s1 = s, s3 = s * (s + 1) * (s + 2);
  const Real s5 = s3 * (s + 3) * (s + 4), s7 = s5 * (s + 5) * (s + 6);
  value += s1 * ms / M / 12;
  value -= s3 * ms / (M * M * M) / 720;
  value += s5 * ms / std::pow(M, 5) / 30240;
  const Real bound = s7 * ms / std::pow(M, 7) / 1209600;
  return {value, bound};
}

inline constexpr std::uint64_t kSeriesHead = 64;

}  // namespace detail

/// sum_{m >= 1} m^{-s} log(1 + 1/m) for s > 0. The tail past kSeriesHead expands
/// log(1 + 1/m) = sum_k (-1)^{k+1} / (k m^k) into power tails; that series alternates with
/// decreasing terms, so its truncation error is at most the first omitted term.
inline SeriesValue power_log_series(Real s) {
  if (!(s > 0)) throw DivergentSeries("sum m^{-s} log(1+1/m) needs s > 0");
  const auto M = detail::kSeriesHead;
  Real head = 0;
  for (std::uint64_t m = M; m >= 1; --m) {
    const Real mr = static_cast<Real>(m);
    head += std::pow(mr, -s) * std::log1p(1 / mr);
  }
  Real tail = 0, bound = 0;
  for (int k = 1;; ++k) {
    const SeriesValue z = detail::power_tail(s + k, static_cast<Real>(M));
    const Real term = z.value / k;
    bound += z.error_bound / k;
    if (term < Real(1e-22)) {
      bound += term;
      break;
    }
    tail += (k % 2 == 1) ? term : -term;
  }
  return {head + tail, bound};
}

/// sum_{m >= 1} g(m) log(1 + 1/m), with a proven remainder bound below 1e-10.
inline SeriesValue weighted_log_series(const WeightFunction& g) {
  switch (g.family()) {
    case WeightFunction::Family::unit:
      throw DivergentSeries("sum_m log(1+1/m) diverges for unit weights");
    case WeightFunction::Family::table: {
      Real total = 0;
      for (const auto& [m, v] : g.table_values()) {
        total += v.convert_to<Real>() * std::log1p(1 / static_cast<Real>(m));
      }
      return {total, 0};
    }
    case WeightFunction::Family::harmonic:
    case WeightFunction::Family::power:
      break;
  }
  return power_log_series(g.exponent());
}

/// (12/pi^2) (sum_m g(m) log(1+1/m)) log Q. Without a cutoff the sum runs over all m >= 1;
/// with a cutoff it runs over 2 <= m <= cutoff.
inline Real main_term(const WeightFunction& g, std::uint64_t Q,
                      std::optional<std::uint64_t> cutoff_m = std::nullopt) {
  const Real scale = 12 / (pi() * pi()) * std::log(static_cast<Real>(Q));
  if (!cutoff_m) return scale * weighted_log_series(g).value;
  Real total = 0;
  for (std::uint64_t m = 2; m <= *cutoff_m; ++m) {
    total += g(m) * std::log1p(1 / static_cast<Real>(m));
  }
  return scale * total;
}

// ---------------------------------------------------------------------------
// Partial quotient statistics.

namespace detail {

inline std::vector<Quotient> first_quotients(PartialQuotientStream& x, std::size_t n) {
  std::vector<Quotient> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x.quotient(i + 1);
  return out;
}

}  // namespace detail

/// #{i <= n : a_i(x) >= m}.
inline std::uint64_t indicator_sum(PartialQuotientStream& x, Quotient m, std::size_t n) {
  std::uint64_t count = 0;
  for (std::size_t i = 1; i <= n; ++i) count += x.quotient(i) >= m ? 1 : 0;
  return count;
}

/// X_{n,f}(x) = sum_{m=2}^{f(n)} g(m) #{i <= n : a_i(x) >= m}.
template <class V = Real>
V x_nf(PartialQuotientStream& x, std::size_t n, const WeightFunction& g, const TruncationFn& trunc) {
  std::vector<Quotient> a = detail::first_quotients(x, n);
  std::sort(a.begin(), a.end(), std::greater<>());
  const std::uint64_t top = trunc(n);
  V total(0);
  std::size_t at_least = a.size();  // entries >= m, scanning m upward
  while (at_least > 0 && a[at_least - 1] < 2) --at_least;
  for (std::uint64_t m = 2; m <= top && at_least > 0; ++m) {
    while (at_least > 0 && a[at_least - 1] < m) --at_least;
    if (at_least == 0) break;
    total += g.template value<V>(m) * V(at_least);
  }
  return total;
}

/// log2(1 + 1/(k(k+2))), the limiting probability that a_n = k.
inline Real gauss_kuzmin_prob(std::uint64_t k) {
  if (k == 0) throw Error("partial quotients are positive");
  const Real kr = static_cast<Real>(k);
  return std::log1p(1 / (kr * (kr + 2))) / std::log(Real(2));
}

/// (1/n) sum_{k=1}^{n} f(a_k).
inline Real birkhoff_average(PartialQuotientStream& x, const std::function<Real(Quotient)>& f,
                             std::size_t n) {
  if (n == 0) throw Error("birkhoff_average needs n >= 1");
  Real total = 0;
  for (std::size_t k = 1; k <= n; ++k) total += f(x.quotient(k));
  return total / static_cast<Real>(n);
}

/// sum_{r=1}^{r_max} f(r) log2(1 + 1/(r(r+2))), the almost-everywhere limit of the average
/// when f vanishes past r_max.
inline Real khinchin_reference(const std::function<Real(Quotient)>& f, Quotient r_max) {
  Real total = 0;
  for (Quotient r = 1; r <= r_max; ++r) total += f(r) * gauss_kuzmin_prob(r);
  return total;
}

/// Natural log of a positive big integer.
inline Real log_big(const BigInt& v) {
  if (v <= 0) throw Error("log of non-positive integer");
  const unsigned top = mp::msb(v);
  if (top < 60) return std::log(v.convert_to<Real>());
  const unsigned shift = top - 60;
  const Real head = BigInt(v >> shift).convert_to<Real>();
  return std::log(head) + static_cast<Real>(shift) * std::log(Real(2));
}

struct ClassicalStats {
  Real levy_stat;  ///< log q_n / n
  BigInt pq_sum;   ///< sum_{k<=n} a_k
  Quotient pq_max; ///< max_{k<=n} a_k
  BigInt q_n;
};

inline ClassicalStats classical_stats(PartialQuotientStream& x, std::size_t n) {
  if (n == 0) throw Error("classical_stats needs n >= 1");
  ConvergentWalker walk(x.a0());
  ClassicalStats out{0, 0, 0, 0};
  for (std::size_t k = 1; k <= n; ++k) {
    const Quotient a = x.quotient(k);
    walk.advance(a);
    out.pq_sum += a;
    out.pq_max = std::max(out.pq_max, a);
  }
  out.q_n = walk.current().q;
  out.levy_stat = log_big(out.q_n) / static_cast<Real>(n);
  return out;
}

/// #{i <= M : a_i > M (log M)^{1/2 + delta}}; two or more means the double-exceedance event.
inline std::uint64_t double_exceedance(PartialQuotientStream& x, std::uint64_t M, Real delta) {
  if (M < 2) throw Error("double_exceedance needs M >= 2");
  const Real Mr = static_cast<Real>(M);
  const Real threshold = Mr * std::pow(std::log(Mr), Real(0.5) + delta);
  std::uint64_t count = 0;
  for (std::uint64_t i = 1; i <= M; ++i) {
    if (static_cast<Real>(x.quotient(i)) > threshold) ++count;
  }
  return count;
}

struct HypothesisReport {
  std::optional<Real> sum_g_over_m;  ///< nullopt when the series diverges
  std::vector<Real> gf;              ///< G_f(1), ..., G_f(n_max)
};

/// sum_m g(m)/m and the ratios G_f(n) = sum_{m<=f((n+1)^2)} g(m) / sum_{m<=f(n^2)} g(m).
inline HypothesisReport hypothesis_check(const WeightFunction& g, Real delta, std::size_t n_max) {
  if (n_max < 2) throw Error("hypothesis_check needs n_max >= 2");
  HypothesisReport out;
  switch (g.family()) {
    case WeightFunction::Family::harmonic:
      out.sum_g_over_m = pi() * pi() / 6;
      break;
    case WeightFunction::Family::power:
      out.sum_g_over_m = boost::math::zeta(Real(1.5) + g.gamma());
      break;
    case WeightFunction::Family::unit:
      break;
    case WeightFunction::Family::table: {
      BigRational total = 0;
      for (const auto& [m, v] : g.table_values()) total += v / BigRational(BigInt(m));
      out.sum_g_over_m = total.convert_to<Real>();
      break;
    }
  }
  const TruncationFn f{delta};
  Real partial = 0;
  std::uint64_t summed = 0;
  auto sum_to = [&](std::uint64_t top) {
    for (; summed < top; ++summed) partial += g(summed + 1);
    return partial;
  };
  Real below = sum_to(f(1));
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Real above = sum_to(f(static_cast<std::uint64_t>(n + 1) * (n + 1)));
    out.gf.push_back(above / below);
    below = above;
  }
  return out;
}

}  // namespace icf
