#pragma once

// The arithmetical weight g and the truncation f(n) = floor(n (log n)^{1/2 + delta}).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>

#include "icf/continued_fraction.hpp"
#include "icf/exact_core.hpp"
#include "icf/stream.hpp"

namespace icf {

/// Non-negative g on the positive integers. Harmonic, unit and table weights are rational and
/// evaluate exactly; power weights g(m) = m^{-(1/2+gamma)} are evaluated in long double.
class WeightFunction {
 public:
  enum class Family { power, harmonic, unit, table };

  static WeightFunction power(Real gamma) {
    if (!(gamma > 0) || !std::isfinite(gamma)) throw InvalidSpec("power weight needs gamma > 0");
    WeightFunction g(Family::power);
    g.gamma_ = gamma;
    return g;
  }
  static WeightFunction harmonic() { return WeightFunction(Family::harmonic); }
  static WeightFunction unit() { return WeightFunction(Family::unit); }

  /// g(m) = values[m] where listed, 0 elsewhere.
  static WeightFunction table(std::map<Quotient, BigRational> values) {
    for (const auto& [m, v] : values) {
      if (m == 0) throw InvalidSpec("weight table indices start at 1");
      if (v < 0) throw InvalidSpec("weights must be non-negative");
    }
    WeightFunction g(Family::table);
    g.table_ = std::move(values);
    return g;
  }

  /// `power:<gamma>`, `harmonic`, `unit`, or `table:<path>` with one `m value` pair per line.
  static WeightFunction parse(const std::string& spec) {
    if (spec == "harmonic") return harmonic();
    if (spec == "unit") return unit();
    if (spec.rfind("power:", 0) == 0) {
      const std::string body = spec.substr(6);
      std::size_t used = 0;
      Real gamma = 0;
      try {
        gamma = std::stold(body, &used);
      } catch (const std::exception&) {
        throw InvalidSpec("bad power exponent: " + body);
      }
      if (used != body.size()) throw InvalidSpec("bad power exponent: " + body);
      return power(gamma);
    }
    if (spec.rfind("table:", 0) == 0) {
      const std::string path = spec.substr(6);
      std::ifstream in(path);
      if (!in) throw InvalidSpec("cannot open weight table: " + path);
      std::map<Quotient, BigRational> values;
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string m_text, v_text;
        if (!(fields >> m_text)) continue;
        if (!(fields >> v_text)) throw InvalidSpec("weight table line needs `m value`: " + line);
        values[detail::parse_u64(m_text, "weight index")] = parse_decimal_or_rational(v_text);
      }
      return table(std::move(values));
    }
    throw InvalidSpec("unknown weight: " + spec);
  }

  Family family() const noexcept { return family_; }
  Real gamma() const noexcept { return gamma_; }
  bool is_exact() const noexcept { return family_ != Family::power; }
  const std::map<Quotient, BigRational>& table_values() const noexcept { return table_; }

  /// s with g(m) = m^{-s} for the power and harmonic families.
  Real exponent() const {
    switch (family_) {
      case Family::power: return Real(0.5) + gamma_;
      case Family::harmonic: return 1;
      case Family::unit: return 0;
      case Family::table: break;
    }
    throw Error("table weights have no exponent");
  }

  BigRational exact(Quotient m) const {
    switch (family_) {
      case Family::harmonic: return BigRational(BigInt(1), BigInt(m));
      case Family::unit: return BigRational(1);
      case Family::table: {
        const auto it = table_.find(m);
        return it == table_.end() ? BigRational(0) : it->second;
      }
      case Family::power: break;
    }
    throw NotExact("power weights are irrational");
  }

  Real operator()(Quotient m) const {
    switch (family_) {
      case Family::power: return std::pow(static_cast<Real>(m), -(Real(0.5) + gamma_));
      case Family::harmonic: return 1 / static_cast<Real>(m);
      case Family::unit: return 1;
      case Family::table: {
        const auto it = table_.find(m);
        return it == table_.end() ? Real(0) : it->second.template convert_to<Real>();
      }
    }
    return 0;
  }

  template <class V>
  V value(Quotient m) const {
    if constexpr (std::is_same_v<V, BigRational>) {
      return exact(m);
    } else {
      return static_cast<V>((*this)(m));
    }
  }

  /// sum_{m=lo}^{hi} g(m); zero when hi < lo.
  template <class V>
  V range_sum(Quotient lo, Quotient hi) const {
    if (hi < lo) return V(0);
    if (family_ == Family::unit) return V(hi - lo + 1);
    Accumulator<V> total;
    if (family_ == Family::table) {
      for (auto it = table_.lower_bound(lo); it != table_.end() && it->first <= hi; ++it) {
        total += value<V>(it->first);
      }
      return total.total();
    }
    for (Quotient m = lo;; ++m) {
      total += value<V>(m);
      if (m == hi) break;
    }
    return total.total();
  }

  std::string spec() const {
    switch (family_) {
      case Family::power: {
        std::ostringstream os;
        os.precision(17);
        os << "power:" << gamma_;
        return os.str();
      }
      case Family::harmonic: return "harmonic";
      case Family::unit: return "unit";
      case Family::table: return "table";
    }
    return "?";
  }

  static BigRational parse_decimal_or_rational(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return parse_rational(text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t places = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || places == 0) throw InvalidSpec("bad decimal: " + text);
    return BigRational(parse_fraction(digits).num, mp::pow(BigInt(10), static_cast<unsigned>(places)));
  }

 private:
  explicit WeightFunction(Family f) : family_(f) {}

  Family family_;
  Real gamma_ = 0;
  std::map<Quotient, BigRational> table_;
};

/// f(n) = floor(n (log n)^{1/2 + delta}) for n >= 2, f(1) = 1.
struct TruncationFn {
  Real delta = 0.5;

  std::uint64_t operator()(std::uint64_t n) const {
    if (n <= 1) return 1;
    const Real x = static_cast<Real>(n);
    return static_cast<std::uint64_t>(std::floor(x * std::pow(std::log(x), Real(0.5) + delta)));
  }
};

}  // namespace icf
