#pragma once

// Seeded Monte Carlo experiments over uniformly sampled reals.
//
// Sample i of a run with master seed S draws x from a DyadicStream seeded with
//   sample_seed(S, i) = splitmix64(S ^ splitmix64(i))
// where splitmix64 is the SplitMix64 finalizer (add 0x9e3779b97f4a7c15, then xor-shift-multiply
// by 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb with shifts 30, 27, 31). The stream's binary
// digits are the successive outputs of std::mt19937_64 seeded with that value.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "icf/convergents.hpp"
#include "icf/farey.hpp"
#include "icf/metric_stats.hpp"
#include "icf/stream.hpp"
#include "icf/weights.hpp"

namespace icf {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed ^ splitmix64(index));
}

/// The index-th uniformly distributed sample of a run.
inline PartialQuotientStream sample_stream(std::uint64_t master_seed, std::uint64_t index,
                                           std::size_t bits) {
  if (bits < 64) throw InvalidSpec("sample_stream needs at least 64 bits");
  return DyadicStream(sample_seed(master_seed, index), bits);
}

enum class Experiment {
  levy,
  gauss_kuzmin,
  nq,
  mq,
  count_intermediates,
  xnf,
  variance,
  pairdep,
  double_exceed,
  openproblem,
  khinchin_avg,
};

inline const std::vector<std::pair<Experiment, std::string>>& experiment_names() {
  static const std::vector<std::pair<Experiment, std::string>> names = {
      {Experiment::levy, "levy"},
      {Experiment::gauss_kuzmin, "gauss_kuzmin"},
      {Experiment::nq, "nq"},
      {Experiment::mq, "mq"},
      {Experiment::count_intermediates, "count_intermediates"},
      {Experiment::xnf, "xnf"},
      {Experiment::variance, "variance"},
      {Experiment::pairdep, "pairdep"},
      {Experiment::double_exceed, "double_exceed"},
      {Experiment::openproblem, "openproblem"},
      {Experiment::khinchin_avg, "khinchin_avg"},
  };
  return names;
}

inline std::string to_string(Experiment e) {
  for (const auto& [kind, name] : experiment_names()) {
    if (kind == e) return name;
  }
  return "?";
}

inline Experiment parse_experiment(const std::string& name) {
  for (const auto& [kind, known] : experiment_names()) {
    if (known == name) return kind;
  }
  throw InvalidSpec("unknown experiment: " + name);
}

struct ExperimentConfig {
  Experiment experiment = Experiment::levy;
  std::uint64_t samples = 1;
  std::uint64_t master_seed = 0;
  std::size_t initial_bits = 256;
  unsigned threads = 1;

  // Parameter lists; empty means the experiment default.
  std::vector<std::uint64_t> Q;
  std::vector<std::uint64_t> n;
  std::vector<std::uint64_t> k;
  std::vector<std::uint64_t> m;
  std::optional<Real> gamma;
  Real delta = 0.5;
  std::string weight;  ///< weight spec; empty means harmonic (or power:<gamma> when gamma is set)
  std::string set = "all";

  /// Largest Q for which the mq experiment also runs the Farey enumeration.
  std::uint64_t farey_max = 2000;
};

struct ResultRow {
  std::string experiment;
  std::uint64_t seed;
  std::uint64_t index;
  std::uint64_t param;
  std::string stat;
  Real value;
  std::optional<BigRational> exact;
};

/// The parameter grid an experiment sweeps, after defaults.
inline std::vector<std::uint64_t> parameter_grid(const ExperimentConfig& c) {
  auto pick = [](const std::vector<std::uint64_t>& given, std::vector<std::uint64_t> fallback) {
    return given.empty() ? fallback : given;
  };
  switch (c.experiment) {
    case Experiment::levy: return pick(c.n, {100});
    case Experiment::gauss_kuzmin: return pick(c.k, {1, 2, 3});
    case Experiment::nq: return pick(c.Q, {1000000});
    case Experiment::mq: return pick(c.Q, {1000});
    case Experiment::count_intermediates: return pick(c.Q, {1000000});
    case Experiment::xnf: return pick(c.n, {100});
    case Experiment::variance: return pick(c.m, {2, 5, 10});
    case Experiment::pairdep: return pick(c.k, {5, 10});
    case Experiment::double_exceed: return pick(c.n, {100});
    case Experiment::openproblem: return pick(c.Q, {10000});
    case Experiment::khinchin_avg: return pick(c.n, {1000});
  }
  return {};
}

/// Statistic names emitted per sample and parameter, in output order.
inline std::vector<std::string> statistic_names(Experiment e) {
  switch (e) {
    case Experiment::levy: return {"levy_stat"};
    case Experiment::gauss_kuzmin: return {"count"};
    case Experiment::nq: return {"N", "a"};
    case Experiment::mq: return {"methods_agree", "mq"};
    case Experiment::count_intermediates: return {"count", "pq_max"};
    case Experiment::xnf: return {"xnf"};
    case Experiment::variance: return {"fsum"};
    case Experiment::pairdep: return {"a_n", "a_n_plus_k"};
    case Experiment::double_exceed: return {"count", "event"};
    case Experiment::openproblem: return {"count"};
    case Experiment::khinchin_avg: return {"avg_ind1", "avg_log"};
  }
  return {};
}

namespace detail {

inline std::uint64_t scalar_or(const std::vector<std::uint64_t>& v, std::uint64_t fallback) {
  return v.empty() ? fallback : v.front();
}

/// Read-only state shared by all workers of one run.
struct RunContext {
  const ExperimentConfig& config;
  std::vector<std::uint64_t> grid;
  WeightFunction weight = WeightFunction::harmonic();
  HeightSet heights;
  std::map<std::uint64_t, std::unique_ptr<FareyTable>> farey_tables;

  explicit RunContext(const ExperimentConfig& c) : config(c), grid(parameter_grid(c)) {
    if (c.samples < 1) throw InvalidSpec("samples must be >= 1");
    if (c.initial_bits < 64) throw InvalidSpec("initial_bits must be >= 64");
    if (c.threads < 1) throw InvalidSpec("threads must be >= 1");
    if (!(c.delta > 0)) throw InvalidSpec("delta must be positive");
    if (!c.weight.empty()) {
      weight = WeightFunction::parse(c.weight);
    } else if (c.gamma) {
      weight = WeightFunction::power(*c.gamma);
    }
    heights = HeightSet::parse(c.set);
    for (const auto p : grid) {
      if (p == 0) throw InvalidSpec("parameters must be positive");
    }
    switch (c.experiment) {
      case Experiment::double_exceed:
        for (const auto p : grid) {
          if (p < 2) throw InvalidSpec("double_exceed needs M >= 2");
        }
        break;
      case Experiment::xnf:
        for (const auto p : grid) {
          if (p < 2) throw InvalidSpec("xnf needs n >= 2");
        }
        break;
      case Experiment::mq:
        for (const auto q : grid) {
          if (q <= c.farey_max && !farey_tables.count(q)) {
            farey_tables[q] = std::make_unique<FareyTable>(static_cast<std::uint32_t>(q));
          }
        }
        break;
      default:
        break;
    }
  }
};

class RowSink {
 public:
  RowSink(const RunContext& ctx, std::uint64_t index, std::vector<ResultRow>& out)
      : ctx_(ctx), index_(index), out_(out) {}

  void add(std::uint64_t param, const std::string& stat, Real value,
           std::optional<BigRational> exact = std::nullopt) {
    out_.push_back(ResultRow{to_string(ctx_.config.experiment), ctx_.config.master_seed, index_,
                             param, stat, value, std::move(exact)});
  }
  void add_exact(std::uint64_t param, const std::string& stat, const BigRational& v) {
    add(param, stat, v.convert_to<Real>(), v);
  }
  void add_count(std::uint64_t param, const std::string& stat, const BigInt& v) {
    add_exact(param, stat, BigRational(v));
  }

 private:
  const RunContext& ctx_;
  std::uint64_t index_;
  std::vector<ResultRow>& out_;
};

template <class V>
bool methods_agree(const V& a, const V& b) {
  if constexpr (std::is_same_v<V, BigRational>) {
    return a == b;
  } else {
    // Real-valued weights are summed in different orders by each method.
    const Real scale = std::max<Real>({Real(1), std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 64 * std::numeric_limits<Real>::epsilon() * scale;
  }
}

template <class V>
void mq_rows(const RunContext& ctx, PartialQuotientStream& x, std::uint64_t Q, RowSink& sink) {
  const V via_intermediates = mq_via_intermediates<V>(x, Q, ctx.weight);
  const V closed = mq_closed_form<V>(x, Q, ctx.weight);
  bool agree = methods_agree(via_intermediates, closed);
  if (const auto it = ctx.farey_tables.find(Q); it != ctx.farey_tables.end()) {
    agree = agree && methods_agree(mq_via_farey<V>(*it->second, x, ctx.weight), closed);
  }
  if (!agree) {
    throw InvariantViolation("M_Q methods disagree for sample " + x.spec() + " at Q=" +
                             std::to_string(Q));
  }
  sink.add_count(Q, "methods_agree", 1);
  if constexpr (std::is_same_v<V, BigRational>) {
    sink.add_exact(Q, "mq", closed);
  } else {
    sink.add(Q, "mq", closed);
  }
}

inline void sample_rows(const RunContext& ctx, std::uint64_t index, std::vector<ResultRow>& out) {
  const ExperimentConfig& c = ctx.config;
  PartialQuotientStream x = sample_stream(c.master_seed, index, c.initial_bits);
  // Refinement is unbounded in practice for uniform samples.
  x.as_dyadic()->set_bit_budget(std::size_t{1} << 24);
  RowSink sink(ctx, index, out);
  const TruncationFn trunc{c.delta};

  for (const std::uint64_t p : ctx.grid) {
    switch (c.experiment) {
      case Experiment::levy:
        sink.add(p, "levy_stat", classical_stats(x, p).levy_stat);
        break;
      case Experiment::gauss_kuzmin: {
        const std::uint64_t n = scalar_or(c.n, 100);
        std::uint64_t hits = 0;
        for (std::uint64_t i = 1; i <= n; ++i) hits += x.quotient(i) == p ? 1 : 0;
        sink.add_count(p, "count", hits);
        break;
      }
      case Experiment::nq: {
        const CutoffData cut = cutoff(x, p);
        sink.add_count(p, "N", cut.N);
        sink.add_count(p, "a", cut.a);
        break;
      }
      case Experiment::mq:
        if (ctx.weight.is_exact()) {
          mq_rows<BigRational>(ctx, x, p, sink);
        } else {
          mq_rows<Real>(ctx, x, p, sink);
        }
        break;
      case Experiment::count_intermediates: {
        const CutoffData cut = cutoff(x, p);
        Quotient largest = cut.a;
        for (std::size_t n = 1; n < cut.N; ++n) largest = std::max(largest, x.quotient(n));
        sink.add_count(p, "count", intermediate_count(x, p));
        sink.add_count(p, "pq_max", largest);
        break;
      }
      case Experiment::xnf:
        if (ctx.weight.is_exact()) {
          sink.add_exact(p, "xnf", x_nf<BigRational>(x, p, ctx.weight, trunc));
        } else {
          sink.add(p, "xnf", x_nf<Real>(x, p, ctx.weight, trunc));
        }
        break;
      case Experiment::variance:
        sink.add_count(p, "fsum", indicator_sum(x, p, scalar_or(c.n, 100)));
        break;
      case Experiment::pairdep: {
        const std::uint64_t n = scalar_or(c.n, 1);
        sink.add_count(p, "a_n", x.quotient(n));
        sink.add_count(p, "a_n_plus_k", x.quotient(n + p));
        break;
      }
      case Experiment::double_exceed: {
        const std::uint64_t count = double_exceedance(x, p, c.delta);
        sink.add_count(p, "count", count);
        sink.add_count(p, "event", count >= 2 ? 1 : 0);
        break;
      }
      case Experiment::openproblem: {
        std::uint64_t hits = 0;
        for (const auto& rec : intermediates(x, p).records) {
          if (ctx.heights.contains(rec.height.convert_to<std::uint64_t>())) ++hits;
        }
        sink.add_count(p, "count", hits);
        break;
      }
      case Experiment::khinchin_avg:
        sink.add(p, "avg_ind1", birkhoff_average(x, [](Quotient a) { return Real(a == 1); }, p));
        sink.add(p, "avg_log", birkhoff_average(
                                   x, [](Quotient a) { return std::log(static_cast<Real>(a)); }, p));
        break;
    }
  }
}

inline bool row_order(const ResultRow& a, const ResultRow& b) {
  return std::tie(a.param, a.index, a.stat) < std::tie(b.param, b.index, b.stat);
}

}  // namespace detail

/// Runs every sample and returns rows sorted by (parameter, sample index, statistic).
/// The output depends only on the configuration, never on the thread count.
inline std::vector<ResultRow> run(const ExperimentConfig& config) {
  const detail::RunContext ctx(config);
  std::vector<std::vector<ResultRow>> per_sample(config.samples);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= config.samples) return;
      try {
        detail::sample_rows(ctx, i, per_sample[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(config.samples);
        return;
      }
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(config.threads, config.samples));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (auto& sample : per_sample) {
    std::move(sample.begin(), sample.end(), std::back_inserter(rows));
  }
  std::stable_sort(rows.begin(), rows.end(), detail::row_order);
  return rows;
}

// ---------------------------------------------------------------------------
// Output.

inline std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

inline std::string format_value(const ResultRow& row, bool exact) {
  if (exact && row.exact) return to_string(*row.exact);
  return format_real(row.value);
}

inline const char* kCsvHeader = "experiment,seed,index,param,stat,value";

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool exact = false) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.seed << ',' << r.index << ',' << r.param << ',' << r.stat << ','
       << format_value(r, exact) << '\n';
  }
}

inline std::string to_csv(const std::vector<ResultRow>& rows, bool exact = false) {
  std::ostringstream os;
  write_csv(os, rows, exact);
  return os.str();
}

/// The CSV rows as a JSON array of objects with the same fields; values are strings formatted
/// exactly as in the CSV.
inline nlohmann::json to_json(const std::vector<ResultRow>& rows, bool exact = false) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"experiment", r.experiment},
                   {"seed", r.seed},
                   {"index", r.index},
                   {"param", r.param},
                   {"stat", r.stat},
                   {"value", format_value(r, exact)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation.

struct SummaryRecord {
  std::string experiment;
  std::uint64_t param;
  std::string stat;
  Real mean;
  Real median;
  Real trimmed_mean;  ///< drops ceil(0.05 count) values at each end
  Real stddev;        ///< sample standard deviation (n - 1 denominator); 0 for a single value
  std::uint64_t count;
};

/// Per (experiment, parameter, statistic) summaries. Values are ordered by sample index before
/// any reduction, so the result does not depend on row order.
inline std::vector<SummaryRecord> aggregate(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::uint64_t, std::string>;
  std::map<Key, std::vector<std::pair<std::uint64_t, Real>>> groups;
  for (const auto& r : rows) groups[{r.experiment, r.param, r.stat}].emplace_back(r.index, r.value);

  std::vector<SummaryRecord> out;
  for (auto& [key, entries] : groups) {
    std::sort(entries.begin(), entries.end());
    std::vector<Real> values;
    values.reserve(entries.size());
    for (const auto& e : entries) values.push_back(e.second);
    const std::size_t count = values.size();

    Real sum = 0;
    for (const Real v : values) sum += v;
    const Real mean = sum / static_cast<Real>(count);
    Real sq = 0;
    for (const Real v : values) sq += (v - mean) * (v - mean);
    const Real stddev = count > 1 ? std::sqrt(sq / static_cast<Real>(count - 1)) : 0;

    std::vector<Real> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const Real median = count % 2 == 1 ? sorted[count / 2]
                                       : (sorted[count / 2 - 1] + sorted[count / 2]) / 2;
    const std::size_t drop = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(count)));
    Real trimmed = median;
    if (2 * drop < count) {
      Real kept = 0;
      for (std::size_t i = drop; i < count - drop; ++i) kept += sorted[i];
      trimmed = kept / static_cast<Real>(count - 2 * drop);
    }
    out.push_back(SummaryRecord{std::get<0>(key), std::get<1>(key), std::get<2>(key), mean, median,
                                trimmed, stddev, count});
  }
  return out;
}

/// Joint and marginal counts of (a_n, a_{n+k}) over the samples of a pairdep run.
struct PairDependence {
  std::uint64_t k = 0;
  std::uint64_t samples = 0;
  std::map<std::pair<Quotient, Quotient>, std::uint64_t> joint;
  std::map<Quotient, std::uint64_t> first;   ///< counted directly from a_n
  std::map<Quotient, std::uint64_t> second;  ///< counted directly from a_{n+k}

  Real p_joint(Quotient r, Quotient s) const {
    const auto it = joint.find({r, s});
    return it == joint.end() ? 0 : static_cast<Real>(it->second) / static_cast<Real>(samples);
  }
  Real p_first(Quotient r) const {
    const auto it = first.find(r);
    return it == first.end() ? 0 : static_cast<Real>(it->second) / static_cast<Real>(samples);
  }
  Real p_second(Quotient s) const {
    const auto it = second.find(s);
    return it == second.end() ? 0 : static_cast<Real>(it->second) / static_cast<Real>(samples);
  }

  /// Marginals recomputed by summing the joint table.
  std::map<Quotient, std::uint64_t> first_from_joint() const {
    std::map<Quotient, std::uint64_t> out;
    for (const auto& [rs, count] : joint) out[rs.first] += count;
    return out;
  }
  std::map<Quotient, std::uint64_t> second_from_joint() const {
    std::map<Quotient, std::uint64_t> out;
    for (const auto& [rs, count] : joint) out[rs.second] += count;
    return out;
  }
};

inline PairDependence pair_dependence(const std::vector<ResultRow>& rows, std::uint64_t k) {
  std::map<std::uint64_t, std::pair<std::optional<Quotient>, std::optional<Quotient>>> by_index;
  for (const auto& r : rows) {
    if (r.experiment != "pairdep" || r.param != k) continue;
    const auto v = static_cast<Quotient>(r.value);
    const Quotient exact = r.exact ? mp::numerator(*r.exact).convert_to<Quotient>() : v;
    if (r.stat == "a_n") by_index[r.index].first = exact;
    if (r.stat == "a_n_plus_k") by_index[r.index].second = exact;
  }
  PairDependence out;
  out.k = k;
  for (const auto& [index, pair] : by_index) {
    if (!pair.first || !pair.second) throw InvariantViolation("incomplete pairdep sample");
    ++out.samples;
    ++out.joint[{*pair.first, *pair.second}];
    ++out.first[*pair.first];
    ++out.second[*pair.second];
  }
  return out;
}

struct DerivedValue {
  std::uint64_t param;
  std::string name;
  Real value;
};

/// Experiment-level statistics computed across samples (pooled frequencies, empirical
/// variance, joint versus product probabilities, normalized means).
inline std::vector<DerivedValue> derived_statistics(const ExperimentConfig& c,
                                                    const std::vector<ResultRow>& rows) {
  std::vector<DerivedValue> out;
  const auto summary = aggregate(rows);
  auto find = [&summary](std::uint64_t param, const std::string& stat) -> const SummaryRecord* {
    for (const auto& s : summary) {
      if (s.param == param && s.stat == stat) return &s;
    }
    return nullptr;
  };
  const Real twelve_over_pi2 = 12 / (pi() * pi());
  for (const std::uint64_t p : parameter_grid(c)) {
    const Real logp = std::log(static_cast<Real>(p));
    switch (c.experiment) {
      case Experiment::levy:
        if (const auto* s = find(p, "levy_stat")) {
          out.push_back({p, "median_levy_stat", s->median});
          out.push_back({p, "khinchin_levy_constant", pi() * pi() / (12 * std::log(Real(2)))});
        }
        break;
      case Experiment::gauss_kuzmin:
        if (const auto* s = find(p, "count")) {
          const Real trials = static_cast<Real>(s->count) * static_cast<Real>(detail::scalar_or(c.n, 100));
          const Real prob = gauss_kuzmin_prob(p);
          const Real freq = s->mean * static_cast<Real>(s->count) / trials;
          const Real sd = std::sqrt(prob * (1 - prob) / trials);
          out.push_back({p, "pooled_frequency", freq});
          out.push_back({p, "gauss_kuzmin_prob", prob});
          out.push_back({p, "z_score", (freq - prob) / sd});
        }
        break;
      case Experiment::nq:
        if (const auto* s = find(p, "N")) {
          out.push_back({p, "mean_N_over_logQ", s->mean / logp});
          out.push_back({p, "target", twelve_over_pi2 * std::log(Real(2))});
        }
        break;
      case Experiment::mq:
        if (const auto* s = find(p, "mq")) {
          out.push_back({p, "mean_mq_over_logQ", s->mean / logp});
          if (c.weight != "unit") {
            try {
              WeightFunction g = c.weight.empty()
                                     ? (c.gamma ? WeightFunction::power(*c.gamma) : WeightFunction::harmonic())
                                     : WeightFunction::parse(c.weight);
              out.push_back({p, "main_term_over_logQ", main_term(g, p) / logp});
            } catch (const DivergentSeries&) {
            }
          }
        }
        break;
      case Experiment::count_intermediates:
        if (const auto* s = find(p, "count")) {
          const Real scale = twelve_over_pi2 * logp * std::log(logp);
          out.push_back({p, "median_count_over_scale", s->median / scale});
          out.push_back({p, "mean_count_over_scale", s->mean / scale});
        }
        break;
      case Experiment::variance:
        if (const auto* s = find(p, "fsum")) {
          const Real var = s->stddev * s->stddev;
          out.push_back({p, "mean", s->mean});
          out.push_back({p, "var", var});
          out.push_back({p, "var_over_mean", var / s->mean});
        }
        break;
      case Experiment::pairdep: {
        const PairDependence pd = pair_dependence(rows, p);
        for (Quotient r = 1; r <= 2; ++r) {
          for (Quotient s = 1; s <= 2; ++s) {
            const std::string tag = std::to_string(r) + "_" + std::to_string(s);
            out.push_back({p, "joint_" + tag, pd.p_joint(r, s)});
            out.push_back({p, "product_" + tag, pd.p_first(r) * pd.p_second(s)});
          }
        }
        break;
      }
      case Experiment::double_exceed:
        if (const auto* s = find(p, "event")) out.push_back({p, "event_rate", s->mean});
        break;
      case Experiment::openproblem: {
        const HeightSet heights = HeightSet::parse(c.set);
        out.push_back({p, "divergence_functional", divergence_functional(heights, p)});
        if (const auto* s = find(p, "count")) out.push_back({p, "mean_count", s->mean});
        break;
      }
      case Experiment::khinchin_avg:
        if (const auto* s = find(p, "avg_ind1")) {
          out.push_back({p, "mean_avg_ind1", s->mean});
          out.push_back({p, "reference_ind1", gauss_kuzmin_prob(1)});
        }
        if (const auto* s = find(p, "avg_log")) out.push_back({p, "mean_avg_log", s->mean});
        break;
      case Experiment::xnf:
        if (const auto* s = find(p, "xnf")) out.push_back({p, "mean_xnf", s->mean});
        break;
    }
  }
  return out;
}

}  // namespace icf
