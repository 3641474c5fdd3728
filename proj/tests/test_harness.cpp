#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "icf/harness.hpp"

using namespace icf;

namespace {

ExperimentConfig make(Experiment e, std::uint64_t samples, std::uint64_t seed) {
  ExperimentConfig c;
  c.experiment = e;
  c.samples = samples;
  c.master_seed = seed;
  return c;
}

ResultRow row(std::uint64_t index, Real value) {
  return ResultRow{"levy", 0, index, 1, "levy_stat", value, std::nullopt};
}

}  // namespace

TEST(Seeding, SplitmixReferenceValues) {
  // First outputs of the reference splitmix64 generator seeded with 0 (state advanced by the
  // golden gamma before mixing).
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(sample_seed(7, 3), splitmix64(7 ^ splitmix64(3)));
  EXPECT_NE(sample_seed(7, 3), sample_seed(7, 4));
  EXPECT_NE(sample_seed(7, 3), sample_seed(8, 3));
}

TEST(Seeding, SampleStreamsAreReproducible) {
  auto a = sample_stream(11, 5, 256);
  auto b = sample_stream(11, 5, 64);
  auto c = PartialQuotientStream::dyadic(sample_seed(11, 5), 256);
  for (std::size_t n = 1; n <= 50; ++n) {
    EXPECT_EQ(a.quotient(n), b.quotient(n));
    EXPECT_EQ(a.quotient(n), c.quotient(n));
  }
  EXPECT_THROW(sample_stream(1, 1, 32), InvalidSpec);
}

TEST(Experiments, NamesRoundTrip) {
  for (const auto& [kind, name] : experiment_names()) {
    EXPECT_EQ(parse_experiment(name), kind);
    EXPECT_EQ(to_string(kind), name);
  }
  EXPECT_THROW(parse_experiment("levy_constant"), InvalidSpec);
}

TEST(Run, RowCountContract) {
  auto c = make(Experiment::levy, 10, 1);
  c.n = {50};
  const auto rows = run(c);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].index, i);
    EXPECT_EQ(rows[i].param, 50u);
    EXPECT_EQ(rows[i].stat, "levy_stat");
    EXPECT_EQ(rows[i].seed, 1u);
    EXPECT_GT(rows[i].value, 0);
  }
}

TEST(Run, RowsCoverGridAndStatistics) {
  for (const auto& [kind, name] : experiment_names()) {
    auto c = make(kind, 3, 9);
    if (kind == Experiment::nq || kind == Experiment::count_intermediates) c.Q = {1000};
    if (kind == Experiment::openproblem) c.Q = {500};
    const auto rows = run(c);
    EXPECT_EQ(rows.size(), 3 * parameter_grid(c).size() * statistic_names(kind).size()) << name;
    for (const auto& r : rows) EXPECT_EQ(r.experiment, name);
  }
}

TEST(Run, MqMethodsAgree) {
  auto c = make(Experiment::mq, 5, 2);
  c.Q = {1000};
  c.weight = "harmonic";
  const auto rows = run(c);
  std::size_t checks = 0;
  for (const auto& r : rows) {
    if (r.stat != "methods_agree") continue;
    EXPECT_EQ(r.value, 1);
    ++checks;
  }
  EXPECT_EQ(checks, 5u);
}

TEST(Run, MqValuesMatchDirectComputation) {
  auto c = make(Experiment::mq, 4, 3);
  c.Q = {300};
  for (const auto& r : run(c)) {
    if (r.stat != "mq") continue;
    auto x = sample_stream(3, r.index, 256);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(*r.exact, mq_closed_form<BigRational>(x, 300, WeightFunction::harmonic()));
  }
}

TEST(Run, OpenProblemWithEmptyHeightSetCountsNothing) {
  auto c = make(Experiment::openproblem, 6, 4);
  c.Q = {2000};
  c.set = std::string("file:") + ICF_TEST_DATA_DIR + "/empty_heights.txt";
  const auto rows = run(c);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) EXPECT_EQ(r.value, 0);
}

TEST(Run, OpenProblemWithAllHeightsCountsIntermediates) {
  auto c = make(Experiment::openproblem, 6, 4);
  c.Q = {2000};
  for (const auto& r : run(c)) {
    auto x = sample_stream(4, r.index, 256);
    EXPECT_EQ(r.value, static_cast<Real>(intermediates(x, 2000).records.size()));
  }
}

TEST(Run, ThreadCountDoesNotChangeOutput) {
  for (const Experiment e : {Experiment::levy, Experiment::mq, Experiment::xnf, Experiment::pairdep}) {
    auto c = make(e, 40, 123);
    const std::string single = to_csv(run(c), true);
    for (const unsigned t : {2u, 8u}) {
      c.threads = t;
      EXPECT_EQ(to_csv(run(c), true), single) << to_string(e) << " threads=" << t;
    }
  }
}

TEST(Run, RejectsInvalidConfigs) {
  auto c = make(Experiment::levy, 0, 1);
  EXPECT_THROW(run(c), InvalidSpec);
  c = make(Experiment::levy, 1, 1);
  c.threads = 0;
  EXPECT_THROW(run(c), InvalidSpec);
  c = make(Experiment::levy, 1, 1);
  c.initial_bits = 16;
  EXPECT_THROW(run(c), InvalidSpec);
  c = make(Experiment::double_exceed, 1, 1);
  c.n = {1};
  EXPECT_THROW(run(c), InvalidSpec);
  c = make(Experiment::mq, 1, 1);
  c.weight = "zeta";
  EXPECT_THROW(run(c), InvalidSpec);
  c = make(Experiment::openproblem, 1, 1);
  c.set = "nonsense";
  EXPECT_THROW(run(c), InvalidSpec);
  c = make(Experiment::nq, 1, 1);
  c.Q = {0};
  EXPECT_THROW(run(c), InvalidSpec);
}

TEST(Output, CsvFormat) {
  auto c = make(Experiment::nq, 2, 5);
  c.Q = {100};
  const auto rows = run(c);
  std::istringstream in(to_csv(rows));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5) << line;
    EXPECT_EQ(line.rfind("nq,", 0), 0u) << line;
    ++lines;
  }
  EXPECT_EQ(lines, rows.size());
}

TEST(Output, ExactModeWritesFractions) {
  auto c = make(Experiment::mq, 3, 6);
  c.Q = {50};
  const auto rows = run(c);
  const std::string exact = to_csv(rows, true);
  for (const auto& r : rows) {
    if (r.stat == "mq") {
      ASSERT_TRUE(r.exact);
      EXPECT_NE(exact.find("," + to_string(*r.exact) + "\n"), std::string::npos);
    }
  }
  EXPECT_EQ(format_real(Real(0.1)), "0.1");
  EXPECT_EQ(format_real(Real(2)), "2");
}

TEST(Output, JsonMirrorsCsv) {
  auto c = make(Experiment::khinchin_avg, 3, 7);
  c.n = {200};
  const auto rows = run(c);
  const auto json = to_json(rows);
  ASSERT_EQ(json.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(json[i]["experiment"], rows[i].experiment);
    EXPECT_EQ(json[i]["index"], rows[i].index);
    EXPECT_EQ(json[i]["stat"], rows[i].stat);
    EXPECT_EQ(json[i]["value"], format_real(rows[i].value));
  }
}

TEST(Aggregate, SimpleStatistics) {
  const auto s = aggregate({row(0, 1), row(1, 2), row(2, 3)});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].mean, 2);
  EXPECT_EQ(s[0].median, 2);
  EXPECT_EQ(s[0].stddev, 1);
  EXPECT_EQ(s[0].count, 3u);
  EXPECT_EQ(aggregate({row(0, 5)})[0].stddev, 0);
  EXPECT_EQ(aggregate({row(0, 1), row(1, 4)})[0].median, Real(2.5));
}

TEST(Aggregate, TrimmedMeanDropsFivePercentEachSide) {
  std::vector<ResultRow> rows;
  for (int i = 0; i < 20; ++i) rows.push_back(row(i, i));
  rows[19].value = 1000;
  const auto s = aggregate(rows)[0];
  // ceil(0.05 * 20) = 1 value dropped at each end: mean of 1..18
  EXPECT_EQ(s.trimmed_mean, Real(9.5));
  EXPECT_GT(s.mean, 50);
}

TEST(Aggregate, InvariantUnderRowPermutation) {
  std::vector<ResultRow> rows;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 101; ++i) rows.push_back(row(i, std::uniform_real_distribution<double>(0, 1)(rng)));
  const auto base = aggregate(rows)[0];
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto s = aggregate(rows)[0];
    EXPECT_EQ(s.mean, base.mean);
    EXPECT_EQ(s.median, base.median);
    EXPECT_EQ(s.trimmed_mean, base.trimmed_mean);
    EXPECT_EQ(s.stddev, base.stddev);
  }
}

TEST(PairDep, MarginalsAgreeWithJointTable) {
  auto c = make(Experiment::pairdep, 500, 8);
  const auto rows = run(c);
  for (const std::uint64_t k : parameter_grid(c)) {
    const auto dep = pair_dependence(rows, k);
    EXPECT_EQ(dep.samples, 500u);
    EXPECT_EQ(dep.first_from_joint(), dep.first);
    EXPECT_EQ(dep.second_from_joint(), dep.second);
    Real total = 0;
    for (const auto& [rs, count] : dep.joint) total += dep.p_joint(rs.first, rs.second);
    EXPECT_NEAR(static_cast<double>(total), 1.0, 1e-15);
  }
}

TEST(Derived, GaussKuzminScores) {
  auto c = make(Experiment::gauss_kuzmin, 200, 10);
  const auto derived = derived_statistics(c, run(c));
  std::size_t z_scores = 0;
  for (const auto& d : derived) {
    if (d.name == "gauss_kuzmin_prob") {
      EXPECT_NEAR(static_cast<double>(d.value), static_cast<double>(gauss_kuzmin_prob(d.param)), 1e-18);
    }
    if (d.name == "z_score") {
      EXPECT_LT(std::abs(static_cast<double>(d.value)), 5.0);
      ++z_scores;
    }
  }
  EXPECT_EQ(z_scores, 3u);
}
