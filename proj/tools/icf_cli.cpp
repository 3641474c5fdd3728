#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "icf/harness.hpp"

using namespace icf;

namespace {

constexpr int kInvalidArgs = 2;
constexpr int kInvariantViolation = 3;

void print_mq(const std::string& label, const BigRational& v) {
  std::cout << label << ' ' << to_string(v) << ' ' << format_real(static_cast<Real>(v)) << '\n';
}

void print_mq(const std::string& label, Real v) { std::cout << label << ' ' << format_real(v) << '\n'; }

template <class V>
int run_mq(const std::string& spec, std::uint64_t Q, const WeightFunction& g, const std::string& method) {
  std::optional<V> farey, conv, closed;
  if (method == "farey" || method == "all") {
    auto x = parse_stream_spec(spec);
    farey = mq_via_farey<V>(x, Q, g);
    print_mq("farey", *farey);
  }
  if (method == "conv" || method == "all") {
    auto x = parse_stream_spec(spec);
    conv = mq_via_intermediates<V>(x, Q, g);
    print_mq("conv", *conv);
  }
  if (method == "closed" || method == "all") {
    auto x = parse_stream_spec(spec);
    closed = mq_closed_form<V>(x, Q, g);
    print_mq("closed", *closed);
  }
  if (method == "all") {
    // rational inputs weight Farey endpoints by 1/2, so only the last two must coincide there
    auto x = parse_stream_spec(spec);
    const bool rational = x.kind() == StreamKind::rational;
    const bool agree = detail::methods_agree(*conv, *closed) &&
                       (rational || detail::methods_agree(*farey, *closed));
    std::cout << "methods_agree " << (agree ? 1 : 0) << '\n';
    if (!agree) throw InvariantViolation("mq methods disagree");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intermediate convergents, Farey sums and Monte Carlo experiments"};
  app.require_subcommand(1);

  std::string fraction_text, spec, beta_text, method = "all", weight = "harmonic";
  std::size_t n_terms = 10;
  std::uint64_t Q = 100, q = 1;

  auto* cf_cmd = app.add_subcommand("cf", "Continued fraction of a rational p/q");
  cf_cmd->add_option("fraction", fraction_text)->required();

  auto* conv_cmd = app.add_subcommand("convergents", "Convergents p_n/q_n of a stream");
  conv_cmd->add_option("--x", spec, "rational:p/q, periodic:[a0;pre|period] or dyadic:seed=S,bits=B")
      ->required();
  conv_cmd->add_option("--n", n_terms, "Largest index")->capture_default_str();

  auto* inter_cmd = app.add_subcommand("intermediates", "Intermediate fractions of height <= Q");
  inter_cmd->add_option("--x", spec)->required();
  inter_cmd->add_option("--Q", Q)->required();

  auto* chi_cmd = app.add_subcommand("chi", "Neighbor indicator of a Farey fraction for x");
  chi_cmd->add_option("--beta", beta_text)->required();
  chi_cmd->add_option("--x", spec)->required();

  auto* row_cmd = app.add_subcommand("farey-row", "Row sum of expected indicators at height q");
  row_cmd->add_option("--q", q)->required()->check(CLI::PositiveNumber);

  auto* mq_cmd = app.add_subcommand("mq", "Weighted count M_Q(x)");
  mq_cmd->add_option("--x", spec)->required();
  mq_cmd->add_option("--Q", Q)->required()->check(CLI::PositiveNumber);
  mq_cmd->add_option("--weight", weight, "harmonic, unit, power:<gamma> or table:<file>")
      ->capture_default_str();
  mq_cmd->add_option("--method", method)->check(CLI::IsMember({"farey", "conv", "closed", "all"}))
      ->capture_default_str();

  ExperimentConfig config;
  std::string experiment, out_path;
  double gamma = 0, delta = 0.5;
  bool exact = false, json = false;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Run an experiment over random samples");
  std::vector<std::string> experiment_list;
  for (const auto& [kind, name] : experiment_names()) experiment_list.push_back(name);
  mc_cmd->add_option("--experiment", experiment)->required()->check(CLI::IsMember(experiment_list));
  mc_cmd->add_option("--samples", config.samples)->capture_default_str();
  mc_cmd->add_option("--seed", config.master_seed)->capture_default_str();
  mc_cmd->add_option("--Q", config.Q)->delimiter(',');
  mc_cmd->add_option("--n", config.n)->delimiter(',');
  mc_cmd->add_option("--k", config.k)->delimiter(',');
  mc_cmd->add_option("--m", config.m)->delimiter(',');
  auto* gamma_opt = mc_cmd->add_option("--gamma", gamma, "Power weight exponent");
  mc_cmd->add_option("--delta", delta)->capture_default_str();
  mc_cmd->add_option("--weight", config.weight);
  mc_cmd->add_option("--set", config.set, "all, primes, mod:d,r or file:<path>")->capture_default_str();
  mc_cmd->add_option("--bits", config.initial_bits)->capture_default_str();
  mc_cmd->add_option("--farey-max", config.farey_max)->capture_default_str();
  mc_cmd->add_option("--threads", config.threads)->capture_default_str();
  mc_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
  mc_cmd->add_flag("--exact", exact, "Write exact rationals where available");
  mc_cmd->add_flag("--json", json, "Write JSON instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidArgs;
  }

  try {
    if (cf_cmd->parsed()) {
      std::cout << cf_of_rational(parse_fraction(fraction_text)).str() << '\n';
    } else if (conv_cmd->parsed()) {
      auto x = parse_stream_spec(spec);
      const auto c = convergents(x, n_terms);
      for (const auto& pair : c) std::cout << pair.index << ' ' << pair.p << '/' << pair.q << '\n';
    } else if (inter_cmd->parsed()) {
      auto x = parse_stream_spec(spec);
      const auto list = intermediates(x, Q);
      std::cout << "level,index,raw,fraction,height\n";
      for (const auto& r : list.records) {
        std::cout << r.level << ',' << r.index << ',' << r.raw.str() << ',' << r.fraction.str() << ','
                  << r.height << '\n';
      }
    } else if (chi_cmd->parsed()) {
      auto x = parse_stream_spec(spec);
      std::cout << to_string(chi(reduce_mod1(parse_fraction(beta_text)), x)) << '\n';
    } else if (row_cmd->parsed()) {
      const BigRational v = row_sum_exact(q);
      std::cout << "exact " << to_string(v) << ' ' << format_real(static_cast<Real>(v)) << '\n';
      std::cout << "formula " << format_real(row_sum_formula(q)) << '\n';
    } else if (mq_cmd->parsed()) {
      const WeightFunction g = WeightFunction::parse(weight);
      return g.is_exact() ? run_mq<BigRational>(spec, Q, g, method) : run_mq<Real>(spec, Q, g, method);
    } else if (mc_cmd->parsed()) {
      config.experiment = parse_experiment(experiment);
      config.delta = delta;
      if (*gamma_opt) config.gamma = gamma;
      const auto rows = run(config);
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw InvalidSpec("cannot open output file: " + out_path);
      }
      std::ostream& os = out_path.empty() ? std::cout : file;
      if (json) {
        os << to_json(rows, exact).dump(1) << '\n';
      } else {
        write_csv(os, rows, exact);
      }
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidArgs;
  }
  return 0;
}
