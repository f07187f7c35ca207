#include "kuiper/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "kuiper/empirical.hpp"
#include "kuiper/error.hpp"

namespace kuiper::cli {
namespace {

constexpr double kCurveLow = 0.0002;
constexpr double kCurveHigh = 0.9998;

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput:
    case ErrorCode::UnsortedInput:
    case ErrorCode::OutOfRange:
    case ErrorCode::LengthMismatch:
      return true;
    default:
      return false;
  }
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kUsageError : kNumericalError;
  }
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  value = std::strtod(text.c_str(), &end);
  return errno == 0 && end == text.c_str() + text.size() && std::isfinite(value);
}

const std::map<std::string, TestKind> kKindNames{{"vn", TestKind::OneSample},
                                                 {"vnn", TestKind::TwoSampleEqual}};
const std::map<std::string, IterationMethod> kMethodNames{{"direct", IterationMethod::Direct},
                                                          {"newton", IterationMethod::Newton}};
const std::map<std::string, TableFormat> kFormatNames{{"csv", TableFormat::Csv},
                                                      {"markdown", TableFormat::Markdown}};

struct GlobalOptions {
  int decimals = 4;
  TableFormat format = TableFormat::Csv;
};

// ---- pair ------------------------------------------------------------------

struct PairOptions {
  double alpha = 0.0;
  std::string n;
  TestKind kind = TestKind::OneSample;
  IterationMethod method = IterationMethod::Newton;
  double guess = kDefaultGuess;
};

int cmd_pair(const PairOptions& opt, const GlobalOptions& global, std::ostream& out,
             std::ostream& err) {
  SolverConfig config;
  config.guess = opt.guess;
  const PairSolution solution =
      solve_kuiper_pair(config, opt.alpha, parse_sample_size(opt.n), opt.kind, opt.method);
  if (solution.warning) err << "warning: " << *solution.warning << '\n';
  out << "c=" << format_fixed(solution.pair.critical_value, global.decimals)
      << " v=" << format_fixed(solution.pair.quantile, global.decimals) << '\n';
  return kSuccess;
}

// ---- utq / ltq / invcdf ------------------------------------------------------

struct TailOptions {
  double probability = 0.0;
  std::string n;
};

// ---- table -------------------------------------------------------------------

struct TableOptions {
  std::vector<double> alphas;
  std::vector<std::string> ns;
  std::string preset;
  TestKind kind = TestKind::OneSample;
  IterationMethod method = IterationMethod::Newton;
};

TableSpec table_spec_from(const TableOptions& opt, const GlobalOptions& global) {
  TableSpec spec;
  spec.kind = opt.kind;
  spec.method = opt.method;
  spec.format = global.format;
  spec.decimals = global.decimals;
  if (opt.preset == "one-sample") {
    spec.alphas = {0.10, 0.05, 0.01};
    for (std::uint64_t n : {10, 20, 30, 40, 100, 180, 1'000'000}) spec.ns.emplace_back(n);
    spec.kind = TestKind::OneSample;
  } else if (opt.preset == "limit") {
    spec.alphas = {0.10, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04, 0.03, 0.02, 0.01, 1e-6, 1e-10};
    spec.ns = {SampleSize::infinite()};
    spec.kind = TestKind::OneSample;
  } else if (opt.preset == "two-sample") {
    spec.alphas = {0.10, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04, 0.03, 0.02, 0.01};
    for (std::uint64_t n : {10, 20, 30, 40, 100, 100'000'000}) spec.ns.emplace_back(n);
    spec.kind = TestKind::TwoSampleEqual;
  }
  if (!opt.alphas.empty()) spec.alphas = opt.alphas;
  if (!opt.ns.empty()) {
    spec.ns.clear();
    for (const auto& text : opt.ns) spec.ns.push_back(parse_sample_size(text));
  }
  spec.validate();
  return spec;
}

// ---- curve -------------------------------------------------------------------

struct CurveOptions {
  std::string n;
  int points = 50;
};

int cmd_curve(const CurveOptions& opt, const GlobalOptions& global, std::ostream& out,
              std::ostream& err) {
  if (opt.points < 2) throw UsageError("--points must be at least 2");
  const SampleSize n = parse_sample_size(opt.n);
  const double step = (kCurveHigh - kCurveLow) / static_cast<double>(opt.points - 1);
  int failures = 0;
  out << "p,x\n";
  for (int i = 0; i < opt.points; ++i) {
    const double p = std::round((kCurveLow + step * i) * 1e10) / 1e10;
    out << format_shortest(p) << ',';
    try {
      out << format_fixed(kuiper_inv_cdf(p, n, GuessPolicy::Fallback), global.decimals) << '\n';
    } catch (const Error&) {
      out << "NA\n";
      ++failures;
    }
  }
  if (failures > 0) {
    err << "error: " << failures << " of " << opt.points << " points could not be solved\n";
    return kNumericalError;
  }
  return kSuccess;
}

// ---- test --------------------------------------------------------------------

struct TestOptions {
  std::string data;
  std::string second_sample;
  double alpha = 0.0;
  std::string dist = "uniform";
  std::vector<double> params;
  bool pit = false;
};

std::vector<double> transform_to_probabilities(std::vector<double> values,
                                               const TestOptions& opt) {
  if (opt.pit) return values;
  if (opt.dist == "uniform") {
    const double lower = opt.params.empty() ? 0.0 : opt.params.at(0);
    const double upper = opt.params.empty() ? 1.0 : opt.params.at(1);
    if (!(upper > lower)) throw UsageError("uniform distribution needs lower < upper");
    for (double& x : values) x = uniform_cdf(x, lower, upper);
  } else {
    const double mean = opt.params.empty() ? 0.0 : opt.params.at(0);
    const double stddev = opt.params.empty() ? 1.0 : opt.params.at(1);
    if (!(stddev > 0.0)) throw UsageError("normal distribution needs a positive standard deviation");
    for (double& x : values) x = normal_cdf(x, mean, stddev);
  }
  return values;
}

int cmd_test(const TestOptions& opt, const GlobalOptions& global, std::ostream& out) {
  if (!opt.params.empty() && opt.params.size() != 2) {
    throw UsageError("--params takes exactly two values");
  }
  std::vector<double> values = read_data_file(opt.data);

  EmpiricalResult statistic;
  TestKind kind = TestKind::OneSample;
  if (!opt.second_sample.empty()) {
    kind = TestKind::TwoSampleEqual;
    std::vector<double> other = read_data_file(opt.second_sample);
    std::sort(values.begin(), values.end());
    std::sort(other.begin(), other.end());
    statistic = kuiper_statistic_two_sample(values, other);
  } else {
    values = transform_to_probabilities(std::move(values), opt);
    std::sort(values.begin(), values.end());
    statistic = kuiper_statistic_one_sample(values);
  }

  const TestDecision decision = run_test(statistic, opt.alpha, kind);
  const int d = global.decimals;
  out << "n=" << statistic.n << '\n'
      << "d_plus=" << format_fixed(statistic.d_plus, d) << '\n'
      << "d_minus=" << format_fixed(statistic.d_minus, d) << '\n'
      << "v=" << format_fixed(statistic.v, d) << '\n'
      << "sqrt_n_v=" << format_fixed(statistic.k, d) << '\n'
      << "quantile=" << format_fixed(decision.quantile, d) << '\n'
      << "p_value="
      << (kind == TestKind::OneSample ? format_fixed(approximate_p_value(statistic), d)
                                      : std::string("NA"))
      << '\n'
      << (decision.reject ? "REJECT" : "ACCEPT") << '\n';
  return decision.reject ? kRejected : kSuccess;
}

// ---- simulate ----------------------------------------------------------------

struct SimulateOptions {
  std::uint64_t n = 0;
  double alpha = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  TestKind kind = TestKind::OneSample;
};

int cmd_simulate(const SimulateOptions& opt, const GlobalOptions& global, std::ostream& out) {
  if (opt.kind != TestKind::OneSample) {
    throw UsageError("simulation is available for the one-sample test only");
  }
  if (opt.n == 0) throw UsageError("--n must be at least 1");
  if (opt.reps == 0) throw UsageError("--reps must be at least 1");
  const double threshold = kuiper_utq(opt.alpha, SampleSize(opt.n), GuessPolicy::Fallback);
  const double empirical = monte_carlo_exceedance(opt.n, threshold, opt.reps, opt.seed);
  out << "target=" << format_shortest(opt.alpha)
      << " empirical=" << format_fixed(empirical, global.decimals) << " reps=" << opt.reps
      << " seed=" << opt.seed << '\n';
  return kSuccess;
}

void add_sample_size(CLI::App* sub, std::string& target) {
  sub->add_option("--n", target, "Sample size: positive integer or 'inf'")->required();
}

}  // namespace

void TableSpec::validate() const {
  if (alphas.empty()) throw UsageError("table needs at least one alpha");
  if (ns.empty()) throw UsageError("table needs at least one n");
  if (decimals < 1 || decimals > 12) throw UsageError("--decimals must lie in [1, 12]");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw UsageError("alpha " + format_shortest(a) + " outside (0, 1)");
  }
}

std::string format_fixed(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  double rounded = std::round(value * scale) / scale;
  if (rounded == 0.0) rounded = 0.0;  // drop the sign of -0
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, rounded);
  return buffer;
}

std::string format_shortest(double value) {
  char buffer[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

SampleSize parse_sample_size(std::string_view text) {
  const std::string s = trim(text);
  if (s == "inf" || s == "INF" || s == "Inf") return SampleSize::infinite();
  double value = 0.0;
  if (!parse_double(s, value) || value < 1.0 || value != std::floor(value)) {
    throw UsageError("invalid sample size '" + s + "'");
  }
  if (value >= static_cast<double>(SampleSize::kInfinityThreshold)) return SampleSize::infinite();
  return SampleSize(static_cast<std::uint64_t>(value));
}

std::vector<double> read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open data file '" + path.string() + "'");
  std::vector<double> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    double value = 0.0;
    if (!parse_double(text, value)) {
      throw UsageError(path.string() + ":" + std::to_string(line_number) + ": not a number: '" +
                       text + "'");
    }
    values.push_back(value);
  }
  return values;
}

double uniform_cdf(double x, double lower, double upper) {
  return std::clamp((x - lower) / (upper - lower), 0.0, 1.0);
}

double normal_cdf(double x, double mean, double stddev) {
  return 0.5 * std::erfc(-(x - mean) / (stddev * std::sqrt(2.0)));
}

int write_table(const TableSpec& spec, std::ostream& out, std::ostream& err) {
  spec.validate();
  struct Cell {
    bool ok = false;
    KuiperPair pair;
    std::string error;
  };
  std::vector<std::vector<Cell>> grid(spec.alphas.size(), std::vector<Cell>(spec.ns.size()));
  int failures = 0;
  for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
    for (std::size_t j = 0; j < spec.ns.size(); ++j) {
      Cell& cell = grid[i][j];
      try {
        cell.pair =
            solve_kuiper_pair_with_fallback(spec.alphas[i], spec.ns[j], spec.kind, spec.method).pair;
        cell.ok = true;
      } catch (const Error& e) {
        cell.error = std::string(e.name());
        ++failures;
      }
    }
  }

  const int d = spec.decimals;
  if (spec.format == TableFormat::Csv) {
    out << "alpha,n,c,v\n";
    for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
      for (std::size_t j = 0; j < spec.ns.size(); ++j) {
        const Cell& cell = grid[i][j];
        out << format_shortest(spec.alphas[i]) << ',' << spec.ns[j].to_string() << ',';
        if (cell.ok) {
          out << format_fixed(cell.pair.critical_value, d) << ','
              << format_fixed(cell.pair.quantile, d) << '\n';
        } else {
          out << "NA,NA\n";
        }
      }
    }
  } else {
    out << "| alpha |";
    for (const auto& n : spec.ns) out << " n=" << n.to_string() << " |";
    out << "\n|---|";
    for (std::size_t j = 0; j < spec.ns.size(); ++j) out << "---|";
    out << '\n';
    for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
      out << "| " << format_shortest(spec.alphas[i]) << " |";
      for (const Cell& cell : grid[i]) {
        if (cell.ok) {
          out << " (" << format_fixed(cell.pair.critical_value, d) << ", "
              << format_fixed(cell.pair.quantile, d) << ") |";
        } else {
          out << " NA |";
        }
      }
      out << '\n';
    }
  }

  if (failures > 0) {
    err << "error: " << failures << " of " << spec.alphas.size() * spec.ns.size()
        << " cells could not be solved\n";
    for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
      for (std::size_t j = 0; j < spec.ns.size(); ++j) {
        if (!grid[i][j].ok) {
          err << "  alpha=" << format_shortest(spec.alphas[i]) << " n=" << spec.ns[j].to_string()
              << ": " << grid[i][j].error << '\n';
        }
      }
    }
    return kNumericalError;
  }
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical values, tail quantiles and empirical statistics for Kuiper's test",
               "kuiper"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--decimals", global.decimals, "Digits after the decimal point")
      ->check(CLI::Range(1, 12));
  app.add_option("--format", global.format, "Table format: csv or markdown")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case).description(""))
      ->option_text("csv|markdown");

  PairOptions pair;
  auto* pair_cmd = app.add_subcommand("pair", "Solve the critical value and quantile");
  pair_cmd->add_option("--alpha", pair.alpha, "Upper tail probability")->required();
  add_sample_size(pair_cmd, pair.n);
  pair_cmd->add_option("--test", pair.kind, "vn or vnn")
      ->transform(CLI::CheckedTransformer(kKindNames, CLI::ignore_case).description(""))
      ->option_text("vn|vnn");
  pair_cmd->add_option("--method", pair.method, "direct or newton")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case).description(""))
      ->option_text("direct|newton");
  pair_cmd->add_option("--guess", pair.guess, "Initial critical value");

  TailOptions utq;
  auto* utq_cmd = app.add_subcommand("utq", "Upper tail quantile of V_n");
  utq_cmd->add_option("--alpha", utq.probability, "Upper tail probability")->required();
  add_sample_size(utq_cmd, utq.n);

  TailOptions ltq;
  auto* ltq_cmd = app.add_subcommand("ltq", "Lower tail quantile of V_n");
  ltq_cmd->add_option("--alpha", ltq.probability, "Lower tail probability")->required();
  add_sample_size(ltq_cmd, ltq.n);

  TailOptions inv;
  auto* inv_cmd = app.add_subcommand("invcdf", "Inverse CDF of V_n");
  inv_cmd->add_option("--p", inv.probability, "Probability in [0, 1)")->required();
  add_sample_size(inv_cmd, inv.n);

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "Tabulate pairs over an (alpha, n) grid");
  table_cmd->add_option("--alphas", table.alphas, "Comma-separated tail probabilities")
      ->delimiter(',');
  table_cmd->add_option("--ns", table.ns, "Comma-separated sample sizes ('inf' allowed)")
      ->delimiter(',');
  table_cmd->add_option("--preset", table.preset, "Predefined grid")
      ->check(CLI::IsMember({"one-sample", "limit", "two-sample"}));
  table_cmd->add_option("--test", table.kind, "vn or vnn")
      ->transform(CLI::CheckedTransformer(kKindNames, CLI::ignore_case).description(""))
      ->option_text("vn|vnn");
  table_cmd->add_option("--method", table.method, "direct or newton")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case).description(""))
      ->option_text("direct|newton");

  CurveOptions curve;
  auto* curve_cmd = app.add_subcommand("curve", "Emit (p, x) points of the inverse CDF");
  add_sample_size(curve_cmd, curve.n);
  curve_cmd->add_option("--points", curve.points, "Number of grid points (>= 2)");

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "Goodness-of-fit test on a data file");
  test_cmd->add_option("--data", test.data, "One value per line")->required();
  test_cmd->add_option("--alpha", test.alpha, "Significance level")->required();
  auto* sample2_opt = test_cmd->add_option(
      "--sample2", test.second_sample, "Second equally sized sample for the two-sample test");
  auto* dist_opt = test_cmd->add_option("--dist", test.dist, "uniform or normal")
                       ->check(CLI::IsMember({"uniform", "normal"}));
  auto* params_opt =
      test_cmd->add_option("--params", test.params, "Distribution parameters (a,b or mu,sigma)")
          ->delimiter(',');
  auto* pit_flag = test_cmd->add_flag("--pit", test.pit, "Values are already in [0, 1]");
  pit_flag->excludes(dist_opt)->excludes(params_opt);
  sample2_opt->excludes(dist_opt)->excludes(params_opt)->excludes(pit_flag);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of a solved quantile");
  sim_cmd->add_option("--n", sim.n, "Sample size")->required();
  sim_cmd->add_option("--alpha", sim.alpha, "Upper tail probability")->required();
  sim_cmd->add_option("--reps", sim.reps, "Replications")->required();
  sim_cmd->add_option("--seed", sim.seed, "Generator seed")->required();
  sim_cmd->add_option("--test", sim.kind, "vn")
      ->transform(CLI::CheckedTransformer(kKindNames, CLI::ignore_case).description(""))
      ->option_text("vn|vnn");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (pair_cmd->parsed()) {
    return guarded(err, [&] { return cmd_pair(pair, global, out, err); });
  }
  if (utq_cmd->parsed() || ltq_cmd->parsed() || inv_cmd->parsed()) {
    return guarded(err, [&] {
      double value = 0.0;
      if (utq_cmd->parsed()) {
        value = kuiper_utq(utq.probability, parse_sample_size(utq.n), GuessPolicy::Fallback);
      } else if (ltq_cmd->parsed()) {
        value = kuiper_ltq(ltq.probability, parse_sample_size(ltq.n), GuessPolicy::Fallback);
      } else {
        value = kuiper_inv_cdf(inv.probability, parse_sample_size(inv.n), GuessPolicy::Fallback);
      }
      out << (inv_cmd->parsed() ? "x=" : "v=") << format_fixed(value, global.decimals) << '\n';
      return static_cast<int>(kSuccess);
    });
  }
  if (table_cmd->parsed()) {
    return guarded(err, [&] { return write_table(table_spec_from(table, global), out, err); });
  }
  if (curve_cmd->parsed()) {
    return guarded(err, [&] { return cmd_curve(curve, global, out, err); });
  }
  if (test_cmd->parsed()) {
    return guarded(err, [&] { return cmd_test(test, global, out); });
  }
  return guarded(err, [&] { return cmd_simulate(sim, global, out); });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("kuiper");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace kuiper::cli
