#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kuiper/quantile.hpp"
#include "kuiper/sample_size.hpp"

namespace kuiper::cli {

// Process exit statuses. Stable across releases.
enum ExitCode : int {
  kSuccess = 0,
  kNumericalError = 1,
  kUsageError = 2,
  kRejected = 3,
};

// Thrown for malformed flags or data files; maps to kUsageError.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TableFormat { Csv, Markdown };

struct TableSpec {
  std::vector<double> alphas;
  std::vector<SampleSize> ns;
  TestKind kind = TestKind::OneSample;
  IterationMethod method = IterationMethod::Newton;
  TableFormat format = TableFormat::Csv;
  int decimals = 4;

  void validate() const;  // throws UsageError
};

// Rounds half away from zero to `decimals` places and prints exactly that
// many digits.
std::string format_fixed(double value, int decimals);

// Shortest decimal string that parses back to the same double.
std::string format_shortest(double value);

// Accepts a positive integer (plain or scientific, e.g. 1e8) or "inf".
SampleSize parse_sample_size(std::string_view text);

// One number per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_data_file(const std::filesystem::path& path);

double uniform_cdf(double x, double lower, double upper);
double normal_cdf(double x, double mean, double stddev);

// Writes the table to `out`; unsolvable cells print as NA and make the
// return value kNumericalError with a summary on `err`.
int write_table(const TableSpec& spec, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kuiper::cli
