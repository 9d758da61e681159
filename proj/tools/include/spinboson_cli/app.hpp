#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spinboson::cli {

enum class OutputFormat { Text, Json, Csv };

/// Fully parsed invocation. Numeric strings are kept verbatim and validated
/// by validate() so that error messages can quote them.
struct RunConfig {
  std::string command;
  std::string expr;
  std::optional<unsigned> n;
  std::vector<unsigned> n_list;
  std::vector<std::string> gamma;
  std::vector<std::string> kt;
  unsigned max_l = 5;
  int digits = 12;
  OutputFormat format = OutputFormat::Text;
  std::string out;
  unsigned oracle_cap = 14;
  bool floating = false;
  unsigned threads = 0;
};

/// Throws DomainError for invalid combinations (missing --expr, empty N list,
/// unknown command, ...).
void validate(const RunConfig& config);

/// Runs the command and returns the rendered output. Throws DomainError or
/// ResourceError.
std::string execute(const RunConfig& config);

/// validate + execute + write to `out` (or config.out). Returns 0 on success,
/// 1 on domain errors, 2 on resource errors; a single diagnostic line goes to
/// `err`.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including --config key=value files) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinboson::cli
