#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "midground/priors.hpp"

namespace midground::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kUnachievable = 4,
};

/// One real per line; blank lines and text after '#' are ignored.
/// Throws InputError on unparsable or non-finite entries and on empty input.
std::vector<double> read_samples(std::istream& in);
std::vector<double> read_samples_file(const std::string& path);

/// A prior given inline as JSON (starting with '{') or as a path to a JSON
/// file.
Prior1D parse_prior_arg(std::string_view arg);

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace midground::cli
