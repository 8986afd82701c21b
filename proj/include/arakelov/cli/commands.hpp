#pragma once

#include "arakelov/cli/report.hpp"
#include "arakelov/rigor/certify.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace arakelov::cli {

/// Malformed or out-of-domain user input; maps to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  rigor::PrecisionConfig cfg;
  long dmax = 64;
  long gmax = 0;         // 0: every genus up to d
  unsigned threads = 0;  // 0: hardware concurrency
};

Report cmd_bound(long g, long d, const Options& opt);
Report cmd_bound_triple(const std::filesystem::path& file, const Options& opt);

/// suite in {all, merkl, appendix, lambda, theta, pipeline, applications}
Report cmd_verify(const std::string& suite, const Options& opt);

struct ModularArgs {
  std::optional<long> x1;
  std::optional<long> congruence_index;
  std::optional<long> genus;  // modular or Galois Belyi curve of this genus
};
Report cmd_modular(const ModularArgs& args, const Options& opt);

struct CoverArgs {
  std::string branch;
  long deg_f = 1;
  long deg_pi = 1;
  long genus = 1;
  std::optional<long> override_N;
  std::optional<std::string> override_H;
};
Report cmd_cover(const CoverArgs& args, const Options& opt);
Report cmd_khadjavi(const std::string& branch, const Options& opt);

/// Full command line: parses, dispatches, prints, and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arakelov::cli
