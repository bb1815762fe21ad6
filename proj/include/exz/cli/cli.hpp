#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "exz/error.hpp"
#include "exz/measure.hpp"

namespace exz::cli {

struct RunConfig {
  long precision_bits = 1024;
  int n_max = 50;
  std::vector<int> n_list = {50, 100, 150};
  std::size_t leja_count = 512;
  std::size_t leja_mesh = 0;  // 0: automatic
  std::uint32_t wos_samples = 1000;      // per atom, balayage command
  std::size_t wos_total = 100000;        // per n, study command
  std::uint64_t seed = 0;
  double wos_epsilon = 1e-6;
  double tv = 0.15;
  double hull_escape = 0.05;
  double fit_tol = 0.1;
  std::string out_dir = "out";
  unsigned threads = 0;

  /// Errors: BadInput.
  void validate() const;
};

/// Reads a JSON object with any subset of the RunConfig field names. Errors: BadInput.
RunConfig load_config(const std::string& path);
/// EXZ_PRECISION_BITS, when set, replaces precision_bits. Errors: BadInput.
void apply_env(RunConfig& cfg);

/// Exit status for an error: 2 for bad input, 1 for runtime failures.
int exit_code(Errc code);

/// Reads "re,im,weight" CSV; weights may be decimals or p/q. Errors: BadInput.
MeasureCloud read_cloud_csv(const std::string& path);

/// Entry point shared by the exz binary and the tests; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exz::cli
