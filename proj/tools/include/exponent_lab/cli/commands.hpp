#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "exponent_lab/big_real.hpp"
#include "exponent_lab/cfrac.hpp"
#include "exponent_lab/cli/report.hpp"
#include "exponent_lab/constants.hpp"
#include "exponent_lab/kernels.hpp"

namespace exponent_lab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitMismatch = 2,   // golden mismatch or a failed invariant
  kExitPrecision = 3,  // precision ceiling reached
};

enum class Command { MuTable, Verify, Kernel, Expand };

Command parse_command(std::string_view text);
Rounding parse_rounding(std::string_view text);
KernelType parse_kernel_type(std::string_view text);

struct RunConfig {
  Command command = Command::MuTable;
  ConstantId constant = PiPow{2};
  unsigned k = 2;
  std::size_t n_max = 10;
  unsigned target_digits = 0;  // 0: derived from the table; otherwise >= 20
  Format format = Format::Csv;
  std::string out_path;  // empty: stdout
  bool check_golden = false;
  Rounding rounding = Rounding::HalfEven;
  KernelType kernel_type = KernelType::Dirichlet;
  unsigned long x = 10;
  std::optional<double> z;  // single point instead of a grid
  std::size_t grid = 100;
  bool half_scaled = false;
  PrecisionPolicy policy;
};

inline constexpr std::string_view kMaxDigitsEnv = "EXPONENT_LAB_MAX_DIGITS";

// Policy with max_digits from the environment when set. Throws
// std::invalid_argument for a malformed value.
PrecisionPolicy policy_from_env();

// Runs one command. The report goes to `out` (or cfg.out_path), notes and
// golden deltas to `diag`. Returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

}  // namespace exponent_lab::cli
