#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "exponent_lab/cli/commands.hpp"

namespace cli = exponent_lab::cli;

namespace {

struct RawOptions {
  std::string constant = "pi^2";
  unsigned k = 2;
  std::size_t n = 10;
  unsigned digits = 0;
  std::optional<std::string> format;
  std::string out;
  bool check_golden = false;
  std::string rounding = "half-even";
  std::string type = "dirichlet";
  unsigned long x = 10;
  std::optional<double> z;
  std::size_t grid = 100;
  bool half_scaled = false;
};

void add_common(CLI::App* sub, RawOptions& o) {
  sub->add_option("--format", o.format, "csv, json or markdown");
  sub->add_option("--out", o.out, "write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued fractions, irrationality exponents and kernel identities at certified precision",
               "exponent-lab"};
  app.require_subcommand(1);
  RawOptions o;

  auto* mu = app.add_subcommand("mu-table", "exponent estimates mu_n for the convergents of a constant");
  mu->add_option("--constant", o.constant, "pi, pi^k, zeta3, champernowne10, liouville10 or p/q");
  mu->add_option("--n", o.n, "number of rows");
  mu->add_option("--digits", o.digits, "working precision in decimal digits (>= 20)");
  mu->add_flag("--check-golden", o.check_golden, "compare with the published table");
  mu->add_option("--rounding", o.rounding, "half-even (default) or ceil");
  add_common(mu, o);

  auto* verify = app.add_subcommand("verify", "sine bounds and parity checks for the convergents of pi^k");
  verify->add_option("--k", o.k, "power of pi");
  verify->add_option("--n", o.n, "number of rows");
  add_common(verify, o);

  auto* kernel = app.add_subcommand("kernel", "Dirichlet and Fejer kernels: closed form against direct sums");
  kernel->add_option("--type", o.type, "dirichlet or fejer");
  kernel->add_option("--x", o.x, "kernel order");
  kernel->add_option("--z", o.z, "single evaluation point");
  kernel->add_option("--grid", o.grid, "number of evenly spaced points in (0.05, 3.1)");
  kernel->add_flag("--paper-half", o.half_scaled, "also emit the closed form with a leading 1/2 (fejer)");
  add_common(kernel, o);

  auto* expand = app.add_subcommand("expand", "certified partial quotients");
  expand->add_option("--constant", o.constant, "pi, pi^k, zeta3, champernowne10, liouville10 or p/q");
  expand->add_option("--n", o.n, "number of partial quotients");
  expand->add_flag("--check-golden", o.check_golden, "compare with the published expansion");
  add_common(expand, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  cli::RunConfig cfg;
  try {
    cfg.command = cli::parse_command(app.get_subcommands().front()->get_name());
    cfg.constant = exponent_lab::parse_constant(o.constant);
    cfg.k = o.k;
    cfg.n_max = o.n;
    cfg.target_digits = o.digits;
    const std::string default_format = cfg.command == cli::Command::Verify ? "json" : "csv";
    cfg.format = cli::parse_format(o.format.value_or(default_format));
    cfg.out_path = o.out;
    cfg.check_golden = o.check_golden;
    cfg.rounding = cli::parse_rounding(o.rounding);
    cfg.kernel_type = cli::parse_kernel_type(o.type);
    cfg.x = o.x;
    cfg.z = o.z;
    cfg.grid = o.grid;
    cfg.half_scaled = o.half_scaled;
    cfg.policy = cli::policy_from_env();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  return cli::run(cfg, std::cout, std::cerr);
}
