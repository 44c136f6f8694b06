#include "exponent_lab/cli/commands.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "exponent_lab/cli/golden.hpp"
#include "exponent_lab/diophantine.hpp"
#include "exponent_lab/errors.hpp"
#include "exponent_lab/lemma.hpp"

namespace exponent_lab::cli {

namespace {

constexpr unsigned kKernelBits = 128;
constexpr double kGridLo = 0.05;
constexpr double kGridHi = 3.1;
constexpr std::uint64_t kOracleSeed = 20240607;
constexpr std::size_t kOracleSamples = 25;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string mpfr_sci(mpfr_srcptr v, int digits = 3) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string double_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// The first `decimals` fractional digits, truncated; nullopt when the error
// interval straddles a truncation boundary.
std::optional<std::string> truncated_decimals(const BigReal& v, int decimals) {
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  mpz_class lo;
  mpz_class hi;
  mpz_fdiv_q(lo.get_mpz_t(), mpq_class(v.lower_rational() * pow10).get_num_mpz_t(),
             mpq_class(v.lower_rational() * pow10).get_den_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), mpq_class(v.upper_rational() * pow10).get_num_mpz_t(),
             mpq_class(v.upper_rational() * pow10).get_den_mpz_t());
  if (lo != hi) return std::nullopt;
  return format_scaled(lo, decimals);
}

Cell integer(const mpz_class& v) { return Cell::number(v.get_str()); }
Cell integer(std::size_t v) { return Cell::number(std::to_string(v)); }

// ---------------------------------------------------------------------------

int cmd_mu_table(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (cfg.n_max == 0 || cfg.n_max > kMaxMuTableRows) throw UsageError("--n must be in 1..200 for mu-table");

  std::optional<GoldenMuTable> golden;
  if (cfg.check_golden) {
    golden = golden_mu_for(cfg.constant);
    if (!golden) throw UsageError("no golden table for " + to_string(cfg.constant));
  }

  MuTableOptions options;
  options.target_digits = cfg.target_digits;
  options.policy = cfg.policy;
  const std::vector<MuRecord> records = mu_table(cfg.constant, cfg.n_max, options);

  Table table{{"n", "p", "q", "mu"}, {}};
  for (const MuRecord& r : records) {
    const std::string mu = format_mu(r, cfg.rounding);
    table.rows.push_back({integer(r.n), integer(r.p), integer(r.q), mu.empty() ? Cell::null() : Cell::number(mu)});
  }
  write_table(out, table, cfg.format);

  if (cfg.format == Format::Markdown) {
    const auto history = golden_history_for(cfg.constant);
    if (!history.empty()) {
      Table h{{"published upper bound", "reference", "year"}, {}};
      for (const auto& row : history) {
        h.rows.push_back({Cell::number(std::string(row.bound)), Cell::text_cell(std::string(row.reference)),
                          Cell::number(std::string(row.year))});
      }
      out << '\n';
      write_table(out, h, Format::Markdown);
    }
  }

  if (!records.empty() && records.back().exact_hit) {
    diag << "exact hit at row " << records.back().n << ": " << to_string(cfg.constant) << " = " << records.back().p
         << "/" << records.back().q << ", expansion terminated\n";
  }
  if (cfg.rounding == Rounding::Ceiling) diag << "note: mu cells rounded toward +infinity\n";

  if (!golden) return kExitOk;
  const GoldenReport report = compare_mu_table(*golden, records, cfg.rounding, cfg.n_max);
  for (const std::string& line : report.describe()) diag << line << '\n';
  bool ok = report.passed();

  if (std::holds_alternative<Zeta3>(cfg.constant)) {
    const std::string_view digits = golden_zeta3_digits();
    const int decimals = static_cast<int>(digits.size()) - 2;
    const BigReal z3 = gen_constant(Zeta3{}, bits_for_digits(static_cast<unsigned long>(decimals) + 20));
    const std::optional<std::string> computed = truncated_decimals(z3, decimals);
    const bool digits_ok = computed == digits;
    diag << "zeta3 leading digits: computed " << computed.value_or("(undecided)") << ", published " << digits << ": "
         << (digits_ok ? "PASS" : "FAIL") << '\n';
    ok = ok && digits_ok;
  }
  return ok ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------

struct OracleSummary {
  std::size_t samples = 0;
  std::size_t agree = 0;
  Mpfr max_deviation{64};
};

OracleSummary kernel_oracle(KernelType type) {
  std::mt19937_64 rng(kOracleSeed + static_cast<std::uint64_t>(type));
  std::uniform_int_distribution<unsigned long> xs(0, 100);
  std::uniform_real_distribution<double> zs(kGridLo, kGridHi);
  OracleSummary s;
  mpfr_set_zero(s.max_deviation.get(), 1);
  for (std::size_t i = 0; i < kOracleSamples; ++i) {
    const unsigned long x = xs(rng);
    const double z = zs(rng);
    const KernelSample sample = sample_kernel(type, x, BigReal::from_double(z), kKernelBits);
    ++s.samples;
    if (sample.agrees()) ++s.agree;
    const Mpfr d = sample.deviation();
    if (mpfr_greater_p(d.get(), s.max_deviation.get())) mpfr_set(s.max_deviation.get(), d.get(), MPFR_RNDU);
  }
  return s;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (cfg.k == 0 || cfg.k > kMaxLemmaPower) throw UsageError("--k must be in 1..63");
  if (cfg.n_max == 0 || cfg.n_max > kMaxMuTableRows) throw UsageError("--n must be in 1..200 for verify");

  const std::vector<LemmaReport> rows = verify_lemma_rows(cfg.k, cfg.n_max, cfg.policy);
  bool ok = true;

  Table table;
  if (cfg.format == Format::Json) {
    table.columns = {"record", "k", "n", "p", "q", "q_next", "v2", "w", "w_parity", "s_minus", "s_minus_numeric",
                     "s_plus", "cos_reduced", "bound", "bound_residual", "degenerate", "bound_holds", "x_star",
                     "x_star_boundary", "s_star", "recip_sine", "recip_ratio_qn", "recip_ratio_qn1",
                     "sandwich_asserted", "sandwich_holds", "passed"};
  } else {
    table.columns = {"k", "n", "q", "v2", "w_parity", "s_minus", "s_plus", "bound_residual", "recip_ratio_qn1"};
  }

  for (const LemmaReport& r : rows) {
    const Cell parity = Cell::text_cell(r.w_odd ? "odd" : "even");
    const Cell s_minus = r.s_minus_exact ? Cell::number("1") : Cell::number(r.s_minus_numeric.to_fixed(20));
    const Cell s_plus = Cell::number(r.s_plus.to_fixed(20));
    const Cell residual = Cell::number(r.bound_residual.to_scientific(12));
    const Cell ratio_qn1 = Cell::number(r.recip_ratio_qn1.to_fixed(12));
    if (cfg.format == Format::Json) {
      std::vector<std::string> x_star;
      std::vector<std::string> s_star;
      for (const auto& v : r.x_star) x_star.push_back(v.get_str());
      for (const auto& v : r.s_star) s_star.push_back(v.to_fixed(20));
      table.rows.push_back({Cell::text_cell("lemma"), integer(std::size_t{r.k}), integer(r.n), integer(r.p),
                            integer(r.q), integer(r.q_next), integer(std::size_t{r.v2}), integer(r.w), parity,
                            s_minus, Cell::number(r.s_minus_numeric.to_fixed(20)), s_plus,
                            Cell::number(r.cos_reduced.to_fixed(20)), Cell::number(r.bound.to_fixed(20)), residual,
                            Cell::boolean(r.degenerate), Cell::boolean(r.bound_holds), Cell::number_list(x_star),
                            Cell::boolean(r.x_star_boundary), Cell::number_list(s_star),
                            Cell::number(r.recip_sine.to_fixed(12)), Cell::number(r.recip_ratio_qn.to_fixed(12)),
                            ratio_qn1, Cell::boolean(r.sandwich_asserted), Cell::boolean(r.sandwich_holds),
                            Cell::boolean(r.passed())});
    } else {
      table.rows.push_back({integer(std::size_t{r.k}), integer(r.n), integer(r.q), integer(std::size_t{r.v2}), parity,
                            s_minus, s_plus, residual, ratio_qn1});
    }
    if (r.degenerate) diag << "row " << r.n << ": q = " << r.q << " is degenerate, bound evaluated but not asserted\n";
    if (!r.sandwich_asserted) diag << "row " << r.n << ": reciprocal-sine sandwich recorded, not asserted\n";
    if (r.x_star_boundary) diag << "row " << r.n << ": two integers in [x - 1/2, x + 1/2], both evaluated\n";
    if (!r.passed()) {
      ok = false;
      diag << "row " << r.n << ": invariant FAILED\n";
    }
  }
  write_table(out, table, cfg.format);

  for (KernelType type : {KernelType::Dirichlet, KernelType::Fejer}) {
    const OracleSummary s = kernel_oracle(type);
    const bool kernel_ok = s.agree == s.samples;
    ok = ok && kernel_ok;
    if (cfg.format == Format::Json) {
      out << "{\"record\":\"kernel_oracle\",\"type\":\"" << to_string(type) << "\",\"samples\":" << s.samples
          << ",\"agree\":" << s.agree << ",\"max_deviation\":" << mpfr_sci(s.max_deviation.get()) << "}\n";
    } else {
      diag << "kernel oracle " << to_string(type) << ": " << s.agree << "/" << s.samples
           << " samples within 10x combined error, max deviation " << mpfr_sci(s.max_deviation.get()) << '\n';
    }
  }
  return ok ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------

int cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (cfg.x > kMaxKernelTerms) throw UsageError("--x must be at most 100000");
  std::vector<double> points;
  if (cfg.z) {
    points.push_back(*cfg.z);
  } else {
    if (cfg.grid == 0 || cfg.grid > 100000) throw UsageError("--grid must be in 1..100000");
    for (std::size_t i = 0; i < cfg.grid; ++i) {
      const double t = static_cast<double>(i + 1) / static_cast<double>(cfg.grid + 1);
      points.push_back(kGridLo + (kGridHi - kGridLo) * t);
    }
  }

  const bool half = cfg.half_scaled && cfg.kernel_type == KernelType::Fejer;
  Table table{{"type", "x", "z", "closed", "summed", "deviation", "combined_err", "agrees", "status"}, {}};
  if (half) {
    table.columns.push_back("closed_half");
    table.columns.push_back("summed_over_half");
  }

  std::size_t evaluated = 0;
  std::size_t agree = 0;
  std::size_t rejected = 0;
  Mpfr max_dev(64);
  mpfr_set_zero(max_dev.get(), 1);
  for (double z : points) {
    std::vector<Cell> row{Cell::text_cell(std::string(to_string(cfg.kernel_type))),
                          integer(std::size_t{cfg.x}), Cell::number(double_text(z))};
    try {
      const KernelSample s = sample_kernel(cfg.kernel_type, cfg.x, BigReal::from_double(z), kKernelBits, half);
      const Mpfr dev = s.deviation();
      const bool agrees = s.agrees();
      ++evaluated;
      if (agrees) ++agree;
      if (mpfr_greater_p(dev.get(), max_dev.get())) mpfr_set(max_dev.get(), dev.get(), MPFR_RNDU);
      row.push_back(Cell::number(s.closed.to_fixed(20)));
      row.push_back(Cell::number(s.summed->to_fixed(20)));
      row.push_back(Cell::number(mpfr_sci(dev.get())));
      row.push_back(Cell::number(mpfr_sci(s.combined_err().get())));
      row.push_back(Cell::boolean(agrees));
      row.push_back(Cell::text_cell("ok"));
      if (half) {
        row.push_back(Cell::number(s.closed_half->to_fixed(20)));
        row.push_back(Cell::number((*s.summed / *s.closed_half).to_fixed(12)));
      }
    } catch (const NearSingularity& e) {
      ++rejected;
      for (int i = 0; i < 4; ++i) row.push_back(Cell::null());
      row.push_back(Cell::null());
      row.push_back(Cell::text_cell("near_singularity"));
      if (half) {
        row.push_back(Cell::null());
        row.push_back(Cell::null());
      }
      diag << "z = " << double_text(z) << ": rejected, " << e.what() << '\n';
    }
    table.rows.push_back(std::move(row));
  }
  write_table(out, table, cfg.format);

  diag << to_string(cfg.kernel_type) << " x=" << cfg.x << ": " << agree << "/" << evaluated
       << " points within 10x combined error, max deviation " << mpfr_sci(max_dev.get()) << ", " << rejected
       << " rejected near a zero of sin z\n";
  if (cfg.kernel_type == KernelType::Fejer) {
    diag << "note: the double sum equals sin^2((x+1)z)/sin^2(z); the closed form written with a leading 1/2 "
            "is half the sum\n";
  }
  return agree == evaluated ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------

int cmd_expand(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (cfg.n_max == 0 || cfg.n_max > 10000) throw UsageError("--n must be in 1..10000 for expand");
  std::optional<GoldenCf> golden;
  if (cfg.check_golden) {
    golden = golden_cf_for(cfg.constant);
    if (!golden) throw UsageError("no golden expansion for " + to_string(cfg.constant));
  }
  const ContinuedFraction cf = expand(cfg.constant, cfg.n_max, cfg.policy);
  const std::size_t shown = std::min(cfg.n_max, cf.verified_len());
  Table table{{"i", "a"}, {}};
  for (std::size_t i = 0; i < shown; ++i) table.rows.push_back({integer(i), integer(cf[i])});
  write_table(out, table, cfg.format);
  if (cf.terminated() && shown < cfg.n_max) {
    diag << to_string(cfg.constant) << " is rational; expansion terminated after " << shown << " terms\n";
  }
  if (!golden) return kExitOk;
  const GoldenReport report = compare_cf(*golden, cf.terms(), cfg.n_max);
  for (const std::string& line : report.describe()) diag << line << '\n';
  return report.passed() ? kExitOk : kExitMismatch;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  switch (cfg.command) {
    case Command::MuTable:
      return cmd_mu_table(cfg, out, diag);
    case Command::Verify:
      return cmd_verify(cfg, out, diag);
    case Command::Kernel:
      return cmd_kernel(cfg, out, diag);
    case Command::Expand:
      return cmd_expand(cfg, out, diag);
  }
  return kExitUsage;
}

}  // namespace

Command parse_command(std::string_view text) {
  if (text == "mu-table") return Command::MuTable;
  if (text == "verify") return Command::Verify;
  if (text == "kernel") return Command::Kernel;
  if (text == "expand") return Command::Expand;
  throw std::invalid_argument("unknown command '" + std::string(text) + "'");
}

Rounding parse_rounding(std::string_view text) {
  if (text == "half-even") return Rounding::HalfEven;
  if (text == "ceil" || text == "ceiling") return Rounding::Ceiling;
  throw std::invalid_argument("unknown rounding '" + std::string(text) + "' (half-even, ceil)");
}

KernelType parse_kernel_type(std::string_view text) {
  if (text == "dirichlet") return KernelType::Dirichlet;
  if (text == "fejer") return KernelType::Fejer;
  throw std::invalid_argument("unknown kernel '" + std::string(text) + "' (dirichlet, fejer)");
}

PrecisionPolicy policy_from_env() {
  PrecisionPolicy policy;
  const char* raw = std::getenv(std::string(kMaxDigitsEnv).c_str());
  if (raw == nullptr || *raw == '\0') return policy;
  const std::string_view text(raw);
  unsigned long value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value < 20) {
    throw std::invalid_argument(std::string(kMaxDigitsEnv) + " must be an integer >= 20, got '" + raw + "'");
  }
  policy.max_digits = value;
  return policy;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  std::ostringstream buffer;
  int status = kExitOk;
  try {
    if (cfg.target_digits != 0 && cfg.target_digits < 20) throw UsageError("--digits must be at least 20");
    status = dispatch(cfg, buffer, diag);
  } catch (const PrecisionError& e) {
    diag << "precision failure: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    diag << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
    file << buffer.str();
    if (!file) {
      diag << "error: cannot write " << cfg.out_path << '\n';
      return kExitUsage;
    }
  }
  return status;
}

}  // namespace exponent_lab::cli
