#include "exponent_lab/diophantine.hpp"

#include <algorithm>
#include <string>

#include "exponent_lab/errors.hpp"

namespace exponent_lab {

namespace {

// mu must be right to 8 decimals before it is rounded to 6.
constexpr double kMuTolerance = 5e-9;

bool err_at_most(const BigReal& x, double bound) {
  return mpfr_cmp_d(x.err(), bound) <= 0;
}

// True when err(x) <= |x| * 2^-margin_bits and x is certainly nonzero.
bool relatively_tight(const BigReal& x, long margin_bits) {
  if (x.certain_sign() == 0) return false;
  if (x.is_exact()) return true;
  Mpfr scaled(64);
  mpfr_mul_2si(scaled.get(), x.err(), margin_bits, MPFR_RNDU);
  Mpfr magnitude(64);
  mpfr_abs(magnitude.get(), x.value(), MPFR_RNDD);
  return mpfr_lessequal_p(scaled.get(), magnitude.get()) != 0;
}

bool cells_decided(const MuRecord& r) {
  if (!r.mu) return true;
  return round_scaled(*r.mu, kMuDecimals, Rounding::HalfEven).has_value() &&
         round_scaled(*r.mu, kMuDecimals, Rounding::Ceiling).has_value();
}

}  // namespace

MuRecord mu_estimate(const BigReal& alpha, const Convergent& c) {
  if (c.q < 1) throw DomainError("convergent denominator must be positive");
  MuRecord record;
  record.n = c.table_row();
  record.p = c.p;
  record.q = c.q;
  record.gap = abs(alpha * c.q - c.p) / c.q;

  if (record.gap.certain_sign() == 0) {
    if (record.gap.is_zero()) {
      record.exact_hit = true;
      return record;
    }
    if (c.q == 1) return record;
    throw PrecisionError("mu_estimate: gap at row " + std::to_string(record.n) + " is not resolved");
  }
  if (c.q == 1) return record;

  // alpha's error has to sit eight orders below the gap.
  Mpfr limit(64);
  Mpfr gap_lo = record.gap.lower();
  mpfr_div_ui(limit.get(), gap_lo.get(), 100000000UL, MPFR_RNDD);
  if (!mpfr_less_p(alpha.err(), limit.get())) {
    throw PrecisionError("mu_estimate: alpha error not below gap/10^8 at row " + std::to_string(record.n));
  }

  const BigReal log_q = log(BigReal::exact(c.q).with_precision(record.gap.precision_bits()));
  BigReal mu = -log(record.gap) / log_q;
  if (!err_at_most(mu, kMuTolerance)) {
    throw PrecisionError("mu_estimate: mu not certified to 8 decimals at row " + std::to_string(record.n));
  }
  record.mu = std::move(mu);
  return record;
}

std::string format_mu(const MuRecord& record, Rounding mode) {
  if (!record.mu) return "";
  const auto scaled = round_scaled(*record.mu, kMuDecimals, mode);
  if (!scaled) {
    throw PrecisionError("format_mu: row " + std::to_string(record.n) + " sits on a rounding boundary");
  }
  return format_scaled(*scaled, kMuDecimals);
}

unsigned default_target_digits(const mpz_class& q) {
  const mpz_class q2 = q * q;
  return 2 * static_cast<unsigned>(q2.get_str().size()) + 20;
}

std::vector<MuRecord> mu_table(const ConstantId& alpha, std::size_t n_max, const MuTableOptions& options) {
  validate(alpha);
  if (n_max == 0 || n_max > kMaxMuTableRows) throw DomainError("mu_table needs 1 <= n_max <= 200");

  const ContinuedFraction cf = expand(alpha, n_max, options.policy);
  const std::size_t rows = std::min(n_max, cf.verified_len());
  const std::vector<Convergent> cs = convergents(cf, rows);

  const unsigned digits = options.target_digits != 0 ? options.target_digits : default_target_digits(cs.back().q);
  unsigned bits = bits_for_digits(digits) + 32;
  const unsigned ceiling = options.policy.max_bits();
  if (bits > ceiling) throw PrecisionError("mu_table: target precision exceeds the configured ceiling");
  BigReal value = gen_constant(alpha, bits);

  std::vector<MuRecord> out;
  out.reserve(rows);
  for (const Convergent& c : cs) {
    if (cf.terminated() && c.n + 1 == cf.size()) {
      MuRecord hit;
      hit.n = c.table_row();
      hit.p = c.p;
      hit.q = c.q;
      hit.exact_hit = true;
      out.push_back(std::move(hit));
      break;
    }
    while (true) {
      try {
        MuRecord r = mu_estimate(value, c);
        if (!cells_decided(r)) throw PrecisionError("rounding boundary");
        out.push_back(std::move(r));
        break;
      } catch (const PrecisionError&) {
        if (2 * bits > ceiling) throw;
        bits *= 2;
        value = gen_constant(alpha, bits);
      }
    }
  }
  return out;
}

ChainReport inequality_chain(unsigned k, std::size_t n, const PrecisionPolicy& policy) {
  if (k == 0 || k >= kMaxPiPower) throw DomainError("inequality_chain needs 1 <= k < 64");
  if (n == 0) throw DomainError("inequality_chain rows start at n = 1");

  const ContinuedFraction cf = expand(PiPow{k}, n + 1, policy);
  const std::vector<Convergent> cs = convergents(cf, n + 1);
  const Convergent& c = cs[n - 1];

  const auto q_bits = static_cast<unsigned>(mpz_sizeinbase(c.q.get_mpz_t(), 2));
  unsigned bits = 4 * q_bits + 8 * k + 256;
  const unsigned ceiling = policy.max_bits();

  while (bits <= ceiling) {
    const BigReal pi = gen_constant(Pi{}, bits);
    const BigReal pi_k = gen_constant(PiPow{k}, bits);
    const BigReal pi_k1 = gen_constant(PiPow{k + 1}, bits);

    ChainReport report;
    report.k = k;
    report.n = n;
    report.p = c.p;
    report.q = c.q;
    report.sin_direct = abs(sin(pi_k1 * c.q));
    const BigReal diff = pi_k * c.q - c.p;
    report.delta = abs(diff);
    report.sin_reduced = abs(sin(pi * diff));

    if (!relatively_tight(report.sin_direct, 64) || !relatively_tight(report.delta, 64)) {
      bits *= 2;
      continue;
    }
    report.ratio = report.sin_reduced / (pi * report.delta);
    report.reduction_agrees = overlaps(report.sin_direct, report.sin_reduced);

    const BigReal half = BigReal::from_rational(mpq_class(1, 2), bits);
    if (certainly_less(report.delta, half)) {
      report.in_sinc_domain = true;
    } else if (!certainly_greater(report.delta, half)) {
      bits *= 2;
      continue;
    }

    if (report.in_sinc_domain) {
      const BigReal two_over_pi = BigReal::exact(2L).with_precision(bits) / pi;
      const BigReal one = BigReal::exact(1L);
      const bool below_one = mpfr_cmp_ui(report.ratio.upper().get(), 1) <= 0;
      const bool above_one = certainly_greater(report.ratio, one);
      const bool above_floor = certainly_greater(report.ratio, two_over_pi);
      const bool below_floor = certainly_less(report.ratio, two_over_pi);
      if ((!below_one && !above_one) || (!above_floor && !below_floor)) {
        bits *= 2;
        continue;
      }
      report.ratio_in_bounds = below_one && above_floor;
    }
    return report;
  }
  throw PrecisionError("inequality_chain: precision ceiling reached");
}

}  // namespace exponent_lab
