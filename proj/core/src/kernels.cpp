#include "exponent_lab/kernels.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "exponent_lab/errors.hpp"

namespace exponent_lab {

namespace {

void check_bits(unsigned bits) {
  if (bits < kMinPrecisionBits) throw UnsupportedPrecision("kernel precision below 64 bits");
}

void check_terms(unsigned long x) {
  if (x > kMaxKernelTerms) throw DomainError("kernel summation needs x <= 100000");
}

// Guard bits so that a sum of ~x terms keeps the requested precision.
unsigned summation_bits(unsigned long x, unsigned bits) {
  return bits + static_cast<unsigned>(std::bit_width(x + 1)) + 8;
}

BigReal sin_away_from_zero(const BigReal& z, unsigned bits) {
  BigReal s = sin(z.with_precision(bits));
  Mpfr magnitude(64);
  if (s.certain_sign() > 0) {
    magnitude = s.lower();
  } else if (s.certain_sign() < 0) {
    mpfr_neg(magnitude.get(), s.upper().get(), MPFR_RNDD);
  } else {
    throw NearSingularity("kernel: sin z is not separated from zero");
  }
  if (mpfr_cmp_si_2exp(magnitude.get(), 1, -static_cast<long>(bits / 2)) < 0) {
    throw NearSingularity("kernel: |sin z| below 2^-" + std::to_string(bits / 2));
  }
  return s;
}

bool at_most(const BigReal& v, const mpz_class& bound) {
  return mpfr_cmp_z(v.upper().get(), bound.get_mpz_t()) <= 0;
}

}  // namespace

BigReal dirichlet_closed(const BigReal& x, const BigReal& z, unsigned bits) {
  check_bits(bits);
  const BigReal s = sin_away_from_zero(z, bits);
  if (x.is_zero()) return BigReal::exact(1L);
  const BigReal arg = (x.with_precision(bits) * mpz_class(2) + mpz_class(1)) * z.with_precision(bits);
  return sin(arg) / s;
}

BigReal dirichlet_sum(unsigned long x, const BigReal& z, unsigned bits) {
  check_bits(bits);
  check_terms(x);
  const unsigned work = summation_bits(x, bits);
  const BigReal two_z = z.with_precision(work) * mpz_class(2);
  BigReal acc = BigReal::exact(0L).with_precision(work);
  for (unsigned long n = 1; n <= x; ++n) {
    acc = acc + cos(two_z * mpz_class(n));
  }
  return (acc * mpz_class(2) + mpz_class(1)).with_precision(bits);
}

BigReal fejer_sum(unsigned long x, const BigReal& z, unsigned bits) {
  check_bits(bits);
  check_terms(x);
  const unsigned work = summation_bits(x, bits) + 8;
  const BigReal two_z = z.with_precision(work) * mpz_class(2);

  // e^{2ikz} + e^{-2ikz} = 2 cos(2kz); the imaginary parts cancel pairwise.
  std::vector<BigReal> paired;
  paired.reserve(x);
  for (unsigned long k = 1; k <= x; ++k) paired.push_back(cos(two_z * mpz_class(k)) * mpz_class(2));

  BigReal outer = BigReal::exact(0L).with_precision(work);
  for (unsigned long n = 0; n <= x; ++n) {
    BigReal inner = BigReal::exact(1L).with_precision(work);
    for (unsigned long k = 1; k <= n; ++k) inner = inner + paired[k - 1];
    outer = outer + inner;
  }
  return outer.with_precision(bits);
}

BigReal fejer_closed(const BigReal& x, const BigReal& z, unsigned bits) {
  check_bits(bits);
  const BigReal s = sin_away_from_zero(z, bits);
  if (x.is_zero()) return BigReal::exact(1L);
  const BigReal arg = (x.with_precision(bits) + mpz_class(1)) * z.with_precision(bits);
  return sqr(sin(arg)) / sqr(s);
}

BigReal fejer_closed_half(const BigReal& x, const BigReal& z, unsigned bits) {
  return fejer_closed(x, z, bits) * mpq_class(1, 2);
}

std::string_view to_string(KernelType type) {
  return type == KernelType::Dirichlet ? "dirichlet" : "fejer";
}

Mpfr KernelSample::deviation() const {
  Mpfr d(64);
  if (!summed) return d;
  Mpfr wide(std::max(closed.precision_bits(), summed->precision_bits()) + 8);
  mpfr_sub(wide.get(), closed.value(), summed->value(), MPFR_RNDA);
  mpfr_abs(d.get(), wide.get(), MPFR_RNDU);
  return d;
}

Mpfr KernelSample::combined_err() const {
  Mpfr e(64);
  mpfr_set(e.get(), closed.err(), MPFR_RNDU);
  if (summed) mpfr_add(e.get(), e.get(), summed->err(), MPFR_RNDU);
  return e;
}

bool KernelSample::agrees(double factor) const {
  if (!summed) return false;
  Mpfr limit = combined_err();
  mpfr_mul_d(limit.get(), limit.get(), factor, MPFR_RNDU);
  return mpfr_lessequal_p(deviation().get(), limit.get()) != 0;
}

KernelSample sample_kernel(KernelType type, unsigned long x, const BigReal& z, unsigned bits, bool with_half) {
  KernelSample s;
  s.type = type;
  s.x = x;
  s.z = z;
  const BigReal xr = BigReal::exact(static_cast<long>(x));
  if (type == KernelType::Dirichlet) {
    s.closed = dirichlet_closed(xr, z, bits);
    s.summed = dirichlet_sum(x, z, bits);
  } else {
    s.closed = fejer_closed(xr, z, bits);
    s.summed = fejer_sum(x, z, bits);
    if (with_half) s.closed_half = fejer_closed_half(xr, z, bits);
  }
  return s;
}

std::vector<BigReal> uniform_grid(double lo, double hi, std::size_t count) {
  if (!(lo < hi)) throw DomainError("grid needs lo < hi");
  std::vector<BigReal> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i + 1) / static_cast<double>(count + 1);
    grid.push_back(BigReal::from_double(lo + (hi - lo) * t));
  }
  return grid;
}

bool GrowthReport::holds() const {
  return std::all_of(rows.begin(), rows.end(), [](const GrowthRow& r) { return r.dirichlet_holds && r.fejer_holds; });
}

GrowthReport kernel_growth_scan(unsigned long x_max, const std::vector<BigReal>& z_grid, unsigned bits) {
  check_terms(x_max);
  if (z_grid.empty()) throw DomainError("growth scan needs a nonempty grid");
  GrowthReport report;
  report.grid_points = z_grid.size();
  report.rows.reserve(x_max + 1);
  for (unsigned long x = 0; x <= x_max; ++x) {
    const BigReal xr = BigReal::exact(static_cast<long>(x));
    const mpz_class d_bound = 2 * mpz_class(x) + 1;
    const mpz_class f_bound = (mpz_class(x) + 1) * (mpz_class(x) + 1);
    GrowthRow row;
    row.x = x;
    row.dirichlet_holds = true;
    row.fejer_holds = true;
    bool first = true;
    for (const BigReal& z : z_grid) {
      BigReal d = abs(dirichlet_closed(xr, z, bits));
      BigReal f = abs(fejer_closed(xr, z, bits));
      row.dirichlet_holds = row.dirichlet_holds && at_most(d, d_bound);
      row.fejer_holds = row.fejer_holds && at_most(f, f_bound);
      if (first || mpfr_greater_p(d.value(), row.dirichlet_peak.value())) row.dirichlet_peak = std::move(d);
      if (first || mpfr_greater_p(f.value(), row.fejer_peak.value())) row.fejer_peak = std::move(f);
      first = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace exponent_lab
