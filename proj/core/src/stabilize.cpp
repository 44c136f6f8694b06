#include <algorithm>
#include <optional>
#include <string>

#include "exponent_lab/constants.hpp"
#include "exponent_lab/errors.hpp"

namespace exponent_lab {

namespace {

// 10^-digits * min(1, |x|) when x is certainly nonzero, 10^-digits otherwise.
Mpfr tolerance_for(const BigReal& x, unsigned target_digits) {
  Mpfr tol(64);
  mpfr_set_ui(tol.get(), 10, MPFR_RNDD);
  mpfr_pow_si(tol.get(), tol.get(), -static_cast<long>(target_digits), MPFR_RNDD);
  if (x.certain_sign() != 0) {
    Mpfr magnitude(64);
    Mpfr lo = x.lower();
    Mpfr hi = x.upper();
    // Smallest |.| over the interval.
    if (mpfr_sgn(lo.get()) > 0) {
      mpfr_set(magnitude.get(), lo.get(), MPFR_RNDD);
    } else {
      mpfr_neg(magnitude.get(), hi.get(), MPFR_RNDD);
    }
    if (mpfr_cmp_ui(magnitude.get(), 1) < 0) mpfr_mul(tol.get(), tol.get(), magnitude.get(), MPFR_RNDD);
  }
  return tol;
}

}  // namespace

BigReal stabilize(const Expression& expr, unsigned target_digits, const StabilizeOptions& options) {
  if (target_digits == 0) throw DomainError("stabilize needs target_digits >= 1");
  unsigned bits = options.start_bits != 0 ? options.start_bits
                                          : std::max(kMinPrecisionBits, bits_for_digits(target_digits) + 16);

  std::optional<BigReal> previous;
  try {
    previous = expr(bits);
  } catch (const PrecisionError&) {
    previous.reset();
  }
  for (unsigned step = 0; step < options.max_doublings; ++step) {
    bits *= 2;
    std::optional<BigReal> current;
    try {
      current = expr(bits);
    } catch (const PrecisionError&) {
      previous.reset();
      continue;
    }
    if (previous) {
      const Mpfr tol = tolerance_for(*current, target_digits);
      Mpfr diff(64);
      Mpfr wide(std::max(current->precision_bits(), previous->precision_bits()) + 8);
      mpfr_sub(wide.get(), current->value(), previous->value(), MPFR_RNDA);
      mpfr_abs(diff.get(), wide.get(), MPFR_RNDU);
      if (mpfr_lessequal_p(diff.get(), tol.get()) && mpfr_lessequal_p(current->err(), tol.get())) {
        return *current;
      }
    }
    previous = std::move(current);
  }
  throw NonConvergence("stabilize: no agreement to " + std::to_string(target_digits) + " digits after " +
                       std::to_string(options.max_doublings) + " precision doublings");
}

}  // namespace exponent_lab
