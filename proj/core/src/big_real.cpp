#include "exponent_lab/big_real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "exponent_lab/errors.hpp"

namespace exponent_lab {

// ---------------------------------------------------------------------------
// Mpfr

Mpfr::Mpfr(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

namespace {

// Error bounds only need a handful of significant bits; they are always
// rounded toward +infinity so the bound stays an upper bound.
constexpr mpfr_prec_t kErrPrecision = 64;

Mpfr err_zero() { return Mpfr(kErrPrecision); }

Mpfr abs_up(mpfr_srcptr x) {
  Mpfr r(kErrPrecision);
  mpfr_abs(r.get(), x, MPFR_RNDU);
  return r;
}

Mpfr abs_down(mpfr_srcptr x) {
  Mpfr r(kErrPrecision);
  mpfr_abs(r.get(), x, MPFR_RNDD);
  return r;
}

void add_up(Mpfr& acc, mpfr_srcptr x) { mpfr_add(acc.get(), acc.get(), x, MPFR_RNDU); }

// Adds the half-ulp bound of a round-to-nearest result when MPFR reports it
// inexact.
void add_rounding(Mpfr& err, mpfr_srcptr result, int ternary) {
  if (ternary == 0) return;
  Mpfr half(kErrPrecision);
  if (mpfr_zero_p(result)) {
    mpfr_set_ui_2exp(half.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    const mpfr_exp_t e = mpfr_get_exp(result) - mpfr_get_prec(result) - 1;
    mpfr_set_ui_2exp(half.get(), 1, e, MPFR_RNDU);
  }
  add_up(err, half.get());
}

mpfr_prec_t joint_precision(const BigReal& a, const BigReal& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

// Exact operands get a result wide enough to stay exact, up to this size.
constexpr mpfr_prec_t kExactCap = mpfr_prec_t{1} << 20;

bool exact_nonzero(const BigReal& x) { return x.is_exact() && !mpfr_zero_p(x.value()); }

mpfr_prec_t sum_precision(const BigReal& a, const BigReal& b) {
  const mpfr_prec_t joint = joint_precision(a, b);
  if (!exact_nonzero(a) || !exact_nonzero(b)) return joint;
  const mpfr_exp_t ea = mpfr_get_exp(a.value());
  const mpfr_exp_t eb = mpfr_get_exp(b.value());
  const mpfr_exp_t low = std::min(ea - mpfr_min_prec(a.value()), eb - mpfr_min_prec(b.value()));
  const mpfr_exp_t need = std::max(ea, eb) - low + 1;
  if (need > kExactCap) return joint;
  return std::max(joint, static_cast<mpfr_prec_t>(need));
}

mpfr_prec_t product_precision(const BigReal& a, mpfr_prec_t a_joint, mpfr_prec_t other_bits, bool other_exact) {
  if (!exact_nonzero(a) || !other_exact) return a_joint;
  const mpfr_prec_t need = mpfr_min_prec(a.value()) + other_bits;
  if (need > kExactCap) return a_joint;
  return std::max(a_joint, need);
}

// Caps a Lipschitz-1 bound for sin/cos: the true value is within [-1, 1].
void cap_at_two(Mpfr& err) {
  if (mpfr_cmp_ui(err.get(), 2) > 0) mpfr_set_ui(err.get(), 2, MPFR_RNDU);
}

}  // namespace

// ---------------------------------------------------------------------------
// BigReal

BigReal::BigReal() : value_(kMinPrecisionBits), err_(kErrPrecision) {}

BigReal::BigReal(Mpfr value, Mpfr err) : value_(std::move(value)), err_(std::move(err)) {
  if (value_.precision() < static_cast<mpfr_prec_t>(kMinPrecisionBits)) {
    Mpfr widened(kMinPrecisionBits);
    mpfr_set(widened.get(), value_.get(), MPFR_RNDN);
    value_ = std::move(widened);
  }
  if (mpfr_sgn(err_.get()) < 0 || mpfr_nan_p(err_.get())) {
    throw DomainError("error bound must be a nonnegative number");
  }
}

BigReal BigReal::exact(const mpz_class& n) {
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
  Mpfr v(std::max<mpfr_prec_t>(kMinPrecisionBits, bits));
  mpfr_set_z(v.get(), n.get_mpz_t(), MPFR_RNDN);
  return BigReal(std::move(v), err_zero());
}

BigReal BigReal::exact(long n) { return exact(mpz_class(n)); }

BigReal BigReal::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite double");
  Mpfr v(kMinPrecisionBits);
  mpfr_set_d(v.get(), x, MPFR_RNDN);
  return BigReal(std::move(v), err_zero());
}

BigReal BigReal::from_rational(const mpq_class& q, unsigned precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw UnsupportedPrecision("precision below 64 bits");
  }
  Mpfr v(precision_bits);
  Mpfr e = err_zero();
  const int t = mpfr_set_q(v.get(), q.get_mpq_t(), MPFR_RNDN);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal BigReal::parse(std::string_view decimal, unsigned precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw UnsupportedPrecision("precision below 64 bits");
  }
  const std::string text(decimal);
  Mpfr v(precision_bits);
  char* end = nullptr;
  const int t = mpfr_strtofr(v.get(), text.c_str(), &end, 10, MPFR_RNDN);
  if (text.empty() || end != text.c_str() + text.size() || !mpfr_number_p(v.get())) {
    throw DomainError("not a decimal number: '" + text + "'");
  }
  Mpfr e = err_zero();
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

Mpfr BigReal::lower() const {
  Mpfr r(value_.precision());
  mpfr_sub(r.get(), value_.get(), err_.get(), MPFR_RNDD);
  return r;
}

Mpfr BigReal::upper() const {
  Mpfr r(value_.precision());
  mpfr_add(r.get(), value_.get(), err_.get(), MPFR_RNDU);
  return r;
}

int BigReal::certain_sign() const {
  if (mpfr_sgn(lower().get()) > 0) return 1;
  if (mpfr_sgn(upper().get()) < 0) return -1;
  return 0;
}

mpq_class BigReal::lower_rational() const {
  mpq_class v, e;
  mpfr_get_q(v.get_mpq_t(), value_.get());
  mpfr_get_q(e.get_mpq_t(), err_.get());
  return v - e;
}

mpq_class BigReal::upper_rational() const {
  mpq_class v, e;
  mpfr_get_q(v.get_mpq_t(), value_.get());
  mpfr_get_q(e.get_mpq_t(), err_.get());
  return v + e;
}

double BigReal::to_double() const { return mpfr_get_d(value_.get(), MPFR_RNDN); }

std::optional<long> BigReal::err_log2() const {
  if (is_exact()) return std::nullopt;
  return static_cast<long>(mpfr_get_exp(err_.get()));
}

double BigReal::err_double() const { return mpfr_get_d(err_.get(), MPFR_RNDU); }

BigReal BigReal::with_precision(unsigned precision_bits) const {
  if (precision_bits < kMinPrecisionBits) {
    throw UnsupportedPrecision("precision below 64 bits");
  }
  Mpfr v(precision_bits);
  Mpfr e = err_;
  const int t = mpfr_set(v.get(), value_.get(), MPFR_RNDN);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal BigReal::widened(mpfr_srcptr extra) const {
  Mpfr e = err_;
  Mpfr x = abs_up(extra);
  add_up(e, x.get());
  return BigReal(value_, std::move(e));
}

std::string BigReal::to_fixed(int decimals) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", decimals, value_.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string BigReal::to_scientific(int significant_digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(0, significant_digits - 1), value_.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic

BigReal operator-(const BigReal& a) {
  Mpfr v(a.precision_bits());
  mpfr_neg(v.get(), a.value(), MPFR_RNDN);
  Mpfr e(kErrPrecision);
  mpfr_set(e.get(), a.err(), MPFR_RNDU);
  return BigReal(std::move(v), std::move(e));
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  Mpfr v(sum_precision(a, b));
  const int t = mpfr_add(v.get(), a.value(), b.value(), MPFR_RNDN);
  Mpfr e(kErrPrecision);
  mpfr_add(e.get(), a.err(), b.err(), MPFR_RNDU);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  Mpfr v(sum_precision(a, b));
  const int t = mpfr_sub(v.get(), a.value(), b.value(), MPFR_RNDN);
  Mpfr e(kErrPrecision);
  mpfr_add(e.get(), a.err(), b.err(), MPFR_RNDU);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  Mpfr v(product_precision(a, joint_precision(a, b), static_cast<mpfr_prec_t>(mpfr_min_prec(b.value())),
                           exact_nonzero(b)));
  const int t = mpfr_mul(v.get(), a.value(), b.value(), MPFR_RNDN);

  // |a| eb + |b| ea + ea eb
  Mpfr e = err_zero();
  Mpfr term(kErrPrecision);
  Mpfr abs_a = abs_up(a.value());
  Mpfr abs_b = abs_up(b.value());
  mpfr_mul(term.get(), abs_a.get(), b.err(), MPFR_RNDU);
  add_up(e, term.get());
  mpfr_mul(term.get(), abs_b.get(), a.err(), MPFR_RNDU);
  add_up(e, term.get());
  mpfr_mul(term.get(), a.err(), b.err(), MPFR_RNDU);
  add_up(e, term.get());
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  Mpfr abs_b_lo = abs_down(b.value());
  Mpfr margin(kErrPrecision);
  mpfr_sub(margin.get(), abs_b_lo.get(), b.err(), MPFR_RNDD);
  if (mpfr_sgn(margin.get()) <= 0) {
    throw PrecisionError("division by an interval that contains zero");
  }

  Mpfr v(joint_precision(a, b));
  const int t = mpfr_div(v.get(), a.value(), b.value(), MPFR_RNDN);

  // (ea |b| + |a| eb) / (|b| (|b| - eb))
  Mpfr num = err_zero();
  Mpfr term(kErrPrecision);
  Mpfr abs_a = abs_up(a.value());
  Mpfr abs_b = abs_up(b.value());
  mpfr_mul(term.get(), a.err(), abs_b.get(), MPFR_RNDU);
  add_up(num, term.get());
  mpfr_mul(term.get(), abs_a.get(), b.err(), MPFR_RNDU);
  add_up(num, term.get());
  Mpfr den(kErrPrecision);
  mpfr_mul(den.get(), abs_b_lo.get(), margin.get(), MPFR_RNDD);
  Mpfr e(kErrPrecision);
  mpfr_div(e.get(), num.get(), den.get(), MPFR_RNDU);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal operator+(const BigReal& a, const mpz_class& n) { return a + BigReal::exact(n); }
BigReal operator-(const BigReal& a, const mpz_class& n) { return a - BigReal::exact(n); }
BigReal operator*(const BigReal& a, const mpz_class& n) {
  Mpfr v(product_precision(a, a.precision_bits(),
                           static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)), n != 0));
  const int t = mpfr_mul_z(v.get(), a.value(), n.get_mpz_t(), MPFR_RNDN);
  Mpfr abs_n(kErrPrecision);
  mpfr_set_z(abs_n.get(), n.get_mpz_t(), MPFR_RNDU);
  mpfr_abs(abs_n.get(), abs_n.get(), MPFR_RNDU);
  Mpfr e(kErrPrecision);
  mpfr_mul(e.get(), a.err(), abs_n.get(), MPFR_RNDU);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}
BigReal operator/(const BigReal& a, const mpz_class& n) { return a / BigReal::exact(n); }
BigReal operator*(const BigReal& a, const mpq_class& r) {
  return (a * r.get_num()) / BigReal::exact(r.get_den());
}

BigReal abs(const BigReal& a) {
  Mpfr v(a.precision_bits());
  mpfr_abs(v.get(), a.value(), MPFR_RNDN);
  Mpfr e(kErrPrecision);
  mpfr_set(e.get(), a.err(), MPFR_RNDU);
  return BigReal(std::move(v), std::move(e));
}

BigReal sqr(const BigReal& a) { return a * a; }

BigReal pow(const BigReal& a, unsigned exponent) {
  BigReal result = BigReal::exact(1L).with_precision(a.precision_bits());
  BigReal base = a;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

BigReal sqrt(const BigReal& a) {
  Mpfr lo = a.lower();
  if (mpfr_sgn(lo.get()) <= 0) {
    throw PrecisionError("sqrt of an interval that reaches zero");
  }
  Mpfr v(a.precision_bits());
  const int t = mpfr_sqrt(v.get(), a.value(), MPFR_RNDN);
  Mpfr root_lo(kErrPrecision);
  mpfr_sqrt(root_lo.get(), lo.get(), MPFR_RNDD);
  Mpfr e(kErrPrecision);
  mpfr_div(e.get(), a.err(), root_lo.get(), MPFR_RNDU);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal sin(const BigReal& a) {
  Mpfr v(a.precision_bits());
  const int t = mpfr_sin(v.get(), a.value(), MPFR_RNDN);
  Mpfr e(kErrPrecision);
  mpfr_set(e.get(), a.err(), MPFR_RNDU);
  cap_at_two(e);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal cos(const BigReal& a) {
  Mpfr v(a.precision_bits());
  const int t = mpfr_cos(v.get(), a.value(), MPFR_RNDN);
  Mpfr e(kErrPrecision);
  mpfr_set(e.get(), a.err(), MPFR_RNDU);
  cap_at_two(e);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal log(const BigReal& a) {
  Mpfr lo = a.lower();
  if (mpfr_sgn(lo.get()) <= 0) {
    throw PrecisionError("log of an interval that reaches zero");
  }
  Mpfr v(a.precision_bits());
  const int t = mpfr_log(v.get(), a.value(), MPFR_RNDN);
  Mpfr lo_small(kErrPrecision);
  mpfr_set(lo_small.get(), lo.get(), MPFR_RNDD);
  Mpfr e(kErrPrecision);
  mpfr_div(e.get(), a.err(), lo_small.get(), MPFR_RNDU);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

BigReal exp(const BigReal& a) {
  Mpfr v(a.precision_bits());
  const int t = mpfr_exp(v.get(), a.value(), MPFR_RNDN);
  // e^hi (e^ea - 1)
  Mpfr hi = a.upper();
  Mpfr scale(kErrPrecision);
  mpfr_exp(scale.get(), hi.get(), MPFR_RNDU);
  Mpfr growth(kErrPrecision);
  mpfr_expm1(growth.get(), a.err(), MPFR_RNDU);
  Mpfr e(kErrPrecision);
  mpfr_mul(e.get(), scale.get(), growth.get(), MPFR_RNDU);
  add_rounding(e, v.get(), t);
  return BigReal(std::move(v), std::move(e));
}

bool certainly_less(const BigReal& a, const BigReal& b) {
  return mpfr_less_p(a.upper().get(), b.lower().get()) != 0;
}

bool certainly_greater(const BigReal& a, const BigReal& b) { return certainly_less(b, a); }

bool overlaps(const BigReal& a, const BigReal& b) {
  return !certainly_less(a, b) && !certainly_less(b, a);
}

NearestInteger nearest_integer(const BigReal& a) {
  NearestInteger out;
  const mpfr_prec_t p = a.precision_bits() + 2;
  if (a.is_exact()) {
    Mpfr fl(p);
    mpfr_floor(fl.get(), a.value());
    Mpfr frac(p);
    mpfr_sub(frac.get(), a.value(), fl.get(), MPFR_RNDN);
    mpfr_get_z(out.value.get_mpz_t(), fl.get(), MPFR_RNDN);
    // Ties go to the smaller integer.
    if (mpfr_cmp_d(frac.get(), 0.5) > 0) out.value += 1;
    return out;
  }
  Mpfr lo = a.lower();
  Mpfr hi = a.upper();
  Mpfr shifted_lo(p);
  Mpfr shifted_hi(p);
  mpfr_add_d(shifted_lo.get(), lo.get(), 0.5, MPFR_RNDD);
  mpfr_add_d(shifted_hi.get(), hi.get(), 0.5, MPFR_RNDU);
  mpz_class n_lo, n_hi;
  mpfr_get_z(n_lo.get_mpz_t(), shifted_lo.get(), MPFR_RNDD);
  mpfr_get_z(n_hi.get_mpz_t(), shifted_hi.get(), MPFR_RNDD);
  out.value = n_lo;
  out.ambiguous = (n_lo != n_hi);
  return out;
}

std::optional<mpz_class> round_scaled(const BigReal& a, int decimals, Rounding mode) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  const mpfr_prec_t p = a.precision_bits() + 64;
  Mpfr lo = a.lower();
  Mpfr hi = a.upper();
  Mpfr lo_s(p);
  Mpfr hi_s(p);
  mpfr_mul_z(lo_s.get(), lo.get(), scale.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_z(hi_s.get(), hi.get(), scale.get_mpz_t(), MPFR_RNDU);
  mpz_class r_lo, r_hi;
  switch (mode) {
    case Rounding::HalfEven: {
      // MPFR_RNDN breaks ties to even.
      Mpfr t(p);
      mpfr_rint(t.get(), lo_s.get(), MPFR_RNDN);
      mpfr_get_z(r_lo.get_mpz_t(), t.get(), MPFR_RNDN);
      mpfr_rint(t.get(), hi_s.get(), MPFR_RNDN);
      mpfr_get_z(r_hi.get_mpz_t(), t.get(), MPFR_RNDN);
      break;
    }
    case Rounding::Ceiling:
      mpfr_get_z(r_lo.get_mpz_t(), lo_s.get(), MPFR_RNDU);
      mpfr_get_z(r_hi.get_mpz_t(), hi_s.get(), MPFR_RNDU);
      break;
  }
  if (r_lo != r_hi) return std::nullopt;
  return r_lo;
}

std::string format_scaled(const mpz_class& scaled, int decimals) {
  const bool negative = sgn(scaled) < 0;
  mpz_class magnitude = abs(scaled);
  std::string digits = magnitude.get_str();
  if (digits.size() <= static_cast<std::size_t>(decimals)) {
    digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
  }
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
  if (decimals > 0) {
    out += '.';
    out += digits.substr(digits.size() - static_cast<std::size_t>(decimals));
  }
  return out;
}

unsigned bits_for_digits(unsigned long decimal_digits) {
  return static_cast<unsigned>(std::ceil(static_cast<double>(decimal_digits) * 3.321928094887362)) + 1;
}

}  // namespace exponent_lab
