#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace exponent_lab {

inline constexpr unsigned kMinPrecisionBits = 64;

// Owning RAII handle for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t precision = kMinPrecisionBits);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

/// Arbitrary-precision real with a certified absolute error bound.
///
/// The stored value is an MPFR float at `precision_bits()`. `err()` is an
/// upper bound on |stored - true| for whatever quantity the value stands
/// for; every arithmetic operation below propagates it and adds the
/// rounding error of the operation itself (zero when MPFR reports the
/// result exact). Values are immutable once built.
class BigReal {
 public:
  BigReal();

  // Takes ownership of a value and a nonnegative error bound.
  BigReal(Mpfr value, Mpfr err);

  static BigReal exact(const mpz_class& n);
  static BigReal exact(long n);
  static BigReal from_double(double x);
  static BigReal from_rational(const mpq_class& q, unsigned precision_bits);
  static BigReal parse(std::string_view decimal, unsigned precision_bits);

  unsigned precision_bits() const { return static_cast<unsigned>(value_.precision()); }
  mpfr_srcptr value() const { return value_.get(); }
  mpfr_srcptr err() const { return err_.get(); }

  bool is_exact() const { return mpfr_zero_p(err_.get()) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_.get()) != 0 && is_exact(); }

  // Interval endpoints value -/+ err, rounded outward.
  Mpfr lower() const;
  Mpfr upper() const;

  // +1 or -1 when the whole interval lies on that side of zero, else 0.
  int certain_sign() const;

  // Exact dyadic endpoints as rationals.
  mpq_class lower_rational() const;
  mpq_class upper_rational() const;

  double to_double() const;
  // Upper bound on log2(err); nullopt when the value is exact.
  std::optional<long> err_log2() const;
  double err_double() const;

  // Rounds to a different precision, adding the rounding error.
  BigReal with_precision(unsigned precision_bits) const;
  // Adds `extra` (nonnegative) to the error bound.
  BigReal widened(mpfr_srcptr extra) const;

  std::string to_fixed(int decimals) const;
  std::string to_scientific(int significant_digits) const;

 private:
  Mpfr value_;
  Mpfr err_;
};

BigReal operator-(const BigReal& a);
BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);

BigReal operator+(const BigReal& a, const mpz_class& n);
BigReal operator-(const BigReal& a, const mpz_class& n);
BigReal operator*(const BigReal& a, const mpz_class& n);
BigReal operator/(const BigReal& a, const mpz_class& n);
BigReal operator*(const BigReal& a, const mpq_class& r);

BigReal abs(const BigReal& a);
BigReal sqr(const BigReal& a);
BigReal pow(const BigReal& a, unsigned exponent);
BigReal sqrt(const BigReal& a);
BigReal sin(const BigReal& a);
BigReal cos(const BigReal& a);
BigReal log(const BigReal& a);
BigReal exp(const BigReal& a);

// Certified comparisons: true only when the intervals are disjoint.
bool certainly_less(const BigReal& a, const BigReal& b);
bool certainly_greater(const BigReal& a, const BigReal& b);
// Intervals [v - err, v + err] intersect.
bool overlaps(const BigReal& a, const BigReal& b);

// Nearest integer to the stored value; `ambiguous` is set when the error
// interval contains a half-integer, so the true nearest integer is unknown.
struct NearestInteger {
  mpz_class value;
  bool ambiguous = false;
};
NearestInteger nearest_integer(const BigReal& a);

enum class Rounding { HalfEven, Ceiling };

// round(a * 10^decimals) under `mode`, or nullopt if the error interval
// straddles a rounding boundary.
std::optional<mpz_class> round_scaled(const BigReal& a, int decimals, Rounding mode);

// Renders a scaled integer (value / 10^decimals) with exactly `decimals`
// fractional digits.
std::string format_scaled(const mpz_class& scaled, int decimals);

unsigned bits_for_digits(unsigned long decimal_digits);

}  // namespace exponent_lab
