#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>

#include "exponent_lab/big_real.hpp"
#include "oracle.hpp"

namespace support {

// Decimal rendering of the stored value, enough digits to round-trip.
inline oracle::Real to_real(const exponent_lab::BigReal& x, unsigned digits) {
  oracle::DigitsScope scope(digits);
  return oracle::Real(x.to_scientific(static_cast<int>(x.precision_bits() * 0.30103) + 5));
}

inline oracle::Real err_of(const exponent_lab::BigReal& x, unsigned digits) {
  oracle::DigitsScope scope(digits);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.20RUe", x.err());
  oracle::Real e(buf);
  mpfr_free_str(buf);
  return e;
}

// |x - ref| <= err(x) + slack, evaluated with the oracle's arithmetic.
inline bool encloses(const exponent_lab::BigReal& x, const oracle::Real& ref, const oracle::Real& slack,
                     unsigned digits) {
  oracle::DigitsScope scope(digits);
  const oracle::Real diff = boost::multiprecision::abs(to_real(x, digits) - ref);
  return diff <= err_of(x, digits) + slack;
}

inline oracle::Real ten_to(int exponent, unsigned digits) {
  oracle::DigitsScope scope(digits);
  return boost::multiprecision::pow(oracle::Real(10), exponent);
}

inline std::string fixed(const oracle::Real& x, int decimals) { return x.str(decimals, std::ios_base::fixed); }

}  // namespace support
