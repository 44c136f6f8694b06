#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "exponent_lab/big_real.hpp"
#include "exponent_lab/cfrac.hpp"
#include "exponent_lab/constants.hpp"

namespace exponent_lab {

inline constexpr int kMuDecimals = 6;
inline constexpr std::size_t kMaxMuTableRows = 200;

/// One row of an exponent table: |alpha - p/q| = q^-mu.
///
/// `mu` is empty for q = 1 (ln q = 0) and for an exact hit (gap = 0 on a
/// terminating rational expansion); such rows print as a blank cell.
struct MuRecord {
  std::size_t n = 0;  // table row, 1-based
  mpz_class p;
  mpz_class q;
  std::optional<BigReal> mu;
  BigReal gap;
  bool exact_hit = false;
};

// mu = ln(1/gap) / ln(q) certified to 8 decimals. Throws PrecisionError when
// alpha's error is not below gap / 10^8 or mu cannot be certified.
MuRecord mu_estimate(const BigReal& alpha, const Convergent& c);

// Emitted mu cell: 6 decimals under `mode`, "" for blank rows. Throws
// PrecisionError if mu's interval straddles a rounding boundary.
std::string format_mu(const MuRecord& record, Rounding mode);

// 2 * (decimal digits of q^2) + 20.
unsigned default_target_digits(const mpz_class& q);

struct MuTableOptions {
  unsigned target_digits = 0;  // 0: default_target_digits(largest q)
  PrecisionPolicy policy;
};

/// Rows 1..n_max of the exponent table for `alpha`. A rational alpha stops
/// at its final convergent, which carries exact_hit and a zero gap. Rows are
/// escalated individually until both rounding modes give an unambiguous
/// 6-decimal cell.
std::vector<MuRecord> mu_table(const ConstantId& alpha, std::size_t n_max, const MuTableOptions& options = {});

/// The four quantities of the reciprocal-sine chain for the n-th (1-based)
/// convergent of pi^k:
///   |sin(pi^{k+1} q)|, |sin(pi (pi^k q - p))|, |pi^k q - p| and
///   ratio = |sin(pi (pi^k q - p))| / (pi |pi^k q - p|).
struct ChainReport {
  unsigned k = 0;
  std::size_t n = 0;
  mpz_class p;
  mpz_class q;
  BigReal sin_direct;
  BigReal sin_reduced;
  BigReal delta;
  BigReal ratio;
  bool reduction_agrees = false;  // the two sines coincide within error
  bool in_sinc_domain = false;    // 0 < delta < 1/2
  bool ratio_in_bounds = false;   // 2/pi <= ratio <= 1, when in domain
};

ChainReport inequality_chain(unsigned k, std::size_t n, const PrecisionPolicy& policy = {});

}  // namespace exponent_lab
