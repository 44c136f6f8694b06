#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "exponent_lab/big_real.hpp"
#include "exponent_lab/cfrac.hpp"

namespace exponent_lab {

// Largest v with 2^v | q. Throws DomainError for q < 1.
unsigned long v2(const mpz_class& q);

struct WValue {
  mpz_class w;
  unsigned long v2 = 0;
  bool odd = false;
};

// w = (4^(1+v) + 1) q^2 / 4^v with v = v2(q), in exact integers.
WValue w_n(const mpz_class& q);

struct XnValue {
  mpq_class prefactor;  // (4^(1+v) + 1) / 4^(1+v)
  BigReal x;            // prefactor * q / pi^k
};

XnValue x_n(const mpz_class& q, const BigReal& pi_k);

/// Everything checked for one convergent p/q of pi^k.
///
/// The sines are taken at (2(x -/+ 1/2) + 1) pi^(k+1) q. Because
/// 2 x pi^(k+1) q = pi w / 2 with w odd, s_minus is exactly 1 and s_plus is
/// |cos(2 pi^(k+1) q)|; both are also evaluated numerically.
struct LemmaReport {
  unsigned k = 0;
  std::size_t n = 0;  // table row, 1-based
  mpz_class p;
  mpz_class q;
  mpz_class q_next;
  unsigned long v2 = 0;
  mpz_class w;
  bool w_odd = false;
  BigReal x;

  bool s_minus_exact = false;   // from the parity of w alone
  BigReal s_minus_numeric;      // evaluated with >= 60 correct digits
  bool s_minus_agrees = false;  // numeric interval contains 1

  BigReal s_plus;
  BigReal cos_direct;     // |cos(2 pi^(k+1) q)|
  BigReal cos_reduced;    // |cos(2 pi (pi^k q - p))|
  bool cos_identity = false;

  BigReal bound;           // 1 - 2 pi^2 / q^2
  BigReal bound_residual;  // s_plus - bound
  bool degenerate = false;  // q <= 2: bound evaluated, not asserted
  bool bound_holds = false;

  std::vector<mpz_class> x_star;  // one integer, two on a boundary
  bool x_star_boundary = false;
  std::vector<BigReal> s_star;

  BigReal recip_sine;       // 1 / |sin(pi^(k+1) q)|
  BigReal recip_ratio_qn;   // recip_sine / q
  BigReal recip_ratio_qn1;  // recip_sine / q_next
  bool sandwich_asserted = false;  // n >= 2
  bool sandwich_holds = false;     // q_next / pi <= recip_sine <= q_next

  // The assertable invariants: parity, s_minus, the cosine identity, and
  // the bound and sandwich where they apply.
  bool passed() const;
};

inline constexpr unsigned kMaxLemmaPower = kMaxPiPower - 1;

// Row n (1-based) for pi^k, 1 <= k <= 63.
LemmaReport verify_lemma_705(unsigned k, std::size_t n, const PrecisionPolicy& policy = {});

// Rows 1..n_max sharing one expansion.
std::vector<LemmaReport> verify_lemma_rows(unsigned k, std::size_t n_max, const PrecisionPolicy& policy = {});

struct SineProfileRow {
  std::size_t n = 0;
  mpz_class q;
  mpz_class q_next;
  BigReal recip_sine;
  BigReal ratio_qn;
  BigReal ratio_qn1;
  bool sandwich_asserted = false;
  bool sandwich_holds = false;
};

std::vector<SineProfileRow> reciprocal_sine_profile(unsigned k, std::size_t n_max, const PrecisionPolicy& policy = {});

inline constexpr std::uint64_t kMaxArgmaxRange = 100000;

struct SineArgmax {
  std::uint64_t z = 0;
  BigReal sine;  // |sin(pi^(k+1) z)| at the maximizer
};

/// The z in 1..z_max maximizing 1/|sin(pi^(k+1) z)|; the smallest z wins a
/// tie. Precision is raised until the running minimum is never ambiguous.
SineArgmax sine_argmax_bruteforce(unsigned k, std::uint64_t z_max, const PrecisionPolicy& policy = {});

}  // namespace exponent_lab
