#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "exponent_lab/big_real.hpp"
#include "exponent_lab/constants.hpp"

namespace exponent_lab {

// Caps how far precision escalation may go (EXPONENT_LAB_MAX_DIGITS).
struct PrecisionPolicy {
  unsigned long max_digits = 100000;

  unsigned max_bits() const { return bits_for_digits(max_digits); }
};

/// Partial quotients [a0; a1, a2, ...].
///
/// `verified_len` counts the leading terms certified stable; every term
/// after a0 is >= 1. A terminating expansion (rational input) is stored in
/// canonical form, whose last term is >= 2 unless it is a0 alone.
class ContinuedFraction {
 public:
  ContinuedFraction() = default;

  // All terms verified. Throws DomainError if some a_i (i >= 1) is < 1.
  static ContinuedFraction from_terms(std::vector<mpz_class> terms, bool terminated = false);

  // Exact, canonical expansion of p/q (q != 0).
  static ContinuedFraction of_rational(const mpq_class& value);

  const std::vector<mpz_class>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t verified_len() const { return verified_len_; }
  bool terminated() const { return terminated_; }
  const mpz_class& operator[](std::size_t i) const { return terms_[i]; }

 private:
  ContinuedFraction(std::vector<mpz_class> terms, std::size_t verified, bool terminated);

  std::vector<mpz_class> terms_;
  std::size_t verified_len_ = 0;
  bool terminated_ = false;

  friend ContinuedFraction certified_prefix(const BigReal& x);
  friend ContinuedFraction expand(const ConstantId& alpha, std::size_t n_terms, const PrecisionPolicy& policy);
};

// Partial quotients shared by every real in [x - err, x + err].
ContinuedFraction certified_prefix(const BigReal& x);

/// Expands `alpha` until at least `n_terms` partial quotients agree between
/// evaluations at precision P and 2P, doubling P as needed. Rationals expand
/// exactly and may return fewer terms with terminated() set. Throws
/// PrecisionError once the policy's ceiling is reached.
ContinuedFraction expand(const ConstantId& alpha, std::size_t n_terms, const PrecisionPolicy& policy = {});

/// Convergent p/q. `n` is the internal index (0 for a0/1); tables number
/// rows from 1, so the printed row is table_row().
struct Convergent {
  std::size_t n = 0;
  mpz_class p;
  mpz_class q;

  std::size_t table_row() const { return n + 1; }
};

// First n_max convergents via p_n = a_n p_{n-1} + p_{n-2} (same for q),
// seeded with p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0.
// Throws DomainError when n_max exceeds verified_len().
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n_max);

// p_n q_{n-1} - p_{n-1} q_n == (-1)^(n-1) for every consecutive pair.
bool check_determinant(std::span<const Convergent> cs);

// p_n/q_n == a0 + sum_{0 <= k < n} (-1)^k / (q_k q_{k+1}) exactly.
bool check_alternating_sum(std::span<const Convergent> cs, const ContinuedFraction& cf);

struct BestApproxRecord {
  std::uint64_t q = 0;
  mpz_class p;
  BigReal distance;  // |alpha q - p|
  bool exact_hit = false;
};

inline constexpr std::uint64_t kMaxBruteForceDenominator = 1000000;

/// Running minima of |alpha q - p| over q = 1..q_max with p the nearest
/// integer to alpha q. A record is kept whenever the distance strictly
/// drops. Throws PrecisionError when alpha's error bound cannot separate the
/// candidates; the caller should retry with a sharper alpha.
std::vector<BestApproxRecord> best_approx_bruteforce(const BigReal& alpha, std::uint64_t q_max);

// Exact variant for rational alpha; ties at half-integers take the smaller p.
std::vector<BestApproxRecord> best_approx_bruteforce(const mpq_class& alpha, std::uint64_t q_max);

/// Dirichlet, refined and sandwich bounds for one convergent, evaluated
/// with certified intervals.
struct ConvergentBounds {
  std::size_t n = 0;  // internal index
  BigReal gap;        // |alpha - p_n/q_n|
  bool positive = false;              // 0 < gap
  bool dirichlet = false;             // gap < 1/q_n^2
  bool refined = false;               // gap < 1/(a_{n+1} q_n^2)
  bool sandwich_lower = false;        // 1/(2 q_{n+1} q_n) <= gap
  bool sandwich_upper = false;        // gap <= 1/q_n^2
  bool quotient_lower = false;        // 1/(2 a_{n+1} q_n^2) <= gap (reported only)

  bool asserted_hold() const {
    return positive && dirichlet && refined && sandwich_lower && sandwich_upper;
  }
};

/// Bounds for convergents 0..n_rows-1 of an irrational alpha; needs
/// a_{n+1} and q_{n+1}, so the expansion must hold n_rows + 1 terms.
/// Escalates alpha's precision until every comparison is decided.
std::vector<ConvergentBounds> convergent_bounds(const ConstantId& alpha, std::size_t n_rows,
                                                const PrecisionPolicy& policy = {});

}  // namespace exponent_lab
