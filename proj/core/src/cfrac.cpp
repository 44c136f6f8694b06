#include "exponent_lab/cfrac.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "exponent_lab/errors.hpp"

namespace exponent_lab {

namespace {

constexpr std::size_t kMaxExpansionTerms = 10000;

std::size_t common_prefix(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

// Tri-state outcome of an interval comparison.
enum class Decided { Yes, No, Unknown };

Decided less_than(const BigReal& a, const BigReal& b) {
  if (certainly_less(a, b)) return Decided::Yes;
  if (certainly_greater(a, b)) return Decided::No;
  return Decided::Unknown;
}

Decided negate(Decided d) {
  if (d == Decided::Yes) return Decided::No;
  if (d == Decided::No) return Decided::Yes;
  return Decided::Unknown;
}

}  // namespace

ContinuedFraction::ContinuedFraction(std::vector<mpz_class> terms, std::size_t verified, bool terminated)
    : terms_(std::move(terms)), verified_len_(verified), terminated_(terminated) {}

ContinuedFraction ContinuedFraction::from_terms(std::vector<mpz_class> terms, bool terminated) {
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] < 1) {
      throw DomainError("partial quotient a_" + std::to_string(i) + " = " + terms[i].get_str() + " is below 1");
    }
  }
  const std::size_t n = terms.size();
  return ContinuedFraction(std::move(terms), n, terminated);
}

ContinuedFraction ContinuedFraction::of_rational(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  mpz_class num = v.get_num();
  mpz_class den = v.get_den();
  std::vector<mpz_class> terms;
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class r = num - a * den;
    terms.push_back(a);
    num = den;
    den = r;
  }
  // Canonical form: [..., a, 1] -> [..., a + 1].
  if (terms.size() > 1 && terms.back() == 1) {
    terms.pop_back();
    terms.back() += 1;
  }
  const std::size_t n = terms.size();
  return ContinuedFraction(std::move(terms), n, true);
}

ContinuedFraction certified_prefix(const BigReal& x) {
  if (x.is_exact()) {
    mpq_class v;
    mpfr_get_q(v.get_mpq_t(), x.value());
    return ContinuedFraction::of_rational(v);
  }
  const mpq_class lo = x.lower_rational();
  const mpq_class hi = x.upper_rational();
  mpz_class lo_num = lo.get_num();
  mpz_class lo_den = lo.get_den();
  mpz_class hi_num = hi.get_num();
  mpz_class hi_den = hi.get_den();

  // Run Euclid on both endpoints in lockstep. x -> 1/(x - a) is decreasing,
  // so the endpoints swap roles after every step.
  std::vector<mpz_class> terms;
  while (true) {
    mpz_class a_lo, a_hi;
    mpz_fdiv_q(a_lo.get_mpz_t(), lo_num.get_mpz_t(), lo_den.get_mpz_t());
    mpz_fdiv_q(a_hi.get_mpz_t(), hi_num.get_mpz_t(), hi_den.get_mpz_t());
    if (a_lo != a_hi) break;
    if (!terms.empty() && a_lo < 1) break;
    mpz_class r_lo = lo_num - a_lo * lo_den;
    mpz_class r_hi = hi_num - a_hi * hi_den;
    if (r_lo == 0 || r_hi == 0) {
      // An endpoint is the rational [a0; ..., a]; reals just beside it may
      // expand as [..., a - 1, 1, ...], so `a` itself is not certified.
      break;
    }
    terms.push_back(a_lo);
    mpz_class next_lo_num = hi_den;
    mpz_class next_lo_den = r_hi;
    mpz_class next_hi_num = lo_den;
    mpz_class next_hi_den = r_lo;
    lo_num = std::move(next_lo_num);
    lo_den = std::move(next_lo_den);
    hi_num = std::move(next_hi_num);
    hi_den = std::move(next_hi_den);
  }
  const std::size_t n = terms.size();
  return ContinuedFraction(std::move(terms), n, false);
}

ContinuedFraction expand(const ConstantId& alpha, std::size_t n_terms, const PrecisionPolicy& policy) {
  validate(alpha);
  if (n_terms == 0) throw DomainError("expand needs n_terms >= 1");
  if (n_terms > kMaxExpansionTerms) throw DomainError("expand is limited to 10^4 terms");

  if (const auto* r = std::get_if<RationalFixture>(&alpha)) {
    return ContinuedFraction::of_rational(mpq_class(r->num, r->den));
  }

  unsigned bits = std::max<unsigned>(128, 64 + 4 * static_cast<unsigned>(n_terms));
  const unsigned ceiling = policy.max_bits();
  while (2 * bits <= ceiling) {
    const ContinuedFraction coarse = certified_prefix(gen_constant(alpha, bits));
    ContinuedFraction fine = certified_prefix(gen_constant(alpha, 2 * bits));
    const std::size_t agree = common_prefix(coarse.terms(), fine.terms());
    if (agree >= n_terms) {
      fine.verified_len_ = agree;
      return fine;
    }
    bits *= 2;
  }
  throw PrecisionError("expand: precision ceiling reached before " + std::to_string(n_terms) +
                       " partial quotients of " + to_string(alpha) + " were certified");
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n_max) {
  if (n_max > cf.verified_len()) {
    throw DomainError("convergents: requested " + std::to_string(n_max) + " but only " +
                      std::to_string(cf.verified_len()) + " partial quotients are verified");
  }
  std::vector<Convergent> out;
  out.reserve(n_max);
  mpz_class p_prev2 = 0, p_prev1 = 1;
  mpz_class q_prev2 = 1, q_prev1 = 0;
  for (std::size_t n = 0; n < n_max; ++n) {
    mpz_class p = cf[n] * p_prev1 + p_prev2;
    mpz_class q = cf[n] * q_prev1 + q_prev2;
    out.push_back(Convergent{n, p, q});
    p_prev2 = std::move(p_prev1);
    p_prev1 = std::move(p);
    q_prev2 = std::move(q_prev1);
    q_prev1 = std::move(q);
  }
  return out;
}

bool check_determinant(std::span<const Convergent> cs) {
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const Convergent& cur = cs[i];
    const Convergent& prev = cs[i - 1];
    if (cur.n != prev.n + 1) return false;
    const mpz_class det = cur.p * prev.q - prev.p * cur.q;
    const long expected = ((cur.n - 1) % 2 == 0) ? 1 : -1;
    if (det != expected) return false;
  }
  return true;
}

bool check_alternating_sum(std::span<const Convergent> cs, const ContinuedFraction& cf) {
  if (cs.empty()) return true;
  if (cs.front().n != 0 || cf.size() == 0) return false;
  mpq_class running(cf[0]);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].n != i) return false;
    if (i > 0) {
      mpq_class term(1, cs[i - 1].q * cs[i].q);
      term.canonicalize();
      if ((i - 1) % 2 == 0) {
        running += term;
      } else {
        running -= term;
      }
    }
    mpq_class ratio(cs[i].p, cs[i].q);
    ratio.canonicalize();
    if (ratio != running) return false;
  }
  return true;
}

std::vector<BestApproxRecord> best_approx_bruteforce(const BigReal& alpha, std::uint64_t q_max) {
  if (q_max == 0 || q_max > kMaxBruteForceDenominator) {
    throw DomainError("best_approx_bruteforce needs 1 <= q_max <= 10^6");
  }
  std::vector<BestApproxRecord> records;
  std::optional<BigReal> best;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const mpz_class qz(static_cast<unsigned long>(q));
    const BigReal scaled = alpha * qz;
    const NearestInteger p = nearest_integer(scaled);
    if (p.ambiguous) {
      throw PrecisionError("best_approx_bruteforce: alpha*" + std::to_string(q) +
                           " too close to a half-integer for the given precision");
    }
    BigReal distance = abs(scaled - p.value);
    if (!best) {
      best = distance;
      records.push_back(BestApproxRecord{q, p.value, distance, distance.is_zero()});
      continue;
    }
    const Decided smaller = less_than(distance, *best);
    if (smaller == Decided::Unknown) {
      throw PrecisionError("best_approx_bruteforce: cannot order |alpha q - p| at q=" + std::to_string(q));
    }
    if (smaller == Decided::Yes) {
      best = distance;
      records.push_back(BestApproxRecord{q, p.value, distance, distance.is_zero()});
    }
  }
  return records;
}

std::vector<BestApproxRecord> best_approx_bruteforce(const mpq_class& alpha, std::uint64_t q_max) {
  if (q_max == 0 || q_max > kMaxBruteForceDenominator) {
    throw DomainError("best_approx_bruteforce needs 1 <= q_max <= 10^6");
  }
  mpq_class a = alpha;
  a.canonicalize();
  std::vector<BestApproxRecord> records;
  std::optional<mpq_class> best;
  const mpq_class half(1, 2);
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const mpq_class scaled = a * mpq_class(mpz_class(static_cast<unsigned long>(q)));
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    const mpq_class frac = scaled - mpq_class(fl);
    const mpz_class p = (frac > half) ? mpz_class(fl + 1) : fl;
    mpq_class distance = scaled - mpq_class(p);
    distance = abs(distance);
    if (!best || distance < *best) {
      best = distance;
      records.push_back(BestApproxRecord{q, p, BigReal::from_rational(distance, 128), distance == 0});
      if (distance == 0) break;
    }
  }
  return records;
}

std::vector<ConvergentBounds> convergent_bounds(const ConstantId& alpha, std::size_t n_rows,
                                                const PrecisionPolicy& policy) {
  if (is_rational(alpha)) throw DomainError("convergent bounds need an irrational constant");
  if (n_rows == 0) return {};
  const ContinuedFraction cf = expand(alpha, n_rows + 1, policy);
  const std::vector<Convergent> cs = convergents(cf, n_rows + 1);

  const auto q_bits = static_cast<unsigned>(mpz_sizeinbase(cs.back().q.get_mpz_t(), 2));
  unsigned bits = 4 * q_bits + 128;
  const unsigned ceiling = policy.max_bits();

  while (bits <= ceiling) {
    const BigReal value = gen_constant(alpha, bits);
    std::vector<ConvergentBounds> rows;
    bool undecided = false;
    for (std::size_t n = 0; n < n_rows && !undecided; ++n) {
      const Convergent& c = cs[n];
      const Convergent& next = cs[n + 1];
      const mpz_class& a_next = cf[n + 1];
      const unsigned b = value.precision_bits() + 64;
      const BigReal gap = abs(value * c.q - c.p) / c.q;
      const mpz_class q2 = c.q * c.q;

      const BigReal inv_q2 = BigReal::from_rational(mpq_class(1, q2), b);
      const BigReal inv_aq2 = BigReal::from_rational(mpq_class(1, a_next * q2), b);
      const BigReal sandwich = BigReal::from_rational(mpq_class(1, 2 * next.q * c.q), b);
      const BigReal quotient = BigReal::from_rational(mpq_class(1, 2 * a_next * q2), b);

      const Decided positive = gap.certain_sign() > 0 ? Decided::Yes
                               : gap.certain_sign() < 0 ? Decided::No
                                                        : Decided::Unknown;
      const Decided dirichlet = less_than(gap, inv_q2);
      const Decided refined = less_than(gap, inv_aq2);
      const Decided lower = negate(less_than(gap, sandwich));
      const Decided q_lower = negate(less_than(gap, quotient));
      for (Decided d : {positive, dirichlet, refined, lower, q_lower}) {
        if (d == Decided::Unknown) undecided = true;
      }
      ConvergentBounds row;
      row.n = n;
      row.gap = gap;
      row.positive = positive == Decided::Yes;
      row.dirichlet = dirichlet == Decided::Yes;
      row.refined = refined == Decided::Yes;
      row.sandwich_lower = lower == Decided::Yes;
      row.sandwich_upper = dirichlet == Decided::Yes;
      row.quotient_lower = q_lower == Decided::Yes;
      rows.push_back(std::move(row));
    }
    if (!undecided) return rows;
    bits *= 2;
  }
  throw PrecisionError("convergent_bounds: precision ceiling reached");
}

}  // namespace exponent_lab
