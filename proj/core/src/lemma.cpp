#include "exponent_lab/lemma.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "exponent_lab/constants.hpp"
#include "exponent_lab/errors.hpp"

namespace exponent_lab {

namespace {

// Bits that give the numeric s_minus check 60 correct digits.
constexpr unsigned kCrossCheckBits = 200;

void check_power(unsigned k) {
  if (k == 0 || k > kMaxLemmaPower) throw DomainError("lemma checks need 1 <= k <= 63");
}

unsigned bit_length(const mpz_class& v) { return static_cast<unsigned>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

// Three-way certified comparison; nullopt when the intervals overlap.
std::optional<bool> decided_at_most(const BigReal& a, const BigReal& b) {
  if (certainly_greater(a, b)) return false;
  if (mpfr_lessequal_p(a.upper().get(), b.lower().get())) return true;
  return std::nullopt;
}

std::optional<bool> decided_at_least(const BigReal& a, const BigReal& b) {
  if (certainly_less(a, b)) return false;
  if (mpfr_greaterequal_p(a.lower().get(), b.upper().get())) return true;
  return std::nullopt;
}

[[noreturn]] void undecided(const char* what, std::size_t n) {
  throw PrecisionError(std::string("lemma row ") + std::to_string(n) + ": " + what + " undecided");
}

LemmaReport evaluate_row(unsigned k, const Convergent& c, const mpz_class& q_next, unsigned bits) {
  const BigReal pi = gen_constant(Pi{}, bits);
  const BigReal pi_k = gen_constant(PiPow{k}, bits);
  const BigReal pi_k1 = gen_constant(PiPow{k + 1}, bits);
  const BigReal one = BigReal::exact(1L);
  const BigReal half = BigReal::from_rational(mpq_class(1, 2), bits);

  LemmaReport r;
  r.k = k;
  r.n = c.table_row();
  r.p = c.p;
  r.q = c.q;
  r.q_next = q_next;

  const WValue w = w_n(c.q);
  r.v2 = w.v2;
  r.w = w.w;
  r.w_odd = w.odd;
  r.x = x_n(c.q, pi_k).x;

  const BigReal base = pi_k1 * c.q;

  r.s_minus_exact = w.odd;
  r.s_minus_numeric = abs(sin(((r.x - half) * mpz_class(2) + mpz_class(1)) * base));
  if (mpfr_cmp_si_2exp(r.s_minus_numeric.err(), 1, -static_cast<long>(kCrossCheckBits)) > 0) {
    undecided("s_minus cross-check", r.n);
  }
  r.s_minus_agrees = overlaps(r.s_minus_numeric, one);

  r.s_plus = abs(sin(((r.x + half) * mpz_class(2) + mpz_class(1)) * base));
  r.cos_direct = abs(cos(base * mpz_class(2)));
  const BigReal delta = pi_k * c.q - c.p;
  r.cos_reduced = abs(cos(pi * delta * mpz_class(2)));
  r.cos_identity = overlaps(r.s_plus, r.cos_direct) && overlaps(r.cos_direct, r.cos_reduced);

  r.bound = one - sqr(pi) * mpz_class(2) / (c.q * c.q);
  r.bound_residual = r.s_plus - r.bound;
  r.degenerate = c.q <= 2;
  const int sign = r.bound_residual.certain_sign();
  if (sign == 0 && !r.degenerate) undecided("bound", r.n);
  r.bound_holds = sign > 0;

  const NearestInteger nearest = nearest_integer(r.x);
  if (nearest.ambiguous) {
    mpz_class floor_x;
    mpfr_get_z(floor_x.get_mpz_t(), r.x.value(), MPFR_RNDD);
    r.x_star = {floor_x, floor_x + 1};
    r.x_star_boundary = true;
  } else {
    r.x_star = {nearest.value};
  }
  for (const mpz_class& xs : r.x_star) r.s_star.push_back(abs(sin(base * mpz_class(2 * xs + 1))));

  const BigReal sine_direct = abs(sin(base));
  const BigReal sine_reduced = abs(sin(pi * delta));
  if (!overlaps(sine_direct, sine_reduced)) undecided("sine reduction", r.n);
  r.recip_sine = one.with_precision(bits) / sine_reduced;
  r.recip_ratio_qn = r.recip_sine / c.q;
  r.recip_ratio_qn1 = r.recip_sine / q_next;

  r.sandwich_asserted = r.n >= 2;
  const BigReal inv_pi = one.with_precision(bits) / pi;
  const auto upper_ok = decided_at_most(r.recip_ratio_qn1, one);
  const auto lower_ok = decided_at_least(r.recip_ratio_qn1, inv_pi);
  if (r.sandwich_asserted && (!upper_ok || !lower_ok)) undecided("sandwich", r.n);
  r.sandwich_holds = upper_ok.value_or(false) && lower_ok.value_or(false);
  return r;
}

LemmaReport escalate_row(unsigned k, const Convergent& c, const mpz_class& q_next, unsigned ceiling) {
  unsigned bits = 4 * bit_length(q_next) + 8 * k + 256 + kCrossCheckBits;
  while (bits <= ceiling) {
    try {
      return evaluate_row(k, c, q_next, bits);
    } catch (const PrecisionError&) {
      bits *= 2;
    }
  }
  throw PrecisionError("lemma row " + std::to_string(c.table_row()) + ": precision ceiling reached");
}

}  // namespace

unsigned long v2(const mpz_class& q) {
  if (q < 1) throw DomainError("v2 needs q >= 1");
  return mpz_scan1(q.get_mpz_t(), 0);
}

WValue w_n(const mpz_class& q) {
  WValue out;
  out.v2 = v2(q);
  mpz_class four_v;
  mpz_ui_pow_ui(four_v.get_mpz_t(), 4, out.v2);
  const mpz_class numerator = (4 * four_v + 1) * q * q;
  if (!mpz_divisible_p(numerator.get_mpz_t(), four_v.get_mpz_t())) {
    throw std::logic_error("w_n: division by 4^v2 is not exact");
  }
  out.w = numerator / four_v;
  out.odd = mpz_odd_p(out.w.get_mpz_t()) != 0;
  return out;
}

XnValue x_n(const mpz_class& q, const BigReal& pi_k) {
  const unsigned long v = v2(q);
  mpz_class four_v1;
  mpz_ui_pow_ui(four_v1.get_mpz_t(), 4, v + 1);
  XnValue out;
  out.prefactor = mpq_class(four_v1 + 1, four_v1);
  out.prefactor.canonicalize();
  const unsigned bits = std::max(pi_k.precision_bits(), bit_length(q)) + 2 * bit_length(four_v1) + 8;
  out.x = BigReal::exact(q).with_precision(bits) * out.prefactor / pi_k;
  return out;
}

bool LemmaReport::passed() const {
  if (!w_odd || !s_minus_exact || !s_minus_agrees || !cos_identity) return false;
  if (!degenerate && !bound_holds) return false;
  if (sandwich_asserted && !sandwich_holds) return false;
  return true;
}

std::vector<LemmaReport> verify_lemma_rows(unsigned k, std::size_t n_max, const PrecisionPolicy& policy) {
  check_power(k);
  if (n_max == 0) throw DomainError("lemma rows start at n = 1");
  const ContinuedFraction cf = expand(PiPow{k}, n_max + 1, policy);
  const std::vector<Convergent> cs = convergents(cf, n_max + 1);
  std::vector<LemmaReport> out;
  out.reserve(n_max);
  for (std::size_t i = 0; i < n_max; ++i) out.push_back(escalate_row(k, cs[i], cs[i + 1].q, policy.max_bits()));
  return out;
}

LemmaReport verify_lemma_705(unsigned k, std::size_t n, const PrecisionPolicy& policy) {
  check_power(k);
  if (n == 0) throw DomainError("lemma rows start at n = 1");
  const ContinuedFraction cf = expand(PiPow{k}, n + 1, policy);
  const std::vector<Convergent> cs = convergents(cf, n + 1);
  return escalate_row(k, cs[n - 1], cs[n].q, policy.max_bits());
}

std::vector<SineProfileRow> reciprocal_sine_profile(unsigned k, std::size_t n_max, const PrecisionPolicy& policy) {
  std::vector<SineProfileRow> out;
  for (LemmaReport& r : verify_lemma_rows(k, n_max, policy)) {
    SineProfileRow row;
    row.n = r.n;
    row.q = r.q;
    row.q_next = r.q_next;
    row.recip_sine = std::move(r.recip_sine);
    row.ratio_qn = std::move(r.recip_ratio_qn);
    row.ratio_qn1 = std::move(r.recip_ratio_qn1);
    row.sandwich_asserted = r.sandwich_asserted;
    row.sandwich_holds = r.sandwich_holds;
    out.push_back(std::move(row));
  }
  return out;
}

SineArgmax sine_argmax_bruteforce(unsigned k, std::uint64_t z_max, const PrecisionPolicy& policy) {
  check_power(k);
  if (z_max == 0 || z_max > kMaxArgmaxRange) throw DomainError("sine_argmax_bruteforce needs 1 <= z_max <= 100000");
  unsigned bits = 128 + 2 * static_cast<unsigned>(std::bit_width(z_max)) + 8 * (k + 1);
  while (bits <= policy.max_bits()) {
    const BigReal base = gen_constant(PiPow{k + 1}, bits);
    SineArgmax best{1, abs(sin(base))};
    bool ambiguous = false;
    for (std::uint64_t z = 2; z <= z_max && !ambiguous; ++z) {
      BigReal s = abs(sin(base * mpz_class(static_cast<unsigned long>(z))));
      if (certainly_less(s, best.sine)) {
        best = SineArgmax{z, std::move(s)};
      } else if (!certainly_greater(s, best.sine)) {
        ambiguous = true;
      }
    }
    if (!ambiguous) return best;
    bits *= 2;
  }
  throw PrecisionError("sine_argmax_bruteforce: precision ceiling reached");
}

}  // namespace exponent_lab
