#include "exponent_lab/constants.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "exponent_lab/errors.hpp"

namespace exponent_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

unsigned guard_bits(unsigned precision_bits) {
  return 32 + static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(precision_bits))));
}

// Number x = n * 2^-scale with |x - true| < units * 2^-scale.
BigReal from_fixed_point(const mpz_class& n, unsigned long scale, const mpz_class& units) {
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 2;
  Mpfr v(std::max<mpfr_prec_t>(kMinPrecisionBits, bits));
  mpfr_set_z_2exp(v.get(), n.get_mpz_t(), -static_cast<mpfr_exp_t>(scale), MPFR_RNDN);
  Mpfr e(64);
  mpfr_set_z_2exp(e.get(), units.get_mpz_t(), -static_cast<mpfr_exp_t>(scale), MPFR_RNDU);
  return BigReal(std::move(v), std::move(e));
}

// Rounds a generated value so that precision_bits covers the fractional
// part, then checks the contract err <= 2^(8 - precision_bits).
BigReal finish(const BigReal& raw, unsigned precision_bits) {
  long int_bits = 0;
  if (!mpfr_zero_p(raw.value())) int_bits = std::max<long>(0, mpfr_get_exp(raw.value()));
  BigReal out = raw.with_precision(precision_bits + static_cast<unsigned>(int_bits));
  const auto e = out.err_log2();
  if (e && *e > 8 - static_cast<long>(precision_bits)) {
    throw PrecisionError("internal: generated constant missed its error budget");
  }
  return out;
}

// floor(2^scale * arctan(1/m)) by the alternating Gregory series. `terms`
// receives the number of series terms; each contributes < 2 units of
// truncation error and the omitted tail adds < 1 more.
mpz_class arctan_inverse(unsigned long m, unsigned long scale, unsigned long& terms) {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 2, scale);
  power /= m;
  const unsigned long m2 = m * m;
  mpz_class sum = 0;
  terms = 0;
  for (unsigned long j = 0; power != 0; ++j) {
    mpz_class term = power / (2 * j + 1);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power /= m2;
    ++terms;
  }
  return sum;
}

BigReal champernowne(unsigned base, unsigned precision_bits) {
  const double digit_bits = std::log2(static_cast<double>(base));
  const auto digits = static_cast<unsigned long>(std::ceil((precision_bits + 8) / digit_bits)) + 1;

  mpz_class numerator = 0;
  unsigned long length = 0;
  for (unsigned long i = 1; length < digits; ++i) {
    const mpz_class block(i);
    const auto block_len = static_cast<unsigned long>(block.get_str(static_cast<int>(base)).size());
    mpz_class shift;
    mpz_ui_pow_ui(shift.get_mpz_t(), base, block_len);
    numerator = numerator * shift + block;
    length += block_len;
  }
  if (length > digits) {
    mpz_class excess;
    mpz_ui_pow_ui(excess.get_mpz_t(), base, length - digits);
    numerator /= excess;
  }
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), base, digits);

  // The dropped digits are worth strictly less than one unit in the last
  // kept place.
  BigReal value = BigReal::from_rational(mpq_class(numerator, denominator), precision_bits + 16);
  Mpfr tail(64);
  mpfr_set_ui(tail.get(), base, MPFR_RNDU);
  mpfr_pow_si(tail.get(), tail.get(), -static_cast<long>(digits), MPFR_RNDU);
  return value.widened(tail.get());
}

BigReal liouville(unsigned base, unsigned precision_bits) {
  const double digit_bits = std::log2(static_cast<double>(base));
  const auto digits = static_cast<unsigned long>(std::ceil((precision_bits + 8) / digit_bits)) + 1;

  // Largest N with N! <= digits.
  unsigned long n = 1;
  unsigned long fact = 1;
  while (fact * (n + 1) <= digits) {
    ++n;
    fact *= n;
  }
  mpz_class numerator = 0;
  unsigned long f = 1;
  for (unsigned long i = 1; i <= n; ++i) {
    f *= i;
    mpz_class place;
    mpz_ui_pow_ui(place.get_mpz_t(), base, fact - f);
    numerator += place;
  }
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), base, fact);

  BigReal value = BigReal::from_rational(mpq_class(numerator, denominator), precision_bits + 16);
  // Tail sum_{i > n} base^-i! <= 2 base^-(n+1)!.
  Mpfr tail(64);
  mpfr_set_ui(tail.get(), base, MPFR_RNDU);
  mpfr_pow_si(tail.get(), tail.get(), -static_cast<long>(fact * (n + 1)), MPFR_RNDU);
  mpfr_mul_ui(tail.get(), tail.get(), 2, MPFR_RNDU);
  return value.widened(tail.get());
}

BigReal pi_power(unsigned k, unsigned precision_bits) {
  if (k == 1) return finish(pi_machin(precision_bits + 8), precision_bits);
  unsigned extra = static_cast<unsigned>(std::ceil(1.66 * k)) + guard_bits(precision_bits);
  for (int attempt = 0; attempt < 4; ++attempt, extra *= 2) {
    const BigReal pi = pi_machin(precision_bits + extra);
    try {
      return finish(pow(pi, k), precision_bits);
    } catch (const PrecisionError&) {
      continue;
    }
  }
  throw PrecisionError("internal: pi^k did not reach its error budget");
}

bool iequals_prefix(std::string_view text, std::string_view prefix) {
  if (text.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) != prefix[i]) return false;
  }
  return true;
}

unsigned parse_unsigned(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw DomainError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

// Suffix after a named family: "", "10", ":10".
unsigned parse_base(std::string_view suffix) {
  if (suffix.empty()) return 10;
  if (suffix.front() == ':') suffix.remove_prefix(1);
  return parse_unsigned(suffix, "base");
}

}  // namespace

void validate(const ConstantId& id) {
  std::visit(Overloaded{
                 [](const Pi&) {},
                 [](const PiPow& c) {
                   if (c.k == 0) throw DomainError("pi^k needs k >= 1");
                   if (c.k > kMaxPiPower) throw std::out_of_range("pi^k limited to k <= 64");
                 },
                 [](const Zeta3&) {},
                 [](const Champernowne& c) {
                   if (c.base < 2) throw DomainError("Champernowne base must be >= 2");
                 },
                 [](const Liouville& c) {
                   if (c.base < 2) throw DomainError("Liouville base must be >= 2");
                 },
                 [](const RationalFixture& c) {
                   if (c.den == 0) throw DomainError("rational fixture with zero denominator");
                 },
             },
             id);
}

bool is_rational(const ConstantId& id) { return std::holds_alternative<RationalFixture>(id); }

RationalFixture make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational fixture with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return RationalFixture{q.get_num(), q.get_den()};
}

std::string to_string(const ConstantId& id) {
  return std::visit(Overloaded{
                        [](const Pi&) -> std::string { return "pi"; },
                        [](const PiPow& c) -> std::string {
                          return c.k == 1 ? "pi" : "pi^" + std::to_string(c.k);
                        },
                        [](const Zeta3&) -> std::string { return "zeta3"; },
                        [](const Champernowne& c) -> std::string {
                          return "champernowne" + std::to_string(c.base);
                        },
                        [](const Liouville& c) -> std::string {
                          return "liouville" + std::to_string(c.base);
                        },
                        [](const RationalFixture& c) -> std::string {
                          return c.num.get_str() + "/" + c.den.get_str();
                        },
                    },
                    id);
}

ConstantId parse_constant(std::string_view text) {
  if (text.empty()) throw DomainError("empty constant name");
  if (iequals_prefix(text, "pi") && text.size() == 2) return Pi{};
  if (iequals_prefix(text, "pi^")) {
    const unsigned k = parse_unsigned(text.substr(3), "power");
    ConstantId id = PiPow{k};
    validate(id);
    return id;
  }
  if (iequals_prefix(text, "zeta3") && text.size() == 5) return Zeta3{};
  if (iequals_prefix(text, "zeta(3)") && text.size() == 7) return Zeta3{};
  if (iequals_prefix(text, "champernowne")) {
    ConstantId id = Champernowne{parse_base(text.substr(12))};
    validate(id);
    return id;
  }
  if (iequals_prefix(text, "liouville")) {
    ConstantId id = Liouville{parse_base(text.substr(9))};
    validate(id);
    return id;
  }

  const auto slash = text.find('/');
  const std::string num_text(text.substr(0, slash));
  const std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  mpz_class num, den;
  auto valid_integer = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    return s.size() > start &&
           std::all_of(s.begin() + static_cast<long>(start), s.end(),
                       [](unsigned char ch) { return std::isdigit(ch) != 0; });
  };
  if (!valid_integer(num_text) || !valid_integer(den_text) ||
      num.set_str(num_text[0] == '+' ? num_text.substr(1) : num_text, 10) != 0 ||
      den.set_str(den_text[0] == '+' ? den_text.substr(1) : den_text, 10) != 0) {
    throw DomainError("unknown constant: '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

BigReal pi_machin(unsigned precision_bits) {
  if (precision_bits < kMinPrecisionBits) throw UnsupportedPrecision("precision below 64 bits");
  const unsigned long scale = precision_bits + guard_bits(precision_bits);
  unsigned long terms5 = 0;
  unsigned long terms239 = 0;
  // pi = 16 arctan(1/5) - 4 arctan(1/239)
  const mpz_class a5 = arctan_inverse(5, scale, terms5);
  const mpz_class a239 = arctan_inverse(239, scale, terms239);
  const mpz_class n = 16 * a5 - 4 * a239;
  const mpz_class units = 16 * (2 * mpz_class(terms5) + 1) + 4 * (2 * mpz_class(terms239) + 1);
  return from_fixed_point(n, scale, units);
}

BigReal zeta3_central_binomial(unsigned precision_bits) {
  if (precision_bits < kMinPrecisionBits) throw UnsupportedPrecision("precision below 64 bits");
  // zeta(3) = 5/2 sum_{n>=1} (-1)^(n+1) / (n^3 C(2n, n))
  const unsigned long scale = precision_bits + guard_bits(precision_bits);
  mpz_class unit;
  mpz_ui_pow_ui(unit.get_mpz_t(), 2, scale);
  mpz_class central = 2;  // C(2, 1)
  mpz_class sum = 0;
  unsigned long terms = 0;
  for (unsigned long n = 1;; ++n) {
    const mpz_class nn(n);
    const mpz_class term = unit / (nn * nn * nn * central);
    if (term == 0) break;
    if (n % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
    ++terms;
    central = central * (2 * n + 1) * (2 * n + 2) / ((n + 1) * (n + 1));
  }
  // Floor errors < 1 unit per term, alternating tail < 1 unit; then *5/2.
  const mpz_class units = 5 * (mpz_class(terms) + 1);
  return from_fixed_point(5 * sum, scale + 1, units);
}

BigReal gen_constant(const ConstantId& id, unsigned precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw UnsupportedPrecision("gen_constant needs precision_bits >= 64");
  }
  validate(id);
  return std::visit(
      Overloaded{
          [&](const Pi&) { return pi_power(1, precision_bits); },
          [&](const PiPow& c) { return pi_power(c.k, precision_bits); },
          [&](const Zeta3&) { return finish(zeta3_central_binomial(precision_bits + 8), precision_bits); },
          [&](const Champernowne& c) { return finish(champernowne(c.base, precision_bits), precision_bits); },
          [&](const Liouville& c) { return finish(liouville(c.base, precision_bits), precision_bits); },
          [&](const RationalFixture& c) {
            const mpq_class q(c.num, c.den);
            const auto int_bits = static_cast<unsigned>(mpz_sizeinbase(c.num.get_mpz_t(), 2));
            return finish(BigReal::from_rational(q, precision_bits + int_bits + 8), precision_bits);
          },
      },
      id);
}

}  // namespace exponent_lab
