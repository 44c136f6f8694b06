#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include "exponent_lab/big_real.hpp"

namespace exponent_lab {

struct Pi {};
struct PiPow {
  unsigned k = 1;
};
struct Zeta3 {};
struct Champernowne {
  unsigned base = 10;
};
struct Liouville {
  unsigned base = 10;
};
struct RationalFixture {
  mpz_class num;
  mpz_class den;
};

using ConstantId = std::variant<Pi, PiPow, Zeta3, Champernowne, Liouville, RationalFixture>;

inline constexpr unsigned kMaxPiPower = 64;

// Throws DomainError for k == 0, base < 2, zero denominators; throws
// std::out_of_range for k > kMaxPiPower.
void validate(const ConstantId& id);

bool is_rational(const ConstantId& id);

// Reduced p/q with q > 0.
RationalFixture make_rational(const mpz_class& num, const mpz_class& den);

// Canonical spelling: "pi", "pi^2", "zeta3", "champernowne10", "liouville10", "p/q".
std::string to_string(const ConstantId& id);

// Accepts the canonical spellings plus "pi^1", "zeta(3)", "champernowne"
// (base 10), "champernowne:B", "liouville:B" and bare integers.
ConstantId parse_constant(std::string_view text);

/// Generates `id` with err_abs <= 2^(8 - precision_bits).
///
/// The returned mantissa carries precision_bits plus however many bits the
/// integer part needs, so the bound is absolute even for pi^k with large k.
/// pi comes from Machin's arctangent identity in fixed-point integer
/// arithmetic, zeta(3) from the alternating central-binomial series, and the
/// Champernowne and Liouville numbers from their digit expansions.
BigReal gen_constant(const ConstantId& id, unsigned precision_bits);

// The raw generators behind gen_constant, exposed for benchmarks.
BigReal pi_machin(unsigned precision_bits);
BigReal zeta3_central_binomial(unsigned precision_bits);

// An expression that can be re-evaluated at any working precision.
using Expression = std::function<BigReal(unsigned precision_bits)>;

struct StabilizeOptions {
  unsigned max_doublings = 20;
  unsigned start_bits = 0;  // 0: derived from target_digits
};

/// Evaluates `expr` at doubling precisions until two successive values agree
/// to `target_digits` digits (|a - b| <= 10^-d * min(1, |b|)) and the
/// certified error of the latest value is within the same tolerance.
/// Throws NonConvergence after `max_doublings` doublings.
BigReal stabilize(const Expression& expr, unsigned target_digits,
                  const StabilizeOptions& options = {});

}  // namespace exponent_lab
