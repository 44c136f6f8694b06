#include <gtest/gtest.h>

#include <stdexcept>

#include "exponent_lab/constants.hpp"
#include "exponent_lab/errors.hpp"
#include "support.hpp"

using namespace exponent_lab;
using oracle::Real;

namespace {

bool within_budget(const BigReal& x, unsigned bits) {
  const auto e = x.err_log2();
  return !e || *e <= 8 - static_cast<long>(bits);
}

}  // namespace

TEST(Constants, PiMatchesAgm) {
  for (unsigned bits : {64u, 200u, 1000u, 4000u}) {
    const unsigned digits = bits / 3 + 30;
    const BigReal pi = gen_constant(Pi{}, bits);
    EXPECT_TRUE(within_budget(pi, bits)) << bits;
    EXPECT_TRUE(support::encloses(pi, oracle::agm_pi(digits), support::ten_to(-static_cast<int>(digits) + 5, digits),
                                  digits))
        << bits;
  }
}

TEST(Constants, PiPowersMatchAgm) {
  const unsigned digits = 150;
  oracle::DigitsScope scope(digits);
  const Real pi = oracle::agm_pi(digits);
  for (unsigned k : {1u, 2u, 3u, 7u, 20u, 64u}) {
    const BigReal v = gen_constant(PiPow{k}, 256);
    EXPECT_TRUE(within_budget(v, 256)) << k;
    EXPECT_TRUE(support::encloses(v, boost::multiprecision::pow(pi, k), support::ten_to(-120, digits), digits)) << k;
  }
}

TEST(Constants, Zeta3MatchesAmdeberhan) {
  for (unsigned bits : {64u, 333u, 2000u}) {
    const unsigned digits = bits / 3 + 30;
    const BigReal z = gen_constant(Zeta3{}, bits);
    EXPECT_TRUE(within_budget(z, bits)) << bits;
    EXPECT_TRUE(support::encloses(z, oracle::zeta3_amdeberhan(digits),
                                  support::ten_to(-static_cast<int>(digits) + 5, digits), digits))
        << bits;
  }
  EXPECT_EQ(gen_constant(Zeta3{}, 128).to_fixed(24).substr(0, 20), "1.202056903159594285");
}

TEST(Constants, DigitExpansionsMatchStrings) {
  const unsigned digits = 400;
  const struct {
    ConstantId id;
    std::string text;
    unsigned base;
  } cases[] = {
      {Champernowne{10}, oracle::champernowne_digits(10, 600), 10},
      {Champernowne{2}, oracle::champernowne_digits(2, 1800), 2},
      {Champernowne{7}, oracle::champernowne_digits(7, 800), 7},
      {Liouville{10}, oracle::liouville_digits(800), 10},
  };
  for (const auto& c : cases) {
    const BigReal v = gen_constant(c.id, 1024);
    EXPECT_TRUE(within_budget(v, 1024)) << to_string(c.id);
    const Real ref = oracle::to_real(oracle::digits_as_rational(c.text, c.base), digits);
    EXPECT_TRUE(support::encloses(v, ref, support::ten_to(-290, digits), digits)) << to_string(c.id);
  }
}

TEST(Constants, RationalFixtureIsExactToBudget) {
  const BigReal v = gen_constant(make_rational(10, 7), 200);
  EXPECT_LE(v.lower_rational(), mpq_class(10, 7));
  EXPECT_GE(v.upper_rational(), mpq_class(10, 7));
  EXPECT_TRUE(within_budget(v, 200));
}

TEST(Constants, ValidationErrors) {
  EXPECT_THROW(validate(PiPow{0}), DomainError);
  EXPECT_THROW(validate(PiPow{65}), std::out_of_range);
  EXPECT_NO_THROW(validate(PiPow{64}));
  EXPECT_THROW(validate(Champernowne{1}), DomainError);
  EXPECT_THROW(validate(Liouville{0}), DomainError);
  EXPECT_THROW(validate(RationalFixture{1, 0}), DomainError);
  EXPECT_THROW(gen_constant(Pi{}, 32), UnsupportedPrecision);
}

TEST(Constants, ParseAndPrintRoundTrip) {
  for (const char* text : {"pi", "pi^2", "pi^3", "pi^64", "zeta3", "champernowne10", "champernowne3", "liouville10",
                           "10/7", "-3/5", "4/1"}) {
    EXPECT_EQ(to_string(parse_constant(text)), text) << text;
  }
  EXPECT_EQ(to_string(parse_constant("pi^1")), "pi");
  EXPECT_EQ(to_string(parse_constant("zeta(3)")), "zeta3");
  EXPECT_EQ(to_string(parse_constant("champernowne")), "champernowne10");
  EXPECT_EQ(to_string(parse_constant("champernowne:2")), "champernowne2");
  EXPECT_EQ(to_string(parse_constant("liouville:3")), "liouville3");
  EXPECT_EQ(to_string(parse_constant("20/14")), "10/7");
  EXPECT_TRUE(is_rational(parse_constant("20/14")));
  EXPECT_FALSE(is_rational(parse_constant("pi^2")));
  EXPECT_THROW(parse_constant("e"), DomainError);
  EXPECT_THROW(parse_constant("pi^0"), DomainError);
  EXPECT_THROW(parse_constant("1/0"), DomainError);
}

TEST(Stabilize, ConvergesOnPiSquared) {
  const BigReal v = stabilize([](unsigned bits) { return sqr(gen_constant(Pi{}, bits)); }, 50);
  const unsigned digits = 80;
  oracle::DigitsScope scope(digits);
  const Real pi = oracle::agm_pi(digits);
  EXPECT_TRUE(support::encloses(v, pi * pi, support::ten_to(-49, digits), digits));
}

TEST(Stabilize, RetriesAfterPrecisionError) {
  int calls = 0;
  const BigReal v = stabilize(
      [&calls](unsigned bits) {
        ++calls;
        if (bits < 1000) throw PrecisionError("too coarse");
        return gen_constant(Zeta3{}, bits);
      },
      30);
  EXPECT_GT(calls, 2);
  EXPECT_EQ(v.to_fixed(10), "1.2020569032");
}

TEST(Stabilize, NonConvergenceIsReported) {
  // Alternates between two values, so successive evaluations never agree.
  long calls = 0;
  const Expression flip = [&calls](unsigned) { return BigReal::exact(calls++ % 2); };
  EXPECT_THROW(stabilize(flip, 20, {.max_doublings = 6}), NonConvergence);
  EXPECT_THROW(stabilize(flip, 0), DomainError);
}

TEST(Stabilize, Examples) {
  const BigReal pi2 = stabilize([](unsigned bits) { return gen_constant(PiPow{2}, bits); }, 30);
  EXPECT_EQ(pi2.to_fixed(30), "9.869604401089358618834490999876");

  const BigReal zero = stabilize(
      [](unsigned bits) {
        const BigReal r = gen_constant(make_rational(227, 23), bits);
        return r - r;
      },
      10);
  EXPECT_LE(zero.err_double(), 1e-10);
  EXPECT_LE(std::abs(zero.to_double()), 1e-10);

  // sin(pi 10^6 + 10^-20): the large multiple of pi has to cancel exactly.
  const BigReal tiny = stabilize(
      [](unsigned bits) {
        const BigReal arg = gen_constant(Pi{}, bits) * mpz_class(1000000) + BigReal::parse("1e-20", bits);
        return sin(arg);
      },
      10);
  EXPECT_NEAR(tiny.to_double() / 1e-20, 1.0, 1e-9);
}
