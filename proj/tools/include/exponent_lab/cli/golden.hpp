#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exponent_lab/big_real.hpp"
#include "exponent_lab/constants.hpp"
#include "exponent_lab/diophantine.hpp"

namespace exponent_lab::cli {

// Published tables, stored as the exact strings that were printed.
struct GoldenMuRow {
  std::size_t n;
  std::string_view p;
  std::string_view q;
  std::string_view mu;  // "" for the blank q = 1 rows
};

struct GoldenHistoryRow {
  std::string_view bound;
  std::string_view reference;
  std::string_view year;
};

std::span<const GoldenMuRow> golden_mu_pi2();
std::span<const GoldenMuRow> golden_mu_pi3();
std::span<const GoldenMuRow> golden_mu_zeta3();
std::span<const std::string_view> golden_cf_pi2();
std::span<const std::string_view> golden_cf_pi3();
std::span<const GoldenHistoryRow> golden_history_pi2();
std::span<const GoldenHistoryRow> golden_history_zeta3();

// Leading decimal digits of zeta(3) as published: "1.202056903159594285399738".
std::string_view golden_zeta3_digits();

struct GoldenMuTable {
  std::string_view id;
  std::span<const GoldenMuRow> rows;
};
struct GoldenCf {
  std::string_view id;
  std::span<const std::string_view> terms;
};

std::optional<GoldenMuTable> golden_mu_for(const ConstantId& id);
std::optional<GoldenCf> golden_cf_for(const ConstantId& id);
std::span<const GoldenHistoryRow> golden_history_for(const ConstantId& id);

struct CellDelta {
  std::size_t row = 0;
  std::string column;
  std::string computed;
  std::string golden;
  std::optional<long> ulps;  // set for mu cells that both parse
};

/// Cell-by-cell comparison of a computed table against a golden one.
/// p and q must match exactly and blank cells must stay blank; a mu cell
/// may be one unit off in the last decimal on at most
/// kAllowedUlpRows rows.
struct GoldenReport {
  std::string table;
  bool numeric = true;  // false for term lists, which must match exactly
  std::size_t rows_compared = 0;
  std::size_t rows_expected = 0;
  std::vector<CellDelta> exact_mismatches;  // p, q, blank/non-blank, missing rows
  std::vector<CellDelta> one_ulp;
  std::vector<CellDelta> beyond_tolerance;

  static constexpr std::size_t kAllowedUlpRows = 2;

  bool passed() const;
  std::vector<std::string> describe() const;
};

GoldenReport compare_mu_table(const GoldenMuTable& golden, const std::vector<MuRecord>& computed, Rounding mode,
                              std::size_t rows_requested);

GoldenReport compare_cf(const GoldenCf& golden, const std::vector<mpz_class>& terms, std::size_t terms_requested);

}  // namespace exponent_lab::cli
