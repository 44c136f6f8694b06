#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "exponent_lab/big_real.hpp"

namespace exponent_lab {

inline constexpr unsigned long kMaxKernelTerms = 100000;

// D_x(z) = sin((2x+1)z) / sin z. Any real x is accepted.
// Throws NearSingularity when |sin z| < 2^(-bits/2).
BigReal dirichlet_closed(const BigReal& x, const BigReal& z, unsigned bits);

// D_x(z) = sum_{n=-x..x} e^{2inz} = 1 + 2 sum_{n=1..x} cos(2nz).
BigReal dirichlet_sum(unsigned long x, const BigReal& z, unsigned bits);

// F_x(z) = sum_{n=0..x} sum_{k=-n..n} e^{2ikz}, summed term by term.
BigReal fejer_sum(unsigned long x, const BigReal& z, unsigned bits);

// sin^2((x+1)z) / sin^2 z, which is what the double sum above equals.
BigReal fejer_closed(const BigReal& x, const BigReal& z, unsigned bits);

// The same quotient with a leading 1/2, kept for comparison. It differs
// from fejer_sum by a factor of two.
BigReal fejer_closed_half(const BigReal& x, const BigReal& z, unsigned bits);

enum class KernelType { Dirichlet, Fejer };

std::string_view to_string(KernelType type);

struct KernelSample {
  KernelType type = KernelType::Dirichlet;
  unsigned long x = 0;
  BigReal z;
  BigReal closed;
  std::optional<BigReal> summed;
  std::optional<BigReal> closed_half;  // Fejer only, when requested

  // |closed - summed| of the stored values.
  Mpfr deviation() const;
  // closed.err + summed.err.
  Mpfr combined_err() const;
  // deviation <= factor * combined_err.
  bool agrees(double factor = 10.0) const;
};

KernelSample sample_kernel(KernelType type, unsigned long x, const BigReal& z, unsigned bits,
                           bool with_half = false);

// `count` points strictly inside (lo, hi), evenly spaced.
std::vector<BigReal> uniform_grid(double lo, double hi, std::size_t count);

struct GrowthRow {
  unsigned long x = 0;
  BigReal dirichlet_peak;  // max |D_x| over the grid
  BigReal fejer_peak;      // max |F_x| over the grid
  bool dirichlet_holds = false;  // peak <= 2x + 1
  bool fejer_holds = false;      // peak <= (x + 1)^2
};

struct GrowthReport {
  std::vector<GrowthRow> rows;  // x = 0..x_max
  std::size_t grid_points = 0;

  bool holds() const;
};

// Checks |D_x| <= 2x+1 and |F_x| <= (x+1)^2 over the grid for x = 0..x_max.
GrowthReport kernel_growth_scan(unsigned long x_max, const std::vector<BigReal>& z_grid, unsigned bits = 128);

}  // namespace exponent_lab
