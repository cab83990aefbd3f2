#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <vector>

#include "polysemi/dynamics.hpp"

namespace oracle {

// Arc-length measure of the circle |z - c| = r binned onto the grid by
// midpoint sampling of `samples` equal arcs.
inline polysemi::GridMeasure uniform_circle(const polysemi::GridSpec& grid, std::complex<double> c, double r,
                                            long samples = 1L << 22) {
  polysemi::GridMeasure g;
  g.spec = grid;
  g.mass.assign(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny), 0.0);
  const double w = 1.0 / static_cast<double>(samples);
  for (long k = 0; k < samples; ++k) {
    const double t = 2 * M_PI * (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
    const long cell = grid.cell_of(c + std::polar(r, t));
    if (cell < 0)
      g.outside += w;
    else
      g.mass[static_cast<std::size_t>(cell)] += w;
  }
  return g;
}

// Brute-force symmetric Hausdorff distance.
inline double hausdorff(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  auto directed = [](const auto& x, const auto& y) {
    double worst = 0;
    for (const auto& p : x) {
      double best = INFINITY;
      for (const auto& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace oracle
