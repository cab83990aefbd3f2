#pragma once

// Double-precision dynamics diagnostics: Julia sets by backward iteration,
// the measure of maximal entropy by equidistributed preimages, and binned
// Hausdorff distances between point clouds.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polysemi/field.hpp"
#include "polysemi/polynomial.hpp"

namespace polysemi {

using Complex = std::complex<double>;

struct PointCloud {
  std::vector<Complex> points;
  std::string source;  // "inverse-iteration" or "preimage"
  double escape_radius = 0;
};

struct GridSpec {
  Complex lo{-2, -2};
  Complex hi{2, 2};
  int nx = 256;
  int ny = 256;

  double cell_width() const { return (hi.real() - lo.real()) / nx; }
  double cell_height() const { return (hi.imag() - lo.imag()) / ny; }
  // Cell index of z, or -1 outside the rectangle. Row 0 is the bottom row.
  long cell_of(Complex z) const;
  Complex cell_center(int ix, int iy) const;
};

struct GridMeasure {
  GridSpec spec;
  std::vector<double> mass;  // row-major, ny rows of nx cells
  double outside = 0;        // mass that fell outside the rectangle
  std::string note;

  double total() const;
  double at(int ix, int iy) const { return mass[static_cast<std::size_t>(iy) * spec.nx + ix]; }
};

template <ScalarField S>
std::vector<Complex> to_complex_coeffs(const Polynomial<S>& p) {
  std::vector<Complex> c;
  for (const auto& x : p.coeffs()) c.push_back(x.to_cd());
  return c;
}

// Worker count from POLYSEMI_THREADS, else the hardware concurrency.
int thread_count();
// Runs fn(i) for i in [0, n) across thread_count() workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

Complex evaluate(const std::vector<Complex>& c, Complex z);

// 1 + max(1, sum_{i<n} |c_i| / |c_n|)
double escape_radius(const std::vector<Complex>& c);

// Roots of p(z) = w from companion-matrix eigenvalues, each polished by one
// Newton step. Throws Error on non-finite output.
std::vector<Complex> preimages(const std::vector<Complex>& c, Complex w);

// Square [-R, R]^2 around the origin with R the escape radius.
GridSpec default_grid(const std::vector<Complex>& c, int nx = 256, int ny = 256);

// 16 backward orbits with seeds split from `seed`; the result does not
// depend on the thread count.
PointCloud julia_inverse_iteration(const std::vector<Complex>& c, long n_points, long burn_in, std::uint64_t seed);

// Mass 1 / n^depth on each depth-level preimage of start. An exceptional
// start (coinciding first-level preimages) is replaced and noted.
GridMeasure mme_pullback(const std::vector<Complex>& c, int depth, Complex start, const GridSpec& grid,
                         long cap = 2000000);

// Symmetric Hausdorff distance computed with a uniform bin grid of
// (extent / 256) cells; distances below one cell count as 0.
double julia_distance(const PointCloud& a, const PointCloud& b);

// julia_distance between p^{-1}(cloud) and cloud.
double check_pullback_invariance(const std::vector<Complex>& c, const PointCloud& cloud);

// Equal mass on every point of the cloud.
GridMeasure rasterize(const PointCloud& cloud, const GridSpec& grid);

double total_variation(const GridMeasure& a, const GridMeasure& b);

// Binary 16-bit PGM, top row first, linear in mass / max mass.
void write_pgm(const GridMeasure& g, const std::string& path);
void write_cloud_csv(const PointCloud& cloud, const std::string& path);
void write_grid_csv(const GridMeasure& g, const std::string& path);

}  // namespace polysemi
