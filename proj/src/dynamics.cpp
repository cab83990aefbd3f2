#include "polysemi/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

#include "polysemi/errors.hpp"

namespace polysemi {

long GridSpec::cell_of(Complex z) const {
  const double fx = (z.real() - lo.real()) / cell_width();
  const double fy = (z.imag() - lo.imag()) / cell_height();
  if (!(fx >= 0 && fy >= 0 && fx <= nx && fy <= ny)) return -1;
  const int ix = std::min(static_cast<int>(fx), nx - 1);
  const int iy = std::min(static_cast<int>(fy), ny - 1);
  return static_cast<long>(iy) * nx + ix;
}

Complex GridSpec::cell_center(int ix, int iy) const {
  return {lo.real() + (ix + 0.5) * cell_width(), lo.imag() + (iy + 0.5) * cell_height()};
}

double GridMeasure::total() const {
  double s = outside;
  for (double m : mass) s += m;
  return s;
}

int thread_count() {
  if (const char* env = std::getenv("POLYSEMI_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * n / workers; i < (w + 1) * n / workers; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Complex evaluate(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

namespace {

Complex evaluate_derivative(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

long degree_of(const std::vector<Complex>& c) {
  long n = static_cast<long>(c.size()) - 1;
  while (n > 0 && c[static_cast<std::size_t>(n)] == Complex(0)) --n;
  if (n < 1) throw PreconditionError("dynamics needs a polynomial of degree >= 1");
  return n;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double escape_radius(const std::vector<Complex>& c) {
  const long n = degree_of(c);
  double s = 0;
  for (long i = 0; i < n; ++i) s += std::abs(c[static_cast<std::size_t>(i)]);
  return 1 + std::max(1.0, s / std::abs(c[static_cast<std::size_t>(n)]));
}

std::vector<Complex> preimages(const std::vector<Complex>& c, Complex w) {
  const long n = degree_of(c);
  const Complex lead = c[static_cast<std::size_t>(n)];
  std::vector<Complex> roots;
  if (n == 1) {
    roots.push_back((w - c[0]) / lead);
  } else {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (long i = 1; i < n; ++i) comp(i, i - 1) = 1;
    for (long i = 0; i < n; ++i) {
      const Complex ci = i == 0 ? c[0] - w : c[static_cast<std::size_t>(i)];
      comp(i, n - 1) = -ci / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw Error("companion eigenvalue solver did not converge");
    for (long i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
  }
  for (auto& z : roots) {
    const Complex d = evaluate_derivative(c, z);
    if (std::abs(d) > 0) z -= (evaluate(c, z) - w) / d;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error("root finding produced a non-finite value");
  }
  return roots;
}

GridSpec default_grid(const std::vector<Complex>& c, int nx, int ny) {
  const double r = escape_radius(c);
  return {Complex(-r, -r), Complex(r, r), nx, ny};
}

PointCloud julia_inverse_iteration(const std::vector<Complex>& c, long n_points, long burn_in, std::uint64_t seed) {
  if (n_points < 1 || burn_in < 0) throw PreconditionError("julia_inverse_iteration: need n_points >= 1, burn_in >= 0");
  if (degree_of(c) < 2) throw PreconditionError("julia_inverse_iteration needs degree >= 2");
  constexpr std::size_t kOrbits = 16;
  const double radius = escape_radius(c);
  std::vector<std::vector<Complex>> parts(kOrbits);
  parallel_for(kOrbits, [&](std::size_t o) {
    std::mt19937_64 rng(splitmix(seed ^ splitmix(o)));
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    const long want = n_points * static_cast<long>(o + 1) / static_cast<long>(kOrbits) -
                      n_points * static_cast<long>(o) / static_cast<long>(kOrbits);
    Complex z(0.3183098861837907 + unit(rng) * 0.1, 0.2718281828459045 + unit(rng) * 0.1);
    int retries = 0;
    auto& out = parts[o];
    for (long step = 0; step < burn_in + want;) {
      std::vector<Complex> roots;
      try {
        roots = preimages(c, z);
      } catch (const Error&) {
        if (++retries > 8) throw;
        z = Complex(unit(rng), unit(rng));
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
      z = roots[pick(rng)];
      if (step >= burn_in) out.push_back(z);
      ++step;
    }
  });
  PointCloud cloud;
  cloud.source = "inverse-iteration";
  cloud.escape_radius = radius;
  for (auto& part : parts) cloud.points.insert(cloud.points.end(), part.begin(), part.end());
  for (const auto& z : cloud.points)
    if (!(std::abs(z) <= radius * (1 + 1e-9))) throw InvariantViolation("backward orbit left the escape disk");
  return cloud;
}

GridMeasure mme_pullback(const std::vector<Complex>& c, int depth, Complex start, const GridSpec& grid, long cap) {
  if (depth < 1) throw PreconditionError("mme_pullback: depth must be >= 1");
  const long n = degree_of(c);
  if (n < 2) throw PreconditionError("mme_pullback needs degree >= 2");
  long total = 1;
  for (int d = 0; d < depth; ++d) {
    if (total > cap / n) throw SizeError("mme_pullback: n^depth exceeds cap " + std::to_string(cap));
    total *= n;
  }
  GridMeasure g;
  g.spec = grid;
  g.mass.assign(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny), 0.0);

  // First-level preimages must be distinct for the start to be generic.
  for (int attempt = 0;; ++attempt) {
    const auto roots = preimages(c, start);
    double sep = INFINITY;
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j) sep = std::min(sep, std::abs(roots[i] - roots[j]));
    if (sep > 1e-6 * std::max(1.0, std::abs(start))) break;
    if (attempt >= 8) throw Error("mme_pullback: no generic start found");
    const Complex old = start;
    start += Complex(0.0731, 0.0413) * static_cast<double>(attempt + 1);
    g.note = "start (" + std::to_string(old.real()) + ", " + std::to_string(old.imag()) + ") is exceptional; used (" +
             std::to_string(start.real()) + ", " + std::to_string(start.imag()) + ")";
  }

  std::vector<Complex> level{start};
  for (int d = 0; d < depth; ++d) {
    std::vector<Complex> next(level.size() * static_cast<std::size_t>(n));
    parallel_for(level.size(), [&](std::size_t i) {
      const auto roots = preimages(c, level[i]);
      std::copy(roots.begin(), roots.end(), next.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(n)));
    });
    level = std::move(next);
  }
  std::vector<long> counts(g.mass.size(), 0);
  long outside = 0;
  for (const auto& z : level) {
    const long cell = grid.cell_of(z);
    if (cell < 0)
      ++outside;
    else
      ++counts[static_cast<std::size_t>(cell)];
  }
  const double inv = 1.0 / static_cast<double>(level.size());
  for (std::size_t i = 0; i < counts.size(); ++i) g.mass[i] = static_cast<double>(counts[i]) * inv;
  g.outside = static_cast<double>(outside) * inv;
  return g;
}

namespace {

// max over a in `from` of the distance to the nearest point of `to`.
double directed_distance(const std::vector<Complex>& from, const std::vector<Complex>& to, Complex lo, double h,
                         int cells) {
  std::vector<std::vector<std::size_t>> bins(static_cast<std::size_t>(cells) * static_cast<std::size_t>(cells));
  auto cell = [&](Complex z) {
    const int ix = std::clamp(static_cast<int>((z.real() - lo.real()) / h), 0, cells - 1);
    const int iy = std::clamp(static_cast<int>((z.imag() - lo.imag()) / h), 0, cells - 1);
    return std::make_pair(ix, iy);
  };
  for (std::size_t i = 0; i < to.size(); ++i) {
    const auto [ix, iy] = cell(to[i]);
    bins[static_cast<std::size_t>(iy) * cells + ix].push_back(i);
  }
  double worst = 0;
  for (const auto& a : from) {
    const auto [ax, ay] = cell(a);
    double best = INFINITY;
    for (int r = 0; r < cells; ++r) {
      if (best <= (r - 1) * h) break;
      for (int iy = ay - r; iy <= ay + r; ++iy) {
        if (iy < 0 || iy >= cells) continue;
        const bool edge_row = iy == ay - r || iy == ay + r;
        for (int ix = ax - r; ix <= ax + r; ix += (edge_row || r == 0) ? 1 : 2 * r) {
          if (ix < 0 || ix >= cells) continue;
          for (std::size_t j : bins[static_cast<std::size_t>(iy) * cells + ix]) best = std::min(best, std::abs(a - to[j]));
        }
      }
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double julia_distance(const PointCloud& a, const PointCloud& b) {
  if (a.points.empty() || b.points.empty()) throw PreconditionError("julia_distance: empty point cloud");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto* cloud : {&a, &b}) {
    for (const auto& z : cloud->points) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
  }
  const double extent = std::max(x1 - x0, y1 - y0);
  if (!(extent > 0)) return 0.0;
  constexpr int kCells = 256;
  const double h = extent / kCells;
  const Complex lo(x0, y0);
  const double d = std::max(directed_distance(a.points, b.points, lo, h, kCells + 1),
                            directed_distance(b.points, a.points, lo, h, kCells + 1));
  return std::max(0.0, d - h);
}

double check_pullback_invariance(const std::vector<Complex>& c, const PointCloud& cloud) {
  PointCloud pre;
  pre.source = "preimage";
  pre.escape_radius = cloud.escape_radius;
  const long n = degree_of(c);
  pre.points.resize(cloud.points.size() * static_cast<std::size_t>(n));
  parallel_for(cloud.points.size(), [&](std::size_t i) {
    const auto roots = preimages(c, cloud.points[i]);
    std::copy(roots.begin(), roots.end(), pre.points.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(n)));
  });
  return julia_distance(pre, cloud);
}

GridMeasure rasterize(const PointCloud& cloud, const GridSpec& grid) {
  if (cloud.points.empty()) throw PreconditionError("rasterize: empty point cloud");
  GridMeasure g;
  g.spec = grid;
  g.mass.assign(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny), 0.0);
  const double w = 1.0 / static_cast<double>(cloud.points.size());
  for (const auto& z : cloud.points) {
    const long cell = grid.cell_of(z);
    if (cell < 0)
      g.outside += w;
    else
      g.mass[static_cast<std::size_t>(cell)] += w;
  }
  return g;
}

double total_variation(const GridMeasure& a, const GridMeasure& b) {
  if (a.mass.size() != b.mass.size() || a.spec.nx != b.spec.nx || a.spec.ny != b.spec.ny || a.spec.lo != b.spec.lo ||
      a.spec.hi != b.spec.hi)
    throw PreconditionError("total_variation: grids differ");
  double s = std::abs(a.outside - b.outside);
  for (std::size_t i = 0; i < a.mass.size(); ++i) s += std::abs(a.mass[i] - b.mass[i]);
  return 0.5 * s;
}

void write_pgm(const GridMeasure& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path);
  out << "P5\n" << g.spec.nx << " " << g.spec.ny << "\n65535\n";
  const double top = *std::max_element(g.mass.begin(), g.mass.end());
  for (int iy = g.spec.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < g.spec.nx; ++ix) {
      const double m = g.at(ix, iy);
      const auto v = static_cast<unsigned>(top > 0 ? std::lround(65535.0 * m / top) : 0);
      out.put(static_cast<char>(v >> 8));
      out.put(static_cast<char>(v & 0xff));
    }
  }
  if (!out) throw Error("write failed: " + path);
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out.precision(17);
  out << "re,im\n";
  for (const auto& z : cloud.points) out << z.real() << "," << z.imag() << "\n";
}

void write_grid_csv(const GridMeasure& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out.precision(17);
  out << "ix,iy,re,im,mass\n";
  for (int iy = 0; iy < g.spec.ny; ++iy) {
    for (int ix = 0; ix < g.spec.nx; ++ix) {
      if (g.at(ix, iy) == 0) continue;
      const Complex c = g.spec.cell_center(ix, iy);
      out << ix << "," << iy << "," << c.real() << "," << c.imag() << "," << g.at(ix, iy) << "\n";
    }
  }
}

}  // namespace polysemi
