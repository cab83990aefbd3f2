#include <cstdlib>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polysemi/dynamics.hpp"

using namespace polysemi;

namespace {

using C = std::vector<Complex>;

const C kSquare{0, 0, 1};
const C kCheb{-2, 0, 1};

double max_circle_error(const PointCloud& p) {
  double e = 0;
  for (const auto& z : p.points) e = std::max(e, std::abs(std::abs(z) - 1.0));
  return e;
}

PointCloud segment_cloud(long n) {
  PointCloud p;
  for (long k = 0; k < n; ++k) p.points.emplace_back(-2.0 + 4.0 * static_cast<double>(k) / static_cast<double>(n - 1), 0);
  return p;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("preimages") {
    auto r = preimages(kSquare, Complex(4, 0));
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(r[0] + 2.0) < 1e-14);
    CHECK(std::abs(r[1] - 2.0) < 1e-14);
    const C cubic{Complex(1, 2), -3, 0, Complex(0.5, 0.25)};
    for (const auto& z : preimages(cubic, Complex(0.3, -0.7))) CHECK(std::abs(evaluate(cubic, z) - Complex(0.3, -0.7)) < 1e-12);
    CHECK(escape_radius(kCheb) == doctest::Approx(3.0));
    CHECK(escape_radius(kSquare) == doctest::Approx(2.0));
  }

  TEST_CASE("julia sets by inverse iteration") {
    const auto circle = julia_inverse_iteration(kSquare, 10000, 50, 1);
    CHECK(circle.points.size() == 10000);
    CHECK(max_circle_error(circle) < 1e-6);

    const auto seg = julia_inverse_iteration(kCheb, 10000, 50, 1);
    for (const auto& z : seg.points) {
      CHECK(std::abs(z.imag()) < 1e-6);
      CHECK(std::abs(z.real()) <= 2 + 1e-9);
    }

    const auto again = julia_inverse_iteration(kSquare, 10000, 50, 1);
    CHECK(again.points == circle.points);
    CHECK(julia_inverse_iteration(kSquare, 100, 50, 2).points != julia_inverse_iteration(kSquare, 100, 50, 1).points);
  }

  TEST_CASE("results do not depend on the thread count") {
    ::setenv("POLYSEMI_THREADS", "1", 1);
    const auto one = julia_inverse_iteration(C{Complex(-0.12, 0.74), 0, 1}, 3000, 40, 9);
    const auto m1 = mme_pullback(kCheb, 8, Complex(0.1, 0.2), default_grid(kCheb));
    ::setenv("POLYSEMI_THREADS", "3", 1);
    const auto three = julia_inverse_iteration(C{Complex(-0.12, 0.74), 0, 1}, 3000, 40, 9);
    const auto m3 = mme_pullback(kCheb, 8, Complex(0.1, 0.2), default_grid(kCheb));
    ::unsetenv("POLYSEMI_THREADS");
    CHECK(one.points == three.points);
    CHECK(m1.mass == m3.mass);
  }

  TEST_CASE("measure of maximal entropy") {
    const GridSpec grid{Complex(-1.5, -1.5), Complex(1.5, 1.5), 256, 256};
    for (int depth = 1; depth <= 12; ++depth) {
      const auto g = mme_pullback(kSquare, depth, Complex(0.3, 0.2), grid);
      CHECK(std::abs(g.total() - 1.0) < 1e-12);
    }
    const auto g = mme_pullback(kSquare, 12, Complex(0.3, 0.2), grid);
    CHECK(total_variation(g, oracle::uniform_circle(grid, 0, 1)) < 0.05);
    CHECK(mme_pullback(kSquare, 12, Complex(0.3, 0.2), grid).mass == g.mass);

    const GridSpec wide = default_grid(kCheb);
    const auto seg = mme_pullback(kCheb, 12, Complex(0.3, 0.2), wide);
    double off = seg.outside;
    for (int iy = 0; iy < wide.ny; ++iy)
      for (int ix = 0; ix < wide.nx; ++ix) {
        const Complex c = wide.cell_center(ix, iy);
        if (std::abs(c.imag()) > wide.cell_height() || std::abs(c.real()) > 2 + wide.cell_width()) off += seg.at(ix, iy);
      }
    CHECK(off < 1e-3);

    const auto moved = mme_pullback(kSquare, 4, Complex(0, 0), grid);
    CHECK_FALSE(moved.note.empty());
    CHECK(std::abs(moved.total() - 1.0) < 1e-12);
    CHECK_THROWS_AS(mme_pullback(kSquare, 30, Complex(0.3, 0.2), grid), SizeError);
  }

  TEST_CASE("julia distance") {
    const auto a = julia_inverse_iteration(kSquare, 10000, 50, 1);
    const auto b = julia_inverse_iteration(kSquare, 10000, 50, 77);
    CHECK(julia_distance(a, a) == 0.0);
    CHECK(julia_distance(a, b) < 0.02);
    CHECK(julia_distance(a, segment_cloud(2000)) > 0.5);

    // Exact nearest neighbours: matches brute force minus one cell.
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd(0, 1);
    for (int t = 0; t < 10; ++t) {
      PointCloud x, y;
      for (int i = 0; i < 150; ++i) x.points.emplace_back(nd(rng), nd(rng));
      for (int i = 0; i < 90; ++i) y.points.emplace_back(nd(rng) + 0.5, 2 * nd(rng));
      double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
      for (const auto* c : {&x, &y})
        for (const auto& z : c->points) {
          x0 = std::min(x0, z.real());
          x1 = std::max(x1, z.real());
          y0 = std::min(y0, z.imag());
          y1 = std::max(y1, z.imag());
        }
      const double h = std::max(x1 - x0, y1 - y0) / 256;
      CHECK(julia_distance(x, y) == doctest::Approx(std::max(0.0, oracle::hausdorff(x.points, y.points) - h)).epsilon(1e-12));
    }
  }

  TEST_CASE("pullback invariance") {
    const auto circle = julia_inverse_iteration(kSquare, 10000, 50, 3);
    CHECK(check_pullback_invariance(kSquare, circle) < 1e-6);
    CHECK(check_pullback_invariance(kCheb, segment_cloud(10000)) < 1e-3);
    CHECK(check_pullback_invariance(kSquare, segment_cloud(10000)) > 0.5);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> deg(2, 4);
    for (int t = 0; t < 20; ++t) {
      C p(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : p) x = Complex(u(rng), u(rng));
      p.back() = Complex(1 + std::abs(u(rng)), u(rng));
      // Sampling tolerance: distance between two independent clouds of p.
      const auto j = julia_inverse_iteration(p, 5000, 100, static_cast<std::uint64_t>(t));
      const auto j2 = julia_inverse_iteration(p, 5000, 100, static_cast<std::uint64_t>(t) + 1000);
      const double sampling = julia_distance(j, j2);
      CHECK(check_pullback_invariance(p, j) <= 3 * sampling + 1e-3);
    }
  }

  TEST_CASE("shared julia sets") {
    const auto a = julia_inverse_iteration(kSquare, 10000, 50, 5);
    const auto b = julia_inverse_iteration(C{0, 0, 0, -1}, 10000, 50, 6);
    CHECK(julia_distance(a, b) < 0.02);
    const auto c = julia_inverse_iteration(C{1, 0, 1}, 10000, 50, 5);
    const auto d = julia_inverse_iteration(C{0, 0, 0, 1}, 10000, 50, 6);
    CHECK(julia_distance(c, d) > 0.1);
  }

  TEST_CASE("export") {
    const GridSpec grid{Complex(-2, -2), Complex(2, 2), 64, 32};
    const auto g = rasterize(julia_inverse_iteration(kSquare, 2000, 50, 1), grid);
    CHECK(std::abs(g.total() - 1.0) < 1e-12);
    const std::string pgm = "dynamics_test.pgm";
    write_pgm(g, pgm);
    std::ifstream in(pgm, std::ios::binary);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    in.get();
    CHECK(magic == "P5");
    CHECK(w == 64);
    CHECK(h == 32);
    CHECK(maxval == 65535);
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(data.size() == 64u * 32u * 2u);
    std::remove(pgm.c_str());

    const std::string csv = "dynamics_test.csv";
    write_grid_csv(g, csv);
    std::ifstream cin_(csv);
    std::string header;
    std::getline(cin_, header);
    CHECK(header == "ix,iy,re,im,mass");
    std::remove(csv.c_str());
  }
}
