#include <gtest/gtest.h>

#include <random>

#include "locuslab/band_symbol.hpp"
#include "locuslab/cheb_family.hpp"
#include "locuslab/locus_solver.hpp"

using namespace locuslab;

namespace {

BandSymbol tridiagonal() { return BandSymbol(1, 1, 0, {1.0, 0.0, 1.0}); }

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

BandSymbol random_band(std::mt19937_64& rng, int k, int h, int n) {
  std::vector<Complex> c(static_cast<std::size_t>(k + h + 1));
  for (auto& z : c) z = random_complex(rng);
  return BandSymbol(k, h, n, c);
}

void expect_coeffs(const UniPoly& p, const std::vector<Complex>& want) {
  ASSERT_EQ(p.coeffs().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(std::abs(p.coeffs()[i] - want[i]), 0.0, 1e-15) << i;
}

}  // namespace

TEST(BandSymbol, RejectsLooseBands) {
  EXPECT_THROW(BandSymbol(1, 1, 0, {0.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(BandSymbol(1, 1, 0, {1.0, 1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(BandSymbol(1, 1, 1, {1.0, 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(BandSymbol(0, 1, 0, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(BandSymbol(1, 2, 0, {1.0, 1.0}), std::invalid_argument);
}

TEST(Normalize, ScalesAndShifts) {
  const BandSymbol s(1, 1, 0, {1.0, 5.0, 2.0});
  const auto ns = normalize(s);
  EXPECT_EQ(ns.symbol.c(-1), Complex(0.5));
  EXPECT_EQ(ns.symbol.c(0), Complex(0.0));
  EXPECT_EQ(ns.symbol.c(1), Complex(1.0));
  const Point back = ns.map.apply({Complex(1.0, 1.0)});
  EXPECT_EQ(back[0], Complex(7.0, 2.0));
  EXPECT_EQ(ns.map.invert(back)[0], Complex(1.0, 1.0));
}

TEST(Normalize, LociMapBackToOriginal) {
  const BandSymbol s(1, 1, 0, {1.0, 5.0, 2.0});
  const auto ns = normalize(s);
  const auto orig = solve_n0(s, 3);
  const auto norm = solve_n0(ns.symbol, 3);
  ASSERT_EQ(orig.points.size(), norm.points.size());
  for (const auto& p : norm.points) {
    const Point mapped = ns.map.apply(p.coords);
    double best = 1e9;
    for (const auto& q : orig.points) best = std::min(best, point_distance(mapped, q.coords));
    EXPECT_LE(best, 1e-8);
  }
}

TEST(Normalize, IdentityOnNormalizedBands) {
  for (const BandSymbol& s : {chebyshev_symbol(1), BandSymbol(1, 2, 1, {1.0, 0.0, 0.0, 1.0})}) {
    const auto ns = normalize(s);
    EXPECT_EQ(ns.map.scale, Complex(1.0));
    for (const auto& v : ns.map.shift) EXPECT_EQ(v, Complex(0.0));
    EXPECT_EQ(ns.symbol.coeffs(), s.coeffs());
  }
}

TEST(Normalize, RoundTripOnRandomN1Loci) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    const BandSymbol s = random_band(rng, 1 + trial % 2, 2, 1);
    const auto ns = normalize(s);
    const int m = 3 + trial;
    const auto orig = solve_locus(s, m).full;
    const auto norm = solve_locus(ns.symbol, m).full;
    ASSERT_EQ(orig.points.size(), norm.points.size());
    for (const auto& p : norm.points) {
      const Point mapped = ns.map.apply(p.coords);
      double best = 1e9;
      for (const auto& q : orig.points) best = std::min(best, point_distance(mapped, q.coords) / (1.0 + max_abs(mapped)));
      EXPECT_LE(best, 1e-8);
    }
  }
}

TEST(QPoly, Examples) {
  expect_coeffs(q_poly(chebyshev_symbol(1), {0.0, 0.0}), {1.0, 0.0, 0.0, 1.0});
  expect_coeffs(q_poly(tridiagonal(), {3.0}), {1.0, -3.0, 1.0});
  const Complex x0(0.5, 1.0), x1(-2.0, 0.25);
  expect_coeffs(q_poly(star_symbol(1), {x0, x1}), {1.0, -x0, -x1, 1.0});
  const auto q2 = q_poly(star_symbol(2), {x0, x1});
  expect_coeffs(q2, {1.0, 0.0, -x0, -x1, 0.0, 1.0});
  EXPECT_THROW(q_poly(tridiagonal(), {0.0, 0.0}), std::invalid_argument);
}

TEST(AlphaRoots, Examples) {
  const auto a = alpha_roots(tridiagonal(), {3.0});
  EXPECT_NEAR(std::abs(a.roots[0]), 0.381966, 1e-6);
  EXPECT_NEAR(std::abs(a.roots[1]), 2.618034, 1e-6);
  const auto b = alpha_roots(tridiagonal(), {0.0});
  EXPECT_NEAR(std::abs(b.roots[0]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(b.roots[1]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(b.roots[0] * b.roots[1] - 1.0), 0.0, 1e-12);
  const auto c = alpha_roots(chebyshev_symbol(1), {0.0, 0.0});
  for (const auto& r : c.roots) {
    EXPECT_NEAR(std::abs(r), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(1.0 + r * r * r), 0.0, 1e-12);
  }
}

TEST(AlphaRoots, SortedGapsAndVieta) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const BandSymbol s = random_band(rng, 1 + trial % 3, 2 + trial % 2, trial % 2);
    Point x(static_cast<std::size_t>(s.dimension()));
    for (auto& z : x) z = random_complex(rng);
    const auto a = alpha_roots(s, x);
    ASSERT_EQ(static_cast<int>(a.roots.size()), s.h() + s.k());
    for (double g : a.gaps) EXPECT_GE(g, 0.0);
    const UniPoly q = q_poly(s, x);
    Complex prod{1.0, 0.0}, sum{};
    for (const auto& r : a.roots) {
      prod *= r;
      sum += r;
    }
    const int d = q.degree();
    const Complex want_prod = (d % 2 == 0 ? 1.0 : -1.0) * q.coeffs()[0] / q.leading();
    const Complex want_sum = -q.coeffs()[static_cast<std::size_t>(d - 1)] / q.leading();
    EXPECT_NEAR(std::abs(prod - want_prod), 0.0, 1e-8 * (1.0 + std::abs(want_prod)));
    EXPECT_NEAR(std::abs(sum - want_sum), 0.0, 1e-8 * (1.0 + std::abs(want_sum)));
  }
}

TEST(CResidual, Examples) {
  EXPECT_NEAR(c_residual(tridiagonal(), {0.0}), 0.0, 1e-12);
  const double r3 = c_residual(tridiagonal(), {3.0});
  EXPECT_NEAR(r3, (2.618034 - 0.381966) / 3.618034, 1e-5);
  EXPECT_NEAR(r3, 0.618, 1e-3);
  EXPECT_FALSE(in_c(tridiagonal(), {3.0}));
  EXPECT_NEAR(c_residual(chebyshev_symbol(1), {0.0, 0.0}), 0.0, 1e-12);
  EXPECT_TRUE(in_c(chebyshev_symbol(1), {0.0, 0.0}));
}

TEST(CResidual, TridiagonalSegmentClosedForm) {
  for (double t = 0.1; t < 3.1; t += 0.25) EXPECT_TRUE(in_c(tridiagonal(), {2.0 * std::cos(t)}));
  EXPECT_FALSE(in_c(tridiagonal(), {Complex(0.0, 0.1)}));
  EXPECT_FALSE(in_c(tridiagonal(), {2.1}));
}

TEST(CResidual, MultihermitianReflectionInvertsRoots) {
  const BandSymbol s(1, 2, 1, {Complex(0.3, 0.7), Complex(0.0), Complex(0.0), Complex(0.3, -0.7)});
  ASSERT_TRUE(is_multihermitian(s));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const Complex z = random_complex(rng);
    const Complex w = random_complex(rng);
    const auto a = alpha_roots(s, {z, w}).roots;
    const auto b = alpha_roots(s, {std::conj(w), std::conj(z)}).roots;
    ASSERT_EQ(a.size(), b.size());
    for (const auto& r : a) {
      const Complex image = 1.0 / std::conj(r);
      double best = 1e300;
      for (const auto& q : b) best = std::min(best, std::abs(q - image));
      EXPECT_LE(best, 1e-9 * (1.0 + std::abs(image)));
    }
  }
  for (double th = 0.1; th < 6.0; th += 0.7) {
    const Point x = cheb_point({th, 2.0 * th});
    EXPECT_TRUE(in_c(chebyshev_symbol(1), x));
    EXPECT_TRUE(in_c(chebyshev_symbol(1), {std::conj(x[1]), std::conj(x[0])}));
  }
}

TEST(ClassifyBoundary, Examples) {
  const auto dbl = classify_boundary(tridiagonal(), {2.0});
  EXPECT_TRUE(dbl.double_root);
  const auto in = classify_boundary(tridiagonal(), {0.0});
  EXPECT_TRUE(in.interior());
  EXPECT_THROW(classify_boundary(tridiagonal(), {3.0}), std::domain_error);
}

TEST(ClassifyBoundary, StarCuspHasDoubleRoot) {
  const BandSymbol star = star_symbol(2);
  double best_theta = 0.0, best = 1e9;
  for (int s = 0; s < 4000; ++s) {
    const double th = kTwoPi * s / 4000.0;
    const Complex x0 = star_boundary(2, th);
    const double d = normalized_discriminant(q_poly(star, {x0, std::conj(x0)}));
    if (d < best) {
      best = d;
      best_theta = th;
    }
  }
  const Complex x0 = star_boundary(2, best_theta);
  const auto flags = classify_boundary(star, {x0, std::conj(x0)});
  EXPECT_TRUE(flags.double_root);
  const auto generic = classify_boundary(star, {0.3, 0.3});
  EXPECT_FALSE(generic.double_root);
}

TEST(Multihermitian, Examples) {
  EXPECT_TRUE(is_multihermitian(chebyshev_symbol(1)));
  EXPECT_TRUE(is_multihermitian(chebyshev_symbol(3)));
  EXPECT_TRUE(is_multihermitian(star_symbol(2)));
  EXPECT_TRUE(is_multihermitian(star_symbol(4)));
  EXPECT_FALSE(is_multihermitian(BandSymbol(1, 2, 1, {1.0, 0.0, 0.0, 2.0})));
  EXPECT_TRUE(is_multihermitian(tridiagonal()));
}

TEST(CauchyBox, ContainsSolvedLoci) {
  const BandSymbol s = star_symbol(2);
  const double box = cauchy_box(s);
  for (const auto& p : solve_locus(s, 6).full.points) EXPECT_LE(max_abs(p.coords), box);
}

TEST(RegionScan, TridiagonalSegment) {
  ScanGrid g;
  g.nx = g.ny = 121;
  const auto scan = c_region_scan(tridiagonal(), g);
  EXPECT_TRUE(scan.found_region);
  EXPECT_TRUE(scan.within_cauchy_box);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Complex z(g.re_at(i), g.im_at(j));
      if (scan.at(i, j) <= 1e-6) {
        EXPECT_NEAR(z.imag(), 0.0, 1e-12);
        EXPECT_LE(std::abs(z.real()), 2.0 + 1e-12);
      }
      if (std::abs(z.imag()) < 1e-12 && std::abs(z.real()) < 2.0) EXPECT_LE(scan.at(i, j), 1e-6);
    }
}

TEST(RegionScan, StarInsideHypocycloid) {
  ScanGrid g{-6.0, 6.0, -6.0, 6.0, 121, 121};
  const auto scan = c_region_scan(star_symbol(2), g);
  EXPECT_TRUE(scan.found_region);
  EXPECT_TRUE(scan.within_cauchy_box);
  const auto curve = star_boundary_curve(2);
  const double step = 0.1;
  int inside = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Complex z(g.re_at(i), g.im_at(j));
      if (scan.at(i, j) <= 1e-6) {
        ++inside;
        EXPECT_TRUE(inside_curve(curve, z, step)) << z;
      } else {
        EXPECT_TRUE(!inside_curve(curve, z, 0.0) || distance_to_curve(curve, z) <= 2 * step) << z;
      }
    }
  EXPECT_GT(inside, 100);
  EXPECT_FALSE(scan.boundary.empty());
}

TEST(RegionScan, ChebyshevDeltoid) {
  ScanGrid g{-4.0, 4.0, -4.0, 4.0, 81, 81};
  const auto scan = c_region_scan(chebyshev_symbol(1), g);
  std::vector<Complex> deltoid;
  for (int s = 0; s < 2048; ++s) {
    const double th = kTwoPi * s / 2048;
    deltoid.push_back(cheb_point({th, th})[0]);
  }
  EXPECT_EQ(count_cusps(deltoid), 3);
  int inside = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Complex z(g.re_at(i), g.im_at(j));
      if (scan.at(i, j) <= 1e-6) {
        ++inside;
        EXPECT_TRUE(inside_curve(deltoid, z, 0.1)) << z;
      }
    }
  EXPECT_GT(inside, 50);
}

TEST(RegionScan, RejectsNonMultihermitianSlice) {
  EXPECT_THROW(c_region_scan(BandSymbol(1, 2, 1, {1.0, 0.0, 0.0, 2.0}), ScanGrid{}), std::invalid_argument);
}
