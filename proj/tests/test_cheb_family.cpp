#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>

#include "locuslab/cheb_family.hpp"
#include "locuslab/locus_solver.hpp"

using namespace locuslab;

namespace {

constexpr double kPi = std::numbers::pi;

// Root moduli from the eigenvalues of the companion matrix.
std::vector<double> companion_moduli(const std::vector<Complex>& ascending) {
  const int d = static_cast<int>(ascending.size()) - 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -ascending[i] / ascending[d];
  const Eigen::VectorXcd ev = c.eigenvalues();
  std::vector<double> out;
  for (int i = 0; i < d; ++i) out.push_back(std::abs(ev(i)));
  std::sort(out.begin(), out.end());
  return out;
}

double nearest(const std::vector<LocusPoint>& pts, const Point& x) {
  double best = 1e300;
  for (const auto& p : pts) best = std::min(best, point_distance(p.coords, x));
  return best;
}

}  // namespace

TEST(ChebPoint, Examples) {
  const Point a = cheb_point({2 * kPi / 3, -2 * kPi / 3});
  EXPECT_LE(max_abs(a), 1e-15);
  const Point b = cheb_point({kPi / 2});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_LE(std::abs(b[0]), 1e-15);
  const Point c = cheb_point({0.0, 0.0});
  EXPECT_LE(point_distance(c, {-3.0, -3.0}), 1e-15);
}

TEST(ChebMembership, Examples) {
  EXPECT_TRUE(cheb_membership_check({0.0, 0.0}));
  EXPECT_TRUE(cheb_membership_check({-3.0, -3.0}));
  EXPECT_FALSE(cheb_membership_check({7.0, 7.0}));
}

TEST(ChebMembership, SevenSevenAgainstCompanionMatrix) {
  const UniPoly q = q_poly(chebyshev_symbol(1), {7.0, 7.0});
  ASSERT_EQ(q.degree(), 3);
  const std::vector<Complex> want{1.0, -7.0, -7.0, 1.0};
  for (int i = 0; i <= 3; ++i) EXPECT_NEAR(std::abs(q.coeffs()[i] - want[i]), 0.0, 1e-15);
  const auto mod = companion_moduli(q.coeffs());
  EXPECT_NEAR(mod[0], 4.0 - std::sqrt(15.0), 1e-10);
  EXPECT_NEAR(mod[1], 1.0, 1e-10);
  EXPECT_NEAR(mod[2], 4.0 + std::sqrt(15.0), 1e-10);
  EXPECT_NEAR(cheb_modulus_deviation({7.0, 7.0}), 3.0 + std::sqrt(15.0), 1e-8);
}

TEST(ChebPoint, TorusImageLiesInRegion) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  int failures = 0;
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const int n = 1 + t % 3;
    std::vector<double> th(static_cast<std::size_t>(n + 1));
    for (auto& v : th) v = ang(rng);
    const Point x = cheb_point(th);
    worst = std::max(worst, cheb_modulus_deviation(x));
    failures += !cheb_membership_check(x);
  }
  EXPECT_EQ(failures, 0) << "worst deviation " << worst;
}

TEST(ChebPoint, PermutationSymmetry) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> full{ang(rng), ang(rng), ang(rng)};
    full.push_back(-(full[0] + full[1] + full[2]));
    const Point base = cheb_point({full[0], full[1], full[2]});
    std::sort(full.begin(), full.end());
    do {
      EXPECT_LE(point_distance(cheb_point({full[0], full[1], full[2]}), base), 1e-12);
    } while (std::next_permutation(full.begin(), full.end()));
  }
}

TEST(ChebPoint, ConjugateSymmetry) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int n = 0; n <= 3; ++n) {
    std::vector<double> th(static_cast<std::size_t>(n + 1));
    for (auto& v : th) v = ang(rng);
    std::vector<double> neg(th);
    for (auto& v : neg) v = -v;
    const Point a = cheb_point(th), b = cheb_point(neg);
    for (int j = 0; j <= n; ++j) {
      EXPECT_LE(std::abs(b[j] - std::conj(a[j])), 1e-12);
      EXPECT_LE(std::abs(b[j] - a[n - j]), 1e-12);
      EXPECT_LE(std::abs(a[j] - std::conj(a[n - j])), 1e-12);
    }
  }
}

TEST(ChebLattice, N0M3TridiagonalClosedForm) {
  const auto rep = cheb_lattice_candidates(0, 3);
  ASSERT_TRUE(rep.found) << rep.summary;
  EXPECT_EQ(rep.expected, 3u);
  ASSERT_EQ(rep.points.size(), 3u);
  std::vector<LocusPoint> pts;
  for (const auto& p : rep.points) pts.push_back(p.point);
  for (int p = 1; p <= 3; ++p) EXPECT_LE(nearest(pts, {-2.0 * std::cos(p * kPi / 4)}), 1e-12);
}

TEST(ChebLattice, N1AgreesWithSolver) {
  for (int m = 1; m <= 2; ++m) {
    const auto rep = cheb_lattice_candidates(1, m);
    ASSERT_TRUE(rep.found) << rep.summary;
    const auto sol = solve_locus(chebyshev_symbol(1), m);
    EXPECT_EQ(static_cast<int>(rep.points.size()), sol.full.total_multiplicity());
    for (const auto& p : rep.points) {
      EXPECT_LE(nearest(sol.full.points, p.point.coords), 1e-8);
      std::vector<double> th;
      for (long l : p.numerators) th.push_back(kTwoPi * l / rep.denominator);
      EXPECT_LE(point_distance(cheb_point(th), p.point.coords), 1e-12);
    }
  }
  const auto one = cheb_lattice_candidates(1, 1);
  EXPECT_LE(max_abs(one.points.at(0).point.coords), 1e-12);
}

TEST(ChebLattice, ReportsFailureWithoutThrowing) {
  const auto rep = cheb_lattice_candidates(1, 3, 4);
  EXPECT_FALSE(rep.found);
  EXPECT_FALSE(rep.tried.empty());
  EXPECT_FALSE(rep.summary.empty());
}

TEST(Hypocycloid, Examples) {
  EXPECT_NEAR(std::abs(hypocycloid(2, 0.0) - Complex(7.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(hypocycloid(2, kPi) - Complex(-1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(hypocycloid(3, 0.0) - Complex(-9.0)), 0.0, 1e-12);
}

TEST(Hypocycloid, RotationalPeriodicity) {
  for (int d = 1; d <= 4; ++d) {
    const double period = kTwoPi / (2 * d + 3);
    const Complex rot = std::polar(1.0, -kTwoPi * (d + 2) / (2 * d + 3));
    for (double th = 0.0; th < kTwoPi; th += 0.37)
      EXPECT_NEAR(std::abs(hypocycloid(d, th + period) - rot * hypocycloid(d, th)), 0.0, 1e-11);
  }
}

TEST(Hypocycloid, CurveSamplingAndCusps) {
  const auto curve = hypocycloid_curve(2, 512);
  ASSERT_EQ(curve.size(), 512u);
  EXPECT_NEAR(std::abs(curve[0] - Complex(7.0)), 0.0, 1e-12);
  EXPECT_EQ(count_cusps(hypocycloid_curve(2)), 7);
  EXPECT_EQ(count_cusps(star_boundary_curve(2)), 5);
  EXPECT_EQ(count_cusps(star_boundary_curve(1)), 3);
}

TEST(StarBoundary, CuspsAreRegionPoints) {
  const BandSymbol s = star_symbol(2);
  for (int c = 0; c < 5; ++c) {
    const Complex z = star_boundary(2, kPi * (2 * c + 1) / 5);
    EXPECT_NEAR(std::abs(z), 2.0 * 2 + 1, 1e-12);
    EXPECT_TRUE(in_c(s, slice_point(s, z)));
  }
  EXPECT_FALSE(in_c(s, slice_point(s, Complex(6.0, 0.0))));
}

TEST(CurveGeometry, WindingDistanceInside) {
  const auto curve = star_boundary_curve(2);
  EXPECT_NE(winding_number(curve, 0.0), 0);
  EXPECT_EQ(winding_number(curve, Complex(10.0, 0.0)), 0);
  EXPECT_TRUE(inside_curve(curve, 0.0, 0.0));
  EXPECT_FALSE(inside_curve(curve, Complex(10.0, 0.0), 1e-2));
  EXPECT_TRUE(inside_curve(curve, Complex(5.0 + 1e-3, 0.0), 1e-2));
  EXPECT_NEAR(distance_to_curve(curve, Complex(7.0, 0.0)), 2.0, 1e-6);

  std::vector<Complex> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_EQ(std::abs(winding_number(square, {0.5, 0.5})), 1);
  EXPECT_NEAR(distance_to_curve(square, {0.5, 2.0}), 1.0, 1e-15);
}

TEST(Symbols, Shapes) {
  const BandSymbol c = chebyshev_symbol(2);
  EXPECT_EQ(c.k(), 1);
  EXPECT_EQ(c.h(), 3);
  EXPECT_EQ(c.c(-1), Complex(1.0));
  EXPECT_EQ(c.c(3), Complex(1.0));
  EXPECT_TRUE(is_multihermitian(c));
  const BandSymbol s = star_symbol(2);
  EXPECT_EQ(s.k(), 2);
  EXPECT_EQ(s.h(), 3);
  EXPECT_EQ(s.n(), 1);
  EXPECT_TRUE(is_multihermitian(s));
}
