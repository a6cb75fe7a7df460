#pragma once

#include <string>
#include <vector>

#include "locuslab/band_symbol.hpp"
#include "locuslab/config.hpp"
#include "locuslab/locus.hpp"

namespace locuslab {

/// c_{-1} = c_{n+1} = 1, all other coefficients zero.
BandSymbol chebyshev_symbol(int n);

/// n = 1 band with c_{-d} = c_{d+1} = 1.
BandSymbol star_symbol(int d);

/// x_j = -e_{j+1}(e^{i theta_1}, ..., e^{i theta_{n+2}}) with
/// theta_{n+2} = -(theta_1 + ... + theta_{n+1}); n + 1 = thetas.size().
Point cheb_point(const std::vector<double>& thetas);

/// max_i | |alpha_i| - 1 | for the Chebyshev symbol of dimension x.size().
double cheb_modulus_deviation(const Point& x, const Tolerances& tol = {});

/// Every alpha-root of the Chebyshev symbol at x has modulus within
/// tol.c_region of 1.
bool cheb_membership_check(const Point& x, const Tolerances& tol = {});

struct LatticePoint {
  std::vector<long> numerators;  ///< theta_j = 2 pi numerators[j] / denominator, j = 1..n+1
  LocusPoint point;
};

struct LatticeCandidate {
  long denominator = 0;
  int validated = 0;  ///< distinct rank-deficient points found on this lattice
};

struct LatticeReport {
  int n = 0;
  int m = 0;
  std::uint64_t expected = 0;  ///< binom(m+n, n+1)
  bool found = false;
  long denominator = 0;        ///< first denominator whose points fill the locus
  std::vector<LatticePoint> points;
  std::vector<LatticeCandidate> tried;
  std::string summary;
};

/// Searches theta lattices 2 pi Z / N for N = 2 .. max_denominator (0 picks
/// 2 (n+2)(m+n+2)). A lattice point is kept when every window determinant
/// has relative size <= residual and the pencil is rank deficient at
/// tol.rank. The first N whose distinct kept points number binom(m+n, n+1)
/// is reported; otherwise `found` is false and the full search is returned.
LatticeReport cheb_lattice_candidates(int n, int m, long max_denominator = 0, double residual = 1e-8,
                                      const Tolerances& tol = {});

/// (-1)^d e^{-i(d+2)theta} ((d+2) e^{i(2d+3)theta} + d + 1).
Complex hypocycloid(int d, double theta);

/// hypocycloid(d, 2 pi s / samples) for s = 0 .. samples - 1.
std::vector<Complex> hypocycloid_curve(int d, int samples = 2048);

/// Boundary of the x_0-slice region of star_symbol(d):
/// (d+1) e^{-i d theta} - d e^{i(d+1)theta}, a hypocycloid with 2d+1 cusps.
Complex star_boundary(int d, double theta);
std::vector<Complex> star_boundary_curve(int d, int samples = 2048);

/// Winding number of the closed polyline around z.
int winding_number(const std::vector<Complex>& closed_curve, Complex z);

/// Distance from z to the closed polyline.
double distance_to_curve(const std::vector<Complex>& closed_curve, Complex z);

/// Inside the closed curve, or within tol of it.
bool inside_curve(const std::vector<Complex>& closed_curve, Complex z, double tol);

/// Short segments whose neighbours point in opposite directions.
int count_cusps(const std::vector<Complex>& closed_curve);

}  // namespace locuslab
