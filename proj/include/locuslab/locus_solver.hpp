#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locuslab/band_symbol.hpp"
#include "locuslab/config.hpp"
#include "locuslab/locus.hpp"

namespace locuslab {

/// Determinant of the m x m window of the pencil occupying columns
/// j+1..j+m, by banded LU with partial pivoting.
ScaledComplex det_window(const BandSymbol& sym, int m, int j, const Point& x);

/// log2 of the Hadamard bound (product of row 2-norms) of the same window,
/// each row norm floored at max |c_d| over offsets d outside [0, n].
double window_log2_scale(const BandSymbol& sym, int m, int j, const Point& x);

/// |D^m_j(x)| relative to the Hadamard bound of its window.
double relative_det(const BandSymbol& sym, int m, int j, const Point& x);

struct CharRoot {
  Complex value;
  std::vector<int> subset;  ///< 0-based indices into the modulus-sorted alphas
};

/// r = (-1)^{k+j} c_{-k} / prod_{i in sigma} alpha_i over all (k+j)-subsets.
std::vector<CharRoot> char_roots(const BandSymbol& sym, int j, const Point& x, const Tolerances& tol = {});

/// Widom's sum for D^m_j(x); std::nullopt when two alphas are closer than
/// tol.widom_separation * (1 + max|alpha|).
std::optional<Complex> widom_eval(const BandSymbol& sym, int m, int j, const Point& x, const Tolerances& tol = {});

/// n = 0: eigenvalues of the m x m banded Toeplitz matrix.
EigenLocus solve_n0(const BandSymbol& sym, int m, const Tolerances& tol = {});

struct N1Diagnostics {
  unsigned digits = 0;          ///< 0 means double precision
  int resultant_degree = 0;
  double interpolation_error = 0.0;
  double sample_radius = 0.0;
  double max_newton_move = 0.0; ///< largest relative polishing correction
  int dropped_candidates = 0;
  bool roots_converged = false;
  bool valid = false;           ///< internal consistency of this attempt
  std::string note;
};

/// n = 1: common zeros of D^m_0 and D^m_1 by resultant elimination.
/// `digits` = 0 runs in double precision, otherwise in MPFR with that many
/// decimal digits.
EigenLocus solve_n1(const BandSymbol& sym, int m, const Tolerances& tol = {}, unsigned digits = 0,
                    N1Diagnostics* diag = nullptr);

/// sigma_min / max(sigma_max, max_j |c_j|) of the m x (m+n) pencil at x, from
/// a column-pivoted QR factor followed by the singular values of the
/// triangular factor. The floor keeps the test meaningful where the pencil
/// itself tends to zero.
double pencil_sigma_ratio(const BandSymbol& sym, int m, const Point& x);

/// Keeps rank-deficient candidates and re-clusters them. A total multiplicity
/// different from binom(m+n, n+1) is recorded in `defects`.
EigenLocus rank_filter(const BandSymbol& sym, int m, const EigenLocus& candidates, const Tolerances& tol = {});

/// Replaces the multiplicity of each point of `full` by the number of
/// rank-deficient points of a generically perturbed band that converge to it.
/// Needed where the window system meets with higher multiplicity than the
/// determinantal locus itself.
EigenLocus resolve_multiplicities(const BandSymbol& sym, int m, const EigenLocus& full, const Tolerances& tol,
                                  unsigned digits);

struct LocusSolution {
  EigenLocus tilde;  ///< empty for n = 0
  EigenLocus full;
  N1Diagnostics diagnostics;
};

/// Full pipeline for n in {0, 1}. For n = 1 the working precision escalates
/// until the rank-filtered count matches binom(m+1, 2) or tol.max_digits is
/// reached.
LocusSolution solve_locus(const BandSymbol& sym, int m, const Tolerances& tol = {});

/// Merges points closer than tol * (1 + max|.|) in the infinity norm and sums
/// their multiplicities; the first point of each group is kept.
std::vector<LocusPoint> cluster_points(std::vector<LocusPoint> pts, double tol);

/// First guess of decimal digits needed for the n = 1 resultant at this m.
unsigned suggested_digits(int m);

}  // namespace locuslab
