#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locuslab/config.hpp"
#include "locuslab/numeric.hpp"
#include "locuslab/polycore.hpp"

namespace locuslab {

/// Banded Toeplitz data c_{-k..h} together with the locus dimension n.
///
/// The m x (m+n) pencil A - sum_s x_s I_s has entry (r, col) equal to
/// entry(col - r, x): diagonal offset d = col - r carries c_d, and the
/// offsets 0..n additionally carry -x_d. This is the arrangement under which
/// Q(t, x) = t^k (sum_j c_j t^j - sum_j x_j t^j) is the symbol of the pencil.
class BandSymbol {
 public:
  /// coeffs[j + k] = c_j for j in [-k, h]. Requires k, h >= 1, 0 <= n < h,
  /// c_{-k} != 0 and c_h != 0.
  BandSymbol(int k, int h, int n, std::vector<Complex> coeffs);

  int k() const { return k_; }
  int h() const { return h_; }
  int n() const { return n_; }
  int dimension() const { return n_ + 1; }
  /// c_j, zero outside [-k, h].
  Complex c(int j) const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// Pencil entry on diagonal offset d at point x.
  Complex entry(int d, const Point& x) const;

  /// Copy with c_j replaced; revalidates the band invariants.
  BandSymbol with_coefficient(int j, Complex value) const;

 private:
  int k_;
  int h_;
  int n_;
  std::vector<Complex> coeffs_;
};

/// x_original = scale * x_normalized + shift (coordinate-wise).
struct AffineMap {
  Complex scale{1.0, 0.0};
  std::vector<Complex> shift;

  Point apply(const Point& normalized) const;
  Point invert(const Point& original) const;
};

struct NormalizedSymbol {
  BandSymbol symbol;
  AffineMap map;
};

/// c_h -> 1 and c_0 = ... = c_n = 0, with the map back to original loci.
NormalizedSymbol normalize(const BandSymbol& sym);

/// Q(t, x) as a polynomial in t of degree h + k.
UniPoly q_poly(const BandSymbol& sym, const Point& x);

struct AlphaSpectrum {
  std::vector<Complex> roots;  ///< sorted by modulus, ties by argument
  std::vector<double> gaps;    ///< (|a_{i+1}| - |a_i|) / (1 + max|a|)
  bool converged = true;
};

AlphaSpectrum alpha_roots(const BandSymbol& sym, const Point& x, const Tolerances& tol = {});

/// max_{i=k..k+n} (|a_{i+1}| - |a_i|) / (1 + |a_{k+n+1}|), 1-based indices.
double c_residual(const BandSymbol& sym, const Point& x, const Tolerances& tol = {});
double c_residual(const BandSymbol& sym, const AlphaSpectrum& spectrum);
bool in_c(const BandSymbol& sym, const Point& x, const Tolerances& tol = {});

struct BoundaryFlags {
  bool double_root = false;
  bool chain_left = false;
  bool chain_right = false;
  double normalized_discriminant = 0.0;

  bool interior() const { return !double_root && !chain_left && !chain_right; }
};

/// |disc Q| / ||Q||_inf^{2(h+k)-2}: scale-free discriminant size.
double normalized_discriminant(const UniPoly& q);

/// Which boundary mechanisms are active at a point of C_A. Throws
/// std::domain_error when x is not in C_A.
BoundaryFlags classify_boundary(const BandSymbol& sym, const Point& x, const Tolerances& tol = {});

/// Coefficient-reversal form of the multihermitian condition: h - n == k and
/// c_j == conj(c_{n-j}) for every j in [-k, h] outside [0, n].
bool is_multihermitian(const BandSymbol& sym, const Tolerances& tol = {});

/// |x_j| bound for the compactness sanity check:
/// 1 + sum|c_i| + (h+k) max|c_i|.
double cauchy_box(const BandSymbol& sym);

struct ScanGrid {
  double re_min = -3.0;
  double re_max = 3.0;
  double im_min = -3.0;
  double im_max = 3.0;
  int nx = 121;
  int ny = 121;

  double re_at(int i) const { return re_min + (re_max - re_min) * i / (nx - 1); }
  double im_at(int j) const { return im_min + (im_max - im_min) * j / (ny - 1); }
};

struct Segment {
  Complex a;
  Complex b;
};

struct RegionScan {
  ScanGrid grid;
  std::vector<double> residual;  ///< row-major, row j = im index, col i = re index
  std::vector<Segment> boundary; ///< marching-squares pieces of the tol level set
  std::size_t in_region = 0;
  bool found_region = false;
  bool within_cauchy_box = true;   ///< every in-region sample obeys |x_j| <= box
  bool rectangle_covers_box = false;
  std::string diagnostics;

  double at(int i, int j) const { return residual[static_cast<std::size_t>(j) * grid.nx + i]; }
};

/// Samples c_residual over a rectangle of x_0 values. For n = 1 the slice
/// x_1 = conj(x_0) is used and requires a multihermitian symbol.
RegionScan c_region_scan(const BandSymbol& sym, const ScanGrid& grid, const Tolerances& tol = {});

/// The point on the scan slice for a given x_0.
Point slice_point(const BandSymbol& sym, Complex x0);

}  // namespace locuslab
