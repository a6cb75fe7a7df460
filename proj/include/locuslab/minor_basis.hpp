#pragma once

#include <compare>
#include <string>
#include <vector>

#include "locuslab/band_symbol.hpp"
#include "locuslab/config.hpp"
#include "locuslab/locus.hpp"
#include "locuslab/polycore.hpp"

namespace locuslab {

/// Columns i_1 < ... < i_m of the m x (m+n) pencil, 1-based.
class IndexSet {
 public:
  /// Throws std::invalid_argument unless strictly increasing with
  /// 1 <= i_1 and i_m <= m + n.
  IndexSet(std::vector<int> indices, int n);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  /// Exponent of prod_j x_{i_j - j} (0-based variables, 1-based j).
  Exponent leading_monomial(int n) const;
  std::string to_string() const;

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> indices_;
};

/// All binom(m+n, m) index sets in increasing lexicographic order.
std::vector<IndexSet> all_index_sets(int m, int n);

/// First m rows and m+n columns of the constant part of the pencil.
struct LeadingBlock {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> data;  ///< row-major

  Complex operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

/// a_{rc} = c_{c-r} for the Toeplitz band.
LeadingBlock leading_block(const BandSymbol& sym, int m);

/// det of the columns I of block - sum_s x_s I_s, where I_s has ones on
/// diagonal offset s. Fraction-free elimination over the polynomial ring.
/// Throws std::invalid_argument on a size mismatch and std::logic_error if the
/// result does not have total degree m. `digits` > 0 runs the elimination in
/// MPFR with that many decimal digits and rounds the coefficients at the end.
MultiPoly build_minor(const LeadingBlock& block, int n, const IndexSet& index, unsigned digits = 0);
MultiPoly build_minor(const BandSymbol& sym, int m, const IndexSet& index, unsigned digits = 0);

/// Largest m + n accepted by build_basis.
inline constexpr int kSymbolicBudget = 14;

struct MinorBasis {
  int m = 0;
  int n = 0;
  std::vector<IndexSet> sets;     ///< lexicographic order
  std::vector<MultiPoly> minors;  ///< minors[i] belongs to sets[i]

  const MultiPoly& at(const IndexSet& index) const;
};

/// Every maximal minor. Throws std::length_error when m + n exceeds
/// kSymbolicBudget.
MinorBasis build_basis(const LeadingBlock& block, int n);
MinorBasis build_basis(const BandSymbol& sym, int m);

struct TriangularityReport {
  std::vector<IndexSet> rows;
  std::vector<Exponent> columns;  ///< leading_monomial of rows[i], same order
  std::vector<Complex> matrix;    ///< row-major coefficients of the top-degree parts
  Complex expected_diagonal;      ///< (-1)^m
  bool lower_triangular = false;
  bool diagonal_ok = false;
  /// Top-degree monomials that are not leading monomials of any index set.
  int stray_terms = 0;
  bool pass = false;

  Complex at(std::size_t r, std::size_t c) const { return matrix[r * columns.size() + c]; }
};

/// Coefficients of the top-degree parts against the monomials m_I. Zero
/// tests are exact.
TriangularityReport triangularity_report(const MinorBasis& basis);

/// Keeps the candidates at which every minor satisfies
/// |P(x)| <= tol.eval * evaluation_scale(P, x), then clusters with
/// tol.cluster. A total multiplicity other than binom(m+n, n+1) is reported
/// in `defects`.
EigenLocus eigenlocus_bruteforce(const MinorBasis& basis, const std::vector<LocusPoint>& candidates,
                                 const Tolerances& tol = {});
EigenLocus eigenlocus_bruteforce(const BandSymbol& sym, int m, const std::vector<LocusPoint>& candidates,
                                 const Tolerances& tol = {});

}  // namespace locuslab
