#pragma once

#include <cstdint>

namespace locuslab {

/// Every numerical threshold used by the library lives here and is passed
/// explicitly to the operations that need it.
struct Tolerances {
  // polycore
  double prune = 0.0;          ///< terms with |coef| <= prune are dropped
  double cluster = 1e-7;       ///< |a - b| <= cluster * (1 + max|.|) means equal
  int root_max_iter = 500;     ///< Aberth sweeps before giving up
  std::uint64_t seed = 42;     ///< jitter / sampling seed
  double multiple_link = 1e-3; ///< grouping radius for multiple-root merging
  double multiple_root = 1e-12; ///< relative derivative size accepted as zero

  // band_symbol
  double c_region = 1e-6;      ///< in_C threshold on c_residual
  double disc = 1e-8;          ///< normalized discriminant threshold
  double hermitian = 1e-12;    ///< coefficient match for is_multihermitian

  // minor_basis
  double eval = 1e-7;          ///< relative minor-vanishing threshold

  // locus_solver
  double rank = 1e-7;          ///< sigma_min / sigma_max threshold
  double widom_separation = 1e-6;  ///< min relative alpha gap for Widom
  double det_residual = 1e-8;  ///< certificate on |D_j| / window scale
  int newton_max_iter = 60;
  int newton_halvings = 20;
  double newton_move = 1e-6;   ///< max relative Newton correction of an accepted attempt
  double perturbation = 1e-6;  ///< first relative band perturbation used to resolve multiplicities
  int max_m_n1 = 30;           ///< solve_n1 budget
  int double_max_m = 6;        ///< larger m go straight to multiprecision
  unsigned max_digits = 1600;  ///< precision escalation ceiling
};

}  // namespace locuslab
