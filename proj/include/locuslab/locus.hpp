#pragma once

#include <limits>
#include <string>
#include <vector>

#include "locuslab/numeric.hpp"

namespace locuslab {

struct LocusPoint {
  Point coords;
  int multiplicity = 1;
  /// |D^m_j(x)| divided by the Hadamard bound of the window, j = 0..n.
  std::vector<double> det_residuals;
  /// sigma_min / sigma_max of the m x (m+n) pencil; NaN until rank-tested.
  double sigma_ratio = std::numeric_limits<double>::quiet_NaN();
  /// |sum_i a_i P_i(x)| over its Hadamard bound for a fixed random combination
  /// of all maximal minors, evaluated in working precision; NaN if not computed.
  double minor_residual = std::numeric_limits<double>::quiet_NaN();
};

enum class LocusKind {
  tilde,  ///< common zeros of the consecutive-window determinants
  full,   ///< rank-deficient points of the rectangular pencil
};

struct EigenLocus {
  int m = 0;
  int n = 0;
  LocusKind kind = LocusKind::full;
  std::vector<LocusPoint> points;
  std::vector<std::string> warnings;
  std::vector<std::string> defects;

  int total_multiplicity() const {
    int t = 0;
    for (const auto& p : points) t += p.multiplicity;
    return t;
  }
  std::vector<Point> coordinates() const {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.coords);
    return out;
  }
};

inline const char* to_string(LocusKind k) { return k == LocusKind::tilde ? "tilde" : "full"; }

}  // namespace locuslab
