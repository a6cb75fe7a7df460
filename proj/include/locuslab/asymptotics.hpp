#pragma once

#include <string>
#include <vector>

#include "locuslab/band_symbol.hpp"
#include "locuslab/config.hpp"
#include "locuslab/locus.hpp"

namespace locuslab {

struct MeasureAtom {
  LocusPoint point;
  double mass = 0.0;
};

/// Point masses multiplicity / binom(m+n, n+1).
struct RootCountingMeasure {
  int m = 0;
  int n = 0;
  std::vector<MeasureAtom> atoms;

  double total_mass() const;
};

/// Throws std::invalid_argument for a tilde-kind locus and std::domain_error
/// for zero total multiplicity.
RootCountingMeasure measure_of(const EigenLocus& locus);

/// Points of C_A obtained by placing n+2 roots of Q(., x) on one circle:
/// for angles 0 < theta_1 < ... < theta_{n+1} < 2 pi on the grid
/// 2 pi s / resolution the radius solves a polynomial of degree <= h+k, x
/// follows from a Vandermonde system, and candidates with
/// c_residual <= tol.c_region are kept. Refining the resolution by an integer
/// factor yields a superset.
std::vector<Point> c_region_cloud(const BandSymbol& sym, int resolution, const Tolerances& tol = {});

enum class Metric {
  euclidean,  ///< C^{n+1} as R^{2n+2}
  x0_plane,   ///< |x_0 - y_0| only
};

double metric_distance(const Point& a, const Point& b, Metric metric);

/// sup over `from` of the distance to the nearest point of `to`.
/// Throws std::invalid_argument if either set is empty.
double directed_distance(const std::vector<Point>& from, const std::vector<Point>& to, Metric metric = Metric::euclidean);

struct DistanceReport {
  double locus_to_region = 0.0;  ///< sup over the locus of the distance to the cloud
  double region_to_locus = 0.0;  ///< sup over the cloud of the distance to the locus
  double max_c_residual = 0.0;   ///< sampler-free alternative
  double mean_c_residual = 0.0;
};

/// Both directed distances between a locus and a C_A cloud, plus the
/// c_residual statistics of the locus. Throws on an empty locus.
DistanceReport directed_distance(const BandSymbol& sym, const EigenLocus& locus, const std::vector<Point>& region,
                                 Metric metric, const Tolerances& tol = {});

/// max over points and j of |x_j - conj(x_{n-j})|.
double symmetry_defect(const std::vector<Point>& pts);

/// sup over points of the distance to the nearest image under
/// x_j -> conj(x_{n-j}); zero when the set is closed under the involution.
double symmetry_closure_defect(const std::vector<Point>& pts);

struct ConvergenceRecord {
  int m = 0;
  bool solved = false;
  std::string error;
  int points = 0;
  int total_multiplicity = 0;
  double max_c_residual = 0.0;
  double mean_c_residual = 0.0;
  double locus_to_region = 0.0;
  double region_to_locus = 0.0;
  double symmetry_defect = 0.0;
  double symmetry_closure_defect = 0.0;
  double tilde_gap = 0.0;  ///< sup over the tilde locus of the distance to the full locus
  Point worst_point;       ///< largest c_residual
  Point asymmetric_point;  ///< largest symmetry defect
  std::vector<std::string> defects;
};

struct ConvergenceReport {
  bool multihermitian = false;
  Metric metric = Metric::euclidean;
  int region_samples = 0;
  std::vector<ConvergenceRecord> records;  ///< increasing m
  std::string locus_in_region;
  std::string region_filled;
  std::string conjugate_symmetry;
  std::string tilde_vs_full;
};

struct ReportOptions {
  int resolution = 128;     ///< c_region_cloud grid
  double symmetry = 1e-6;   ///< symmetry defect accepted as zero
};

/// Solves the locus for every m (n in {0, 1}) and aggregates the diagnostic
/// series. Solver failures are recorded per m. The verdict strings read
/// "supported", "violated-at(m=.., point=..)" or "not applicable".
ConvergenceReport conjecture_report(const BandSymbol& sym, std::vector<int> ms, const ReportOptions& options = {},
                                    const Tolerances& tol = {});

std::string format_point(const Point& x, int precision = 6);

}  // namespace locuslab
