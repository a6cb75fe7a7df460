#include "locuslab/locus_solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "locuslab/window.hpp"

namespace locuslab {

namespace {

window::Band<Complex> band_of(const BandSymbol& sym) {
  window::Band<Complex> b;
  b.k = sym.k();
  b.h = sym.h();
  b.n = sym.n();
  b.coeff = sym.coeffs();
  return b;
}

void check_window(const BandSymbol& sym, int m, int j, const Point& x) {
  if (m < 1) throw std::invalid_argument("window size m must be positive");
  if (j < 0 || j > sym.n()) throw std::out_of_range("window index j must lie in [0, n]");
  if (static_cast<int>(x.size()) != sym.dimension()) throw std::invalid_argument("point has wrong dimension");
}

void for_each_subset(int n, int p, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(idx);
    int i = p - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - p + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int l = i + 1; l < p; ++l) idx[static_cast<std::size_t>(l)] = idx[static_cast<std::size_t>(l - 1)] + 1;
  }
}

Eigen::MatrixXcd pencil_matrix(const BandSymbol& sym, int m, const Point& x) {
  const int cols = m + sym.n();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, cols);
  for (int r = 0; r < m; ++r)
    for (int q = 0; q < cols; ++q) a(r, q) = sym.entry(q - r, x);
  return a;
}

// Parlett-Reinsch diagonal balancing with powers of two.
void balance(Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int l = 0; l < n; ++l) {
        if (l == i) continue;
        c += std::abs(a(l, i));
        r += std::abs(a(i, l));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / 2.0, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c >= g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<LocusPoint> cluster_points(std::vector<LocusPoint> pts, double tol) {
  std::vector<LocusPoint> out;
  for (auto& p : pts) {
    bool merged = false;
    for (auto& q : out) {
      const double scale = 1.0 + std::max(max_abs(p.coords), max_abs(q.coords));
      if (point_distance(p.coords, q.coords) <= tol * scale) {
        q.multiplicity += p.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(p));
  }
  return out;
}

ScaledComplex det_window(const BandSymbol& sym, int m, int j, const Point& x) {
  check_window(sym, m, j, x);
  std::vector<Complex> piv;
  bool odd = false;
  window::window_lu(band_of(sym), m, j, x, piv, odd);
  ScaledComplex d;
  if (odd) d.mantissa = -1.0;
  for (const auto& p : piv) d.multiply(p);
  return d;
}

double window_log2_scale(const BandSymbol& sym, int m, int j, const Point& x) {
  check_window(sym, m, j, x);
  const auto band = band_of(sym);
  double floor2 = 0.0;
  for (int d = -sym.k(); d <= sym.h(); ++d)
    if (d < 0 || d > sym.n()) floor2 = std::max(floor2, std::norm(sym.c(d)));
  double acc = 0.0;
  for (int r = 0; r < m; ++r) {
    double s = 0.0;
    for (int q = 0; q < m; ++q) s += std::norm(band.entry(q - r + j, x));
    acc += 0.5 * std::log2(std::max(s, floor2));
  }
  return acc;
}

double relative_det(const BandSymbol& sym, int m, int j, const Point& x) {
  const auto d = det_window(sym, m, j, x);
  if (d.is_zero()) return 0.0;
  return std::exp2(d.log2_abs() - window_log2_scale(sym, m, j, x));
}

std::vector<CharRoot> char_roots(const BandSymbol& sym, int j, const Point& x, const Tolerances& tol) {
  if (j < 0 || j > sym.n()) throw std::out_of_range("char_roots: j must lie in [0, n]");
  const auto alphas = alpha_roots(sym, x, tol).roots;
  const int total = static_cast<int>(alphas.size());
  const int p = sym.k() + j;
  const Complex base = ((sym.k() + j) % 2 == 0 ? 1.0 : -1.0) * sym.c(-sym.k());
  std::vector<CharRoot> out;
  for_each_subset(total, p, [&](const std::vector<int>& s) {
    Complex prod = 1.0;
    for (int i : s) prod *= alphas[static_cast<std::size_t>(i)];
    out.push_back({base / prod, s});
  });
  return out;
}

std::optional<Complex> widom_eval(const BandSymbol& sym, int m, int j, const Point& x, const Tolerances& tol) {
  check_window(sym, m, j, x);
  const auto alphas = alpha_roots(sym, x, tol).roots;
  const int total = static_cast<int>(alphas.size());
  double top = 0.0;
  for (const auto& a : alphas) top = std::max(top, std::abs(a));
  for (int i = 0; i < total; ++i)
    for (int l = i + 1; l < total; ++l)
      if (std::abs(alphas[static_cast<std::size_t>(i)] - alphas[static_cast<std::size_t>(l)]) <=
          tol.widom_separation * (1.0 + top))
        return std::nullopt;
  const int p = sym.k() + j;
  const Complex base = ((sym.k() + j) % 2 == 0 ? 1.0 : -1.0) * sym.c(-sym.k());
  Complex sum = 0.0;
  std::vector<char> in(static_cast<std::size_t>(total));
  for_each_subset(total, p, [&](const std::vector<int>& s) {
    std::fill(in.begin(), in.end(), 0);
    Complex prod = 1.0;
    for (int i : s) {
      in[static_cast<std::size_t>(i)] = 1;
      prod *= alphas[static_cast<std::size_t>(i)];
    }
    Complex coef = 1.0;
    for (int l : s)
      for (int i = 0; i < total; ++i)
        if (!in[static_cast<std::size_t>(i)])
          coef /= 1.0 - alphas[static_cast<std::size_t>(l)] / alphas[static_cast<std::size_t>(i)];
    sum += coef * std::pow(base / prod, m);
  });
  return sum;
}

EigenLocus solve_n0(const BandSymbol& sym, int m, const Tolerances& tol) {
  if (sym.n() != 0) throw std::invalid_argument("solve_n0 requires n = 0");
  if (m < 1) throw std::invalid_argument("solve_n0 requires m >= 1");
  Eigen::MatrixXcd t(m, m);
  for (int r = 0; r < m; ++r)
    for (int q = 0; q < m; ++q) t(r, q) = sym.c(q - r);
  balance(t);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t, false);
  EigenLocus locus;
  locus.m = m;
  locus.n = 0;
  locus.kind = LocusKind::full;
  if (es.info() != Eigen::Success) {
    locus.defects.push_back("eigenvalue iteration did not converge");
    return locus;
  }
  std::vector<LocusPoint> pts;
  for (int i = 0; i < m; ++i) {
    LocusPoint p;
    p.coords = {es.eigenvalues()(i)};
    p.det_residuals = {relative_det(sym, m, 0, p.coords)};
    pts.push_back(std::move(p));
  }
  locus.points = cluster_points(std::move(pts), tol.cluster);
  return locus;
}

double pencil_sigma_ratio(const BandSymbol& sym, int m, const Point& x) {
  const Eigen::MatrixXcd a = pencil_matrix(sym, m, x);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r);
  const auto& sv = svd.singularValues();
  double scale = sv.size() == 0 ? 0.0 : sv(0);
  for (const auto& c : sym.coeffs()) scale = std::max(scale, std::abs(c));
  if (sv.size() == 0 || scale == 0.0) return 0.0;
  return sv(sv.size() - 1) / scale;
}

namespace {

void check_count(EigenLocus& locus, int m, int n) {
  const auto expected = binomial(m + n, n + 1);
  if (static_cast<std::uint64_t>(locus.total_multiplicity()) != expected) {
    std::ostringstream os;
    os << "rank-filtered multiplicity " << locus.total_multiplicity() << " differs from expected " << expected;
    locus.defects.push_back(os.str());
  }
}

}  // namespace

EigenLocus rank_filter(const BandSymbol& sym, int m, const EigenLocus& candidates, const Tolerances& tol) {
  EigenLocus out;
  out.m = m;
  out.n = sym.n();
  out.kind = LocusKind::full;
  out.warnings = candidates.warnings;
  std::vector<LocusPoint> kept;
  for (const auto& c : candidates.points) {
    LocusPoint p = c;
    p.sigma_ratio = pencil_sigma_ratio(sym, m, p.coords);
    if (p.sigma_ratio <= tol.rank) kept.push_back(std::move(p));
  }
  out.points = cluster_points(std::move(kept), tol.cluster);
  check_count(out, m, sym.n());
  return out;
}

EigenLocus resolve_multiplicities(const BandSymbol& sym, int m, const EigenLocus& full, const Tolerances& tol,
                                  unsigned digits) {
  EigenLocus out = full;
  out.defects.clear();
  if (out.points.empty()) {
    check_count(out, m, sym.n());
    return out;
  }
  double scale = 0.0;
  for (const auto& c : sym.coeffs()) scale = std::max(scale, std::abs(c));
  const double thr = digits == 0 ? 1e-11 : std::max(std::pow(10.0, -0.5 * digits), 1e-300);
  auto is_rank_deficient = [&](const LocusPoint& q) { return q.minor_residual <= thr; };

  // grow the perturbation until the perturbed locus is simple
  EigenLocus tilde;
  bool split = false;
  for (double eps = tol.perturbation; eps <= 1e-2 && !split; eps *= 100.0) {
    std::mt19937_64 rng(tol.seed + 7);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    auto coeffs = sym.coeffs();
    for (int j = -sym.k(); j <= sym.h(); ++j)
      if (j < 0 || j > sym.n()) coeffs[static_cast<std::size_t>(j + sym.k())] += eps * scale * std::polar(1.0, phase(rng));
    const BandSymbol perturbed(sym.k(), sym.h(), sym.n(), std::move(coeffs));
    N1Diagnostics diag;
    tilde = solve_n1(perturbed, m, tol, digits, &diag);
    split = diag.valid;
    for (const auto& q : tilde.points) split = split && !(is_rank_deficient(q) && q.multiplicity > 1);
  }
  if (!split) {
    out.defects.push_back("no perturbation of the band produced a simple locus");
    return out;
  }
  std::vector<int> kappa(out.points.size(), 0);
  double worst = 0.0;
  for (const auto& q : tilde.points) {
    if (!is_rank_deficient(q)) continue;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      const double d = point_distance(q.coords, out.points[i].coords);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    kappa[best] += q.multiplicity;
    worst = std::max(worst, best_d / (1.0 + max_abs(out.points[best].coords)));
  }
  std::vector<LocusPoint> kept;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (kappa[i] == 0) {
      std::ostringstream os;
      os << "rank-deficient point " << out.points[i].coords[0] << " is not approached by the perturbed locus";
      out.defects.push_back(os.str());
      continue;
    }
    out.points[i].multiplicity = kappa[i];
    kept.push_back(out.points[i]);
  }
  out.points = std::move(kept);
  if (worst > 1e-2) {
    std::ostringstream os;
    os << "perturbed points matched at relative distance up to " << worst;
    out.warnings.push_back(os.str());
  }
  check_count(out, m, sym.n());
  return out;
}

LocusSolution solve_locus(const BandSymbol& sym, int m, const Tolerances& tol) {
  LocusSolution sol;
  if (sym.n() == 0) {
    sol.full = solve_n0(sym, m, tol);
    if (sol.full.defects.empty() && sol.full.total_multiplicity() != m) {
      sol.full.defects.push_back("eigenvalue count differs from m");
    }
    return sol;
  }
  if (sym.n() != 1) throw std::invalid_argument("solve_locus supports n in {0, 1}");
  std::vector<unsigned> schedule;
  if (m <= tol.double_max_m) schedule.push_back(0);
  for (unsigned d = suggested_digits(m); d <= tol.max_digits; d *= 2) schedule.push_back(d);
  if (schedule.empty() || schedule.back() < tol.max_digits) schedule.push_back(tol.max_digits);
  std::vector<std::string> history;
  for (unsigned digits : schedule) {
    N1Diagnostics diag;
    sol.tilde = solve_n1(sym, m, tol, digits, &diag);
    sol.full = rank_filter(sym, m, sol.tilde, tol);
    sol.diagnostics = diag;
    bool simple = true;
    for (const auto& p : sol.full.points) simple = simple && p.multiplicity == 1;
    // a point where the window system is not transversal can carry a larger
    // intersection multiplicity than its multiplicity in the locus
    if (diag.valid && !simple && digits > 0) sol.full = resolve_multiplicities(sym, m, sol.full, tol, digits);
    if (diag.valid && (simple || digits > 0)) break;
    std::ostringstream os;
    os << "attempt at " << (digits == 0 ? std::string("double") : std::to_string(digits) + " digits")
       << " rejected: tilde count " << sol.tilde.total_multiplicity() << ", full count "
       << sol.full.total_multiplicity();
    history.push_back(os.str());
  }
  if (!sol.diagnostics.valid) sol.full.defects.push_back("resultant pipeline failed its internal checks");
  for (auto& h : history) sol.full.warnings.push_back(std::move(h));
  return sol;
}

}  // namespace locuslab
