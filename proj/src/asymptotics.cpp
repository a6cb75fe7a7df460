#include "locuslab/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "locuslab/locus_solver.hpp"
#include "locuslab/polycore.hpp"

namespace locuslab {

double RootCountingMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

RootCountingMeasure measure_of(const EigenLocus& locus) {
  if (locus.kind != LocusKind::full) throw std::invalid_argument("measure_of: needs the full locus");
  if (locus.total_multiplicity() <= 0) throw std::domain_error("measure_of: zero total multiplicity");
  RootCountingMeasure mu{locus.m, locus.n, {}};
  const double denom = static_cast<double>(binomial(locus.m + locus.n, locus.n + 1));
  for (const auto& p : locus.points) mu.atoms.push_back({p, p.multiplicity / denom});
  return mu;
}

namespace {

// Divided difference of s^j over the nodes w.
Complex divided_power(const std::vector<Complex>& w, int j) {
  Complex s{};
  for (std::size_t i = 0; i < w.size(); ++i) {
    Complex den{1.0, 0.0};
    for (std::size_t l = 0; l < w.size(); ++l)
      if (l != i) den *= w[i] - w[l];
    s += std::pow(w[i], j) / den;
  }
  return s;
}

void circle_points(const BandSymbol& sym, const std::vector<Complex>& w, const Tolerances& tol, std::vector<Point>& out) {
  const int n = sym.n();
  const int k = sym.k();
  std::vector<Complex> coef(static_cast<std::size_t>(sym.h() + k + 1));
  for (int j = -k; j <= sym.h(); ++j)
    if (j < 0 || j > n) coef[static_cast<std::size_t>(j + k)] = sym.c(j) * divided_power(w, j);
  const UniPoly p(coef);
  if (p.degree() < 1) return;
  const RootResult rr = roots_univariate(p, tol);
  for (const Complex t : rr.roots) {
    if (std::abs(t) < 1e-12) continue;
    Eigen::MatrixXcd v(n + 1, n + 1);
    Eigen::VectorXcd rhs(n + 1);
    for (int i = 0; i <= n; ++i) {
      const Complex s = t * w[static_cast<std::size_t>(i)];
      Complex b{};
      for (int j = -k; j <= sym.h(); ++j) b += sym.c(j) * std::pow(s, j);
      rhs(i) = b;
      Complex pw{1.0, 0.0};
      for (int l = 0; l <= n; ++l) {
        v(i, l) = pw;
        pw *= s;
      }
    }
    const Eigen::VectorXcd xs = v.partialPivLu().solve(rhs);
    Point x(xs.data(), xs.data() + xs.size());
    if (!std::all_of(x.begin(), x.end(), [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }))
      continue;
    if (c_residual(sym, x, tol) <= tol.c_region) out.push_back(std::move(x));
  }
}

}  // namespace

std::vector<Point> c_region_cloud(const BandSymbol& sym, int resolution, const Tolerances& tol) {
  const int n = sym.n();
  if (resolution < n + 2) throw std::invalid_argument("c_region_cloud: resolution too small");
  std::vector<Point> out;
  std::vector<int> s(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) s[i] = i + 1;
  while (true) {
    std::vector<Complex> w{Complex{1.0, 0.0}};
    for (int v : s) w.push_back(std::polar(1.0, kTwoPi * v / resolution));
    circle_points(sym, w, tol, out);
    int i = n;
    while (i >= 0 && s[i] == resolution - 1 - (n - i)) --i;
    if (i < 0) break;
    ++s[i];
    for (int q = i + 1; q <= n; ++q) s[q] = s[q - 1] + 1;
  }
  return out;
}

double metric_distance(const Point& a, const Point& b, Metric metric) {
  if (metric == Metric::x0_plane) return std::abs(a.at(0) - b.at(0));
  return euclidean_distance(a, b);
}

double directed_distance(const std::vector<Point>& from, const std::vector<Point>& to, Metric metric) {
  if (from.empty() || to.empty()) throw std::invalid_argument("directed_distance: empty point set");
  double sup = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) best = std::min(best, metric_distance(p, q, metric));
    sup = std::max(sup, best);
  }
  return sup;
}

DistanceReport directed_distance(const BandSymbol& sym, const EigenLocus& locus, const std::vector<Point>& region,
                                 Metric metric, const Tolerances& tol) {
  if (locus.points.empty()) throw std::invalid_argument("directed_distance: empty locus");
  DistanceReport r;
  const auto pts = locus.coordinates();
  r.locus_to_region = directed_distance(pts, region, metric);
  r.region_to_locus = directed_distance(region, pts, metric);
  double sum = 0.0;
  for (const auto& p : pts) {
    const double c = c_residual(sym, p, tol);
    r.max_c_residual = std::max(r.max_c_residual, c);
    sum += c;
  }
  r.mean_c_residual = sum / static_cast<double>(pts.size());
  return r;
}

namespace {

Point involution(const Point& x) {
  Point y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::conj(x[x.size() - 1 - j]);
  return y;
}

double point_symmetry_defect(const Point& x) {
  double d = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) d = std::max(d, std::abs(x[j] - std::conj(x[x.size() - 1 - j])));
  return d;
}

}  // namespace

double symmetry_defect(const std::vector<Point>& pts) {
  double d = 0.0;
  for (const auto& p : pts) d = std::max(d, point_symmetry_defect(p));
  return d;
}

double symmetry_closure_defect(const std::vector<Point>& pts) {
  if (pts.empty()) return 0.0;
  std::vector<Point> images;
  for (const auto& p : pts) images.push_back(involution(p));
  return directed_distance(pts, images, Metric::euclidean);
}

std::string format_point(const Point& x, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << '(';
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) os << ", ";
    os << x[j].real() << (x[j].imag() < 0 ? "-" : "+") << std::abs(x[j].imag()) << 'i';
  }
  os << ')';
  return os.str();
}

ConvergenceReport conjecture_report(const BandSymbol& sym, std::vector<int> ms, const ReportOptions& options,
                                    const Tolerances& tol) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  ConvergenceReport rep;
  rep.multihermitian = is_multihermitian(sym, tol);
  rep.metric = sym.n() == 1 && rep.multihermitian ? Metric::x0_plane : Metric::euclidean;
  const std::vector<Point> cloud = c_region_cloud(sym, options.resolution, tol);
  rep.region_samples = static_cast<int>(cloud.size());

  for (int m : ms) {
    ConvergenceRecord rec;
    rec.m = m;
    try {
      const LocusSolution sol = solve_locus(sym, m, tol);
      const EigenLocus& full = sol.full;
      rec.defects = full.defects;
      rec.points = static_cast<int>(full.points.size());
      rec.total_multiplicity = full.total_multiplicity();
      if (full.points.empty()) throw std::runtime_error("empty locus");
      const auto pts = full.coordinates();
      double worst = -1.0;
      double sum = 0.0;
      for (const auto& p : pts) {
        const double c = c_residual(sym, p, tol);
        sum += c;
        if (c > worst) {
          worst = c;
          rec.worst_point = p;
        }
      }
      rec.max_c_residual = worst;
      rec.mean_c_residual = sum / static_cast<double>(pts.size());
      if (!cloud.empty()) {
        rec.locus_to_region = directed_distance(pts, cloud, rep.metric);
        rec.region_to_locus = directed_distance(cloud, pts, rep.metric);
      }
      for (const auto& p : pts) {
        const double d = point_symmetry_defect(p);
        if (d >= rec.symmetry_defect) {
          rec.symmetry_defect = d;
          rec.asymmetric_point = p;
        }
      }
      rec.symmetry_closure_defect = symmetry_closure_defect(pts);
      if (!sol.tilde.points.empty()) rec.tilde_gap = directed_distance(sol.tilde.coordinates(), pts, Metric::euclidean);
      rec.solved = true;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rep.records.push_back(std::move(rec));
  }

  std::vector<const ConvergenceRecord*> ok;
  for (const auto& r : rep.records)
    if (r.solved) ok.push_back(&r);
  auto series = [&](auto field) {
    std::ostringstream os;
    os.precision(4);
    for (std::size_t i = 0; i < ok.size(); ++i) os << (i ? ", " : "") << "m=" << ok[i]->m << ": " << field(*ok[i]);
    return os.str();
  };
  if (ok.empty()) {
    rep.locus_in_region = rep.region_filled = rep.conjugate_symmetry = rep.tilde_vs_full = "not applicable (no solved m)";
    return rep;
  }

  rep.locus_in_region = "supported (max c_residual " + series([](const ConvergenceRecord& r) { return r.max_c_residual; }) + ")";
  for (std::size_t i = 1; i < ok.size(); ++i)
    if (ok[i]->max_c_residual > ok[i - 1]->max_c_residual + tol.c_region) {
      rep.locus_in_region = "violated-at(m=" + std::to_string(ok[i]->m) + ", point=" + format_point(ok[i]->worst_point) +
                     ") max c_residual increased";
      break;
    }

  if (cloud.empty()) {
    rep.region_filled = "not applicable (empty C_A sample cloud)";
  } else {
    rep.region_filled =
        "supported (region-to-locus distance " + series([](const ConvergenceRecord& r) { return r.region_to_locus; }) + ")";
    for (std::size_t i = 1; i < ok.size(); ++i)
      if (ok[i]->region_to_locus > ok[i - 1]->region_to_locus) {
        rep.region_filled = "violated-at(m=" + std::to_string(ok[i]->m) + ") region-to-locus distance increased";
        break;
      }
  }

  const std::string defects = series([](const ConvergenceRecord& r) { return r.symmetry_defect; });
  if (!rep.multihermitian) {
    rep.conjugate_symmetry = "not applicable (is_multihermitian=false; symmetry defect " + defects + ")";
  } else {
    rep.conjugate_symmetry = "supported (symmetry defect " + defects + ")";
    for (const auto& r : rep.records) {
      if (!r.solved || r.symmetry_defect <= options.symmetry) continue;
      rep.conjugate_symmetry = "violated-at(m=" + std::to_string(r.m) + ", point=" + format_point(r.asymmetric_point) + ") defect " +
                        std::to_string(r.symmetry_defect);
      break;
    }
  }

  rep.tilde_vs_full = "tilde-to-full gap " + series([](const ConvergenceRecord& r) { return r.tilde_gap; });
  return rep;
}

}  // namespace locuslab
