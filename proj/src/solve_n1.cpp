// Resultant elimination for the n = 1 window system D^m_0 = D^m_1 = 0.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "locuslab/kernels.hpp"
#include "locuslab/locus_solver.hpp"
#include "locuslab/multiprecision.hpp"
#include "locuslab/window.hpp"

namespace locuslab {

namespace {

constexpr int kPilotM = 6;

template <class C>
class WindowSystem {
 public:
  using F = Field<C>;
  using R = typename F::Real;

  /// The band is centered: c_0 and c_1 are moved into the unknowns.
  WindowSystem(const BandSymbol& sym, int m, std::uint64_t seed) : m_(m) {
    band_.k = sym.k();
    band_.h = sym.h();
    band_.n = 1;
    for (int j = -sym.k(); j <= sym.h(); ++j)
      band_.coeff.push_back(j == 0 || j == 1 ? C{} : F::from_cd(sym.c(j)));
    for (const auto& c : band_.coeff) row_floor_ = std::max(row_floor_, F::mag(c));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    for (int q = 0; q <= m; ++q) border_.push_back(F::from_cd(std::polar(1.0, phase(rng))));
  }

  int m() const { return m_; }

  C det(int j, const C& x0, const C& x1) const { return window::window_det(band_, m_, j, {x0, x1}); }
  /// Window scale with rows floored at the magnitude of the centered band.
  R hadamard(int j, const C& x0, const C& x1) const {
    return window::window_hadamard(band_, m_, j, {x0, x1}, row_floor_);
  }

  /// Random combination of all maximal minors, as the determinant of the
  /// pencil bordered by a fixed row, relative to its Hadamard bound.
  R minor_residual(const C& x0, const C& x1) const {
    using std::sqrt;
    const int n = m_ + 1;
    std::vector<C> a(static_cast<std::size_t>(n) * n);
    const std::vector<C> x{x0, x1};
    R bound(1);
    for (int r = 0; r < m_; ++r) {
      R s(0);
      for (int q = 0; q < n; ++q) {
        const C v = band_.entry(q - r, x);
        a[static_cast<std::size_t>(r) * n + q] = v;
        s += F::mag(v) * F::mag(v);
      }
      bound *= std::max(sqrt(s), row_floor_);
    }
    for (int q = 0; q < n; ++q) a[static_cast<std::size_t>(m_) * n + q] = border_[static_cast<std::size_t>(q)];
    bound *= sqrt(R(static_cast<double>(n)));
    if (bound == R(0)) return R(0);
    return F::mag(kernels::dense_det(std::move(a), n)) / bound;
  }

  /// Coefficients (ascending, formal degree m) of D_j(x0, .) from samples on
  /// the circle |x1| = radius.
  std::vector<C> x1_poly(int j, const C& x0, const R& radius) const {
    const long count = m_ + 1;
    std::vector<C> vals(static_cast<std::size_t>(count));
    for (long u = 0; u < count; ++u) vals[static_cast<std::size_t>(u)] = det(j, x0, F::root_of_unity(radius, u, count));
    return kernels::interpolate_on_circle(vals, radius);
  }

  /// Sylvester determinant of two formal-degree-m polynomials.
  C sylvester(const std::vector<C>& p, const std::vector<C>& q) const {
    const int n = 2 * m_;
    std::vector<C> s(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < m_; ++r)
      for (int i = 0; i <= m_; ++i) {
        s[static_cast<std::size_t>(r) * n + r + i] = p[static_cast<std::size_t>(m_ - i)];
        s[static_cast<std::size_t>(m_ + r) * n + r + i] = q[static_cast<std::size_t>(m_ - i)];
      }
    return kernels::dense_det(std::move(s), n);
  }

  C resultant_at(const C& x0, const R& radius1) const {
    return sylvester(x1_poly(0, x0, radius1), x1_poly(1, x0, radius1));
  }

 private:
  int m_;
  window::Band<C> band_;
  R row_floor_{0};
  std::vector<C> border_;
};

template <class C>
typename Field<C>::Real poly_scale(const std::vector<C>& p, const typename Field<C>::Real& zmag) {
  using F = Field<C>;
  typename F::Real acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * zmag + F::mag(*it);
  return acc;
}

template <class C>
struct Candidate {
  C x0;
  C x1;
  int weight = 1;
};

template <class C>
struct Polished {
  C x0;
  C x1;
  double res0 = 0.0;
  double res1 = 0.0;
  double move = 0.0;
  bool ok = false;
};

template <class C>
Polished<C> newton_polish(const WindowSystem<C>& sys, const Candidate<C>& start, const Tolerances& tol) {
  using F = Field<C>;
  using R = typename F::Real;
  using std::pow;
  using std::sqrt;
  const R eps = F::epsilon();
  C x0 = start.x0;
  C x1 = start.x1;
  const C s0 = F::make(R(1) / sys.hadamard(0, x0, x1), R(0));
  const C s1 = F::make(R(1) / sys.hadamard(1, x0, x1), R(0));
  auto eval = [&](const C& a, const C& b, C& f0, C& f1) {
    f0 = sys.det(0, a, b) * s0;
    f1 = sys.det(1, a, b) * s1;
    return std::max(F::mag(f0), F::mag(f1));
  };
  C f0, f1;
  R res = eval(x0, x1, f0, f1);
  const R step_floor = pow(eps, R(0.8));
  for (int it = 0; it < tol.newton_max_iter && res > R(0); ++it) {
    const R size = R(1) + std::max(F::mag(x0), F::mag(x1));
    const C hstep = F::make(sqrt(eps) * size, R(0));
    C g0, g1, e0, e1;
    eval(x0 + hstep, x1, g0, g1);
    eval(x0, x1 + hstep, e0, e1);
    const C j00 = (g0 - f0) / hstep, j10 = (g1 - f1) / hstep;
    const C j01 = (e0 - f0) / hstep, j11 = (e1 - f1) / hstep;
    const C detj = j00 * j11 - j01 * j10;
    if (detj == C{}) break;
    const C d0 = -(j11 * f0 - j01 * f1) / detj;
    const C d1 = -(-j10 * f0 + j00 * f1) / detj;
    C lambda = F::make(R(1), R(0));
    bool improved = false;
    C n0, n1, nf0, nf1;
    R nres(0);
    for (int half = 0; half <= tol.newton_halvings; ++half) {
      n0 = x0 + lambda * d0;
      n1 = x1 + lambda * d1;
      nres = eval(n0, n1, nf0, nf1);
      if (nres < res) {
        improved = true;
        break;
      }
      lambda *= F::make(R(0.5), R(0));
    }
    if (!improved) break;
    const R moved = std::max(F::mag(n0 - x0), F::mag(n1 - x1));
    x0 = n0;
    x1 = n1;
    f0 = nf0;
    f1 = nf1;
    res = nres;
    if (moved <= step_floor * size) break;
  }
  Polished<C> out;
  out.x0 = x0;
  out.x1 = x1;
  out.res0 = F::to_double(F::mag(f0));
  out.res1 = F::to_double(F::mag(f1));
  const R size = R(1) + std::max(F::mag(x0), F::mag(x1));
  out.move = F::to_double(std::max(F::mag(x0 - start.x0), F::mag(x1 - start.x1)) / size);
  out.ok = std::max(out.res0, out.res1) <= tol.det_residual;
  return out;
}

template <class C>
EigenLocus solve_n1_impl(const BandSymbol& sym, int m, const Tolerances& tol, N1Diagnostics& diag, double radius_hint) {
  using F = Field<C>;
  using R = typename F::Real;
  using std::pow;
  using std::sqrt;
  const WindowSystem<C> sys(sym, m, tol.seed);
  const R eps = F::epsilon();
  const int degree = m * m;
  const long samples = degree + 1;
  const Complex shift0 = sym.c(0);
  const Complex shift1 = sym.c(1);

  EigenLocus locus;
  locus.m = m;
  locus.n = 1;
  locus.kind = LocusKind::tilde;

  R radius(radius_hint);
  std::vector<C> rcoeffs;
  std::vector<C> x0_roots;
  bool interp_ok = false;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<C> values(static_cast<std::size_t>(samples));
    for (long s = 0; s < samples; ++s)
      values[static_cast<std::size_t>(s)] = sys.resultant_at(F::root_of_unity(radius, s, samples), radius);
    rcoeffs = kernels::interpolate_on_circle(values, radius);

    // off-grid consistency check of the interpolant
    const C probe = F::root_of_unity(radius * R(0.93), 1, 2 * samples);
    const C direct = sys.resultant_at(probe, radius);
    const C interp = kernels::horner(rcoeffs, probe);
    const R scale = poly_scale(rcoeffs, F::mag(probe));
    diag.interpolation_error = scale == R(0) ? 1.0 : F::to_double(F::mag(direct - interp) / scale);
    diag.sample_radius = F::to_double(radius);
    interp_ok = diag.interpolation_error <= std::max(1e-2 * F::to_double(sqrt(eps)), 1e3 * F::to_double(eps));

    // drop trailing coefficients that are pure rounding noise
    R mx(0);
    for (long q = 0; q < samples; ++q)
      mx = std::max(mx, F::mag(rcoeffs[static_cast<std::size_t>(q)]) * pow(radius, static_cast<int>(q)));
    const R noise = R(1e3) * eps * R(static_cast<double>(samples)) * mx;
    while (rcoeffs.size() > 1 && F::mag(rcoeffs.back()) * pow(radius, static_cast<int>(rcoeffs.size() - 1)) <= noise)
      rcoeffs.pop_back();
    diag.resultant_degree = static_cast<int>(rcoeffs.size()) - 1;
    if (diag.resultant_degree < 1) {
      diag.note = "resultant vanished identically at this precision";
      return locus;
    }
    auto ab = kernels::aberth(rcoeffs, std::max(tol.root_max_iter, 4 * degree), tol.seed);
    diag.roots_converged = ab.converged;
    x0_roots = std::move(ab.roots);
    if (interp_ok && ab.converged) break;
    // move the sampling circle to the geometric mean root modulus and retry
    R logsum(0);
    int count = 0;
    for (const auto& r : x0_roots)
      if (F::mag(r) > R(0)) {
        using std::log;
        logsum += log(F::mag(r));
        ++count;
      }
    if (count == 0) break;
    using std::exp;
    radius = exp(logsum / R(count));
  }

  // group x0 roots; a group of size c may hold c distinct points sharing x0
  std::vector<Complex> x0_d;
  for (const auto& r : x0_roots) x0_d.push_back(F::to_cd(r));
  double span = 0.0;
  for (const auto& v : x0_d) span = std::max(span, std::abs(v));
  const double thr = tol.cluster * (1.0 + span);
  std::vector<int> group(x0_roots.size(), -1);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < x0_roots.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = static_cast<int>(groups.size());
    groups.push_back({i});
    for (std::size_t l = i + 1; l < x0_roots.size(); ++l)
      if (group[l] < 0 && std::abs(x0_d[l] - x0_d[i]) <= thr) {
        group[l] = group[i];
        groups.back().push_back(l);
      }
  }

  // x1 candidates: roots of D_1(x0, .), which has exact degree m, ranked by
  // the relative size of D_0 there
  std::vector<Candidate<C>> candidates;
  for (const auto& g : groups) {
    C center{};
    for (auto idx : g) center += x0_roots[idx];
    center *= F::make(R(1) / R(static_cast<double>(g.size())), R(0));
    // double precision suffices here: Newton polishing restores full accuracy
    std::vector<Complex> p1, p0;
    for (const auto& c : sys.x1_poly(1, center, radius)) p1.push_back(F::to_cd(c));
    for (const auto& c : sys.x1_poly(0, center, radius)) p0.push_back(F::to_cd(c));
    auto x1r = kernels::aberth(p1, std::max(tol.root_max_iter, 50 * m), tol.seed + 1);
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < x1r.roots.size(); ++i) {
      const Complex v = kernels::horner(p0, x1r.roots[i]);
      const double sc = poly_scale(p0, std::max(1.0, std::abs(x1r.roots[i])));
      scored.emplace_back(sc == 0.0 ? 0.0 : std::abs(v) / sc, i);
    }
    std::sort(scored.begin(), scored.end());
    const int want = static_cast<int>(g.size());
    int taken = 0;
    for (const auto& [score, i] : scored) {
      if (taken == want) break;
      if (taken > 0 && score > 1e-4) break;
      candidates.push_back({center, F::from_cd(x1r.roots[i]), 1});
      ++taken;
    }
    if (taken > 0) candidates[candidates.size() - static_cast<std::size_t>(taken)].weight += want - taken;
  }

  std::vector<LocusPoint> pts;
  for (const auto& cand : candidates) {
    const auto pol = newton_polish(sys, cand, tol);
    diag.max_newton_move = std::max(diag.max_newton_move, pol.move);
    if (!pol.ok) {
      ++diag.dropped_candidates;
      std::ostringstream os;
      os << "candidate near x0=" << F::to_cd(cand.x0) + shift0 << " dropped: residual " << std::max(pol.res0, pol.res1);
      locus.warnings.push_back(os.str());
      continue;
    }
    LocusPoint p;
    p.coords = {F::to_cd(pol.x0) + shift0, F::to_cd(pol.x1) + shift1};
    p.multiplicity = cand.weight;
    p.det_residuals = {pol.res0, pol.res1};
    p.minor_residual = F::to_double(sys.minor_residual(pol.x0, pol.x1));
    pts.push_back(std::move(p));
  }
  locus.points = cluster_points(std::move(pts), tol.cluster);
  diag.valid = interp_ok && diag.roots_converged && diag.dropped_candidates == 0 &&
               diag.max_newton_move <= tol.newton_move && locus.total_multiplicity() == degree &&
               diag.resultant_degree == degree;
  if (!interp_ok) locus.warnings.push_back("resultant interpolation failed its consistency check");
  if (!diag.roots_converged) locus.warnings.push_back("resultant root finder hit its iteration budget");
  if (diag.max_newton_move > tol.newton_move) {
    std::ostringstream os;
    os << "polishing moved a candidate by " << diag.max_newton_move << " (relative); resultant roots were inaccurate";
    locus.warnings.push_back(os.str());
  }
  if (diag.resultant_degree != degree) {
    std::ostringstream os;
    os << "numerical resultant degree " << diag.resultant_degree << " differs from m^2 = " << degree;
    locus.warnings.push_back(os.str());
  }
  return locus;
}

/// Geometric mean of the nonzero centered x0-moduli of a small-window tilde
/// locus; places the sampling circles near the bulk of the roots.
double pilot_radius(const BandSymbol& sym, const Tolerances& tol) {
  double scale = 0.0;
  for (int j = -sym.k(); j <= sym.h(); ++j)
    if (j != 0 && j != 1) scale = std::max(scale, std::abs(sym.c(j)));
  N1Diagnostics d;
  const auto pilot = solve_n1_impl<Complex>(sym, kPilotM, tol, d, 1.4 * scale);
  double logsum = 0.0;
  int count = 0;
  for (const auto& p : pilot.points) {
    const double r = std::abs(p.coords[0] - sym.c(0));
    if (r > 1e-8 * scale) {
      logsum += p.multiplicity * std::log(r);
      count += p.multiplicity;
    }
  }
  return count == 0 ? 1.4 * scale : std::exp(logsum / count);
}

}  // namespace

unsigned suggested_digits(int m) {
  return static_cast<unsigned>(30 + (m * m) / 4);
}

EigenLocus solve_n1(const BandSymbol& sym, int m, const Tolerances& tol, unsigned digits, N1Diagnostics* diag) {
  if (sym.n() != 1) throw std::invalid_argument("solve_n1 requires n = 1");
  if (m < 1) throw std::invalid_argument("solve_n1 requires m >= 1");
  if (m > tol.max_m_n1) throw std::invalid_argument("solve_n1: m exceeds the configured budget");
  N1Diagnostics local;
  N1Diagnostics& d = diag ? *diag : local;
  d = N1Diagnostics{};
  d.digits = digits;
  const double radius = pilot_radius(sym, tol);
  if (digits == 0) return solve_n1_impl<Complex>(sym, m, tol, d, radius);
  PrecisionScope scope(digits);
  return solve_n1_impl<MpComplex>(sym, m, tol, d, radius);
}

}  // namespace locuslab
