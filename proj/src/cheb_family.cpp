#include "locuslab/cheb_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "locuslab/locus_solver.hpp"
#include "locuslab/polycore.hpp"

namespace locuslab {

BandSymbol chebyshev_symbol(int n) {
  if (n < 0) throw std::invalid_argument("chebyshev_symbol: n < 0");
  std::vector<Complex> c(static_cast<std::size_t>(n + 3));
  c.front() = 1.0;
  c.back() = 1.0;
  return BandSymbol(1, n + 1, n, std::move(c));
}

BandSymbol star_symbol(int d) {
  if (d < 1) throw std::invalid_argument("star_symbol: d < 1");
  std::vector<Complex> c(static_cast<std::size_t>(2 * d + 2));
  c.front() = 1.0;
  c.back() = 1.0;
  return BandSymbol(d, d + 1, 1, std::move(c));
}

Point cheb_point(const std::vector<double>& thetas) {
  if (thetas.empty()) throw std::invalid_argument("cheb_point: need n+1 angles");
  const int n = static_cast<int>(thetas.size()) - 1;
  std::vector<Complex> z;
  double sum = 0.0;
  for (double t : thetas) {
    z.push_back(std::polar(1.0, t));
    sum += t;
  }
  z.push_back(std::polar(1.0, -sum));
  Point x(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) x[j] = -elementary_symmetric(z, j + 1);
  return x;
}

double cheb_modulus_deviation(const Point& x, const Tolerances& tol) {
  if (x.empty()) throw std::invalid_argument("cheb_modulus_deviation: empty point");
  const BandSymbol sym = chebyshev_symbol(static_cast<int>(x.size()) - 1);
  const AlphaSpectrum spec = alpha_roots(sym, x, tol);
  double dev = 0.0;
  for (const auto& a : spec.roots) dev = std::max(dev, std::abs(std::abs(a) - 1.0));
  return dev;
}

bool cheb_membership_check(const Point& x, const Tolerances& tol) {
  return cheb_modulus_deviation(x, tol) <= tol.c_region;
}

namespace {

bool lattice_point_valid(const BandSymbol& sym, int m, const Point& x, double residual, const Tolerances& tol,
                         LocusPoint& out) {
  out.coords = x;
  out.det_residuals.clear();
  for (int j = 0; j <= sym.n(); ++j) {
    const double r = relative_det(sym, m, j, x);
    out.det_residuals.push_back(r);
    if (!(r <= residual)) return false;
  }
  out.sigma_ratio = pencil_sigma_ratio(sym, m, x);
  return out.sigma_ratio <= tol.rank;
}

}  // namespace

LatticeReport cheb_lattice_candidates(int n, int m, long max_denominator, double residual, const Tolerances& tol) {
  if (n < 0 || n > 4) throw std::invalid_argument("cheb_lattice_candidates: need 0 <= n <= 4");
  if (m < 1) throw std::invalid_argument("cheb_lattice_candidates: m < 1");
  LatticeReport rep;
  rep.n = n;
  rep.m = m;
  rep.expected = binomial(m + n, n + 1);
  if (max_denominator <= 0) max_denominator = 2L * (n + 2) * (m + n + 2);
  const BandSymbol sym = chebyshev_symbol(n);

  for (long den = 2; den <= max_denominator && !rep.found; ++den) {
    std::vector<LatticePoint> kept;
    std::vector<long> l(static_cast<std::size_t>(n + 1), 0);
    while (true) {
      std::vector<double> th;
      for (long v : l) th.push_back(kTwoPi * static_cast<double>(v) / static_cast<double>(den));
      const Point x = cheb_point(th);
      LatticePoint lp{l, {}};
      if (lattice_point_valid(sym, m, x, residual, tol, lp.point)) {
        const bool seen = std::any_of(kept.begin(), kept.end(), [&](const LatticePoint& q) {
          return point_distance(q.point.coords, x) <= tol.cluster * (1.0 + max_abs(x));
        });
        if (!seen) kept.push_back(std::move(lp));
      }
      int j = n;
      while (j >= 0 && l[j] == den - 1) --j;
      if (j < 0) break;
      ++l[j];
      for (int q = j + 1; q <= n; ++q) l[q] = l[j];
    }
    rep.tried.push_back({den, static_cast<int>(kept.size())});
    if (static_cast<std::uint64_t>(kept.size()) == rep.expected) {
      rep.found = true;
      rep.denominator = den;
      rep.points = std::move(kept);
    }
  }

  std::ostringstream os;
  if (rep.found)
    os << "lattice 2*pi*Z/" << rep.denominator << " gives " << rep.points.size() << " of " << rep.expected
       << " points";
  else
    os << "no lattice up to denominator " << max_denominator << " gives " << rep.expected << " points";
  rep.summary = os.str();
  return rep;
}

Complex hypocycloid(int d, double theta) {
  if (d < 1) throw std::invalid_argument("hypocycloid: d < 1");
  const double sign = d % 2 == 0 ? 1.0 : -1.0;
  const Complex outer = std::polar(1.0, -(d + 2) * theta);
  const Complex inner = static_cast<double>(d + 2) * std::polar(1.0, (2 * d + 3) * theta) + static_cast<double>(d + 1);
  return sign * outer * inner;
}

std::vector<Complex> hypocycloid_curve(int d, int samples) {
  if (samples < 3) throw std::invalid_argument("hypocycloid_curve: samples < 3");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) out.push_back(hypocycloid(d, kTwoPi * s / samples));
  return out;
}

Complex star_boundary(int d, double theta) {
  if (d < 1) throw std::invalid_argument("star_boundary: d < 1");
  return static_cast<double>(d + 1) * std::polar(1.0, -d * theta) -
         static_cast<double>(d) * std::polar(1.0, (d + 1) * theta);
}

std::vector<Complex> star_boundary_curve(int d, int samples) {
  if (samples < 3) throw std::invalid_argument("star_boundary_curve: samples < 3");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) out.push_back(star_boundary(d, kTwoPi * s / samples));
  return out;
}

int winding_number(const std::vector<Complex>& curve, Complex z) {
  double total = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Complex a = curve[i] - z;
    const Complex b = curve[(i + 1) % curve.size()] - z;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

double distance_to_curve(const std::vector<Complex>& curve, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Complex a = curve[i];
    const Complex b = curve[(i + 1) % curve.size()];
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? std::real((z - a) * std::conj(ab)) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::abs(z - (a + t * ab)));
  }
  return best;
}

bool inside_curve(const std::vector<Complex>& curve, Complex z, double tol) {
  if (curve.size() < 3) return false;
  if (distance_to_curve(curve, z) <= tol) return true;
  return winding_number(curve, z) != 0;
}

int count_cusps(const std::vector<Complex>& curve) {
  const std::size_t s = curve.size();
  if (s < 4) return 0;
  std::vector<Complex> seg(s);
  double mean = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    seg[i] = curve[(i + 1) % s] - curve[i];
    mean += std::abs(seg[i]) / static_cast<double>(s);
  }
  int cusps = 0;
  for (std::size_t i = 0; i < s; ++i) {
    const Complex prev = seg[(i + s - 1) % s];
    const Complex next = seg[(i + 1) % s];
    const double len = std::abs(seg[i]);
    if (len < 0.5 * mean && len <= std::abs(prev) && len < std::abs(next) &&
        std::real(prev * std::conj(next)) < 0.0)
      ++cusps;
  }
  return cusps;
}

}  // namespace locuslab
