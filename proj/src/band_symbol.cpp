#include "locuslab/band_symbol.hpp"

#include <algorithm>
#include <stdexcept>

#include "locuslab/parallel.hpp"

namespace locuslab {

BandSymbol::BandSymbol(int k, int h, int n, std::vector<Complex> coeffs)
    : k_(k), h_(h), n_(n), coeffs_(std::move(coeffs)) {
  if (k_ < 1 || h_ < 1) throw std::invalid_argument("band widths k and h must be positive");
  if (n_ < 0 || n_ >= h_) throw std::invalid_argument("locus dimension must satisfy 0 <= n < h");
  if (static_cast<int>(coeffs_.size()) != k_ + h_ + 1)
    throw std::invalid_argument("expected k + h + 1 band coefficients");
  if (coeffs_.front() == Complex{}) throw std::invalid_argument("c_{-k} must be nonzero");
  if (coeffs_.back() == Complex{}) throw std::invalid_argument("c_h must be nonzero");
}

Complex BandSymbol::c(int j) const {
  if (j < -k_ || j > h_) return {};
  return coeffs_[static_cast<std::size_t>(j + k_)];
}

Complex BandSymbol::entry(int d, const Point& x) const {
  Complex v = c(d);
  if (d >= 0 && d <= n_) v -= x[static_cast<std::size_t>(d)];
  return v;
}

BandSymbol BandSymbol::with_coefficient(int j, Complex value) const {
  if (j < -k_ || j > h_) throw std::out_of_range("coefficient index outside the band");
  auto c2 = coeffs_;
  c2[static_cast<std::size_t>(j + k_)] = value;
  return BandSymbol(k_, h_, n_, std::move(c2));
}

Point AffineMap::apply(const Point& normalized) const {
  Point out(normalized.size());
  for (std::size_t i = 0; i < normalized.size(); ++i) out[i] = scale * normalized[i] + shift[i];
  return out;
}

Point AffineMap::invert(const Point& original) const {
  Point out(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) out[i] = (original[i] - shift[i]) / scale;
  return out;
}

NormalizedSymbol normalize(const BandSymbol& sym) {
  const Complex ch = sym.c(sym.h());
  std::vector<Complex> c(sym.coeffs().size());
  AffineMap map;
  map.scale = ch;
  map.shift.assign(static_cast<std::size_t>(sym.n() + 1), Complex{});
  for (int j = -sym.k(); j <= sym.h(); ++j) {
    if (j >= 0 && j <= sym.n()) {
      map.shift[static_cast<std::size_t>(j)] = sym.c(j);
      c[static_cast<std::size_t>(j + sym.k())] = 0.0;
    } else {
      c[static_cast<std::size_t>(j + sym.k())] = sym.c(j) / ch;
    }
  }
  return {BandSymbol(sym.k(), sym.h(), sym.n(), std::move(c)), map};
}

UniPoly q_poly(const BandSymbol& sym, const Point& x) {
  if (static_cast<int>(x.size()) != sym.dimension()) throw std::invalid_argument("q_poly: point has wrong dimension");
  std::vector<Complex> coeffs(static_cast<std::size_t>(sym.h() + sym.k() + 1));
  for (int j = -sym.k(); j <= sym.h(); ++j) coeffs[static_cast<std::size_t>(j + sym.k())] = sym.entry(j, x);
  return UniPoly(std::move(coeffs));
}

AlphaSpectrum alpha_roots(const BandSymbol& sym, const Point& x, const Tolerances& tol) {
  const UniPoly q = q_poly(sym, x);
  if (q.degree() != sym.h() + sym.k()) throw std::domain_error("alpha_roots: Q lost its leading coefficient");
  auto rr = roots_univariate(q, tol);
  AlphaSpectrum out;
  out.converged = rr.converged;
  out.roots = merge_multiple_roots(q, std::move(rr.roots), tol);
  std::sort(out.roots.begin(), out.roots.end(), [](const Complex& a, const Complex& b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
  const double top = std::abs(out.roots.back());
  for (std::size_t i = 0; i + 1 < out.roots.size(); ++i)
    out.gaps.push_back((std::abs(out.roots[i + 1]) - std::abs(out.roots[i])) / (1.0 + top));
  return out;
}

double c_residual(const BandSymbol& sym, const AlphaSpectrum& spectrum) {
  const auto& a = spectrum.roots;
  // 1-based alpha_k .. alpha_{k+n+1} are a[k-1] .. a[k+n]
  const std::size_t lo = static_cast<std::size_t>(sym.k() - 1);
  const std::size_t hi = static_cast<std::size_t>(sym.k() + sym.n());
  const double denom = 1.0 + std::abs(a[hi]);
  double r = 0.0;
  for (std::size_t i = lo; i < hi; ++i) r = std::max(r, (std::abs(a[i + 1]) - std::abs(a[i])) / denom);
  return r;
}

double c_residual(const BandSymbol& sym, const Point& x, const Tolerances& tol) {
  return c_residual(sym, alpha_roots(sym, x, tol));
}

bool in_c(const BandSymbol& sym, const Point& x, const Tolerances& tol) {
  return c_residual(sym, x, tol) <= tol.c_region;
}

double normalized_discriminant(const UniPoly& q) {
  double norm = 0.0;
  for (const auto& c : q.coeffs()) norm = std::max(norm, std::abs(c));
  const int d = q.degree();
  if (d < 2) return 1.0;
  std::vector<Complex> c = q.coeffs();
  for (auto& v : c) v /= norm;
  return std::abs(discriminant(UniPoly(std::move(c))));
}

BoundaryFlags classify_boundary(const BandSymbol& sym, const Point& x, const Tolerances& tol) {
  const auto spec = alpha_roots(sym, x, tol);
  if (c_residual(sym, spec) > tol.c_region) throw std::domain_error("classify_boundary: point is not in C_A");
  BoundaryFlags f;
  f.normalized_discriminant = normalized_discriminant(q_poly(sym, x));
  f.double_root = f.normalized_discriminant <= tol.disc;
  const auto& a = spec.roots;
  const int k = sym.k();
  const int n = sym.n();
  const int total = sym.h() + sym.k();
  const double denom = 1.0 + std::abs(a[static_cast<std::size_t>(k + n)]);
  if (k - 1 >= 1) {
    // alpha_{k-1} vs alpha_k (1-based)
    f.chain_left = (std::abs(a[static_cast<std::size_t>(k - 1)]) - std::abs(a[static_cast<std::size_t>(k - 2)])) / denom <=
                   tol.c_region;
  }
  if (k + n + 2 <= total) {
    f.chain_right = (std::abs(a[static_cast<std::size_t>(k + n + 1)]) - std::abs(a[static_cast<std::size_t>(k + n)])) / denom <=
                    tol.c_region;
  }
  return f;
}

bool is_multihermitian(const BandSymbol& sym, const Tolerances& tol) {
  if (sym.h() - sym.n() != sym.k()) return false;
  double scale = 0.0;
  for (const auto& c : sym.coeffs()) scale = std::max(scale, std::abs(c));
  for (int j = -sym.k(); j <= sym.h(); ++j) {
    if (j >= 0 && j <= sym.n()) continue;
    if (std::abs(sym.c(j) - std::conj(sym.c(sym.n() - j))) > tol.hermitian * scale) return false;
  }
  return true;
}

double cauchy_box(const BandSymbol& sym) {
  double sum = 0.0;
  double mx = 0.0;
  for (const auto& c : sym.coeffs()) {
    sum += std::abs(c);
    mx = std::max(mx, std::abs(c));
  }
  return 1.0 + sum + (sym.h() + sym.k()) * mx;
}

Point slice_point(const BandSymbol& sym, Complex x0) {
  if (sym.n() == 0) return {x0};
  if (sym.n() == 1) return {x0, std::conj(x0)};
  throw std::invalid_argument("slice_point: only n in {0, 1} has a planar slice");
}

namespace {

Complex lerp_edge(Complex pa, Complex pb, double fa, double fb) {
  const double t = (fa == fb) ? 0.5 : fa / (fa - fb);
  return pa + t * (pb - pa);
}

void march_cell(const RegionScan& s, double level, int i, int j, std::vector<Segment>& out) {
  const auto& g = s.grid;
  const Complex p[4] = {{g.re_at(i), g.im_at(j)}, {g.re_at(i + 1), g.im_at(j)}, {g.re_at(i + 1), g.im_at(j + 1)},
                        {g.re_at(i), g.im_at(j + 1)}};
  const double f[4] = {s.at(i, j) - level, s.at(i + 1, j) - level, s.at(i + 1, j + 1) - level, s.at(i, j + 1) - level};
  int code = 0;
  for (int c = 0; c < 4; ++c)
    if (f[c] <= 0.0) code |= 1 << c;
  if (code == 0 || code == 15) return;
  // edge e joins corner e and corner (e+1)%4
  auto edge = [&](int e) { return lerp_edge(p[e], p[(e + 1) % 4], f[e], f[(e + 1) % 4]); };
  std::vector<int> crossing;
  for (int e = 0; e < 4; ++e) {
    const bool a = (code >> e) & 1;
    const bool b = (code >> ((e + 1) % 4)) & 1;
    if (a != b) crossing.push_back(e);
  }
  if (crossing.size() == 2) {
    out.push_back({edge(crossing[0]), edge(crossing[1])});
    return;
  }
  // saddle: decide by the cell-center average
  const double center = 0.25 * (f[0] + f[1] + f[2] + f[3]);
  const bool center_inside = center <= 0.0;
  const bool c0_inside = code & 1;
  if (center_inside == c0_inside) {
    out.push_back({edge(0), edge(1)});
    out.push_back({edge(2), edge(3)});
  } else {
    out.push_back({edge(3), edge(0)});
    out.push_back({edge(1), edge(2)});
  }
}

}  // namespace

RegionScan c_region_scan(const BandSymbol& sym, const ScanGrid& grid, const Tolerances& tol) {
  if (sym.n() > 1) throw std::invalid_argument("c_region_scan supports n in {0, 1}");
  if (sym.n() == 1 && !is_multihermitian(sym, tol))
    throw std::invalid_argument("c_region_scan: the x_1 = conj(x_0) slice needs a multihermitian symbol");
  if (grid.nx < 2 || grid.ny < 2) throw std::invalid_argument("c_region_scan: grid needs at least 2x2 samples");
  RegionScan s;
  s.grid = grid;
  s.residual.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
  parallel_for(static_cast<std::size_t>(grid.ny), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < grid.nx; ++i)
      s.residual[static_cast<std::size_t>(j) * grid.nx + i] =
          c_residual(sym, slice_point(sym, {grid.re_at(i), grid.im_at(j)}), tol);
  });
  const double box = cauchy_box(sym);
  s.rectangle_covers_box = grid.re_min <= -box && grid.re_max >= box && grid.im_min <= -box && grid.im_max >= box;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (s.at(i, j) > tol.c_region) continue;
      ++s.in_region;
      if (std::abs(Complex{grid.re_at(i), grid.im_at(j)}) > box) s.within_cauchy_box = false;
    }
  }
  s.found_region = s.in_region > 0;
  if (!s.found_region) s.diagnostics = "no grid sample satisfied the C_A residual threshold; refine the grid";
  for (int j = 0; j + 1 < grid.ny; ++j)
    for (int i = 0; i + 1 < grid.nx; ++i) march_cell(s, tol.c_region, i, j, s.boundary);
  return s;
}

}  // namespace locuslab
