#pragma once

// Scalar-generic numeric kernels. Every template here is instantiated for
// std::complex<double> and for MpComplex.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "locuslab/field.hpp"

namespace locuslab::kernels {

/// In-place LU with partial pivoting restricted to a band. `a` is row-major
/// m x m with lower bandwidth kl and upper bandwidth ku (before fill-in).
/// Returns the diagonal of U and the permutation parity.
template <class C>
void banded_lu(std::vector<C>& a, int m, int kl, int ku, std::vector<C>& pivots, bool& odd) {
  using F = Field<C>;
  pivots.assign(static_cast<std::size_t>(m), C{});
  odd = false;
  auto at = [&](int r, int c) -> C& { return a[static_cast<std::size_t>(r) * m + c]; };
  for (int p = 0; p < m; ++p) {
    const int last_row = std::min(m - 1, p + kl);
    const int last_col = std::min(m - 1, p + kl + ku);
    int best = p;
    auto best_mag = F::mag(at(p, p));
    for (int r = p + 1; r <= last_row; ++r) {
      auto v = F::mag(at(r, p));
      if (v > best_mag) {
        best_mag = v;
        best = r;
      }
    }
    if (best_mag == 0) {
      pivots[static_cast<std::size_t>(p)] = C{};
      continue;
    }
    if (best != p) {
      for (int c = p; c <= last_col; ++c) std::swap(at(p, c), at(best, c));
      odd = !odd;
    }
    const C piv = at(p, p);
    pivots[static_cast<std::size_t>(p)] = piv;
    for (int r = p + 1; r <= last_row; ++r) {
      if (at(r, p) == C{}) continue;
      const C f = at(r, p) / piv;
      for (int c = p + 1; c <= last_col; ++c) F::sub_mul(at(r, c), f, at(p, c));
      at(r, p) = C{};
    }
  }
}

/// Determinant of a dense n x n row-major matrix by pivoted elimination.
template <class C>
C dense_det(std::vector<C> a, int n) {
  if (n == 0) return Field<C>::from_cd(Complex{1.0, 0.0});
  std::vector<C> piv;
  bool odd = false;
  banded_lu(a, n, n - 1, n - 1, piv, odd);
  C det = Field<C>::from_cd(Complex{odd ? -1.0 : 1.0, 0.0});
  for (const auto& p : piv) det *= p;
  return det;
}

/// p(z) for ascending coefficients.
template <class C>
C horner(const std::vector<C>& coeffs, const C& z) {
  C acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) Field<C>::mul_add(acc, z, *it);
  return acc;
}

/// Recovers coefficients of a polynomial of degree < S from its values at
/// radius * exp(2 pi i s / S), s = 0..S-1.
template <class C>
std::vector<C> interpolate_on_circle(const std::vector<C>& values, const typename Field<C>::Real& radius) {
  using F = Field<C>;
  const long s_count = static_cast<long>(values.size());
  std::vector<C> unit(values.size());
  for (long s = 0; s < s_count; ++s) unit[static_cast<std::size_t>(s)] = F::root_of_unity(typename F::Real(1), -s, s_count);
  std::vector<C> out(values.size());
  typename F::Real scale = typename F::Real(1) / typename F::Real(static_cast<double>(s_count));
  const typename F::Real inv_r = typename F::Real(1) / radius;
  for (long q = 0; q < s_count; ++q) {
    C acc{};
    for (long s = 0; s < s_count; ++s)
      F::add_mul(acc, values[static_cast<std::size_t>(s)], unit[static_cast<std::size_t>((q * s) % s_count)]);
    acc *= F::make(scale, typename F::Real(0));
    out[static_cast<std::size_t>(q)] = acc;
    scale *= inv_r;
  }
  return out;
}

template <class C>
struct AberthOutcome {
  std::vector<C> roots;
  std::vector<double> backward_error;  ///< |p(z)| / sum |a_j||z|^j per root
  bool converged = false;
  int iterations = 0;
};

namespace detail {

// Newton ratio p/p' and a Horner rounding bound, evaluated in the orientation
// that keeps |argument| <= 1.
template <class C>
bool newton_ratio(const std::vector<C>& a, const std::vector<typename Field<C>::Real>& amag, const C& z, C& ratio,
                  typename Field<C>::Real& value_mag, typename Field<C>::Real& bound) {
  using F = Field<C>;
  using R = typename F::Real;
  const int n = static_cast<int>(a.size()) - 1;
  const R zmag = F::mag(z);
  if (zmag <= R(1)) {
    C p = a[static_cast<std::size_t>(n)];
    C dp{};
    R b = amag[static_cast<std::size_t>(n)];
    for (int j = n - 1; j >= 0; --j) {
      F::mul_add(dp, z, p);
      F::mul_add(p, z, a[static_cast<std::size_t>(j)]);
      b = b * zmag + amag[static_cast<std::size_t>(j)];
    }
    value_mag = F::mag(p);
    bound = b;
    if (dp == C{}) return false;
    ratio = p / dp;
    return true;
  }
  const C w = F::from_cd(Complex{1.0, 0.0}) / z;
  const R wmag = R(1) / zmag;
  // q(w) = sum_j a_{n-j} w^j
  C q = a[0];
  C dq{};
  R b = amag[0];
  for (int j = 1; j <= n; ++j) {
    F::mul_add(dq, w, q);
    F::mul_add(q, w, a[static_cast<std::size_t>(j)]);
    b = b * wmag + amag[static_cast<std::size_t>(j)];
  }
  value_mag = F::mag(q);
  bound = b;
  if (q == C{}) {
    ratio = C{};
    return true;
  }
  // p/p' = z / (n - w q'(w)/q(w))
  const C denom = F::make(R(n), R(0)) - w * dq / q;
  if (denom == C{}) return false;
  ratio = z / denom;
  return true;
}

}  // namespace detail

/// Simultaneous Aberth-Ehrlich iteration (Gauss-Seidel sweeps). Initial
/// approximations sit on the circles given by the upper convex hull of
/// (j, log|a_j|), with a deterministic angular jitter drawn from `seed`.
template <class C>
AberthOutcome<C> aberth(std::vector<C> a, int max_iter, std::uint64_t seed) {
  using F = Field<C>;
  using R = typename F::Real;
  AberthOutcome<C> out;
  while (a.size() > 1 && a.back() == C{}) a.pop_back();
  int zeros = 0;
  while (zeros + 1 < static_cast<int>(a.size()) && a[static_cast<std::size_t>(zeros)] == C{}) ++zeros;
  std::vector<C> b(a.begin() + zeros, a.end());
  const int n = static_cast<int>(b.size()) - 1;
  for (int i = 0; i < zeros; ++i) out.roots.push_back(C{});
  if (n <= 0) {
    out.converged = true;
    out.backward_error.assign(out.roots.size(), 0.0);
    return out;
  }

  // Normalize magnitude so the double path never overflows in Horner.
  {
    R mx(0);
    for (const auto& c : b) mx = std::max(mx, F::mag(c));
    const C s = F::make(R(1) / mx, R(0));
    for (auto& c : b) c *= s;
  }

  std::vector<double> logs(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) logs[static_cast<std::size_t>(j)] = F::log_mag(b[static_cast<std::size_t>(j)]);
  std::vector<int> hull;
  for (int j = 0; j <= n; ++j) {
    if (!std::isfinite(logs[static_cast<std::size_t>(j)])) continue;
    while (hull.size() >= 2) {
      const int i0 = hull[hull.size() - 2];
      const int i1 = hull.back();
      const double cross = (i1 - i0) * (logs[static_cast<std::size_t>(j)] - logs[static_cast<std::size_t>(i0)]) -
                           (j - i0) * (logs[static_cast<std::size_t>(i1)] - logs[static_cast<std::size_t>(i0)]);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(j);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<C> z;
  z.reserve(static_cast<std::size_t>(n));
  for (std::size_t h = 1; h < hull.size(); ++h) {
    const int i0 = hull[h - 1];
    const int i1 = hull[h];
    const int cnt = i1 - i0;
    const double log_r = (logs[static_cast<std::size_t>(i0)] - logs[static_cast<std::size_t>(i1)]) / cnt;
    const R r = F::from_log(log_r);
    for (int l = 0; l < cnt; ++l) {
      const double frac = (static_cast<double>(l) + 0.25 + jitter(rng)) / cnt + static_cast<double>(i0) / n;
      const long den = 1L << 30;
      z.push_back(F::root_of_unity(r, static_cast<long>(frac * static_cast<double>(den)), den));
    }
  }

  std::vector<R> bmag;
  bmag.reserve(b.size());
  for (const auto& c : b) bmag.push_back(F::mag(c));
  const R eps = F::epsilon();
  const R tol = R(4.0 * (n + 1)) * eps;
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  int remaining = n;
  int it = 0;
  for (; it < max_iter && remaining > 0; ++it) {
    for (int i = 0; i < n; ++i) {
      if (done[static_cast<std::size_t>(i)]) continue;
      C ratio;
      R vmag, bound;
      if (!detail::newton_ratio(b, bmag, z[static_cast<std::size_t>(i)], ratio, vmag, bound)) {
        // stationary point of p: nudge
        z[static_cast<std::size_t>(i)] += F::make(R(0.01) * (F::mag(z[static_cast<std::size_t>(i)]) + R(1)), R(0));
        continue;
      }
      if (vmag <= tol * bound) {
        done[static_cast<std::size_t>(i)] = 1;
        --remaining;
        continue;
      }
      C sum{};
      for (int j = 0; j < n; ++j)
        if (j != i) F::add_reciprocal(sum, z[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(j)]);
      const C corr = ratio / (F::from_cd(Complex{1.0, 0.0}) - ratio * sum);
      z[static_cast<std::size_t>(i)] -= corr;
    }
  }
  out.iterations = it;
  out.converged = remaining == 0;
  for (int i = 0; i < n; ++i) {
    C ratio;
    R vmag, bound;
    // one Newton polishing step, kept only when it does not increase |p|
    if (detail::newton_ratio(b, bmag, z[static_cast<std::size_t>(i)], ratio, vmag, bound) && !(vmag == R(0))) {
      const C cand = z[static_cast<std::size_t>(i)] - ratio;
      C r2;
      R v2, b2;
      if (detail::newton_ratio(b, bmag, cand, r2, v2, b2) && v2 / b2 < vmag / bound) {
        z[static_cast<std::size_t>(i)] = cand;
        vmag = v2;
        bound = b2;
      }
    }
    out.backward_error.push_back(bound == R(0) ? 0.0 : F::to_double(vmag / bound));
  }
  for (auto& r : z) out.roots.push_back(r);
  out.backward_error.insert(out.backward_error.begin(), static_cast<std::size_t>(zeros), 0.0);
  return out;
}

}  // namespace locuslab::kernels
