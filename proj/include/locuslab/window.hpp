#pragma once

#include <vector>

#include "locuslab/kernels.hpp"

namespace locuslab::window {

/// Band data in scalar type C: coeff[d + k] = c_d for d in [-k, h].
template <class C>
struct Band {
  int k = 0;
  int h = 0;
  int n = 0;
  std::vector<C> coeff;

  C entry(int d, const std::vector<C>& x) const {
    if (d < -k || d > h) return C{};
    C v = coeff[static_cast<std::size_t>(d + k)];
    if (d >= 0 && d <= n) v -= x[static_cast<std::size_t>(d)];
    return v;
  }
};

/// Pivots of the banded LU of window j (columns j+1..j+m) at x.
template <class C>
void window_lu(const Band<C>& band, int m, int j, const std::vector<C>& x, std::vector<C>& pivots, bool& odd) {
  std::vector<C> entries(static_cast<std::size_t>(band.k + band.h + 1));
  for (int d = -band.k; d <= band.h; ++d) entries[static_cast<std::size_t>(d + band.k)] = band.entry(d, x);
  std::vector<C> a(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    for (int q = 0; q < m; ++q) {
      const int d = q - r + j;
      if (d >= -band.k && d <= band.h) a[static_cast<std::size_t>(r) * m + q] = entries[static_cast<std::size_t>(d + band.k)];
    }
  }
  kernels::banded_lu(a, m, band.k + j, band.h - j, pivots, odd);
}

template <class C>
C window_det(const Band<C>& band, int m, int j, const std::vector<C>& x) {
  std::vector<C> piv;
  bool odd = false;
  window_lu(band, m, j, x, piv, odd);
  C det = Field<C>::from_cd(Complex{odd ? -1.0 : 1.0, 0.0});
  for (const auto& p : piv) det *= p;
  return det;
}

/// Hadamard bound of window j: product over rows of the row 2-norm, each
/// floored at `row_floor` so that a vanishing pencil keeps a usable scale.
template <class C>
typename Field<C>::Real window_hadamard(const Band<C>& band, int m, int j, const std::vector<C>& x,
                                        const typename Field<C>::Real& row_floor = typename Field<C>::Real(0)) {
  using F = Field<C>;
  using R = typename F::Real;
  using std::sqrt;
  std::vector<R> mags(static_cast<std::size_t>(band.k + band.h + 1));
  for (int d = -band.k; d <= band.h; ++d) mags[static_cast<std::size_t>(d + band.k)] = F::mag(band.entry(d, x));
  R prod(1);
  for (int r = 0; r < m; ++r) {
    R s(0);
    for (int q = 0; q < m; ++q) {
      const int d = q - r + j;
      if (d >= -band.k && d <= band.h) s += mags[static_cast<std::size_t>(d + band.k)] * mags[static_cast<std::size_t>(d + band.k)];
    }
    prod *= std::max(sqrt(s), row_floor);
  }
  return prod;
}

}  // namespace locuslab::window
