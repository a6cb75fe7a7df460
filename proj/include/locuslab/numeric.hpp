#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace locuslab {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Exact binomial coefficient; throws on overflow.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      throw std::overflow_error("binomial overflow");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

/// A complex number stored as mantissa * 2^exponent so that long products of
/// pivots neither overflow nor underflow.
struct ScaledComplex {
  Complex mantissa{1.0, 0.0};
  long exponent = 0;

  void multiply(Complex f) {
    mantissa *= f;
    renormalize();
  }
  void renormalize() {
    const double a = std::abs(mantissa);
    if (a == 0.0 || !std::isfinite(a)) return;
    int e = 0;
    std::frexp(a, &e);
    mantissa = std::ldexp(1.0, -e) * mantissa;
    exponent += e;
  }
  bool is_zero() const { return mantissa == Complex{}; }
  /// log2 |value|, -inf for zero.
  double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(mantissa)) + static_cast<double>(exponent);
  }
  /// Plain value; may overflow to inf or underflow to 0.
  Complex value() const {
    if (exponent > 4000) return {std::numeric_limits<double>::infinity(), 0.0};
    if (exponent < -4000) return {};
    return mantissa * std::ldexp(1.0, static_cast<int>(exponent));
  }
};

/// Infinity norm over C^{n+1}.
inline double point_distance(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Euclidean norm of the difference, C^{n+1} viewed as R^{2n+2}.
inline double euclidean_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

inline double max_abs(const Point& p) {
  double r = 0.0;
  for (const auto& z : p) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace locuslab
