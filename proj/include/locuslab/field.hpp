#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "locuslab/numeric.hpp"

namespace locuslab {

/// Uniform access to the two scalar fields used by the kernels.
template <class C>
struct Field;

template <>
struct Field<Complex> {
  using Real = double;
  static double mag(const Complex& z) { return std::abs(z); }
  static double to_double(double r) { return r; }
  static double log_mag(const Complex& z) { return std::log(std::abs(z)); }
  static Complex to_cd(const Complex& z) { return z; }
  static Complex from_cd(const Complex& z) { return z; }
  static Complex make(double re, double im) { return {re, im}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  /// r * exp(2 pi i num / den)
  static Complex root_of_unity(double r, long num, long den) {
    return std::polar(r, kTwoPi * static_cast<double>(num) / static_cast<double>(den));
  }
  static double epsilon() { return std::numeric_limits<double>::epsilon(); }
  static double pow_real(double r, int e) { return std::pow(r, e); }
  static double from_log(double l) { return std::exp(l); }
  /// acc = acc * z + a
  static void mul_add(Complex& acc, const Complex& z, const Complex& a) { acc = acc * z + a; }
  /// acc += a * b
  static void add_mul(Complex& acc, const Complex& a, const Complex& b) { acc += a * b; }
  /// acc -= a * b
  static void sub_mul(Complex& acc, const Complex& a, const Complex& b) { acc -= a * b; }
  /// sum += 1 / (a - b); no-op when a == b
  static void add_reciprocal(Complex& sum, const Complex& a, const Complex& b) {
    const Complex d = a - b;
    if (d != Complex{}) sum += 1.0 / d;
  }
};

}  // namespace locuslab
