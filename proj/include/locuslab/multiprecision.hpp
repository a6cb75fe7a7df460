#pragma once

// Arbitrary-precision complex arithmetic on top of MPFR, plus the small
// field-traits layer that lets the numeric kernels run either in double or in
// MPFR precision.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>

#include "locuslab/field.hpp"

namespace locuslab {

using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

struct MpComplex {
  MpReal re;
  MpReal im;

  MpComplex() : re(0), im(0) {}
  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit MpComplex(const Complex& z) : re(z.real()), im(z.imag()) {}
  explicit MpComplex(double r) : re(r), im(0) {}

  MpComplex& operator+=(const MpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  MpComplex& operator-=(const MpComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  MpComplex& operator*=(const MpComplex& o) {
    MpReal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  MpComplex& operator/=(const MpComplex& o) {
    const MpReal den = o.re * o.re + o.im * o.im;
    MpReal r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }
  friend MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
  friend MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
  friend MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
  friend MpComplex operator/(MpComplex a, const MpComplex& b) { return a /= b; }
  friend MpComplex operator-(const MpComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const MpComplex& a, const MpComplex& b) { return a.re == b.re && a.im == b.im; }
};

/// Sets the MPFR working precision (decimal digits) for the current thread and
/// restores the previous value on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : saved_(MpReal::default_precision()) {
    MpReal::default_precision(digits10);
  }
  ~PrecisionScope() { MpReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

template <>
struct Field<MpComplex> {
  using Real = MpReal;
  static MpReal mag(const MpComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }
  static double to_double(const MpReal& r) { return r.convert_to<double>(); }
  static double log_mag(const MpComplex& z) {
    const MpReal m = mag(z);
    if (m == 0) return -std::numeric_limits<double>::infinity();
    return boost::multiprecision::log(m).convert_to<double>();
  }
  static Complex to_cd(const MpComplex& z) { return {z.re.convert_to<double>(), z.im.convert_to<double>()}; }
  static MpComplex from_cd(const Complex& z) { return MpComplex(z); }
  static MpComplex make(const MpReal& re, const MpReal& im) { return {re, im}; }
  static MpComplex conj(const MpComplex& z) { return {z.re, -z.im}; }
  static MpComplex root_of_unity(const MpReal& r, long num, long den) {
    const MpReal a = MpReal(2) * pi() * MpReal(num) / MpReal(den);
    return {r * boost::multiprecision::cos(a), r * boost::multiprecision::sin(a)};
  }
  static MpReal epsilon() { return std::numeric_limits<MpReal>::epsilon(); }
  static MpReal pow_real(const MpReal& r, int e) { return boost::multiprecision::pow(r, e); }
  static MpReal from_log(double l) { return boost::multiprecision::exp(MpReal(l)); }
  static MpReal pi() { return boost::math::constants::pi<MpReal>(); }

  // In-place kernels on the raw MPFR data; the scratch values follow the
  // current default precision.
  static void mul_add(MpComplex& acc, const MpComplex& z, const MpComplex& a) {
    auto& s = scratch();
    mpfr_t& t0 = s.t0.backend().data();
    mpfr_t& t1 = s.t1.backend().data();
    mpfr_mul(t0, acc.re.backend().data(), z.re.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, acc.im.backend().data(), z.im.backend().data(), MPFR_RNDN);
    mpfr_sub(t0, t0, t1, MPFR_RNDN);
    mpfr_mul(t1, acc.re.backend().data(), z.im.backend().data(), MPFR_RNDN);
    mpfr_fma(t1, acc.im.backend().data(), z.re.backend().data(), t1, MPFR_RNDN);
    mpfr_add(acc.re.backend().data(), t0, a.re.backend().data(), MPFR_RNDN);
    mpfr_add(acc.im.backend().data(), t1, a.im.backend().data(), MPFR_RNDN);
  }
  static void add_mul(MpComplex& acc, const MpComplex& a, const MpComplex& b) { fused(acc, a, b, false); }
  static void sub_mul(MpComplex& acc, const MpComplex& a, const MpComplex& b) { fused(acc, a, b, true); }
  static void add_reciprocal(MpComplex& sum, const MpComplex& a, const MpComplex& b) {
    auto& s = scratch();
    mpfr_t& dr = s.t0.backend().data();
    mpfr_t& di = s.t1.backend().data();
    mpfr_t& den = s.t2.backend().data();
    mpfr_sub(dr, a.re.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_sub(di, a.im.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_sqr(den, dr, MPFR_RNDN);
    mpfr_fma(den, di, di, den, MPFR_RNDN);
    if (mpfr_zero_p(den)) return;
    mpfr_div(dr, dr, den, MPFR_RNDN);
    mpfr_div(di, di, den, MPFR_RNDN);
    mpfr_add(sum.re.backend().data(), sum.re.backend().data(), dr, MPFR_RNDN);
    mpfr_sub(sum.im.backend().data(), sum.im.backend().data(), di, MPFR_RNDN);
  }

 private:
  static void fused(MpComplex& acc, const MpComplex& a, const MpComplex& b, bool subtract) {
    auto& s = scratch();
    mpfr_t& t0 = s.t0.backend().data();
    mpfr_t& t1 = s.t1.backend().data();
    mpfr_mul(t0, a.re.backend().data(), b.re.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, a.im.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_sub(t0, t0, t1, MPFR_RNDN);
    mpfr_mul(t1, a.re.backend().data(), b.im.backend().data(), MPFR_RNDN);
    mpfr_fma(t1, a.im.backend().data(), b.re.backend().data(), t1, MPFR_RNDN);
    if (subtract) {
      mpfr_sub(acc.re.backend().data(), acc.re.backend().data(), t0, MPFR_RNDN);
      mpfr_sub(acc.im.backend().data(), acc.im.backend().data(), t1, MPFR_RNDN);
    } else {
      mpfr_add(acc.re.backend().data(), acc.re.backend().data(), t0, MPFR_RNDN);
      mpfr_add(acc.im.backend().data(), acc.im.backend().data(), t1, MPFR_RNDN);
    }
  }

  struct Scratch {
    unsigned digits = 0;
    MpReal t0, t1, t2;
  };
  static Scratch& scratch() {
    thread_local Scratch s;
    const unsigned d = MpReal::default_precision();
    if (s.digits != d) {
      s.t0 = MpReal(0);
      s.t1 = MpReal(0);
      s.t2 = MpReal(0);
      s.t0.precision(d);
      s.t1.precision(d);
      s.t2.precision(d);
      s.digits = d;
    }
    return s;
  }
};

}  // namespace locuslab
