#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <variant>

#include "rootcharts/bigfloat.hpp"

namespace rc {

struct GaussRational {
  mpq_class re, im;
};

struct ComplexBall {
  BigFloat re, im;
  double rad = 0.0;
};

long default_precision();
void set_default_precision(long bits);

// Exact Gaussian rational or complex ball. Mixing the two yields a ball.
class Scalar {
 public:
  Scalar() : v_(GaussRational{}) {}
  Scalar(long v) : v_(GaussRational{mpq_class(v), mpq_class(0)}) {}
  Scalar(int v) : Scalar(static_cast<long>(v)) {}
  Scalar(const mpq_class& re, const mpq_class& im = mpq_class(0))
      : v_(GaussRational{re, im}) {}
  static Scalar rational(long num, long den);
  static Scalar gauss(const mpq_class& re, const mpq_class& im) { return Scalar(re, im); }
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar ball(BigFloat re, BigFloat im, double rad);
  static Scalar from_complex(std::complex<double> z, double rad, long prec = default_precision());

  bool is_exact() const { return std::holds_alternative<GaussRational>(v_); }
  const GaussRational& exact() const { return std::get<GaussRational>(v_); }
  const ComplexBall& as_ball() const { return std::get<ComplexBall>(v_); }
  ComplexBall to_ball(long prec) const;
  long precision() const;

  Scalar operator-() const;
  Scalar conj() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar pow(unsigned k) const;

  // Exact zero, or a ball around 0 whose midpoint is below the zero tolerance.
  bool is_negligible() const;
  // Decision-grade zero test; an ambiguous ball raises PrecisionLoss.
  bool is_zero() const;
  // Exact nonzero, or a ball excluding 0.
  bool is_invertible() const;
  bool contains_zero() const;
  bool is_real() const;
  bool is_one() const;
  bool exact_equal(const Scalar& o) const;
  // For exact scalars: identical values. For balls: overlapping enclosures.
  bool compatible(const Scalar& o) const;

  std::complex<double> to_complex() const;
  double abs_upper() const;
  double radius() const { return is_exact() ? 0.0 : as_ball().rad; }
  std::string str() const;

 private:
  std::variant<GaussRational, ComplexBall> v_;
};

bool operator==(const Scalar& a, const Scalar& b);

// Best rational approximation with bounded denominator (continued fractions).
mpq_class rational_approx(double x, long max_den);

}  // namespace rc
