#include "rootcharts/scalar.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rootcharts/errors.hpp"

namespace rc {

namespace {
long g_precision = 256;

double ulp_factor(long prec) { return std::ldexp(1.0, static_cast<int>(2 - prec)); }

// |re| + |im| upper bound of a ball midpoint.
double mag(const ComplexBall& b) { return add_up(b.re.abs_upper(), b.im.abs_upper()); }

ComplexBall make_ball(long prec) { return ComplexBall{BigFloat(prec), BigFloat(prec), 0.0}; }
}  // namespace

long default_precision() { return g_precision; }
void set_default_precision(long bits) { g_precision = bits; }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::ball(BigFloat re, BigFloat im, double rad) {
  Scalar s;
  if (!(rad >= 0)) rad = std::numeric_limits<double>::infinity();
  s.v_ = ComplexBall{std::move(re), std::move(im), rad};
  return s;
}

Scalar Scalar::from_complex(std::complex<double> z, double rad, long prec) {
  return ball(BigFloat(z.real(), prec), BigFloat(z.imag(), prec), rad);
}

ComplexBall Scalar::to_ball(long prec) const {
  if (!is_exact()) {
    const ComplexBall& b = as_ball();
    if (b.re.prec() >= prec) return b;
    ComplexBall out = make_ball(prec);
    mpfr_set(out.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_set(out.im.get(), b.im.get(), MPFR_RNDN);
    out.rad = b.rad;
    return out;
  }
  const GaussRational& g = exact();
  ComplexBall out{BigFloat(g.re, prec), BigFloat(g.im, prec), 0.0};
  out.rad = mul_up(mag(out), ulp_factor(prec));
  return out;
}

long Scalar::precision() const { return is_exact() ? 0 : as_ball().re.prec(); }

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(-exact().re, -exact().im);
  ComplexBall b = as_ball();
  mpfr_neg(b.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_neg(b.im.get(), b.im.get(), MPFR_RNDN);
  Scalar s;
  s.v_ = std::move(b);
  return s;
}

Scalar Scalar::conj() const {
  if (is_exact()) return Scalar(exact().re, -exact().im);
  ComplexBall b = as_ball();
  mpfr_neg(b.im.get(), b.im.get(), MPFR_RNDN);
  Scalar s;
  s.v_ = std::move(b);
  return s;
}

namespace {
long joint_prec(const Scalar& a, const Scalar& b) {
  long p = std::max(a.precision(), b.precision());
  return p > 0 ? p : default_precision();
}

Scalar wrap(ComplexBall b) { return Scalar::ball(std::move(b.re), std::move(b.im), b.rad); }

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b, bool sub) {
  long prec = std::max(a.re.prec(), b.re.prec());
  ComplexBall r = make_ball(prec);
  if (sub) {
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  } else {
    mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  }
  r.rad = add_up(add_up(a.rad, b.rad), mul_up(mag(r), ulp_factor(prec)));
  return r;
}

ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b) {
  long prec = std::max(a.re.prec(), b.re.prec());
  ComplexBall r = make_ball(prec);
  BigFloat t1(prec), t2(prec);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  double ma = mag(a), mb = mag(b);
  double prop = add_up(add_up(mul_up(ma, b.rad), mul_up(mb, a.rad)), mul_up(a.rad, b.rad));
  double round = mul_up(mul_up(ma, mb), 2 * ulp_factor(prec));
  r.rad = add_up(prop, round);
  return r;
}

ComplexBall ball_inv(const ComplexBall& b) {
  long prec = b.re.prec();
  // |mid| lower bound from the Euclidean norm rounded down.
  BigFloat n2(prec), t(prec);
  mpfr_sqr(n2.get(), b.re.get(), MPFR_RNDD);
  mpfr_sqr(t.get(), b.im.get(), MPFR_RNDD);
  mpfr_add(n2.get(), n2.get(), t.get(), MPFR_RNDD);
  BigFloat nrm(prec);
  mpfr_sqrt(nrm.get(), n2.get(), MPFR_RNDD);
  double lo = mpfr_get_d(nrm.get(), MPFR_RNDD);
  if (!(lo > b.rad)) fail(ErrorKind::DivisionByZero, "ball division by a ball containing 0");
  ComplexBall r = make_ball(prec);
  mpfr_div(r.re.get(), b.re.get(), n2.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), b.im.get(), n2.get(), MPFR_RNDN);
  mpfr_neg(r.im.get(), r.im.get(), MPFR_RNDN);
  double denom = (lo - b.rad) * lo * (1 - 1e-15);
  double prop = div_up(b.rad, denom);
  r.rad = add_up(prop, mul_up(mag(r), 4 * ulp_factor(prec)));
  return r;
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact())
    return Scalar(a.exact().re + b.exact().re, a.exact().im + b.exact().im);
  long p = joint_prec(a, b);
  return wrap(ball_add(a.to_ball(p), b.to_ball(p), false));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact())
    return Scalar(a.exact().re - b.exact().re, a.exact().im - b.exact().im);
  long p = joint_prec(a, b);
  return wrap(ball_add(a.to_ball(p), b.to_ball(p), true));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.exact();
    const auto& y = b.exact();
    if (y.im == 0) return Scalar(x.re * y.re, x.im * y.re);
    if (x.im == 0) return Scalar(x.re * y.re, x.re * y.im);
    return Scalar(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }
  long p = joint_prec(a, b);
  return wrap(ball_mul(a.to_ball(p), b.to_ball(p)));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.exact();
    const auto& y = b.exact();
    if (y.re == 0 && y.im == 0) fail(ErrorKind::DivisionByZero, "exact division by zero");
    if (y.im == 0) return Scalar(x.re / y.re, x.im / y.re);
    mpq_class d = y.re * y.re + y.im * y.im;
    return Scalar((x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d);
  }
  long p = joint_prec(a, b);
  if (b.is_exact()) {
    if (b.exact().re == 0 && b.exact().im == 0)
      fail(ErrorKind::DivisionByZero, "division by exact zero");
    return a * (Scalar(1) / b);
  }
  return wrap(ball_mul(a.to_ball(p), ball_inv(b.to_ball(p))));
}

Scalar Scalar::pow(unsigned k) const {
  Scalar r(1), base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

bool Scalar::contains_zero() const {
  if (is_exact()) return exact().re == 0 && exact().im == 0;
  const ComplexBall& b = as_ball();
  double lo_re = b.re.abs_upper(), lo_im = b.im.abs_upper();
  // Conservative: the box of the midpoint against the radius.
  return std::hypot(lo_re, lo_im) * (1 - 1e-15) <= b.rad;
}

namespace {
bool below_tolerance(const ComplexBall& b) {
  double tol = std::ldexp(1.0, -static_cast<int>(b.re.prec() / 2));
  return b.re.abs_upper() <= tol && b.im.abs_upper() <= tol && b.rad <= tol;
}
}  // namespace

bool Scalar::is_negligible() const {
  if (is_exact()) return exact().re == 0 && exact().im == 0;
  return contains_zero() && below_tolerance(as_ball());
}

bool Scalar::is_zero() const {
  if (is_exact()) return exact().re == 0 && exact().im == 0;
  if (!contains_zero()) return false;
  if (below_tolerance(as_ball())) return true;
  fail(ErrorKind::PrecisionLoss, "ambiguous ball in zero test: " + str());
}

bool Scalar::is_invertible() const {
  if (is_exact()) return !(exact().re == 0 && exact().im == 0);
  return !contains_zero();
}

bool Scalar::is_real() const {
  if (is_exact()) return exact().im == 0;
  const ComplexBall& b = as_ball();
  return b.im.abs_upper() <= b.rad || b.im.is_zero();
}

bool Scalar::is_one() const { return is_exact() && exact().re == 1 && exact().im == 0; }

bool Scalar::exact_equal(const Scalar& o) const {
  if (!is_exact() || !o.is_exact()) return false;
  return exact().re == o.exact().re && exact().im == o.exact().im;
}

bool Scalar::compatible(const Scalar& o) const {
  if (is_exact() && o.is_exact()) return exact_equal(o);
  return (*this - o).contains_zero();
}

std::complex<double> Scalar::to_complex() const {
  if (is_exact()) return {exact().re.get_d(), exact().im.get_d()};
  return {as_ball().re.to_double(), as_ball().im.to_double()};
}

double Scalar::abs_upper() const {
  if (is_exact()) {
    double r = std::abs(to_complex());
    return r == 0 ? 0.0 : add_up(r, r * 1e-15);
  }
  const ComplexBall& b = as_ball();
  return add_up(std::hypot(b.re.abs_upper(), b.im.abs_upper()) * (1 + 1e-15), b.rad);
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (is_exact()) {
    const auto& g = exact();
    if (g.im == 0) {
      os << g.re.get_str();
    } else if (g.re == 0) {
      os << g.im.get_str() << "i";
    } else {
      os << "(" << g.re.get_str() << (g.im > 0 ? "+" : "") << g.im.get_str() << "i)";
    }
    return os.str();
  }
  const auto& b = as_ball();
  os << "[" << b.re.str(12) << (b.im.sign() >= 0 ? "+" : "") << b.im.str(12) << "i +/- " << b.rad
     << "]";
  return os.str();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact_equal(b);
  const auto& x = a.as_ball();
  const auto& y = b.as_ball();
  return mpfr_equal_p(x.re.get(), y.re.get()) && mpfr_equal_p(x.im.get(), y.im.get()) &&
         x.rad == y.rad;
}

mpq_class rational_approx(double x, long max_den) {
  if (!std::isfinite(x)) return mpq_class(0);
  long sign = x < 0 ? -1 : 1;
  double v = std::fabs(x);
  // Convergents p_k/q_k of the continued fraction of v.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (a > 1e15) break;
    mpz_class ai(static_cast<long>(a));
    mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (q1 == 0) return mpq_class(0);
  mpq_class out(p1 * sign, q1);
  out.canonicalize();
  return out;
}

}  // namespace rc
