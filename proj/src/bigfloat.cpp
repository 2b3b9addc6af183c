#include "rootcharts/bigfloat.hpp"

#include <cfenv>
#include <cmath>
#include <limits>
#include <vector>

namespace rc {

BigFloat::BigFloat(long prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
  live_ = true;
}

BigFloat::BigFloat(double v, long prec) : BigFloat(prec) { mpfr_set_d(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(const mpq_class& q, long prec) : BigFloat(prec) {
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
  live_ = true;
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
  live_ = true;
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() {
  if (live_) mpfr_clear(v_);
}

double BigFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

double BigFloat::abs_upper() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_abs(t, v_, MPFR_RNDU);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

mpq_class BigFloat::to_mpq() const {
  mpq_class q;
  if (mpfr_zero_p(v_)) return q;
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  q = m;
  if (e > 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  else if (e < 0)
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  return q;
}

std::string BigFloat::str(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

namespace {
double bump(double x) {
  if (std::isnan(x)) return std::numeric_limits<double>::infinity();
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace

double add_up(double a, double b) { return bump(a + b); }
double mul_up(double a, double b) { return bump(a * b); }
double div_up(double a, double b) { return bump(a / b); }

}  // namespace rc
