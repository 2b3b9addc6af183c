#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace rc {

// Owning wrapper over an mpfr_t. Arithmetic is done through free functions
// with explicit rounding so the ball layer can track errors.
class BigFloat {
 public:
  explicit BigFloat(long prec = 256);
  BigFloat(double v, long prec);
  BigFloat(const mpq_class& q, long prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }

  double to_double() const;
  double abs_upper() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  mpq_class to_mpq() const;
  std::string str(int digits = 20) const;

 private:
  mpfr_t v_;
  bool live_ = false;
};

// Upward-rounded helpers on plain doubles, used for ball radii.
double add_up(double a, double b);
double mul_up(double a, double b);
double div_up(double a, double b);

}  // namespace rc
