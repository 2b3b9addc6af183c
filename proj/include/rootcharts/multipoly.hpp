#pragma once

#include <complex>
#include <map>
#include <vector>

#include "rootcharts/exponent.hpp"
#include "rootcharts/scalar.hpp"

namespace rc {

// Sparse polynomial in q real parameters with Scalar coefficients.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Scalar>;

  explicit MultiPoly(int q = 0) : q_(q) {}
  static MultiPoly constant(int q, const Scalar& c);
  static MultiPoly monomial(int q, const Exponent& e, const Scalar& c = Scalar(1));
  static MultiPoly variable(int q, int i);

  int q() const { return q_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  // Accumulates into the coefficient of e and drops negligible results.
  void add_term(const Exponent& e, const Scalar& c);
  void set_term(const Exponent& e, const Scalar& c);
  void erase(const Exponent& e) { terms_.erase(e); }
  Scalar coeff(const Exponent& e) const;
  Scalar constant_term() const;

  bool is_exact() const;
  bool is_real() const;
  int degree() const;
  int order() const;  // lowest total degree, -1 when empty

  MultiPoly operator-() const;
  MultiPoly conj() const;
  MultiPoly scaled(const Scalar& c) const;
  MultiPoly shifted(const Exponent& e) const;  // multiply by x^e
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  Scalar eval(const std::vector<Scalar>& x) const;
  std::complex<double> eval(const std::vector<std::complex<double>>& x) const;
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int q_;
  Terms terms_;
};

}  // namespace rc
