#pragma once

#include <complex>
#include <vector>

#include "rootcharts/ideal.hpp"
#include "rootcharts/multipoly.hpp"

namespace rc {

// A germ known modulo a monomial ideal: f - poly ∈ ideal.
class Jet {
 public:
  explicit Jet(int q = 0) : poly_(q), ideal_(q) {}
  explicit Jet(MultiPoly p) : poly_(std::move(p)), ideal_(poly_.q()) {}
  Jet(MultiPoly p, PrecisionIdeal I);
  static Jet constant(int q, const Scalar& c) { return Jet(MultiPoly::constant(q, c)); }
  static Jet variable(int q, int i) { return Jet(MultiPoly::variable(q, i)); }
  static Jet monomial(int q, const Exponent& e, const Scalar& c = Scalar(1)) {
    return Jet(MultiPoly::monomial(q, e, c));
  }

  int q() const { return poly_.q(); }
  const MultiPoly& poly() const { return poly_; }
  const PrecisionIdeal& ideal() const { return ideal_; }

  bool exact_data() const { return ideal_.is_zero(); }
  bool scalars_exact() const { return poly_.is_exact(); }
  bool known_zero() const { return poly_.empty(); }
  bool is_zero() const { return poly_.empty() && ideal_.is_zero(); }
  // Decision-grade: an exact zero jet, or a known-zero jet whose unknown part
  // is irrelevant because the caller accepts its ideal.
  bool is_real() const { return poly_.is_real(); }
  Scalar constant_term() const;
  int order() const;  // valuation lower bound of the germ, -1 for exact zero

  Jet reduced(const PrecisionIdeal& extra) const;
  Jet truncated(int K) const;
  Jet with_ideal(const PrecisionIdeal& I) const { return Jet(poly_, I); }

  Jet operator-() const;
  Jet conj() const;
  Jet scaled(const Scalar& c) const;
  Jet monomial_mul(const Exponent& e) const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }
  Jet pow(unsigned k) const;

  Scalar eval(const std::vector<Scalar>& x) const { return poly_.eval(x); }
  std::complex<double> eval(const std::vector<std::complex<double>>& x) const {
    return poly_.eval(x);
  }
  std::string str() const;

 private:
  MultiPoly poly_;
  PrecisionIdeal ideal_;
};

bool operator==(const Jet& a, const Jet& b);
// a and b represent compatible germs: every term of a - b lies in the sum of
// their ideals or has a coefficient ball containing 0.
bool jets_agree(const Jet& a, const Jet& b);

Jet monomial_divide(const Jet& f, const Exponent& alpha);

// x_i = sign_i * y^{images_i}; target dimension q_out.
struct MonomialMap {
  int q_out = 0;
  std::vector<Exponent> images;
  std::vector<int> signs;
};

Jet compose_monomial(const Jet& f, const MonomialMap& m);
// x_i -> x_i + c_i.
Jet compose_translate(const Jet& f, const std::vector<Scalar>& c);
// Translation to a point inside the domain where the unknown tail converges.
// Generator factors in translated variables are units at the new origin and
// are dropped from the ideal.
Jet compose_translate_local(const Jet& f, const std::vector<Scalar>& c);
// f / x^alpha when f is known to be divisible as a germ; the ideal becomes
// the quotient (I : x^alpha).
Jet divide_known_multiple(const Jet& f, const Exponent& alpha);
// x_i -> phi_i with phi_i(0) = 0.
Jet compose_general(const Jet& f, const std::vector<Jet>& phi);

PrecisionIdeal truncation_ideal(int q, int K);
int newton_rounds(int K);
Jet unit_inverse(const Jet& f, int K);
Jet unit_kth_root(const Jet& f, unsigned k, const Scalar& branch, int K = 12);

}  // namespace rc
