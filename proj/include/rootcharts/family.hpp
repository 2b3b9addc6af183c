#pragma once

#include <vector>

#include "rootcharts/jet.hpp"

namespace rc {

// Monic P(z) = z^n + sum_j (-1)^j a_j z^{n-j}; a[j-1] holds a_j.
struct PolyFamily {
  int n = 0;
  int q = 0;
  std::vector<Jet> a;

  static PolyFamily from_coeffs(std::vector<Jet> a);
  // Ascending coefficients c_0..c_n of P in z (c_n = 1).
  std::vector<Jet> z_coeffs() const;
  static PolyFamily from_z_coeffs(const std::vector<Jet>& c);
  std::vector<Scalar> at_origin() const;
  std::vector<std::complex<double>> eval_coeffs(const std::vector<std::complex<double>>& x) const;
  bool exact_data() const;
  bool scalars_exact() const;
  bool is_real() const;
  PrecisionIdeal ideal() const;
  PolyFamily reduced(const PrecisionIdeal& I) const;
  std::string str() const;
};

// P(lambda) and P'(lambda) as jets.
Jet eval_family(const PolyFamily& P, const Jet& lambda);
Jet eval_family_derivative(const PolyFamily& P, const Jet& lambda);

// Ascending z-coefficients of a monic polynomial in Scalars.
std::vector<Scalar> z_coeffs_scalar(const std::vector<Scalar>& a);
std::vector<Scalar> a_from_z_coeffs(const std::vector<Scalar>& c);

}  // namespace rc
