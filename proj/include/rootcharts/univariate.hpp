#pragma once

#include <vector>

#include "rootcharts/numeric_roots.hpp"
#include "rootcharts/scalar.hpp"

namespace rc {

// Univariate polynomial in z, ascending Scalar coefficients.
using UPoly = std::vector<Scalar>;

UPoly upoly_trim(UPoly p);
int upoly_degree(const UPoly& p);
UPoly upoly_derivative(const UPoly& p);
Scalar upoly_eval(const UPoly& p, const Scalar& z);
// Exact division with remainder (exact coefficients).
void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem);
UPoly upoly_gcd(UPoly a, UPoly b);  // monic
UPoly upoly_mul(const UPoly& a, const UPoly& b);
std::vector<cplx> upoly_to_complex(const UPoly& p);

struct RootMult {
  Scalar value;
  int mult = 1;
};

// Distinct roots with multiplicities. Exact data: square-free (Yun)
// decomposition, Gaussian-rational roots recognized exactly, the rest refined
// to balls at the given precision. Ball data: numeric clustering at tol.
std::vector<RootMult> upoly_roots(const UPoly& p, long prec, double tol = 1e-6);

// Distinct real roots (exact or real balls) of a polynomial with possibly
// complex coefficients.
std::vector<Scalar> upoly_real_roots(const UPoly& p, long prec);

// Newton refinement of an approximate simple root to a ball.
Scalar refine_simple_root(const UPoly& p, cplx approx, long prec);

}  // namespace rc
