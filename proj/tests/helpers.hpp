#pragma once

#include <random>
#include <string>

#include "rootcharts/jet.hpp"

namespace rc::test {

inline Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }
inline Scalar gi(long re, long im) { return Scalar(mpq_class(re), mpq_class(im)); }

// Builds a polynomial jet from (coefficient, exponent) pairs.
inline Jet poly(int nvars, std::initializer_list<std::pair<Scalar, Exponent>> terms) {
  MultiPoly p(nvars);
  for (const auto& [c, e] : terms) p.add_term(e, c);
  return Jet(p);
}

inline Scalar random_rational(std::mt19937_64& rng, int span = 5, int den = 4) {
  std::uniform_int_distribution<int> num(-span * den, span * den), dd(1, den);
  return Scalar::rational(num(rng), dd(rng));
}

inline Scalar random_gauss(std::mt19937_64& rng, int span = 3, int den = 3) {
  Scalar re = random_rational(rng, span, den), im = random_rational(rng, span, den);
  return Scalar(re.exact().re, im.exact().re);
}

// Every term of a - b lies in I.
inline bool agree_modulo(const MultiPoly& a, const MultiPoly& b, const PrecisionIdeal& I) {
  MultiPoly d = a - b;
  for (const auto& [e, c] : d.terms())
    if (!I.contains(e)) return false;
  return true;
}

}  // namespace rc::test
