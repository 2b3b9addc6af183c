#include "rootcharts/symfun.hpp"

#include <algorithm>
#include <cmath>

#include "rootcharts/errors.hpp"

namespace rc {

Inertia inertia(const Matrix<Scalar>& B) {
  size_t n = B.size();
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const Scalar& s = B[i][j];
      if (!s.is_exact() || s.exact().im != 0)
        fail(ErrorKind::NonReal, "inertia needs an exact real symmetric matrix");
      M[i][j] = s.exact().re;
    }
  Inertia out;
  std::vector<bool> alive(n, true);
  size_t left = n;
  while (left > 0) {
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (alive[i] && M[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      size_t pi = n, pj = n;
      for (size_t i = 0; i < n && pi == n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (alive[i] && alive[j] && M[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      // Congruence: add row/column pj into row/column pi.
      for (size_t k = 0; k < n; ++k) M[pi][k] += M[pj][k];
      for (size_t k = 0; k < n; ++k) M[k][pi] += M[k][pj];
      piv = pi;
    }
    mpq_class d = M[piv][piv];
    if (d > 0)
      ++out.positive;
    else
      ++out.negative;
    for (size_t r = 0; r < n; ++r) {
      if (!alive[r] || r == piv || M[r][piv] == 0) continue;
      mpq_class f = M[r][piv] / d;
      for (size_t c = 0; c < n; ++c)
        if (alive[c]) M[r][c] -= f * M[piv][c];
    }
    alive[piv] = false;
    --left;
  }
  out.zero = static_cast<int>(n) - out.positive - out.negative;
  return out;
}

HyperbolicityResult hyperbolicity_test(const std::vector<Scalar>& a) {
  for (const auto& x : a)
    if (!x.is_exact() || x.exact().im != 0)
      fail(ErrorKind::NonReal, "hyperbolicity test needs exact real coefficients");
  Inertia in = inertia(bezoutiant(a));
  HyperbolicityResult r;
  r.distinct = in.positive + in.negative;
  r.distinct_real = in.positive - in.negative;
  r.hyperbolic = in.negative == 0;
  return r;
}

double root_bound(const std::vector<Scalar>& a) {
  double m = 0;
  for (const auto& x : a) m = std::max(m, x.abs_upper());
  return add_up(1.0, m);
}

double root_bound(const std::vector<std::complex<double>>& a) {
  double m = 0;
  for (const auto& x : a) m = std::max(m, std::abs(x));
  return 1.0 + m;
}

PolyFamily shift_family(const PolyFamily& P, const Jet& s) {
  // Taylor shift of the z-coefficients: c'_k = sum_{m>=k} binom(m,k) c_m s^{m-k}.
  auto c = P.z_coeffs();
  int n = P.n;
  std::vector<Jet> spow{Jet::constant(P.q, Scalar(1))};
  for (int k = 1; k <= n; ++k) spow.push_back(spow.back() * s);
  std::vector<Jet> out(static_cast<size_t>(n) + 1, Jet(P.q));
  for (int k = 0; k <= n; ++k) {
    Jet acc(P.q);
    for (int m = k; m <= n; ++m) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
      acc = acc + (c[static_cast<size_t>(m)] * spow[static_cast<size_t>(m - k)]).scaled(Scalar(mpq_class(b)));
    }
    out[static_cast<size_t>(k)] = acc;
  }
  out[static_cast<size_t>(n)] = Jet::constant(P.q, Scalar(1));
  return PolyFamily::from_z_coeffs(out);
}

ShiftResult tschirnhaus_shift(const PolyFamily& P) {
  Jet s = P.a[0].scaled(Scalar::rational(1, P.n));
  if (s.is_zero()) return {P, Jet(P.q)};
  PolyFamily R = shift_family(P, s);
  // a_1 vanishes identically; drop any rounding residue of ball data.
  R.a[0] = Jet(MultiPoly(P.q), R.a[0].ideal());
  return {R, s};
}

}  // namespace rc
