#pragma once

#include <utility>
#include <vector>

#include "rootcharts/family.hpp"
#include "rootcharts/linalg.hpp"

namespace rc {

// sigma_1..sigma_n of the given values.
template <class R>
std::vector<R> elementary_symmetric(const std::vector<R>& lambda, const R& proto) {
  std::vector<R> e(lambda.size() + 1, ring_const(proto, 0));
  e[0] = ring_const(proto, 1);
  for (size_t i = 0; i < lambda.size(); ++i)
    for (size_t k = i + 1; k >= 1; --k) e[k] = e[k] + e[k - 1] * lambda[i];
  e.erase(e.begin());
  return e;
}

inline std::vector<Scalar> elementary_symmetric(const std::vector<Scalar>& lambda) {
  return elementary_symmetric(lambda, Scalar());
}

// Power sums s_1..s_m from sigma (sigma_k = 0 beyond its length).
template <class R>
std::vector<R> newton_from_elementary(const std::vector<R>& sigma, int m, const R& proto) {
  int n = static_cast<int>(sigma.size());
  auto sig = [&](int k) { return k <= n ? sigma[static_cast<size_t>(k - 1)] : ring_const(proto, 0); };
  std::vector<R> s(static_cast<size_t>(m) + 1, ring_const(proto, 0));
  s[0] = ring_const(proto, n);
  for (int k = 1; k <= m; ++k) {
    R acc = ring_const(proto, 0);
    for (int j = 1; j < k && j <= n; ++j) {
      R t = sig(j) * s[static_cast<size_t>(k - j)];
      acc = (j % 2) ? acc + t : acc - t;
    }
    if (k <= n) {
      R t = ring_scale(sig(k), Scalar(static_cast<long>(k)));
      acc = (k % 2) ? acc + t : acc - t;
    }
    s[static_cast<size_t>(k)] = acc;
  }
  s.erase(s.begin());
  return s;
}

inline std::vector<Scalar> newton_from_elementary(const std::vector<Scalar>& sigma, int m) {
  return newton_from_elementary(sigma, m, Scalar());
}

// Inverse of newton_from_elementary for m = n.
template <class R>
std::vector<R> elementary_from_newton(const std::vector<R>& s, const R&) {
  int n = static_cast<int>(s.size());
  std::vector<R> sig;
  for (int k = 1; k <= n; ++k) {
    R acc = s[static_cast<size_t>(k - 1)];
    for (int j = 1; j < k; ++j) {
      R t = sig[static_cast<size_t>(j - 1)] * s[static_cast<size_t>(k - j - 1)];
      acc = (j % 2) ? acc - t : acc + t;
    }
    R v = ring_scale(acc, Scalar::rational(1, k));
    sig.push_back((k % 2) ? v : ring_scale(v, Scalar(-1)));
  }
  return sig;
}

inline std::vector<Scalar> elementary_from_newton(const std::vector<Scalar>& s) {
  return elementary_from_newton(s, Scalar());
}

template <class R>
Matrix<R> bezoutiant(const std::vector<R>& a, const R& proto) {
  int n = static_cast<int>(a.size());
  std::vector<R> s = newton_from_elementary(a, std::max(1, 2 * n - 2), proto);
  auto sk = [&](int k) { return k == 0 ? ring_const(proto, n) : s[static_cast<size_t>(k - 1)]; };
  Matrix<R> B(static_cast<size_t>(n), std::vector<R>(static_cast<size_t>(n), ring_const(proto, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[static_cast<size_t>(i)][static_cast<size_t>(j)] = sk(i + j);
  return B;
}

inline Matrix<Scalar> bezoutiant(const std::vector<Scalar>& a) { return bezoutiant(a, Scalar()); }

// Leading principal minors of the Bezoutiant, k = 1..n.
template <class R>
std::vector<R> subdiscriminants(const std::vector<R>& a, const R& proto) {
  Matrix<R> B = bezoutiant(a, proto);
  std::vector<R> d;
  for (size_t k = 1; k <= B.size(); ++k) {
    Matrix<R> Bk(k, std::vector<R>(k, ring_const(proto, 0)));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) Bk[i][j] = B[i][j];
    d.push_back(determinant(Bk, proto));
  }
  return d;
}

inline std::vector<Scalar> subdiscriminants(const std::vector<Scalar>& a) {
  return subdiscriminants(a, Scalar());
}

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

// Exact congruence diagonalization of a symmetric rational matrix.
Inertia inertia(const Matrix<Scalar>& B);

struct HyperbolicityResult {
  bool hyperbolic = false;
  int distinct = 0;
  int distinct_real = 0;
};

HyperbolicityResult hyperbolicity_test(const std::vector<Scalar>& a);

// Cauchy bound 1 + max |a_j|.
double root_bound(const std::vector<Scalar>& a);
double root_bound(const std::vector<std::complex<double>>& a);

struct ShiftResult {
  PolyFamily reduced;
  Jet shift;
};

// P(z + a_1/n) has vanishing a_1.
ShiftResult tschirnhaus_shift(const PolyFamily& P);
// P(z + s) for an arbitrary shift jet.
PolyFamily shift_family(const PolyFamily& P, const Jet& s);

}  // namespace rc
