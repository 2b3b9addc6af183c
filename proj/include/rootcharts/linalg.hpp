#pragma once

#include <unordered_map>
#include <vector>

#include "rootcharts/jet.hpp"

namespace rc {

template <class R>
using Matrix = std::vector<std::vector<R>>;

inline Scalar ring_const(const Scalar&, long v) { return Scalar(v); }
inline Jet ring_const(const Jet& proto, long v) { return Jet::constant(proto.q(), Scalar(v)); }
inline Scalar ring_scale(const Scalar& x, const Scalar& c) { return x * c; }
inline Jet ring_scale(const Jet& x, const Scalar& c) { return x.scaled(c); }

// Laplace expansion along rows, memoized by the set of remaining columns.
template <class R>
R determinant(const Matrix<R>& M, const R& proto) {
  size_t n = M.size();
  if (n == 0) return ring_const(proto, 1);
  std::unordered_map<unsigned, R> memo;
  auto rec = [&](auto&& self, size_t row, unsigned mask) -> R {
    if (row == n) return ring_const(proto, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    R acc = ring_const(proto, 0);
    int pos = 0;
    for (size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const R& e = M[row][c];
      bool zero;
      if constexpr (std::is_same_v<R, Jet>)
        zero = e.is_zero();
      else
        zero = e.is_negligible();
      if (!zero) {
        R sub = self(self, row + 1, mask & ~(1u << c));
        acc = (pos % 2) ? acc - e * sub : acc + e * sub;
      }
      ++pos;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, 0, (1u << n) - 1);
}

template <class R>
Matrix<R> mat_mul(const Matrix<R>& A, const Matrix<R>& B, const R& proto) {
  size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
  Matrix<R> C(n, std::vector<R>(m, ring_const(proto, 0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t l = 0; l < k; ++l) C[i][j] = C[i][j] + A[i][l] * B[l][j];
  return C;
}

// Solves M u = b over the jet ring, choosing pivots with invertible constant
// term. Inverses are truncated at order K.
std::vector<Jet> solve_unit(Matrix<Jet> M, std::vector<Jet> b, int K);

}  // namespace rc
