#include "rootcharts/linalg.hpp"

#include "rootcharts/errors.hpp"

namespace rc {

std::vector<Jet> solve_unit(Matrix<Jet> M, std::vector<Jet> b, int K) {
  size_t n = M.size();
  if (b.size() != n) fail(ErrorKind::DimensionMismatch, "solve_unit right-hand side");
  std::vector<size_t> perm_col(n);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (M[r][c].constant_term().is_invertible()) {
        piv = r;
        break;
      }
    if (piv == n) fail(ErrorKind::PivotNotUnit, "no unit pivot in column " + std::to_string(c));
    std::swap(M[piv], M[c]);
    std::swap(b[piv], b[c]);
    Jet inv = unit_inverse(M[c][c], K);
    for (size_t j = c; j < n; ++j) M[c][j] = M[c][j] * inv;
    b[c] = b[c] * inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c].is_zero()) continue;
      Jet f = M[r][c];
      for (size_t j = c; j < n; ++j) M[r][j] = M[r][j] - f * M[c][j];
      b[r] = b[r] - f * b[c];
    }
  }
  return b;
}

}  // namespace rc
