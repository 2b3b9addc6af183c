#pragma once

#include <complex>
#include <vector>

namespace rc {

using cplx = std::complex<double>;

// Roots of z^n + sum_j (-1)^j a_j z^{n-j}.
std::vector<cplx> numeric_roots(const std::vector<cplx>& a);
// Roots of sum_k c_k z^k (ascending, c_n != 0).
std::vector<cplx> numeric_roots_ascending(const std::vector<cplx>& c);

// max |P(lambda_i)| relative to sum_k |c_k| |lambda_i|^k.
double relative_residual(const std::vector<cplx>& c, const std::vector<cplx>& roots);

// Hausdorff distance between two finite point sets.
double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);
// min over permutations of max |a_i - b_sigma(i)| (n <= 8).
double matching_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace rc
