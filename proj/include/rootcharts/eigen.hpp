#pragma once

#include <vector>

#include "rootcharts/desing.hpp"
#include "rootcharts/linalg.hpp"

namespace rc {

struct MatrixFamily {
  int n = 0;
  int q = 0;
  Matrix<Jet> A;

  static MatrixFamily from(Matrix<Jet> A);
  MatrixFamily conj_transpose() const;
  std::string str() const;
};

// det(z - A) as a monic family, by principal minors (n <= 6).
PolyFamily characteristic_family(const MatrixFamily& A);

struct Normality {
  bool normal = false;
  bool hermitian = false;
};

Normality normality_check(const MatrixFamily& A);

struct KernelFrame {
  std::vector<std::vector<Jet>> basis;  // columns
  std::vector<size_t> free;             // basis[k][free[l]] = (k == l)
};

// Reduced row echelon form over the jet ring. Pivots are the first row (by
// index) whose entry is a unit; leftover rows must vanish.
KernelFrame kernel_frame(const Matrix<Jet>& B, int K = 12);

struct EigenChart {
  std::vector<Jet> eigenvalues;
  std::vector<std::vector<Jet>> eigenvectors;
  Soundness soundness = Soundness::Exact;
  bool certified = false;
};

using EigenTree = TreeNode<EigenChart>;

EigenTree eigen_desingularize(const MatrixFamily& A, const DesingOptions& opts = {});

// (A o chart) v_i - lambda_i v_i vanishes modulo the leaf ideals.
bool eigen_certificate(const MatrixFamily& A, const ChartMap& chart, const EigenChart& E);
size_t certify_eigen_tree(const MatrixFamily& A, EigenTree& tree);

}  // namespace rc
