#pragma once

#include <string>
#include <vector>

#include "rootcharts/monomialize.hpp"
#include "rootcharts/univariate.hpp"

namespace rc {

enum class DesingMode { General, Hyperbolic, AJ };

struct DesingOptions {
  int K = 12;
  int max_depth = 24;
  double cluster_tol = 1e-6;
  bool retry = true;
  DesingMode mode = DesingMode::General;
  long precision = 256;
  double radius = 1.0;
};

enum class Soundness { Exact, Numeric };

struct RootChart {
  std::vector<Jet> roots;
  Soundness soundness = Soundness::Exact;
  std::vector<std::string> shift_ledger;
  bool certified = false;
};

using RootTree = TreeNode<RootChart>;

// Single-linkage clusters (indices into values).
std::vector<std::vector<size_t>> cluster_roots(const std::vector<Scalar>& values, double tol);

struct ClusterSplit {
  std::vector<PolyFamily> factors;
  std::vector<Scalar> centers;
};

// Lifts P(0) = prod (z - c_h)^{m_h} to P = prod P_h modulo ideal(P) + deg(K+1).
ClusterSplit split_family(const PolyFamily& P, const std::vector<RootMult>& clusters, int K,
                          double tol = 1e-6);

Jet hensel_root_lift(const PolyFamily& P, const Scalar& root, int K);

RootTree desingularize(const PolyFamily& P, const DesingOptions& opts = {});
RootTree desingularize_hyperbolic(const PolyFamily& P, DesingOptions opts = {});
RootTree desingularize_aj(const PolyFamily& P, DesingOptions opts = {});

// sigma_i(roots) agrees with a_i pulled back along the chart.
bool leaf_certificate(const PolyFamily& P, const ChartMap& chart, const std::vector<Jet>& roots);
// Recomputes every leaf certificate; returns the number of failures.
size_t certify_tree(const PolyFamily& P, RootTree& tree);

long group_order_of(const std::vector<RootMult>& clusters);

struct GlobalPiece {
  Scalar center;
  double radius = 0;
  std::vector<Jet> roots;  // in the local coordinate x - center
};

struct GlobalRoots {
  std::vector<GlobalPiece> pieces;
  double mismatch = 0;  // total value and derivative mismatch at overlaps
};

GlobalRoots curve_roots_global(const PolyFamily& P, const Scalar& lo, const Scalar& hi, int pieces = 4,
                               DesingOptions opts = {});

}  // namespace rc
