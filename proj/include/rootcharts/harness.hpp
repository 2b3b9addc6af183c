#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rootcharts/desing.hpp"
#include "rootcharts/eigen.hpp"
#include "rootcharts/regularity.hpp"

namespace rc {

using json = nlohmann::ordered_json;

struct VerifyOptions {
  int samples = 200;
  double tol = 1e-8;         // residual
  double match_tol = 1e-6;   // against numeric roots, scaled by root_bound
  double leaf_fraction = 0.05;    // sample y in the leaf box scaled by this
  double coverage_radius = 0.05;  // coverage points x in this cube about the seed
  double min_coverage = 0.99;
  unsigned long seed = 1;
  Box base;  // chart domain; empty means the cube of radius 1
  Exec exec = Exec::Parallel;
};

struct LeafVerification {
  size_t leaf = 0;
  size_t samples = 0;
  double max_residual = 0;  // max |P(pi(y))(lambda(y))|
  double max_match = 0;     // multiset distance to numeric roots
  Soundness soundness = Soundness::Exact;
};

struct VerificationReport {
  std::vector<LeafVerification> leaves;
  double max_residual = 0;
  double max_match = 0;
  size_t covered = 0;
  size_t uncovered = 0;
  double coverage = 0;
  size_t exact_leaves = 0;
  size_t numeric_leaves = 0;
  bool pass = false;
};

VerificationReport verify_roots(const PolyFamily& P, const RootTree& tree, const VerifyOptions& opts = {});

enum class ProblemKind { Polynomial, Matrix };

struct ProblemInput {
  std::string name;
  ProblemKind kind = ProblemKind::Polynomial;
  int n = 0;
  int q = 0;
  std::vector<std::string> variables;
  PolyFamily poly;      // kind == Polynomial
  MatrixFamily matrix;  // kind == Matrix
  json options = json::object();
  json expect = json::object();
};

// Scalars: integer, "p/q", "i", "-3/2*i", or {"re": ..., "im": ...}.
Scalar scalar_from_json(const json& j);
json scalar_to_json(const Scalar& s);
Jet jet_from_json(const json& j, int q);
json jet_to_json(const Jet& f);
ChartStep step_from_json(const json& j, int q);
json step_to_json(const ChartStep& s);

ProblemInput problem_from_json(const json& j);
json problem_to_json(const ProblemInput& p);
ProblemInput read_problem(const std::string& path);

json tree_to_json(const RootTree& t, int q);
RootTree root_tree_from_json(const json& j, int q);
json eigen_tree_to_json(const EigenTree& t, int q);
json verification_to_json(const VerificationReport& r);
json regularity_to_json(const RegularityReport& r);

int cli_main(int argc, char** argv);

}  // namespace rc
