#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rootcharts/tree.hpp"

namespace rc {

struct NcCertificate {
  Exponent alpha;
  Jet unit;
};

enum class NcStatus { Nc, NotNc, Indeterminate };

struct NcResult {
  NcStatus status = NcStatus::NotNc;
  std::optional<NcCertificate> cert;
};

NcResult normal_crossing_test(const Jet& f);

// Minimum of a totally ordered list; IncomparablePair otherwise.
Exponent compare_exponents(const std::vector<Exponent>& alphas);

struct MonomializeOptions {
  int max_depth = 24;
  double radius = 1.0;  // base box half-width
  long precision = 256;
};

struct NcLeaf {
  std::vector<Jet> functions;  // pulled back inputs, then differences
  std::vector<NcCertificate> certs;
  bool exact = true;
};

using NcTree = TreeNode<NcLeaf>;

// Resolves fs together with the listed differences fs[i] - fs[j] by point
// blow-ups (q <= 2). Data that is already normal crossings passes for any q.
NcTree monomialize(const std::vector<Jet>& fs, const std::vector<std::pair<size_t, size_t>>& diffs,
                   const MonomializeOptions& opts = {});

// Checks x^alpha * unit == f modulo the ideal of f.
bool certificate_holds(const Jet& f, const NcCertificate& c);

}  // namespace rc
