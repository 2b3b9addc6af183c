#pragma once

#include <variant>
#include <vector>

#include "rootcharts/family.hpp"

namespace rc {

struct Box {
  std::vector<double> center;
  std::vector<double> radius;
  static Box cube(int q, double r) { return {std::vector<double>(static_cast<size_t>(q), 0.0), std::vector<double>(static_cast<size_t>(q), r)}; }
  bool contains(const std::vector<double>& y, double slack = 1e-12) const;
  Box scaled(double f) const;
};

// Indices are 0-based.
struct BlowUp {
  std::vector<int> center;
  int chart = 0;
};
struct PowerSub {
  Exponent gamma;
  std::vector<int> eps;
};
struct Translate {
  std::vector<Scalar> point;
};
struct Open {
  Box box;
};

using ChartStep = std::variant<BlowUp, PowerSub, Translate, Open>;

// Steps in tree order: steps[0] is taken first from the base coordinates, so
// x = s_0(s_1(...s_k(y))).
struct ChartMap {
  int q = 0;
  std::vector<ChartStep> steps;
  ChartMap then(const ChartStep& s) const;
  ChartMap then(const ChartMap& m) const;
  bool exact() const;
  int count_blowups() const;
  int count_powersubs() const;
};

std::vector<ChartMap> blow_up_charts(int q, const std::vector<int>& I);

// With local = true, translations drop ideal factors that become units at
// the new origin (translation inside the chart domain).
Jet pullback(const Jet& f, const ChartStep& s, bool local = false);
Jet pullback(const Jet& f, const ChartMap& m, bool local = false);
PolyFamily pullback(const PolyFamily& P, const ChartStep& s, bool local = false);
PolyFamily pullback(const PolyFamily& P, const ChartMap& m, bool local = false);

std::vector<double> push_forward_point(const ChartMap& m, std::vector<double> y);
std::vector<Scalar> push_forward_point(const ChartMap& m, std::vector<Scalar> y);

struct Preimage {
  std::vector<double> y;
  bool unique = true;
};

// Preimages inside the box (leaf coordinates). Power substitutions use the
// orthant rule; blow-up charts invert where the chart variable is nonzero;
// Open steps discard points outside their box.
std::vector<Preimage> preimage_points(const ChartMap& m, const std::vector<double>& x, const Box& box);

// psi_bar(x)_i = (-1)^{eps_i} |x_i|^{gamma_i} and its inverse.
std::vector<double> psibar(const Exponent& gamma, const std::vector<int>& eps, const std::vector<double>& x);
std::vector<double> psibar_inverse(const Exponent& gamma, const std::vector<int>& eps, const std::vector<double>& x);

// {prod_{k in axes} y_k = offset} in leaf coordinates.
struct LocusComponent {
  std::vector<int> axes;
  double offset = 0.0;
  bool operator==(const LocusComponent& o) const { return axes == o.axes && offset == o.offset; }
};

std::vector<LocusComponent> exceptional_locus(const ChartMap& m);

// Box of the leaf chart domain in leaf coordinates.
Box leaf_box(const ChartMap& m, const Box& base);

MonomialMap step_monomial_map(int q, const ChartStep& s);

}  // namespace rc
