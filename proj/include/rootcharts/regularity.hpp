#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "rootcharts/desing.hpp"

namespace rc {

using cplx = std::complex<double>;
using Point = std::vector<double>;
using Field = std::function<cplx(const Point&)>;

struct Sample {
  cplx value;
  int id = 0;  // chart or continuation id; -1 when uncovered
};
using Sampler = std::function<Sample(const Point&)>;

struct SelectionValue {
  std::vector<cplx> values;
  int id = -1;
};

// Evaluation rule x -> n root values. Tree selections patch leaves in
// depth-first order and use preimage_points, so power substitutions resolve
// to the orthant of x. Series values are polished by Newton steps on P(x).
struct RootSelection {
  int n = 0;
  int q = 0;
  std::function<SelectionValue(const Point&)> eval;
  std::vector<Point> locus;  // base points on the image of exceptional loci
};

RootSelection tree_selection(const PolyFamily& P, const RootTree& tree, const Box& base);
// Numeric roots on a grid of spacing h over box, continued row by row by
// nearest matching; evaluation returns the nearest node.
RootSelection continuation_selection(const PolyFamily& P, const Box& box, double h);

Sampler sampler_of(const Field& f);
Sampler sampler_of(const RootSelection& sel, int root);

struct GridSpec {
  Box box;
  double h = 1.0 / 64;
  std::vector<Point> marks;                                   // cells containing these go to E
  std::function<bool(const Point& center, double h)> exceptional;  // optional
};

enum class Exec { Serial, Parallel };

struct LevelEstimate {
  double h = 0;
  double value = 0;  // sum over non-E cells of sum_i |d_i f|^p h^q
  size_t cells = 0;
  size_t e_cells = 0;
  double e_measure = 0;  // e_cells * h^(q-1)
  size_t jump_cells = 0;
  double jump_mass = 0;  // sum over jump edges of |df| h^(q-1)
  double sup_off_e = 0;
  std::vector<Point> jump_points;  // up to 32 jump edge midpoints, evenly spread in index order
};

struct GradOptions {
  double p = 1.0;
  int levels = 3;  // h, h/2, h/4, ...
  double jump_threshold = 10.0;
  Exec exec = Exec::Parallel;
};

std::vector<LevelEstimate> grad_lp_estimate(const Sampler& f, const GridSpec& grid, const GradOptions& opts = {});

// One refinement level; the kernel shared by grad_lp_estimate and the bench.
LevelEstimate grid_level(const Sampler& f, const GridSpec& grid, double h, double p, double jump_threshold,
                         Exec exec);

struct SquareCube {
  Point center;
  double half = 0;
};
// {(r, phi): |r - x0| < eps, phi within eps of +-pi}
struct PolarCube {
  double x0 = 0;
  double eps = 0;
};

double mean_oscillation(const Field& f, const SquareCube& Q, int nodes = 64);
double mean_oscillation(const Field& f, const PolarCube& Q, int nodes = 64);
double polar_cube_im_sqrt_mo(double x0, double eps);  // closed form for Im sqrt(z)

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

struct CoeffPair {
  std::vector<cplx> a, b;  // a_j = sigma_j(roots)
};

struct HolderFit {
  double slope = 0;
  double intercept = 0;
  size_t used = 0;
  bool enough = false;  // at least 30 usable pairs
  bool pass = false;    // enough and slope >= 1/n - 0.05
};

HolderFit holder_probe(const std::vector<CoeffPair>& pairs, int n);
// z^n against random perturbations of log-uniform size in [1e-8, 1e-1].
std::vector<CoeffPair> holder_ensemble(int n, int count, unsigned long seed);
// Same perturbations around the coefficient vector a.
std::vector<CoeffPair> holder_ensemble(const std::vector<cplx>& a, int count, unsigned long seed);

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

struct RegularityReport {
  std::vector<LevelEstimate> l1;
  std::vector<LevelEstimate> l2;
  std::vector<double> mo_sizes;
  std::vector<double> mo_values;
  Verdict w1 = Verdict::Inconclusive;  // E proxy bounded
  Verdict w2 = Verdict::Inconclusive;  // bounded off E
  Verdict w3 = Verdict::Inconclusive;  // gradient in L1
  Verdict w11 = Verdict::Inconclusive; // no jump part
  Verdict vmo = Verdict::Inconclusive;
  std::vector<std::string> notes;
};

RegularityReport sbv_report(const Sampler& f, const GridSpec& grid, int levels = 3, Exec exec = Exec::Parallel);
RegularityReport sbv_report(const RootSelection& sel, int root, const GridSpec& grid, int levels = 3,
                            Exec exec = Exec::Parallel);

std::string report_csv(const RegularityReport& r);

// Eigenvector angle variation of the flat Hermitian family
// exp(-1/x^2) [[cos 2/x, sin 2/x], [sin 2/x, -cos 2/x]] on [x_min, x_max].
double flat_family_angle_variation(double x_min, double x_max, int samples);

}  // namespace rc
