#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "rootcharts/errors.hpp"
#include "rootcharts/harness.hpp"
#include "rootcharts/numeric_roots.hpp"
#include "rootcharts/symfun.hpp"

namespace rc {

namespace {

double residual(const std::vector<cplx>& a, cplx z) {
  cplx p = 1;
  for (size_t j = 0; j < a.size(); ++j) p = p * z + (j % 2 == 0 ? -a[j] : a[j]);
  return std::abs(p);
}

struct Eval {
  double res = 0, match = 0;
};

Eval evaluate_leaf(const PolyFamily& P, const ChartMap& chart, const std::vector<Jet>& roots, const Point& y) {
  Eval e;
  try {
    Point x = push_forward_point(chart, y);
    std::vector<cplx> xc(x.begin(), x.end()), yc(y.begin(), y.end());
    auto a = P.eval_coeffs(xc);
    std::vector<cplx> lam;
    for (const auto& r : roots) {
      lam.push_back(r.eval(yc));
      e.res = std::max(e.res, residual(a, lam.back()));
    }
    e.match = matching_distance(lam, numeric_roots(a)) / root_bound(a);
  } catch (const Error&) {
    e.res = e.match = std::numeric_limits<double>::infinity();
  }
  return e;
}

}  // namespace

VerificationReport verify_roots(const PolyFamily& P, const RootTree& tree, const VerifyOptions& o) {
  if (o.samples <= 0) fail(ErrorKind::InvalidArgument, "verify needs a positive sample count");
  const Box base = o.base.center.empty() ? Box::cube(P.q, 1.0) : o.base;
  const bool par = o.exec == Exec::Parallel;
  VerificationReport rep;
  auto ls = leaves(tree, P.q);
  std::vector<Box> boxes;
  for (size_t li = 0; li < ls.size(); ++li) {
    const auto& lr = ls[li];
    Box lb = leaf_box(lr.chart, base);
    boxes.push_back(lb);
    for (auto& r : lb.radius)
      if (!std::isfinite(r)) r = 1.0;
    std::mt19937_64 rng(o.seed + 7919 * li);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Point> ys(static_cast<size_t>(o.samples));
    for (auto& y : ys) {
      y.resize(static_cast<size_t>(P.q));
      for (size_t i = 0; i < y.size(); ++i) y[i] = lb.center[i] + o.leaf_fraction * lb.radius[i] * u(rng);
    }
    std::vector<Eval> ev(ys.size());
    const auto S = static_cast<std::int64_t>(ys.size());
#pragma omp parallel for schedule(dynamic, 8) if (par)
    for (std::int64_t k = 0; k < S; ++k)
      ev[static_cast<size_t>(k)] = evaluate_leaf(P, lr.chart, lr.payload->roots, ys[static_cast<size_t>(k)]);
    LeafVerification lv;
    lv.leaf = li;
    lv.samples = ys.size();
    lv.soundness = lr.payload->soundness;
    for (const auto& e : ev) {
      lv.max_residual = std::max(lv.max_residual, e.res);
      lv.max_match = std::max(lv.max_match, e.match);
    }
    rep.max_residual = std::max(rep.max_residual, lv.max_residual);
    rep.max_match = std::max(rep.max_match, lv.max_match);
    (lv.soundness == Soundness::Exact ? rep.exact_leaves : rep.numeric_leaves)++;
    rep.leaves.push_back(lv);
  }

  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point> xs(static_cast<size_t>(o.samples));
  for (auto& x : xs) {
    x.resize(static_cast<size_t>(P.q));
    for (size_t i = 0; i < x.size(); ++i) x[i] = base.center[i] + o.coverage_radius * u(rng);
  }
  std::vector<char> hit(xs.size(), 0);
  const auto X = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 8) if (par)
  for (std::int64_t k = 0; k < X; ++k) {
    auto kk = static_cast<size_t>(k);
    for (size_t li = 0; li < ls.size() && !hit[kk]; ++li)
      if (!preimage_points(ls[li].chart, xs[kk], boxes[li]).empty()) hit[kk] = 1;
  }
  for (char h : hit) (h ? rep.covered : rep.uncovered)++;
  rep.coverage = static_cast<double>(rep.covered) / static_cast<double>(xs.size());
  rep.pass = rep.max_residual <= o.tol && rep.max_match <= o.match_tol && rep.coverage >= o.min_coverage;
  return rep;
}

}  // namespace rc
