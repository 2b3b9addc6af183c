#include "rootcharts/regularity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "rootcharts/numeric_roots.hpp"

namespace rc {

namespace {

double kronecker(size_t t, size_t i) {
  static const double alpha[] = {0.6180339887498949, 0.4142135623730951, 0.7320508075688772, 0.2360679774997897};
  double v = 0.5 + static_cast<double>(t + 1) * alpha[i % 4];
  return v - std::floor(v);
}

std::vector<Point> sample_locus(const ChartMap& chart, const Box& leaf, const Box& base, size_t count) {
  std::vector<Point> out;
  const size_t q = leaf.center.size();
  double cap = 0;
  for (double r : base.radius) cap = std::max(cap, std::abs(r));
  for (double c : base.center) cap += std::abs(c);
  cap = std::max(cap, 1.0) * 8;
  for (const auto& comp : exceptional_locus(chart)) {
    if (comp.axes.empty()) continue;
    for (size_t t = 0; t < count; ++t) {
      Point y(q);
      for (size_t i = 0; i < q; ++i) {
        double r = std::isfinite(leaf.radius[i]) ? leaf.radius[i] : cap;
        y[i] = leaf.center[i] + r * (2 * kronecker(t, i) - 1);
      }
      auto k0 = static_cast<size_t>(comp.axes[0]);
      double rest = 1;
      for (size_t a = 1; a < comp.axes.size(); ++a) rest *= y[static_cast<size_t>(comp.axes[a])];
      if (comp.offset == 0.0) {
        y[k0] = 0;
      } else {
        if (rest == 0.0) continue;
        y[k0] = comp.offset / rest;
      }
      Point x = push_forward_point(chart, y);
      bool finite = true;
      for (double v : x) finite = finite && std::isfinite(v);
      if (finite && base.contains(x, 1e-9)) out.push_back(x);
    }
  }
  return out;
}

// Newton on z^n + sum (-1)^j a_j z^{n-j}; the chart value picks the branch.
cplx polish(const std::vector<cplx>& a, cplx z) {
  for (int it = 0; it < 20; ++it) {
    cplx p = 1, dp = 0;
    for (size_t j = 0; j < a.size(); ++j) {
      dp = dp * z + p;
      p = p * z + (j % 2 == 0 ? -a[j] : a[j]);
    }
    if (dp == cplx(0)) break;
    cplx dz = p / dp;
    z -= dz;
    if (std::abs(dz) <= 1e-16 * std::abs(z)) break;
  }
  return z;
}

}  // namespace

RootSelection tree_selection(const PolyFamily& P, const RootTree& tree, const Box& base) {
  struct Leaf {
    ChartMap chart;
    Box box;
    std::vector<Jet> roots;
  };
  auto data = std::make_shared<std::vector<Leaf>>();
  RootSelection sel;
  sel.n = P.n;
  sel.q = P.q;
  for (const auto& lr : leaves(tree, P.q)) {
    Leaf l{lr.chart, leaf_box(lr.chart, base), lr.payload->roots};
    auto pts = sample_locus(l.chart, l.box, base, 400);
    sel.locus.insert(sel.locus.end(), pts.begin(), pts.end());
    data->push_back(std::move(l));
  }
  sel.eval = [data, P](const Point& x) {
    SelectionValue v;
    for (size_t i = 0; i < data->size(); ++i) {
      const Leaf& l = (*data)[i];
      auto pre = preimage_points(l.chart, x, l.box);
      if (pre.empty()) continue;
      std::vector<cplx> y(pre[0].y.begin(), pre[0].y.end());
      std::vector<cplx> xc(x.begin(), x.end());
      auto a = P.eval_coeffs(xc);
      for (const auto& r : l.roots) v.values.push_back(polish(a, r.eval(y)));
      v.id = static_cast<int>(i);
      return v;
    }
    std::vector<cplx> xc(x.begin(), x.end());
    v.values = numeric_roots(P.eval_coeffs(xc));
    v.id = -1;
    return v;
  };
  return sel;
}

RootSelection continuation_selection(const PolyFamily& P, const Box& box, double h) {
  const size_t q = box.center.size();
  std::vector<size_t> N(q), stride(q);
  std::vector<double> lo(q), step(q);
  size_t nodes = 1;
  for (size_t i = q; i-- > 0;) {
    N[i] = std::max<size_t>(1, static_cast<size_t>(std::llround(2 * box.radius[i] / h)));
    lo[i] = box.center[i] - box.radius[i];
    step[i] = 2 * box.radius[i] / static_cast<double>(N[i]);
    stride[i] = nodes;
    nodes *= N[i] + 1;
  }
  auto vals = std::make_shared<std::vector<std::vector<cplx>>>(nodes);
  for (size_t k = 0; k < nodes; ++k) {
    std::vector<cplx> x(q);
    for (size_t i = 0; i < q; ++i) x[i] = lo[i] + static_cast<double>((k / stride[i]) % (N[i] + 1)) * step[i];
    auto roots = numeric_roots(P.eval_coeffs(x));
    size_t ref = k;
    for (size_t i = q; i-- > 0;)
      if ((k / stride[i]) % (N[i] + 1) > 0) {
        ref = k - stride[i];
        break;
      }
    if (ref == k) {
      (*vals)[k] = roots;
      continue;
    }
    const auto& prev = (*vals)[ref];
    std::vector<cplx> matched(prev.size());
    std::vector<char> used(roots.size(), 0);
    for (size_t a = 0; a < prev.size(); ++a) {
      size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (size_t b = 0; b < roots.size(); ++b)
        if (!used[b] && std::abs(roots[b] - prev[a]) < bd) {
          bd = std::abs(roots[b] - prev[a]);
          best = b;
        }
      used[best] = 1;
      matched[a] = roots[best];
    }
    (*vals)[k] = matched;
  }
  RootSelection sel;
  sel.n = P.n;
  sel.q = P.q;
  sel.eval = [vals, N, stride, lo, step](const Point& x) {
    size_t k = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      long j = std::lround((x[i] - lo[i]) / step[i]);
      j = std::clamp<long>(j, 0, static_cast<long>(N[i]));
      k += static_cast<size_t>(j) * stride[i];
    }
    return SelectionValue{(*vals)[k], 0};
  };
  return sel;
}

Sampler sampler_of(const Field& f) {
  return [f](const Point& x) { return Sample{f(x), 0}; };
}

Sampler sampler_of(const RootSelection& sel, int root) {
  auto eval = sel.eval;
  return [eval, root](const Point& x) {
    auto v = eval(x);
    return Sample{v.values.at(static_cast<size_t>(root)), v.id};
  };
}

std::vector<LevelEstimate> grad_lp_estimate(const Sampler& f, const GridSpec& grid, const GradOptions& opts) {
  std::vector<LevelEstimate> out;
  double h = grid.h;
  for (int l = 0; l < opts.levels; ++l, h /= 2) out.push_back(grid_level(f, grid, h, opts.p, opts.jump_threshold, opts.exec));
  return out;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<size_t>(n), 0.0);
  w.assign(static_cast<size_t>(n), 0.0);
  auto legendre = [n](double z, double& dp) {
    double p0 = 1, p1 = z;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1);
    return p1;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double dz = legendre(z, dp) / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    legendre(z, dp);
    auto a = static_cast<size_t>(i), b = static_cast<size_t>(n - 1 - i);
    x[a] = -z;
    x[b] = z;
    w[a] = w[b] = 2 / ((1 - z * z) * dp * dp);
  }
}

namespace {

double oscillation(const std::vector<cplx>& v, const std::vector<double>& w) {
  double W = 0;
  cplx mean = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    W += w[i];
    mean += w[i] * v[i];
  }
  mean /= W;
  double s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += w[i] * std::abs(v[i] - mean);
  return s / W;
}

}  // namespace

double mean_oscillation(const Field& f, const SquareCube& Q, int nodes) {
  std::vector<double> gx, gw;
  gauss_legendre(nodes, gx, gw);
  const size_t q = Q.center.size();
  size_t total = 1;
  for (size_t i = 0; i < q; ++i) total *= gx.size();
  std::vector<cplx> v(total);
  std::vector<double> w(total);
  for (size_t t = 0; t < total; ++t) {
    Point x(q);
    double wt = 1;
    size_t r = t;
    for (size_t i = 0; i < q; ++i) {
      size_t j = r % gx.size();
      r /= gx.size();
      x[i] = Q.center[i] + Q.half * gx[j];
      wt *= gw[j];
    }
    v[t] = f(x);
    w[t] = wt;
  }
  return oscillation(v, w);
}

double mean_oscillation(const Field& f, const PolarCube& Q, int nodes) {
  std::vector<double> gx, gw;
  gauss_legendre(nodes, gx, gw);
  const double pi = std::numbers::pi;
  std::vector<cplx> v;
  std::vector<double> w;
  for (double side : {1.0, -1.0}) {
    double phi_mid = side * (pi - Q.eps / 2);
    for (size_t a = 0; a < gx.size(); ++a) {
      double r = Q.x0 + Q.eps * gx[a];
      for (size_t b = 0; b < gx.size(); ++b) {
        double phi = phi_mid + Q.eps / 2 * gx[b];
        v.push_back(f({r * std::cos(phi), r * std::sin(phi)}));
        w.push_back(gw[a] * gw[b] * r);
      }
    }
  }
  return oscillation(v, w);
}

double polar_cube_im_sqrt_mo(double x0, double eps) {
  return 0.4 * std::sin(eps / 2) * (std::pow(x0 + eps, 2.5) - std::pow(x0 - eps, 2.5)) / (x0 * eps * eps);
}

HolderFit holder_probe(const std::vector<CoeffPair>& pairs, int n) {
  HolderFit fit;
  std::vector<double> lx, ly;
  for (const auto& pr : pairs) {
    double c = 0;
    for (size_t j = 0; j < pr.a.size() && j < pr.b.size(); ++j) c = std::max(c, std::abs(pr.a[j] - pr.b[j]));
    if (c == 0) continue;
    double d = hausdorff(numeric_roots(pr.a), numeric_roots(pr.b));
    if (!(d > 0) || !std::isfinite(d)) continue;
    lx.push_back(std::log(c));
    ly.push_back(std::log(d));
  }
  fit.used = lx.size();
  fit.enough = fit.used >= 30;
  if (fit.used >= 2) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.slope = sxx > 0 ? sxy / sxx : 0;
    fit.intercept = std::exp(my - fit.slope * mx);
  }
  fit.pass = fit.enough && fit.slope >= 1.0 / n - 0.05;
  return fit;
}

std::vector<CoeffPair> holder_ensemble(const std::vector<cplx>& a, int count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> expo(-8, -1), unit(-1, 1);
  std::vector<CoeffPair> out;
  for (int k = 0; k < count; ++k) {
    CoeffPair p;
    p.a = a;
    double delta = std::pow(10.0, expo(rng));
    for (const auto& c : a) p.b.push_back(c + delta * cplx(unit(rng), unit(rng)));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CoeffPair> holder_ensemble(int n, int count, unsigned long seed) {
  return holder_ensemble(std::vector<cplx>(static_cast<size_t>(n), 0.0), count, seed);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

RegularityReport sbv_report(const Sampler& f, const GridSpec& grid, int levels, Exec exec) {
  RegularityReport r;
  GradOptions o;
  o.levels = levels;
  o.exec = exec;
  o.p = 1;
  r.l1 = grad_lp_estimate(f, grid, o);
  o.p = 2;
  r.l2 = grad_lp_estimate(f, grid, o);
  const auto& L = r.l1;

  r.w1 = Verdict::Pass;
  for (size_t k = 1; k < L.size(); ++k)
    if (L[k].e_measure > 1.1 * L[k - 1].e_measure + 1e-12) r.w1 = Verdict::Fail;

  bool finite = true;
  for (const auto& e : L) finite = finite && std::isfinite(e.sup_off_e);
  if (!finite) r.w2 = Verdict::Fail;
  else if (L.size() < 2 || L.back().sup_off_e <= 1.1 * L[L.size() - 2].sup_off_e + 1e-12) r.w2 = Verdict::Pass;

  if (L.size() >= 2) {
    double a = L[L.size() - 2].value, b = L.back().value;
    bool growing = true;
    for (size_t k = 1; k < L.size(); ++k) growing = growing && L[k].value >= 1.1 * L[k - 1].value;
    if (!std::isfinite(b)) r.w3 = Verdict::Fail;
    else if (std::abs(b - a) <= 0.1 * std::max(std::abs(a), 1e-300) || (a == 0 && b == 0)) r.w3 = Verdict::Pass;
    else if (growing) r.w3 = Verdict::Fail;
  }

  bool no_jumps = true;
  for (const auto& e : L) no_jumps = no_jumps && e.jump_mass == 0;
  if (no_jumps) r.w11 = Verdict::Pass;
  else if (L.back().jump_mass > 1e-6 && L.back().jump_mass >= 0.5 * L.front().jump_mass) r.w11 = Verdict::Fail;

  const auto& centers = L.back().jump_points;
  if (centers.empty()) {
    r.vmo = Verdict::Pass;
    r.notes.push_back("no jump cells; mean oscillation not probed");
  } else {
    const size_t q = grid.box.center.size();
    double width = std::numeric_limits<double>::infinity();
    for (double rad : grid.box.radius) width = std::min(width, 2 * rad);
    Field g = [&f](const Point& x) { return f(x).value; };
    size_t stride = std::max<size_t>(1, centers.size() / 8);
    for (int k = 3; k <= 7; ++k) {
      double half = width * std::ldexp(1.0, -k);
      double worst = 0;
      for (size_t c = 0; c < centers.size(); c += stride) {
        SquareCube Q{centers[c], half};
        for (size_t i = 0; i < q; ++i) {
          double lo = grid.box.center[i] - grid.box.radius[i] + half;
          double hi = grid.box.center[i] + grid.box.radius[i] - half;
          Q.center[i] = std::clamp(Q.center[i], lo, hi);
        }
        worst = std::max(worst, mean_oscillation(g, Q, 32));
      }
      r.mo_sizes.push_back(half);
      r.mo_values.push_back(worst);
    }
    double first = r.mo_values.front(), last = r.mo_values.back();
    if (last > 1e-3 && last >= 0.5 * first) r.vmo = Verdict::Fail;
    else if (last <= 0.25 * first || first < 1e-3) r.vmo = Verdict::Pass;
  }
  r.notes.push_back("Cantor part not detectable at grid scale");
  return r;
}

RegularityReport sbv_report(const RootSelection& sel, int root, const GridSpec& grid, int levels, Exec exec) {
  GridSpec g = grid;
  g.marks.insert(g.marks.end(), sel.locus.begin(), sel.locus.end());
  return sbv_report(sampler_of(sel, root), g, levels, exec);
}

std::string report_csv(const RegularityReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "stat,level,h,value,cells,e_cells,e_measure,jump_mass,sup_off_e\n";
  auto rows = [&](const char* name, const std::vector<LevelEstimate>& v) {
    for (size_t k = 0; k < v.size(); ++k)
      os << name << ',' << k << ',' << v[k].h << ',' << v[k].value << ',' << v[k].cells << ',' << v[k].e_cells
         << ',' << v[k].e_measure << ',' << v[k].jump_mass << ',' << v[k].sup_off_e << '\n';
  };
  rows("l1", r.l1);
  rows("l2", r.l2);
  for (size_t k = 0; k < r.mo_values.size(); ++k)
    os << "mo," << k << ',' << r.mo_sizes[k] << ',' << r.mo_values[k] << ",,,,,\n";
  os << "verdict_w1,,," << verdict_name(r.w1) << ",,,,,\n";
  os << "verdict_w2,,," << verdict_name(r.w2) << ",,,,,\n";
  os << "verdict_w3,,," << verdict_name(r.w3) << ",,,,,\n";
  os << "verdict_w11,,," << verdict_name(r.w11) << ",,,,,\n";
  os << "verdict_vmo,,," << verdict_name(r.vmo) << ",,,,,\n";
  return os.str();
}

double flat_family_angle_variation(double x_min, double x_max, int samples) {
  double total = 0, prev = 0;
  const double ratio = std::pow(x_max / x_min, 1.0 / std::max(1, samples - 1));
  double x = x_min;
  for (int k = 0; k < samples; ++k, x *= ratio) {
    double t = 2 / x;
    Eigen::Matrix2d A;
    A << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
    es.computeDirect(A);
    Eigen::Vector2d v = es.eigenvectors().col(1);
    double ang = std::atan2(v(1), v(0));
    if (k > 0) total += std::abs(std::remainder(ang - prev, std::numbers::pi));
    prev = ang;
  }
  return total;
}

}  // namespace rc
