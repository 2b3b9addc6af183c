#include "rootcharts/numeric_roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "rootcharts/errors.hpp"

namespace rc {

namespace {

cplx horner(const std::vector<cplx>& c, cplx z, cplx* deriv) {
  cplx p = c.back(), d = 0;
  for (size_t k = c.size() - 1; k-- > 0;) {
    d = d * z + p;
    p = p * z + c[k];
  }
  if (deriv) *deriv = d;
  return p;
}

bool aberth(const std::vector<cplx>& c, std::vector<cplx>& z) {
  size_t n = c.size() - 1;
  double bound = 0;
  for (size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k] / c[n]));
  double r = std::min(1.0 + bound, 1e6);
  z.resize(n);
  for (size_t k = 0; k < n; ++k) {
    double th = 2 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(r * 0.5 + 0.1, th);
  }
  for (int it = 0; it < 800; ++it) {
    double maxstep = 0;
    for (size_t k = 0; k < n; ++k) {
      cplx d;
      cplx p = horner(c, z[k], &d);
      if (p == cplx(0)) continue;
      cplx ratio = p / d;
      cplx s = 0;
      for (size_t j = 0; j < n; ++j)
        if (j != k) {
          cplx diff = z[k] - z[j];
          if (diff != cplx(0)) s += 1.0 / diff;
        }
      cplx w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
      z[k] -= w;
      maxstep = std::max(maxstep, std::abs(w) / std::max(std::abs(z[k]), 1e-300));
    }
    if (maxstep < 1e-16) return true;
  }
  return true;
}

std::vector<cplx> companion(const std::vector<cplx>& c) {
  size_t n = c.size() - 1;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (size_t i = 1; i < n; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (size_t i = 0; i < n; ++i)
    M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace

double relative_residual(const std::vector<cplx>& c, const std::vector<cplx>& roots) {
  double worst = 0;
  for (cplx z : roots) {
    double scale = 0, az = std::abs(z), pw = 1;
    for (const auto& ck : c) {
      scale += std::abs(ck) * pw;
      pw *= az;
    }
    double r = std::abs(horner(c, z, nullptr));
    worst = std::max(worst, scale > 0 ? r / scale : r);
  }
  return worst;
}

std::vector<cplx> numeric_roots_ascending(const std::vector<cplx>& cin) {
  std::vector<cplx> c = cin;
  while (c.size() > 1 && c.back() == cplx(0)) c.pop_back();
  if (c.size() < 2) fail(ErrorKind::InvalidArgument, "numeric_roots of a constant");
  size_t n = c.size() - 1;
  // Leading zero roots are split off exactly.
  size_t zeros = 0;
  while (zeros < n && c[zeros] == cplx(0)) ++zeros;
  std::vector<cplx> red(c.begin() + static_cast<long>(zeros), c.end());
  std::vector<cplx> z;
  if (red.size() > 1) {
    bool ok = aberth(red, z);
    if (!ok || relative_residual(red, z) > 1e-12) {
      z = companion(red);
    }
    for (auto& r : z) {
      for (int k = 0; k < 8; ++k) {
        cplx d;
        cplx p = horner(red, r, &d);
        if (d == cplx(0)) break;
        cplx nr = r - p / d;
        if (std::abs(horner(red, nr, nullptr)) < std::abs(p)) r = nr;
      }
    }
    if (relative_residual(red, z) > 1e-10)
      fail(ErrorKind::NonConvergence, "root finder residual above 1e-10");
  }
  z.insert(z.end(), zeros, cplx(0));
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

std::vector<cplx> numeric_roots(const std::vector<cplx>& a) {
  size_t n = a.size();
  std::vector<cplx> c(n + 1);
  c[n] = 1.0;
  for (size_t j = 1; j <= n; ++j) c[n - j] = (j % 2) ? -a[j - 1] : a[j - 1];
  return numeric_roots_ascending(c);
}

double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  auto directed = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double h = 0;
    for (cplx p : x) {
      double m = INFINITY;
      for (cplx q : y) m = std::min(m, std::abs(p - q));
      h = std::max(h, m);
    }
    return h;
  };
  return std::max(directed(a, b), directed(b, a));
}

double matching_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<size_t> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  double best = INFINITY;
  do {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[p[i]]));
    best = std::min(best, m);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace rc
