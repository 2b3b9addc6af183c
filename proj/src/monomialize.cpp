#include "rootcharts/monomialize.hpp"

#include <algorithm>
#include <cmath>

#include "rootcharts/errors.hpp"
#include "rootcharts/univariate.hpp"

namespace rc {

NcResult normal_crossing_test(const Jet& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroJet, "normal crossings test of the zero germ");
  if (f.known_zero()) return {NcStatus::Indeterminate, std::nullopt};
  const auto& terms = f.poly().terms();
  Exponent a = terms.begin()->first;
  for (const auto& [e, c] : terms) a = a.gcd(e);
  auto it = terms.find(a);
  if (it == terms.end()) return {NcStatus::NotNc, std::nullopt};
  if (!it->second.is_invertible()) return {NcStatus::Indeterminate, std::nullopt};
  for (const auto& g : f.ideal().gens())
    if (!a.divides(g) || g == a) return {NcStatus::Indeterminate, std::nullopt};
  return {NcStatus::Nc, NcCertificate{a, monomial_divide(f, a)}};
}

Exponent compare_exponents(const std::vector<Exponent>& alphas) {
  if (alphas.empty()) fail(ErrorKind::InvalidArgument, "compare_exponents of an empty list");
  Exponent m = alphas.front();
  for (const auto& a : alphas) {
    if (a.divides(m)) {
      m = a;
    } else if (!m.divides(a)) {
      fail(ErrorKind::IncomparablePair, a.str() + " and " + m.str() + " are incomparable");
    }
  }
  for (const auto& a : alphas)
    if (!m.divides(a)) fail(ErrorKind::IncomparablePair, a.str() + " and " + m.str() + " are incomparable");
  return m;
}

bool certificate_holds(const Jet& f, const NcCertificate& c) {
  return jets_agree(c.unit.monomial_mul(c.alpha), f);
}

namespace {

int strict_order(const Jet& g) {
  const auto& terms = g.poly().terms();
  if (terms.empty()) return -1;
  Exponent mu = terms.begin()->first;
  for (const auto& [e, c] : terms) mu = mu.gcd(e);
  int best = -1;
  for (const auto& [e, c] : terms) {
    int d = e.degree() - mu.degree();
    if (best < 0 || d < best) best = d;
  }
  return best;
}

bool close(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_equal(b);
  return std::abs(a.to_complex() - b.to_complex()) < 1e-9;
}

struct Builder {
  MonomializeOptions opts;
  int q;

  NcTree build(const std::vector<Jet>& G, const Box& box, int depth, bool exact) const {
    NcTree node;
    int mult = 0;
    for (const auto& g : G) mult += std::max(0, strict_order(g));
    node.log.multiplicity = mult;

    std::vector<NcCertificate> certs;
    bool all_nc = true, indeterminate = false;
    for (const auto& g : G) {
      NcResult r = normal_crossing_test(g);
      if (r.status == NcStatus::Nc) {
        certs.push_back(*r.cert);
      } else {
        all_nc = false;
        if (r.status == NcStatus::Indeterminate) indeterminate = true;
      }
    }
    if (all_nc) {
      bool ex = exact;
      for (const auto& g : G) ex = ex && g.scalars_exact();
      node.leaf = NcLeaf{G, std::move(certs), ex};
      return node;
    }
    if (indeterminate) fail(ErrorKind::PrecisionLoss, "normal crossings undecidable at the working precision");
    if (q != 2) fail(ErrorKind::UnsupportedDimension, "resolution is implemented for two parameters");
    if (depth >= opts.max_depth) fail(ErrorKind::DepthExceeded, "monomialization depth " + std::to_string(depth));

    for (int c = 0; c < 2; ++c) {
      int o = 1 - c;
      NcTree chart;
      chart.steps = {BlowUp{{0, 1}, c}};
      chart.log.multiplicity = mult;
      std::vector<Jet> H;
      std::vector<Scalar> bad;
      for (const auto& g : G) {
        Jet h = pullback(g, chart.steps[0]);
        int m = -1;
        for (const auto& [e, coef] : h.poly().terms())
          if (m < 0 || e[c] < m) m = e[c];
        for (const auto& gen : h.ideal().gens())
          if (gen[c] <= m) fail(ErrorKind::PrecisionLoss, "exceptional restriction not determined");
        UPoly r;
        for (const auto& [e, coef] : h.poly().terms()) {
          if (e[c] != m) continue;
          if (static_cast<int>(r.size()) <= e[o]) r.resize(static_cast<size_t>(e[o]) + 1);
          r[static_cast<size_t>(e[o])] = coef;
        }
        for (const auto& b : upoly_real_roots(r, opts.precision)) {
          if (std::abs(b.to_complex().real()) > 1 + 1e-9) continue;
          bool dup = false;
          for (const auto& x : bad) dup = dup || close(x, b);
          if (!dup) bad.push_back(b);
        }
        H.push_back(std::move(h));
      }
      std::sort(bad.begin(), bad.end(),
                [](const Scalar& a, const Scalar& b) { return a.to_complex().real() < b.to_complex().real(); });
      std::vector<double> bv, rad;
      for (const auto& b : bad) bv.push_back(b.to_complex().real());
      for (size_t k = 0; k < bv.size(); ++k) {
        double r = 1.0;
        if (k > 0) r = std::min(r, 0.5 * (bv[k] - bv[k - 1]));
        if (k + 1 < bv.size()) r = std::min(r, 0.5 * (bv[k + 1] - bv[k]));
        rad.push_back(r);
      }

      auto child = [&](const Scalar& t, double r, bool ex) {
        std::vector<Scalar> pt(2);
        pt[static_cast<size_t>(o)] = t;
        Box b = Box::cube(2, 0);
        b.radius[static_cast<size_t>(c)] = box.radius[static_cast<size_t>(c)];
        b.radius[static_cast<size_t>(o)] = r;
        std::vector<Jet> T;
        bool moved = !t.is_negligible();
        for (const auto& h : H) T.push_back(moved ? compose_translate_local(h, pt) : h);
        NcTree sub = build(T, b, depth + 1, ex && t.is_exact());
        std::vector<ChartStep> st;
        if (moved) st.push_back(Translate{pt});
        st.push_back(Open{b});
        sub.steps.insert(sub.steps.begin(), st.begin(), st.end());
        return sub;
      };

      for (size_t k = 0; k < bad.size(); ++k) chart.children.push_back(child(bad[k], rad[k], exact));

      double lo = -1.0;
      for (size_t k = 0; k <= bad.size(); ++k) {
        double hi = k < bad.size() ? bv[k] - rad[k] : 1.0;
        if (hi - lo > 1e-12) {
          double margin = 1.0 / 1024;
          if (k > 0) margin = std::min(margin, 0.25 * rad[k - 1]);
          if (k < bad.size()) margin = std::min(margin, 0.25 * rad[k]);
          long num = std::lround((lo + hi) / 2 * 1024);
          double cm = num / 1024.0;
          double r = std::max(cm - lo, hi - cm) + margin;
          chart.children.push_back(child(Scalar::rational(num, 1024), r, exact));
        }
        if (k < bad.size()) lo = bv[k] + rad[k];
      }
      node.children.push_back(std::move(chart));
    }
    return node;
  }
};

}  // namespace

NcTree monomialize(const std::vector<Jet>& fs, const std::vector<std::pair<size_t, size_t>>& diffs,
                   const MonomializeOptions& opts) {
  if (fs.empty()) fail(ErrorKind::InvalidArgument, "nothing to monomialize");
  int q = fs.front().q();
  std::vector<Jet> G;
  for (const auto& f : fs) {
    if (f.q() != q) fail(ErrorKind::DimensionMismatch, "monomialize inputs");
    if (f.is_zero()) fail(ErrorKind::ZeroJet, "monomialize input is zero");
    G.push_back(f);
  }
  for (auto [i, j] : diffs) {
    if (i >= fs.size() || j >= fs.size()) fail(ErrorKind::InvalidArgument, "difference index");
    Jet d = fs[i] - fs[j];
    if (d.is_zero()) continue;
    G.push_back(std::move(d));
  }
  Builder b{opts, q};
  return b.build(G, Box::cube(q, opts.radius), 0, true);
}

}  // namespace rc
