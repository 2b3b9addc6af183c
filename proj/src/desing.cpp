#include "rootcharts/desing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "rootcharts/errors.hpp"
#include "rootcharts/symfun.hpp"

namespace rc {

namespace {

bool residual_zero(const Jet& r) {
  for (const auto& [e, c] : r.poly().terms())
    if (!c.contains_zero()) return false;
  return true;
}

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int lcm_upto(int n) {
  int L = 1;
  for (int k = 2; k <= n; ++k) L = std::lcm(L, k);
  return L;
}

Scalar realify(const Scalar& s) {
  if (s.is_exact()) return Scalar(s.exact().re);
  const ComplexBall& b = s.as_ball();
  return Scalar::ball(b.re, BigFloat(0.0, b.re.prec()), b.rad + b.im.abs_upper());
}

std::vector<Jet> poly_mul(const std::vector<Jet>& a, const std::vector<Jet>& b, const PrecisionIdeal& T) {
  int q = a.front().q();
  std::vector<Jet> c(a.size() + b.size() - 1, Jet(MultiPoly(q), T));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]).reduced(T);
  return c;
}

std::vector<Jet> product_of(const std::vector<std::vector<Jet>>& F, size_t skip, const PrecisionIdeal& T, int q) {
  std::vector<Jet> acc{Jet(MultiPoly::constant(q, Scalar(1)), T)};
  for (size_t h = 0; h < F.size(); ++h)
    if (h != skip) acc = poly_mul(acc, F[h], T);
  return acc;
}

// x^beta pulled back along R, times mu; monomial images shift the ideal of mu.
Jet times_monomial(const Exponent& beta, const ChartMap& R, const Jet& mu) {
  if (beta.is_zero()) return mu;
  Jet m = pullback(Jet::monomial(beta.q(), beta), R, true);
  if (m.exact_data() && m.poly().terms().size() == 1) {
    const auto& [e, c] = *m.poly().terms().begin();
    return mu.monomial_mul(e).scaled(c);
  }
  return m * mu;
}

}  // namespace

long group_order_of(const std::vector<RootMult>& clusters) {
  long g = 1;
  for (const auto& c : clusters) g *= factorial(c.mult);
  return g;
}

std::vector<std::vector<size_t>> cluster_roots(const std::vector<Scalar>& values, double tol) {
  size_t n = values.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      bool near = values[i].is_exact() && values[j].is_exact()
                      ? values[i].exact_equal(values[j]) || std::abs(values[i].to_complex() - values[j].to_complex()) <= tol
                      : std::abs(values[i].to_complex() - values[j].to_complex()) <= tol;
      if (near) parent[find(i)] = find(j);
    }
  std::vector<std::vector<size_t>> out;
  std::vector<long> slot(n, -1);
  for (size_t i = 0; i < n; ++i) {
    size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<size_t>(slot[r])].push_back(i);
  }
  return out;
}

ClusterSplit split_family(const PolyFamily& P, const std::vector<RootMult>& clusters, int K, double tol) {
  int n = P.n, q = P.q;
  int total = 0;
  for (const auto& c : clusters) total += c.mult;
  if (total != n) fail(ErrorKind::InvalidArgument, "cluster multiplicities do not add up to the degree");
  ClusterSplit out;
  for (const auto& c : clusters) out.centers.push_back(c.value);
  if (clusters.size() == 1) {
    out.factors = {P};
    return out;
  }
  for (size_t a = 0; a < clusters.size(); ++a)
    for (size_t b = a + 1; b < clusters.size(); ++b)
      if (std::abs(clusters[a].value.to_complex() - clusters[b].value.to_complex()) <= tol)
        fail(ErrorKind::SingularSplit, "cluster centers closer than the tolerance");

  PrecisionIdeal T = P.ideal() + truncation_ideal(q, K);
  size_t l = clusters.size();
  std::vector<std::vector<Jet>> F(l);
  for (size_t h = 0; h < l; ++h) {
    UPoly p{Scalar(1)};
    for (int k = 0; k < clusters[h].mult; ++k) p = upoly_mul(p, {-clusters[h].value, Scalar(1)});
    for (const auto& c : p) F[h].push_back(Jet(MultiPoly::constant(q, c), T));
  }
  std::vector<Jet> Pz = P.z_coeffs();
  for (auto& c : Pz) c = c.reduced(T);

  auto residual = [&]() {
    std::vector<Jet> Q = product_of(F, l, T, q);
    std::vector<Jet> r;
    for (int k = 0; k < n; ++k) r.push_back((Q[static_cast<size_t>(k)] - Pz[static_cast<size_t>(k)]).reduced(T));
    return r;
  };
  for (int it = 0; it < newton_rounds(K) + 2; ++it) {
    std::vector<Jet> r = residual();
    if (std::all_of(r.begin(), r.end(), residual_zero)) break;
    Matrix<Jet> J(static_cast<size_t>(n), std::vector<Jet>(static_cast<size_t>(n), Jet(MultiPoly(q), T)));
    size_t col = 0;
    for (size_t h = 0; h < l; ++h) {
      std::vector<Jet> C = product_of(F, h, T, q);
      int m = clusters[h].mult;
      for (int k = 0; k < m; ++k, ++col)
        for (int i = 0; i < n; ++i) {
          int d = i - k;
          if (d >= 0 && d < static_cast<int>(C.size())) J[static_cast<size_t>(i)][col] = C[static_cast<size_t>(d)];
        }
    }
    for (auto& x : r) x = -x;
    std::vector<Jet> delta = solve_unit(J, r, K);
    col = 0;
    for (size_t h = 0; h < l; ++h)
      for (int k = 0; k < clusters[h].mult; ++k, ++col)
        F[h][static_cast<size_t>(k)] = (F[h][static_cast<size_t>(k)] + delta[col]).reduced(T);
  }
  {
    std::vector<Jet> r = residual();
    if (!std::all_of(r.begin(), r.end(), residual_zero)) fail(ErrorKind::NonConvergence, "Hensel splitting did not converge");
  }
  // Keep the exact factorization when the truncation turns out to be unnecessary.
  std::vector<std::vector<Jet>> E = F;
  for (auto& f : E)
    for (auto& c : f) c = Jet(c.poly(), P.ideal());
  bool exact = true;
  {
    std::vector<Jet> Q{Jet::constant(q, Scalar(1))};
    for (const auto& f : E) {
      std::vector<Jet> R(Q.size() + f.size() - 1, Jet(q));
      for (size_t i = 0; i < Q.size(); ++i)
        for (size_t j = 0; j < f.size(); ++j) R[i + j] = R[i + j] + Q[i] * f[j];
      Q = std::move(R);
    }
    auto Pz0 = P.z_coeffs();
    for (int k = 0; k < n && exact; ++k)
      exact = residual_zero(Q[static_cast<size_t>(k)] - Pz0[static_cast<size_t>(k)]) &&
              (Q[static_cast<size_t>(k)] - Pz0[static_cast<size_t>(k)]).poly().is_exact();
  }
  for (size_t h = 0; h < l; ++h) out.factors.push_back(PolyFamily::from_z_coeffs(exact ? E[h] : F[h]));
  return out;
}

Jet hensel_root_lift(const PolyFamily& P, const Scalar& root, int K) {
  int q = P.q;
  Scalar d0 = eval_family_derivative(P, Jet::constant(q, root)).constant_term();
  if (!d0.is_invertible()) fail(ErrorKind::NotUnit, "root is not simple");
  PrecisionIdeal T = P.ideal() + truncation_ideal(q, K);
  Jet lam(MultiPoly::constant(q, root), T);
  for (int it = 0; it < newton_rounds(K) + 2; ++it) {
    Jet v = eval_family(P, lam).reduced(T);
    if (residual_zero(v)) break;
    Jet d = eval_family_derivative(P, lam);
    lam = (lam - v * unit_inverse(d, K)).reduced(T);
  }
  if (!residual_zero(eval_family(P, lam).reduced(T))) fail(ErrorKind::NonConvergence, "root lift did not converge");
  Jet cand(lam.poly(), P.ideal());
  Jet rc = eval_family(P, cand);
  if (residual_zero(rc) && rc.poly().is_exact()) return cand;
  return lam;
}

namespace {

struct Pending {
  PolyFamily G;
  Jet shift;
  std::vector<size_t> slots;
};

struct Level {
  std::vector<std::optional<Jet>> resolved;
  std::vector<Pending> pending;
  long group = 1;
};

struct Solver {
  DesingOptions o;
  int q;

  std::vector<RootMult> origin_clusters(const PolyFamily& F) const {
    auto cl = upoly_roots(z_coeffs_scalar(F.at_origin()), o.precision, o.cluster_tol);
    if (o.mode == DesingMode::Hyperbolic)
      for (auto& c : cl) {
        if (std::abs(c.value.to_complex().imag()) > 1e-8)
          fail(ErrorKind::HyperbolicityViolated, "non-real root " + c.value.str() + " at the working origin");
        c.value = realify(c.value);
      }
    return cl;
  }

  Level split_items(const std::vector<PolyFamily>& items) const {
    Level L;
    for (const auto& F : items) {
      auto cl = origin_clusters(F);
      L.group *= group_order_of(cl);
      std::vector<PolyFamily> factors = split_family(F, cl, o.K, o.cluster_tol).factors;
      for (size_t h = 0; h < factors.size(); ++h) {
        const PolyFamily& Fh = factors[h];
        std::vector<size_t> slots;
        for (int k = 0; k < Fh.n; ++k) {
          slots.push_back(L.resolved.size());
          L.resolved.emplace_back();
        }
        if (Fh.n == 1) {
          L.resolved[slots[0]] = Fh.a[0];
          continue;
        }
        ShiftResult sh = tschirnhaus_shift(Fh);
        bool zero = true, known = true;
        for (const auto& a : sh.reduced.a) {
          zero = zero && a.is_zero();
          known = known && a.known_zero();
        }
        if (zero) {
          for (size_t s : slots) L.resolved[s] = sh.shift;
        } else if (known) {
          fail(ErrorKind::PrecisionLoss, "factor is zero up to its precision ideal");
        } else {
          L.pending.push_back({sh.reduced, sh.shift, slots});
        }
      }
    }
    return L;
  }

  RootTree solve(const std::vector<PolyFamily>& items, int depth, bool exact) const {
    if (depth > o.max_depth) fail(ErrorKind::DepthExceeded, "desingularization depth " + std::to_string(depth));
    Level L = split_items(items);
    if (L.pending.empty()) {
      RootTree node;
      node.log.group_order = L.group;
      RootChart leaf;
      for (auto& r : L.resolved) leaf.roots.push_back(*r);
      leaf.soundness = exact ? Soundness::Exact : Soundness::Numeric;
      node.leaf = std::move(leaf);
      return node;
    }

    std::vector<Jet> fs;
    std::vector<std::pair<size_t, size_t>> diffs;
    std::vector<std::vector<size_t>> idx(L.pending.size());
    std::vector<std::vector<int>> jdx(L.pending.size());
    for (size_t h = 0; h < L.pending.size(); ++h) {
      const PolyFamily& G = L.pending[h].G;
      int Lh = lcm_upto(G.n);
      for (int j = 2; j <= G.n; ++j) {
        const Jet& a = G.a[static_cast<size_t>(j - 1)];
        if (a.is_zero()) continue;
        if (a.known_zero()) fail(ErrorKind::PrecisionLoss, "coefficient is zero up to its precision ideal");
        idx[h].push_back(fs.size());
        jdx[h].push_back(j);
        fs.push_back(o.mode == DesingMode::Hyperbolic ? a : a.pow(static_cast<unsigned>(Lh / j)));
      }
      if (o.mode == DesingMode::General)
        for (size_t u = 0; u < idx[h].size(); ++u)
          for (size_t v = u + 1; v < idx[h].size(); ++v) diffs.emplace_back(idx[h][u], idx[h][v]);
    }
    MonomializeOptions mo;
    mo.max_depth = o.max_depth;
    mo.radius = o.radius;
    mo.precision = o.precision;
    NcTree mt = monomialize(fs, diffs, mo);
    RootTree node = convert(mt, ChartMap{q, {}}, L, idx, jdx, depth, exact);
    node.log.group_order = L.group;
    return node;
  }

  RootTree convert(const NcTree& m, const ChartMap& rel, const Level& L, const std::vector<std::vector<size_t>>& idx,
                   const std::vector<std::vector<int>>& jdx, int depth, bool exact) const {
    RootTree r;
    r.steps = m.steps;
    r.log.multiplicity = m.log.multiplicity;
    for (const auto& c : m.children) r.children.push_back(convert(c, rel.then(ChartMap{q, c.steps}), L, idx, jdx, depth, exact));
    if (m.leaf)
      for (auto& sub : handle_leaf(*m.leaf, rel, L, idx, jdx, depth, exact)) r.children.push_back(std::move(sub));
    return r;
  }

  std::vector<RootTree> handle_leaf(const NcLeaf& leaf, const ChartMap& rel, const Level& L,
                                    const std::vector<std::vector<size_t>>& idx, const std::vector<std::vector<int>>& jdx,
                                    int depth, bool exact) const {
    bool ex = exact && leaf.exact;
    size_t np = L.pending.size();
    std::vector<PolyFamily> Gp;
    for (const auto& p : L.pending) Gp.push_back(pullback(p.G, rel, true));
    Exponent gamma(q);
    for (int i = 0; i < q; ++i) gamma[i] = 1;
    std::vector<Exponent> beta(np, Exponent(q));
    std::vector<Exponent> alpha(np, Exponent(q));
    std::vector<std::string> notes;

    if (o.mode == DesingMode::General) {
      for (size_t h = 0; h < np; ++h) {
        std::vector<Exponent> al;
        for (size_t k : idx[h]) al.push_back(leaf.certs[k].alpha);
        alpha[h] = compare_exponents(al);
        int Lh = lcm_upto(L.pending[h].G.n);
        for (int i = 0; i < q; ++i) gamma[i] = std::lcm(gamma[i], Lh / std::gcd(alpha[h][i], Lh));
      }
      for (size_t h = 0; h < np; ++h) {
        int Lh = lcm_upto(L.pending[h].G.n);
        for (int i = 0; i < q; ++i) beta[h][i] = alpha[h][i] * gamma[i] / Lh;
      }
    } else {
      for (size_t h = 0; h < np; ++h) {
        std::optional<Exponent> a2;
        for (size_t u = 0; u < idx[h].size(); ++u)
          if (jdx[h][u] == 2) a2 = leaf.certs[idx[h][u]].alpha;
        if (!a2) fail(ErrorKind::HyperbolicityViolated, "a_2 vanishes on a nonzero factor");
        Exponent d(q);
        for (int i = 0; i < q; ++i) {
          if ((*a2)[i] % 2) fail(ErrorKind::HyperbolicityViolated, "odd exponent of a_2: " + a2->str());
          d[i] = (*a2)[i] / 2;
        }
        for (size_t u = 0; u < idx[h].size(); ++u)
          if (!d.scaled(jdx[h][u]).divides(leaf.certs[idx[h][u]].alpha))
            fail(ErrorKind::HyperbolicityViolated,
                 "a_" + std::to_string(jdx[h][u]) + " has exponent below " + d.scaled(jdx[h][u]).str());
        beta[h] = d;
      }
    }

    std::vector<std::vector<int>> eps_list{{}};
    for (int i = 0; i < q; ++i) {
      std::vector<std::vector<int>> next;
      for (const auto& e : eps_list) {
        auto a = e;
        a.push_back(0);
        next.push_back(a);
        if (gamma[i] % 2 == 0) {
          a.back() = 1;
          next.push_back(a);
        }
      }
      eps_list = std::move(next);
    }
    bool substitute = gamma.degree() > q;

    std::vector<RootTree> out;
    for (const auto& eps : eps_list) {
      std::optional<ChartStep> ps;
      if (substitute) ps = PowerSub{gamma, eps};
      std::vector<PolyFamily> red;
      for (size_t h = 0; h < np; ++h) {
        PolyFamily F = ps ? pullback(Gp[h], *ps) : Gp[h];
        for (int j = 1; j <= F.n; ++j) {
          Jet& a = F.a[static_cast<size_t>(j - 1)];
          if (!a.is_zero()) a = divide_known_multiple(a, beta[h].scaled(j));
        }
        red.push_back(std::move(F));
      }
      RootTree sub = solve(red, depth + 1, ex);
      ChartMap pre = rel;
      if (ps) pre.steps.push_back(*ps);
      for_each_leaf<RootChart>(sub, q, [&](const ChartMap& R, RootChart& lf) {
        ChartMap full = pre.then(R);
        std::vector<Jet> roots(L.resolved.size(), Jet(q));
        for (size_t s = 0; s < L.resolved.size(); ++s)
          if (L.resolved[s]) roots[s] = pullback(*L.resolved[s], full, true);
        size_t off = 0;
        for (size_t h = 0; h < np; ++h) {
          Jet sh = pullback(L.pending[h].shift, full, true);
          for (size_t k = 0; k < L.pending[h].slots.size(); ++k)
            roots[L.pending[h].slots[k]] = sh + times_monomial(beta[h], R, lf.roots[off + k]);
          off += L.pending[h].slots.size();
          lf.shift_ledger.insert(lf.shift_ledger.begin(), "depth " + std::to_string(depth) + ": shift " + sh.str() +
                                                              " + x^" + beta[h].str());
        }
        lf.roots = std::move(roots);
        if (!ex) lf.soundness = Soundness::Numeric;
      });
      if (ps) sub.steps = {*ps};
      out.push_back(std::move(sub));
    }
    return out;
  }

  // Roots as series at the origin without further charts.
  std::vector<Jet> aj_roots(const PolyFamily& F, int depth) const {
    if (depth > o.max_depth) fail(ErrorKind::DepthExceeded, "root recursion depth");
    Level L = split_items({F});
    std::vector<Jet> roots(L.resolved.size(), Jet(q));
    for (size_t s = 0; s < L.resolved.size(); ++s)
      if (L.resolved[s]) roots[s] = *L.resolved[s];
    for (const auto& p : L.pending) {
      std::vector<std::pair<int, Exponent>> al;
      for (int j = 2; j <= p.G.n; ++j) {
        const Jet& a = p.G.a[static_cast<size_t>(j - 1)];
        if (a.is_zero()) continue;
        NcResult r = normal_crossing_test(a);
        if (r.status != NcStatus::Nc) fail(ErrorKind::AjObstruction, "coefficient a_" + std::to_string(j) + " is not normal crossings");
        al.emplace_back(j, r.cert->alpha);
      }
      Exponent beta(q);
      for (int i = 0; i < q; ++i) {
        mpq_class best(-1);
        for (const auto& [j, a] : al) {
          mpq_class v(a[i], j);
          v.canonicalize();
          if (best < 0 || v < best) best = v;
        }
        if (best.get_den() != 1) fail(ErrorKind::AjObstruction, "fractional root exponent");
        beta[i] = static_cast<int>(best.get_num().get_si());
      }
      bool attained = false;
      for (const auto& [j, a] : al) attained = attained || a == beta.scaled(j);
      if (!attained) fail(ErrorKind::AjObstruction, "no coefficient attains the root exponent");
      PolyFamily red = p.G;
      for (int j = 1; j <= red.n; ++j) {
        Jet& a = red.a[static_cast<size_t>(j - 1)];
        if (!a.is_zero()) a = divide_known_multiple(a, beta.scaled(j));
      }
      std::vector<Jet> mu = aj_roots(red, depth + 1);
      for (size_t k = 0; k < p.slots.size(); ++k) roots[p.slots[k]] = p.shift + times_monomial(beta, ChartMap{q, {}}, mu[k]);
    }
    return roots;
  }

  RootTree aj_convert(const NcTree& m, const ChartMap& rel, const PolyFamily& P, bool exact) const {
    RootTree r;
    r.steps = m.steps;
    r.log.multiplicity = m.log.multiplicity;
    for (const auto& c : m.children) r.children.push_back(aj_convert(c, rel.then(ChartMap{q, c.steps}), P, exact));
    if (!m.leaf) return r;
    bool ex = exact && m.leaf->exact;
    PolyFamily Pp = pullback(P, rel, true);
    long cap = factorial(P.n);
    std::vector<Exponent> trials;
    Exponent g(q);
    std::function<void(int)> gen = [&](int i) {
      if (i == q) {
        trials.push_back(g);
        return;
      }
      for (int v = 1; v <= cap; ++v) {
        g[i] = v;
        gen(i + 1);
      }
    };
    gen(0);
    auto prod = [](const Exponent& e) {
      long p = 1;
      for (int i = 0; i < e.q(); ++i) p *= e[i];
      return p;
    };
    std::stable_sort(trials.begin(), trials.end(), [&](const Exponent& a, const Exponent& b) {
      long pa = prod(a), pb = prod(b);
      return pa != pb ? pa < pb : a < b;
    });
    for (const auto& gamma : trials) {
      std::vector<std::vector<int>> eps_list{{}};
      for (int i = 0; i < q; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& e : eps_list) {
          auto a = e;
          a.push_back(0);
          next.push_back(a);
          if (gamma[i] % 2 == 0) {
            a.back() = 1;
            next.push_back(a);
          }
        }
        eps_list = std::move(next);
      }
      bool substitute = gamma.degree() > q;
      std::vector<RootTree> kids;
      try {
        for (const auto& eps : eps_list) {
          RootTree kid;
          PolyFamily F = Pp;
          if (substitute) {
            kid.steps = {PowerSub{gamma, eps}};
            F = pullback(Pp, kid.steps[0]);
          }
          RootChart leaf;
          leaf.roots = aj_roots(F, 0);
          leaf.soundness = ex ? Soundness::Exact : Soundness::Numeric;
          leaf.shift_ledger.push_back("single substitution " + gamma.str());
          kid.leaf = std::move(leaf);
          kids.push_back(std::move(kid));
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::AjObstruction) throw;
        continue;
      }
      for (auto& k : kids) r.children.push_back(std::move(k));
      return r;
    }
    fail(ErrorKind::AjObstruction, "no single power substitution up to n! resolves the roots");
  }

  RootTree aj(const PolyFamily& P) const {
    std::vector<Jet> D = subdiscriminants(P.a, Jet::constant(q, Scalar(1)));
    int s = 0;
    for (int k = P.n; k >= 1; --k) {
      const Jet& d = D[static_cast<size_t>(k - 1)];
      if (d.is_zero()) continue;
      if (d.known_zero()) fail(ErrorKind::PrecisionLoss, "subdiscriminant undecidable");
      s = k;
      break;
    }
    Jet d = D[static_cast<size_t>(s - 1)];
    if (!d.is_real()) d = d * d.conj();
    MonomializeOptions mo;
    mo.max_depth = o.max_depth;
    mo.radius = o.radius;
    mo.precision = o.precision;
    NcTree mt = monomialize({d}, {}, mo);
    RootTree t = aj_convert(mt, ChartMap{q, {}}, P, P.scalars_exact());
    t.log.notes.push_back("discriminant index " + std::to_string(s));
    return t;
  }
};

RootTree run(const PolyFamily& P, const DesingOptions& o) {
  Solver S{o, P.q};
  RootTree t = o.mode == DesingMode::AJ ? S.aj(P) : S.solve({P}, 0, P.scalars_exact());
  if (certify_tree(P, t) != 0) fail(ErrorKind::CertificateFailure, "leaf certificate failed");
  return t;
}

RootTree run_with_retry(const PolyFamily& P, DesingOptions o) {
  try {
    return run(P, o);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PrecisionLoss || !o.retry) throw;
  }
  o.K *= 2;
  RootTree t = run(P, o);
  t.log.notes.push_back("retried at K = " + std::to_string(o.K));
  return t;
}

}  // namespace

bool leaf_certificate(const PolyFamily& P, const ChartMap& chart, const std::vector<Jet>& roots) {
  if (static_cast<int>(roots.size()) != P.n) return false;
  PolyFamily Q = pullback(P, chart, true);
  std::vector<Jet> sig = elementary_symmetric(roots, Jet::constant(P.q, Scalar(1)));
  for (int i = 0; i < P.n; ++i)
    if (!jets_agree(sig[static_cast<size_t>(i)], Q.a[static_cast<size_t>(i)])) return false;
  return true;
}

size_t certify_tree(const PolyFamily& P, RootTree& tree) {
  size_t bad = 0;
  ChartMap root{P.q, tree.steps};
  for_each_leaf<RootChart>(tree, P.q, [&](const ChartMap& R, RootChart& lf) {
    ChartMap full = root.then(R);
    lf.certified = leaf_certificate(P, full, lf.roots);
    bool ex = full.exact();
    for (const auto& r : lf.roots) ex = ex && r.scalars_exact();
    if (!ex) lf.soundness = Soundness::Numeric;
    if (!lf.certified) ++bad;
  });
  return bad;
}

RootTree desingularize(const PolyFamily& P, const DesingOptions& opts) {
  DesingOptions o = opts;
  o.mode = DesingMode::General;
  return run_with_retry(P, o);
}

RootTree desingularize_hyperbolic(const PolyFamily& P, DesingOptions opts) {
  if (!P.is_real()) fail(ErrorKind::NonReal, "hyperbolic mode needs real coefficients");
  std::vector<Scalar> a0 = P.at_origin();
  bool exact = std::all_of(a0.begin(), a0.end(), [](const Scalar& s) { return s.is_exact(); });
  if (exact && !hyperbolicity_test(a0).hyperbolic)
    fail(ErrorKind::HyperbolicityViolated, "not hyperbolic at the origin");
  opts.mode = DesingMode::Hyperbolic;
  return run_with_retry(P, opts);
}

RootTree desingularize_aj(const PolyFamily& P, DesingOptions opts) {
  if (P.q > 2) fail(ErrorKind::UnsupportedDimension, "single-substitution mode supports q <= 2");
  opts.mode = DesingMode::AJ;
  return run_with_retry(P, opts);
}

namespace {

std::pair<Scalar, Scalar> value_and_slope(const Jet& f, const Scalar& t) {
  Scalar v, d;
  for (const auto& [e, c] : f.poly().terms()) {
    int k = e[0];
    v += c * t.pow(static_cast<unsigned>(k));
    if (k > 0) d += c * Scalar(static_cast<long>(k)) * t.pow(static_cast<unsigned>(k - 1));
  }
  return {v, d};
}

}  // namespace

GlobalRoots curve_roots_global(const PolyFamily& P, const Scalar& lo, const Scalar& hi, int pieces,
                               DesingOptions opts) {
  if (P.q != 1) fail(ErrorKind::UnsupportedDimension, "global curve roots need one parameter");
  if (pieces < 1) fail(ErrorKind::InvalidArgument, "at least one piece");
  GlobalRoots out;
  Scalar step = (hi - lo) / Scalar(static_cast<long>(pieces));
  double rad = std::abs(step.to_complex());
  for (int k = 0; k <= pieces; ++k) {
    Scalar c = lo + step * Scalar(static_cast<long>(k));
    PolyFamily Pc = P;
    for (auto& a : Pc.a) a = compose_translate(a, {c});
    RootTree t = desingularize_hyperbolic(Pc, opts);
    auto ls = leaves(t, 1);
    if (ls.size() != 1 || ls[0].chart.count_blowups() || ls[0].chart.count_powersubs())
      fail(ErrorKind::GlueMismatch, "local resolution at " + c.str() + " is not a single chart");
    out.pieces.push_back({c, rad, ls[0].payload->roots});
  }
  int n = P.n;
  for (size_t k = 0; k + 1 < out.pieces.size(); ++k) {
    GlobalPiece& A = out.pieces[k];
    GlobalPiece& B = out.pieces[k + 1];
    Scalar mid = (A.center + B.center) * Scalar::rational(1, 2);
    std::vector<std::pair<Scalar, Scalar>> va, vb;
    for (const auto& r : A.roots) va.push_back(value_and_slope(r, mid - A.center));
    for (const auto& r : B.roots) vb.push_back(value_and_slope(r, mid - B.center));
    std::vector<int> perm(static_cast<size_t>(n)), best;
    std::iota(perm.begin(), perm.end(), 0);
    double best_cost = INFINITY;
    do {
      double cost = 0;
      for (int i = 0; i < n; ++i) {
        const auto& x = va[static_cast<size_t>(i)];
        const auto& y = vb[static_cast<size_t>(perm[static_cast<size_t>(i)])];
        Scalar dv = x.first - y.first, dd = x.second - y.second;
        cost += std::abs(dv.to_complex()) + std::abs(dd.to_complex());
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<Jet> reordered;
    for (int i = 0; i < n; ++i) reordered.push_back(B.roots[static_cast<size_t>(best[static_cast<size_t>(i)])]);
    B.roots = std::move(reordered);
    out.mismatch += best_cost;
  }
  if (out.mismatch > 1e-8) fail(ErrorKind::GlueMismatch, "gluing mismatch " + std::to_string(out.mismatch));
  return out;
}

}  // namespace rc
