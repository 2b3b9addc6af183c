#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "rootcharts/errors.hpp"
#include "rootcharts/harness.hpp"
#include "rootcharts/numeric_roots.hpp"
#include "rootcharts/symfun.hpp"

using namespace rc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Jet X(int qd, int i) { return Jet::variable(qd, i); }
Jet C(int qd, const Scalar& c) { return Jet::constant(qd, c); }
Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }
PolyFamily quad(const Jet& c0) { return PolyFamily::from_coeffs({Jet(c0.q()), c0}); }

std::string corpus_dir = RC_CORPUS_DIR;
PolyFamily corpus_family(const std::string& name) { return read_problem(corpus_dir + "/" + name + ".json").poly; }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

Jet truncate(const Jet& f, int K) { return Jet(f.poly(), truncation_ideal(f.q(), K)); }

bool vanishes(const Jet& f) {
  for (const auto& [e, c] : f.poly().terms())
    if (!c.contains_zero()) return false;
  return true;
}

// sqrt(1 + t^2) through t^(2 terms - 2), binomial coefficients.
Jet sqrt_one_plus_square(int qd, int var, int terms) {
  MultiPoly p(qd);
  mpq_class c = 1;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) c = c * (mpq_class(1, 2) - (k - 1)) / k;
    p.add_term(Exponent::unit(qd, var, 2 * k), Scalar(c));
  }
  return Jet(p, PrecisionIdeal::from(qd, {Exponent::unit(qd, var, 2 * terms)}));
}

int blowup_chart(const ChartMap& m) {
  for (const auto& s : m.steps)
    if (auto b = std::get_if<BlowUp>(&s)) return b->chart;
  return -1;
}

// BlowUp in `chart`, later PowerSub with gamma, no second BlowUp between.
bool blowup_then_powersub(const ChartMap& m, int chart, const Exponent& gamma) {
  for (size_t i = 0; i < m.steps.size(); ++i) {
    auto b = std::get_if<BlowUp>(&m.steps[i]);
    if (!b || b->chart != chart) continue;
    for (size_t j = i + 1; j < m.steps.size(); ++j) {
      if (auto p = std::get_if<PowerSub>(&m.steps[j])) return p->gamma == gamma;
      if (std::holds_alternative<BlowUp>(m.steps[j])) break;
    }
  }
  return false;
}

struct CertCount {
  size_t leaves = 0, certified = 0, exact = 0;
};

CertCount certify_all(const PolyFamily& P, const RootTree& t) {
  CertCount c;
  for (const auto& l : leaves(t, P.q)) {
    ++c.leaves;
    if (leaf_certificate(P, l.chart, l.payload->roots)) ++c.certified;
    bool ex = l.chart.exact();
    for (const auto& r : l.payload->roots) ex = ex && r.scalars_exact();
    if (ex) ++c.exact;
  }
  return c;
}

const char* kFamilies[] = {"intro_z2_x1ix2", "z2_x1x2", "hyperbolic_x1sq_x2sq", "stress_z3_x1_x2"};

Outcome criterion1(std::vector<std::pair<PolyFamily, RootTree>>& trees) {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  DesingOptions o;
  o.K = 12;
  for (const char* name : kFamilies) {
    PolyFamily P = corpus_family(name);
    RootTree t = desingularize(P, o);
    CertCount c = certify_all(P, t);
    ok = ok && c.leaves > 0 && c.certified == c.leaves;
    d << name << " " << c.certified << "/" << c.leaves << " certified (" << c.exact << " rational, "
      << c.leaves - c.exact << " ball enclosed); ";
    trees.emplace_back(P, std::move(t));
  }
  double secs = seconds_since(t0);
  ok = ok && secs < 60;
  d << fmt("%.2f s (< 60 s)", secs);
  return {ok, d.str()};
}

Outcome criterion2() {
  PolyFamily P = corpus_family("intro_z2_x1ix2");
  RootTree t = desingularize(P);
  int shaped = 0;
  for (const auto& l : leaves(t, 2))
    if (blowup_then_powersub(l.chart, 0, Exponent({2, 1})) || blowup_then_powersub(l.chart, 1, Exponent({1, 2})))
      ++shaped;
  VerifyOptions v;
  v.samples = 200;
  v.coverage_radius = 0.05;
  auto rep = verify_roots(P, t, v);
  bool ok = shaped > 0 && rep.max_residual <= 1e-8 && rep.coverage >= 0.99;
  return {ok, fmt("%d BlowUp->PowerSub(2,1) leaves; max residual %.3g (<= 1e-8); coverage %.4f (>= 0.99)", shaped,
                  rep.max_residual, rep.coverage)};
}

Outcome criterion3() {
  PolyFamily P = corpus_family("hyperbolic_x1sq_x2sq");
  RootTree t = desingularize_hyperbolic(P);
  int powersubs = 0, matched = 0, charts = 0;
  bool exact = true;
  for (const auto& l : leaves(t, 2)) {
    powersubs += l.chart.count_powersubs();
    int ch = blowup_chart(l.chart);
    if (ch < 0) continue;
    ++charts;
    int e = ch, s = 1 - ch;  // exceptional and slope variables
    Jet ye = X(2, e), ys = X(2, s);
    Jet series = ye + (ye * ys * ys).scaled(q(1, 2)) - (ye * ys * ys * ys * ys).scaled(q(1, 8));
    const auto& r = l.payload->roots;
    for (const auto& x : r) exact = exact && x.scalars_exact();
    bool plus = jets_agree(truncate(r[0], 5), truncate(series, 5)) && jets_agree(truncate(r[1], 5), truncate(-series, 5));
    bool minus = jets_agree(truncate(r[1], 5), truncate(series, 5)) && jets_agree(truncate(r[0], 5), truncate(-series, 5));
    if (plus || minus) ++matched;
  }
  bool ok = powersubs == 0 && charts > 0 && matched == charts && exact;
  return {ok, fmt("%d PowerSub steps; %d/%d blow-up charts match +-y1(1 + y2^2/2 - y2^4/8) through order 4; exact %s",
                  powersubs, matched, charts, exact ? "yes" : "no")};
}

Outcome criterion4() {
  Jet x = X(1, 0);
  Jet f = x * (C(1, q(1)) + x);
  GlobalRoots g = curve_roots_global(quad(-(f * f)), q(-1, 2), q(1, 2));
  int good = 0;
  int sign = 0;
  for (const auto& p : g.pieces) {
    Jet want = compose_translate(f, {p.center});
    int s = p.roots[0] == want && p.roots[1] == -want ? 1 : p.roots[0] == -want && p.roots[1] == want ? -1 : 0;
    if (s != 0 && (sign == 0 || s == sign) && p.roots[0].scalars_exact()) ++good;
    if (sign == 0) sign = s;
  }
  bool ok = !g.pieces.empty() && good == static_cast<int>(g.pieces.size()) && g.mismatch == 0.0;
  return {ok, fmt("%d/%zu pieces equal +-x(1+x) with one consistent sign; mismatch %g", good, g.pieces.size(),
                  g.mismatch)};
}

Outcome criterion5() {
  auto A = read_problem(corpus_dir + "/hermitian_matrix.json").matrix;
  EigenTree t = eigen_desingularize(A);
  Scalar I = Scalar::i();
  int values = 0, vectors = 0, normalized = 0, total = 0;
  for (const auto& l : leaves(t, 2)) {
    int ch = blowup_chart(l.chart);
    if (ch < 0 || l.chart.count_powersubs() != 0) continue;
    int ev = ch, sv = 1 - ch;
    Jet s = sqrt_one_plus_square(2, sv, 20);
    Jet ye = X(2, ev), yv = X(2, sv);
    const EigenChart& E = *l.payload;
    for (size_t k = 0; k < 2; ++k) {
      ++total;
      const Jet& lam = E.eigenvalues[k];
      bool plus = jets_agree(lam, ye * s), minus = jets_agree(lam, -(ye * s));
      if (plus || minus) ++values;
      // Displayed eigenvectors: (-1 - s, i y) and (i y, -1 - s) in the x-chart,
      // (-x + s, i) and (i, -x + s) in the y-chart.
      std::vector<Jet> w;
      if (ch == 0) {
        Jet a = C(2, q(-1)) - s, b = yv.scaled(I);
        w = plus ? std::vector<Jet>{a, b} : std::vector<Jet>{b, a};
      } else {
        Jet a = s - yv, b = C(2, I);
        w = plus ? std::vector<Jet>{b, a} : std::vector<Jet>{a, b};
      }
      const auto& v = E.eigenvectors[k];
      if (vanishes(v[0] * w[1] - v[1] * w[0])) ++vectors;
      for (const auto& e : v) {
        if (!e.constant_term().is_invertible()) continue;
        if (e.constant_term().compatible(q(1))) ++normalized;
        break;
      }
    }
  }
  std::string refused = "accepted";
  try {
    eigen_desingularize(read_problem(corpus_dir + "/nonnormal_matrix.json").matrix);
  } catch (const Error& e) {
    refused = error_name(e.kind());
  }
  bool ok = total > 0 && values == total && vectors == total && normalized == total && refused == "NotNormal";
  return {ok, fmt("eigenvalues +-x sqrt(1+y^2) %d/%d; eigenvectors proportional %d/%d, normalized %d/%d; "
                  "[[0,x^2],[y^2,0]] -> %s",
                  values, total, vectors, total, normalized, total, refused.c_str())};
}

Outcome criterion6() {
  std::ostringstream d;
  Sampler f = sampler_of(Field([](const Point& x) { return cplx(std::sqrt(x[0] * x[1]), 0); }));
  GridSpec g;
  g.box = Box{{0.5, 0.5}, {0.5, 0.5}};
  g.h = 1.0 / 64;
  GradOptions o1;
  o1.levels = 3;
  auto l1 = grad_lp_estimate(f, g, o1);
  double rel = std::abs(l1.back().value - 4.0 / 3) / (4.0 / 3);
  bool a1 = l1.back().h == 1.0 / 256 && rel <= 0.05;
  GradOptions o2 = o1;
  o2.p = 2;
  auto l2 = grad_lp_estimate(f, g, o2);
  bool a2 = true;
  d << fmt("(a) L1 %.5f at h=2^-8 (rel err %.4f <= 0.05) %s; L2", l1.back().value, rel, a1 ? "ok" : "FAIL");
  for (size_t k = 0; k < l2.size(); ++k) {
    d << fmt(" %.4f", l2[k].value);
    if (k > 0) {
      double r = l2[k].value / l2[k - 1].value;
      d << fmt(" (x%.3f)", r);
      a2 = a2 && r >= 1.2;
    }
  }
  d << (a2 ? " ok" : " FAIL: ratio < 1.2");

  Field im = [](const Point& x) { return cplx(std::sqrt(cplx(x[0], x[1])).imag(), 0); };
  double mo = mean_oscillation(im, PolarCube{0.25, 1e-2});
  double closed = polar_cube_im_sqrt_mo(0.25, 1e-2);
  double fine = mean_oscillation(im, PolarCube{0.25, 1e-4});
  bool b = std::abs(mo - closed) <= 0.01 * closed && std::abs(fine - 0.5) < std::abs(mo - 0.5) && std::abs(fine - 0.5) < 1e-3;
  d << fmt("; (b) mo %.6f vs closed form %.6f, eps=1e-4 gives %.6f -> 0.5 %s", mo, closed, fine, b ? "ok" : "FAIL");

  PolyFamily P = corpus_family("intro_z2_x1ix2");
  GridSpec s;
  s.box = Box::cube(2, 0.5);
  auto sel = tree_selection(P, desingularize(P), s.box);
  auto r = sbv_report(sel, 0, s);
  bool c = r.w1 == Verdict::Pass && r.w2 == Verdict::Pass && r.w3 == Verdict::Pass && r.w11 == Verdict::Fail &&
           r.vmo == Verdict::Fail && r.l1.back().jump_mass > 0;
  d << fmt("; (c) W1 %s W2 %s W3 %s W11 %s (jump mass %.3f) VMO %s %s", verdict_name(r.w1), verdict_name(r.w2),
           verdict_name(r.w3), verdict_name(r.w11), r.l1.back().jump_mass, verdict_name(r.vmo), c ? "ok" : "FAIL");
  return {a1 && a2 && b && c, d.str()};
}

Outcome criterion7() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> num(-24, 24), den(1, 6);
  auto rat = [&] { return q(num(rng), den(rng)); };
  int compared = 0, agree = 0, delta1 = 0, total = 1000;
  for (int it = 0; it < total; ++it) {
    size_t n = 1 + static_cast<size_t>(it % 5);
    std::vector<Scalar> a;
    if (it % 2) {
      std::vector<Scalar> lam;
      for (size_t k = 0; k < n; ++k) lam.push_back(rat());
      a = elementary_symmetric(lam);
    } else {
      for (size_t k = 0; k < n; ++k) a.push_back(rat());
    }
    auto d = subdiscriminants(a);
    if (d[0].exact_equal(q(static_cast<long>(n)))) ++delta1;
    if (std::abs(d.back().to_complex()) < 1e-4) continue;
    std::vector<cplx> ac;
    for (const auto& x : a) ac.push_back(x.to_complex());
    auto roots = numeric_roots(ac);
    bool all_real = std::all_of(roots.begin(), roots.end(), [](cplx z) { return std::abs(z.imag()) <= 1e-9; });
    ++compared;
    if (hyperbolicity_test(a).hyperbolic == all_real) ++agree;
  }
  return {agree == compared && delta1 == total && compared > 0,
          fmt("agreement %d/%d outside the 1e-4 margin; Delta_1 = n in %d/%d", agree, compared, delta1, total)};
}

Outcome criterion8() {
  bool ok = true;
  std::ostringstream d;
  for (int n : {2, 3, 4}) {
    auto fit = holder_probe(holder_ensemble(n, 40, 1000 + static_cast<unsigned long>(n)), n);
    ok = ok && fit.pass;
    d << fmt("n=%d slope %.4f (>= %.4f, %zu pairs) %s; ", n, fit.slope, 1.0 / n - 0.05, fit.used, fit.pass ? "ok" : "FAIL");
  }
  return {ok, d.str()};
}

bool agree_modulo(const MultiPoly& a, const MultiPoly& b, const PrecisionIdeal& I) {
  MultiPoly d = a - b;
  for (const auto& [e, c] : d.terms())
    if (!I.contains(e)) return false;
  return true;
}

Scalar random_rational(std::mt19937_64& rng, int span, int den) {
  std::uniform_int_distribution<int> num(-span * den, span * den), dd(1, den);
  return Scalar::rational(num(rng), dd(rng));
}

// Exact and truncated jets pushed through the same random chain of chart,
// power and translation maps agree modulo the propagated ideal.
int composition_chains(int chains) {
  std::mt19937_64 rng(91);
  const int K = 4;
  int good = 0;
  for (int chain = 0; chain < chains; ++chain) {
    MultiPoly full(2);
    std::uniform_int_distribution<int> deg(0, 7);
    for (int k = 0; k < 8; ++k) {
      Scalar re = random_rational(rng, 2, 2), im = random_rational(rng, 2, 2);
      full.add_term({deg(rng), deg(rng)}, Scalar(re.exact().re, im.exact().re));
    }
    Jet exact(full);
    Jet jet = exact.truncated(K);
    std::uniform_int_distribution<int> kind(0, 2), coin(0, 1), gam(1, 3);
    bool ok = true;
    for (int s = 0; s < 4; ++s) {
      int k = kind(rng);
      if (k == 0) {
        int i = coin(rng);
        MonomialMap m{2, {{1, 0}, {0, 1}}, {1, 1}};
        m.images[static_cast<size_t>(1 - i)] = Exponent{1, 1};
        exact = compose_monomial(exact, m);
        jet = compose_monomial(jet, m);
      } else if (k == 1) {
        MonomialMap m{2, {Exponent{gam(rng), 0}, Exponent{0, gam(rng)}}, {coin(rng) ? -1 : 1, 1}};
        exact = compose_monomial(exact, m);
        jet = compose_monomial(jet, m);
      } else {
        std::vector<Scalar> c{Scalar(), Scalar()};
        int free_var = -1;
        for (int i = 0; i < 2; ++i) {
          bool used = false;
          for (const auto& g : jet.ideal().gens()) used = used || g[i] > 0;
          if (!used) free_var = i;
        }
        if (free_var < 0) continue;
        c[static_cast<size_t>(free_var)] = random_rational(rng, 1, 3);
        exact = compose_translate(exact, c);
        jet = compose_translate(jet, c);
      }
      ok = ok && agree_modulo(exact.poly(), jet.poly(), jet.ideal());
    }
    if (ok) ++good;
  }
  return good;
}

Outcome criterion9(const std::vector<std::pair<PolyFamily, RootTree>>& trees) {
  std::ostringstream d;
  int chains = composition_chains(200);
  bool ok = chains == 200;
  d << fmt("composition chains %d/200; ", chains);

  // (z - 1)(z^2 - c): the split factor z^2 - c is zero modulo degree K + 1
  // when c vanishes to higher order, forcing PrecisionLoss. Every run must
  // certify (possibly after the retry at 2K) or throw.
  int first = 0, retried = 0, loud = 0, silent = 0, runs = 0;
  for (int a = 1; a <= 7; ++a)
    for (int b = a; b <= 7; ++b)
      for (int K : {1, 2, 3}) {
        ++runs;
        Jet c = X(2, 0).pow(static_cast<unsigned>(a)) + X(2, 1).pow(static_cast<unsigned>(b)).scaled(Scalar::i());
        PolyFamily P = PolyFamily::from_coeffs({C(2, q(-1)), -c, c});
        DesingOptions o;
        o.K = K;
        try {
          RootTree t = desingularize(P, o);
          bool again = t.log.notes.end() != std::find_if(t.log.notes.begin(), t.log.notes.end(), [](const std::string& s) {
                         return s.rfind("retried", 0) == 0;
                       });
          CertCount c = certify_all(P, t);
          VerifyOptions v;
          v.samples = 20;
          v.leaf_fraction = 1e-3;
          v.tol = 1e-4;
          auto rep = verify_roots(P, t, v);
          if (c.certified != c.leaves || !(rep.max_residual <= v.tol) || !(rep.max_match <= 1e-3)) ++silent;
          else if (again) ++retried;
          else ++first;
        } catch (const Error&) {
          ++loud;
        }
      }
  ok = ok && silent == 0 && retried > 0 && loud > 0;
  d << fmt("low-order runs %d: %d certified directly, %d after retry at 2K, %d failed loudly, %d silently wrong; ", runs,
           first, retried, loud, silent);

  // Mutation: one corrupted leaf coefficient must break the certificate suite.
  int broken = 0, mutated = 0;
  for (const auto& [P, t] : trees) {
    auto ls = leaves(t, P.q);
    if (ls.empty()) continue;
    std::vector<Jet> roots = ls[0].payload->roots;
    MultiPoly p = roots[0].poly();
    p.add_term(Exponent::unit(P.q, 0, 1), q(1, 1000));
    roots[0] = Jet(p, roots[0].ideal());
    ++mutated;
    if (!leaf_certificate(P, ls[0].chart, roots)) ++broken;
  }
  ok = ok && mutated == 4 && broken == mutated;
  d << fmt("mutations detected %d/%d", broken, mutated);
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> expect_fail;
  app.add_option("--corpus", corpus_dir, "corpus directory");
  app.add_option("--expect-fail", expect_fail, "criteria known to fail; the run fails if one of them passes");
  CLI11_PARSE(app, argc, argv);
  std::set<int> xfail(expect_fail.begin(), expect_fail.end());

  std::vector<std::pair<PolyFamily, RootTree>> trees;
  std::vector<std::function<Outcome()>> criteria = {
      [&] { return criterion1(trees); }, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, [&] { return criterion9(trees); }};
  int unexpected = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    int id = static_cast<int>(k) + 1;
    Outcome r;
    auto t0 = Clock::now();
    try {
      r = criteria[k]();
    } catch (const std::exception& e) {
      r = {false, std::string("threw ") + e.what()};
    }
    const char* tag = r.pass ? "PASS" : "FAIL";
    if (xfail.count(id)) tag = r.pass ? "XPASS" : "XFAIL";
    std::printf("%-5s criterion %d: %s [%.1f s]\n", tag, id, r.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (r.pass == static_cast<bool>(xfail.count(id))) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
