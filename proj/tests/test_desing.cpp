#include <chrono>

#include "doctest.h"
#include "helpers.hpp"
#include "rootcharts/desing.hpp"
#include "rootcharts/errors.hpp"
#include "rootcharts/symfun.hpp"

using namespace rc;
using rc::test::gi;
using rc::test::poly;
using rc::test::q;

namespace {

Jet X(int qd, int i) { return Jet::variable(qd, i); }
Jet C(int qd, const Scalar& c) { return Jet::constant(qd, c); }

// z^2 + a2
PolyFamily quad(const Jet& a2) { return PolyFamily::from_coeffs({Jet(a2.q()), a2}); }

std::vector<LeafRef<RootChart>> all_leaves(const RootTree& t, int qd) { return leaves(t, qd); }

bool path_has_prefix(const ChartMap& m, int chart, const Exponent& gamma) {
  for (size_t i = 0; i + 1 < m.steps.size(); ++i) {
    auto b = std::get_if<BlowUp>(&m.steps[i]);
    if (!b || b->chart != chart) continue;
    for (size_t j = i + 1; j < m.steps.size(); ++j) {
      if (auto p = std::get_if<PowerSub>(&m.steps[j])) return p->gamma == gamma;
      if (std::holds_alternative<BlowUp>(m.steps[j])) break;
    }
  }
  return false;
}

void check_group_descent(const RootTree& t, long parent = 1L << 40) {
  if (t.log.group_order >= 0) {
    CHECK(t.log.group_order < parent);
    parent = t.log.group_order;
  }
  for (const auto& c : t.children) check_group_descent(c, parent);
}

Jet truncate(const Jet& f, int K) { return Jet(f.poly(), truncation_ideal(f.q(), K)); }

}  // namespace

TEST_CASE("clustering") {
  auto a = cluster_roots({q(1), q(-1)}, 0.1);
  CHECK(a.size() == 2);
  CHECK(cluster_roots({q(0), q(0)}, 1e-9).size() == 1);
  auto b = cluster_roots({q(0), q(1, 20), q(1)}, 0.1);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == std::vector<size_t>{0, 1});
  CHECK(b[1] == std::vector<size_t>{2});
}

TEST_CASE("Hensel root lifting") {
  Jet x = X(1, 0);
  // z^2 - (1 + x)
  PolyFamily P = quad(-(C(1, q(1)) + x));
  Jet u = hensel_root_lift(P, q(1), 6);
  Jet series = poly(1, {{q(1), {0}}, {q(1, 2), {1}}, {q(-1, 8), {2}}, {q(1, 16), {3}}, {q(-5, 128), {4}}});
  CHECK(jets_agree(truncate(u, 4), truncate(series, 4)));
  CHECK(u.ideal() == truncation_ideal(1, 6));

  Jet a = poly(2, {{q(2), {0, 0}}, {q(3), {1, 2}}});
  CHECK(hensel_root_lift(PolyFamily::from_coeffs({a}), q(2), 5) == a);

  Jet y = X(2, 1);
  PolyFamily G = quad(-(C(2, q(1)) + y.scaled(Scalar::i())));
  Jet v = hensel_root_lift(G, q(1), 6);
  Jet expect = poly(2, {{q(1), {0, 0}}, {Scalar(mpq_class(0), mpq_class(1, 2)), {0, 1}}, {q(1, 8), {0, 2}}});
  CHECK(jets_agree(truncate(v, 2), truncate(expect, 2)));

  CHECK_THROWS_AS(hensel_root_lift(quad(-x), q(0), 4), Error);
}

TEST_CASE("cluster splitting") {
  Jet x = X(1, 0);
  PolyFamily P = quad(-(C(1, q(1)) + x));
  ClusterSplit s = split_family(P, {{q(1), 1}, {q(-1), 1}}, 8);
  REQUIRE(s.factors.size() == 2);
  Jet u = hensel_root_lift(P, q(1), 8);
  CHECK(jets_agree(s.factors[0].a[0], u));
  CHECK(jets_agree(s.factors[1].a[0], -u));

  CHECK(split_family(P, {{q(0), 2}}, 8).factors.size() == 1);

  // z^3 - z - x: a1 = 0, a2 = -1, a3 = x
  PolyFamily Q = PolyFamily::from_coeffs({Jet(1), C(1, q(-1)), x});
  ClusterSplit t = split_family(Q, {{q(0), 1}, {q(1), 1}, {q(-1), 1}}, 8);
  REQUIRE(t.factors.size() == 3);
  std::vector<Jet> roots;
  for (const auto& f : t.factors) roots.push_back(f.a[0]);
  auto sig = elementary_symmetric(roots, C(1, q(1)));
  for (int i = 0; i < 3; ++i) CHECK(jets_agree(sig[static_cast<size_t>(i)], Q.a[static_cast<size_t>(i)]));

  CHECK_THROWS_AS(split_family(P, {{q(1), 1}, {q(1), 1}}, 8), Error);
}

TEST_CASE("square root of a complex linear form") {
  Jet a2 = -(X(2, 0) + X(2, 1).scaled(Scalar::i()));
  PolyFamily P = quad(a2);
  RootTree t = desingularize(P);
  auto ls = all_leaves(t, 2);
  bool found = false;
  for (const auto& l : ls) {
    CHECK(l.payload->certified);
    if (path_has_prefix(l.chart, 0, Exponent({2, 1})) || path_has_prefix(l.chart, 1, Exponent({1, 2}))) found = true;
  }
  CHECK(found);
  for (const auto& l : ls) {
    if (l.chart.steps.size() != 3) continue;
    auto b = std::get_if<BlowUp>(&l.chart.steps[0]);
    auto p = std::get_if<PowerSub>(&l.chart.steps[2]);
    if (!b || !p || b->chart != 0) continue;
    int e = p->eps[0];
    // root^2 = (-1)^e y1^2 (1 + i y2) and root = y1 * unit
    Jet r = l.payload->roots[0];
    Jet target = poly(2, {{q(e ? -1 : 1), {2, 0}}, {e ? gi(0, -1) : gi(0, 1), {2, 1}}});
    CHECK(jets_agree(r * r, target));
    CHECK(r.poly().coeff(Exponent({0, 0})).is_negligible());
    CHECK(!r.poly().coeff(Exponent({1, 0})).is_negligible());
    CHECK(l.payload->soundness == Soundness::Exact);
  }
}

TEST_CASE("constant families") {
  RootTree t = desingularize(quad(C(2, q(-4))));
  REQUIRE(t.leaf);
  CHECK(t.children.empty());
  CHECK(t.leaf->roots[0].poly() == C(2, q(-2)).poly());
  CHECK(t.leaf->roots[1].poly() == C(2, q(2)).poly());

  RootTree s = desingularize(quad(C(2, q(-2))));
  REQUIRE(s.leaf);
  CHECK(s.leaf->soundness == Soundness::Numeric);
  CHECK(std::abs(s.leaf->roots[0].constant_term().to_complex() + std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(s.leaf->roots[1].constant_term().to_complex() - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("product of parameters") {
  PolyFamily P = quad(-(X(2, 0) * X(2, 1)));
  RootTree t = desingularize(P);
  auto ls = all_leaves(t, 2);
  CHECK(ls.size() == 4);
  int imaginary = 0;
  for (const auto& l : ls) {
    REQUIRE(l.chart.steps.size() == 1);
    const auto& p = std::get<PowerSub>(l.chart.steps[0]);
    CHECK(p.gamma == Exponent({2, 2}));
    Jet r = l.payload->roots[0];
    REQUIRE(r.poly().terms().size() == 1);
    CHECK(r.poly().terms().begin()->first == Exponent({1, 1}));
    Scalar c = r.poly().terms().begin()->second;
    if (!c.is_real()) ++imaginary;
    CHECK((c * c).exact_equal(q((p.eps[0] + p.eps[1]) % 2 ? -1 : 1)));
  }
  CHECK(imaginary == 2);
}

TEST_CASE("hyperbolic sum of squares") {
  PolyFamily P = quad(-(X(2, 0) * X(2, 0) + X(2, 1) * X(2, 1)));
  RootTree t = desingularize_hyperbolic(P);
  auto ls = all_leaves(t, 2);
  REQUIRE(!ls.empty());
  int checked = 0;
  for (const auto& l : ls) {
    CHECK(l.chart.count_powersubs() == 0);
    CHECK(l.chart.count_blowups() == 1);
    CHECK(l.payload->certified);
    for (const auto& r : l.payload->roots) CHECK(r.is_real());
    auto b = std::get<BlowUp>(l.chart.steps[0]);
    if (b.chart != 0 || l.chart.steps.size() != 2) continue;
    Jet series = poly(2, {{q(1), {1, 0}}, {q(1, 2), {1, 2}}, {q(-1, 8), {1, 4}}});
    Jet r0 = l.payload->roots[0], r1 = l.payload->roots[1];
    Jet pos = r0.poly().coeff(Exponent({1, 0})).exact_equal(q(1)) ? r0 : r1;
    Jet neg = r0.poly().coeff(Exponent({1, 0})).exact_equal(q(1)) ? r1 : r0;
    CHECK(jets_agree(truncate(pos, 5), truncate(series, 5)));
    CHECK(jets_agree(truncate(neg, 5), truncate(-series, 5)));
    ++checked;
  }
  CHECK(checked == 1);
}

TEST_CASE("hyperbolic easy cases") {
  RootTree t = desingularize_hyperbolic(quad(-(X(1, 0) * X(1, 0))));
  auto ls = all_leaves(t, 1);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].chart.steps.empty());
  auto r = ls[0].payload->roots;
  CHECK(((r[0] == X(1, 0) && r[1] == -X(1, 0)) || (r[0] == -X(1, 0) && r[1] == X(1, 0))));

  RootTree z = desingularize_hyperbolic(quad(Jet(2)));
  REQUIRE(z.leaf);
  CHECK(z.children.empty());
  CHECK(z.leaf->roots[0].is_zero());
  CHECK(z.leaf->roots[1].is_zero());

  // z^2 + x^2 has roots +-i x
  CHECK_THROWS_AS(desingularize_hyperbolic(quad(X(1, 0) * X(1, 0))), Error);
}

TEST_CASE("single substitution mode") {
  PolyFamily P = quad(-(X(2, 0) * X(2, 1)));
  RootTree t = desingularize_aj(P);
  auto ls = all_leaves(t, 2);
  CHECK(ls.size() == 4);
  for (const auto& l : ls) {
    CHECK(l.payload->certified);
    CHECK(l.chart.count_blowups() == 0);
    CHECK(l.chart.count_powersubs() == 1);
    CHECK(std::get<PowerSub>(l.chart.steps.back()).gamma == Exponent({2, 2}));
  }

  RootTree s = desingularize_aj(quad(C(2, q(-1)) - X(2, 0)));
  for (const auto& l : all_leaves(s, 2)) CHECK(l.chart.steps.empty());

  PolyFamily G = quad(-(X(2, 0) + X(2, 1).scaled(Scalar::i())));
  RootTree g = desingularize_aj(G);
  for (const auto& l : all_leaves(g, 2)) {
    CHECK(l.payload->certified);
    CHECK(l.chart.count_powersubs() <= 1);
    bool seen_ps = false;
    for (const auto& st : l.chart.steps) {
      if (std::holds_alternative<PowerSub>(st)) {
        seen_ps = true;
        const auto& p = std::get<PowerSub>(st);
        CHECK((p.gamma == Exponent({2, 1}) || p.gamma == Exponent({1, 2})));
      } else {
        CHECK(!seen_ps);
      }
    }
  }
}

TEST_CASE("global curve roots") {
  Jet x = X(1, 0);
  Jet f = x * (C(1, q(1)) + x);
  GlobalRoots g = curve_roots_global(quad(-(f * f)), q(-1, 2), q(1, 2));
  CHECK(g.mismatch == 0.0);
  REQUIRE(g.pieces.size() == 5);
  Jet first = g.pieces[0].roots[0];
  int sign = jets_agree(first, compose_translate(f, {g.pieces[0].center})) ? 1 : -1;
  for (const auto& p : g.pieces) {
    Jet want = compose_translate(f, {p.center});
    CHECK(p.roots[0].exact_data());
    CHECK(p.roots[0] == (sign > 0 ? want : -want));
    CHECK(p.roots[1] == (sign > 0 ? -want : want));
  }

  GlobalRoots h = curve_roots_global(quad(-(x * x)), q(-1, 2), q(1, 2));
  int s0 = h.pieces[0].roots[0].poly().coeff(Exponent({1})).exact_equal(q(1)) ? 1 : -1;
  for (const auto& p : h.pieces) {
    CHECK(p.roots[0].poly().coeff(Exponent({1})).exact_equal(q(s0)));
    CHECK(p.roots[0] == compose_translate(x.scaled(q(s0)), {p.center}));
  }

  GlobalRoots c = curve_roots_global(quad(C(1, q(-9))), q(0), q(1), 2);
  for (const auto& p : c.pieces) CHECK(p.roots[0].poly() == C(1, q(-3)).poly());
}

TEST_CASE("cubic stress family") {
  // z^3 - 3 x1 z + 2 x2
  PolyFamily P = PolyFamily::from_coeffs({Jet(2), X(2, 0).scaled(q(-3)), X(2, 1).scaled(q(-2))});
  auto t0 = std::chrono::steady_clock::now();
  RootTree t = desingularize(P);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("cubic stress family: " << secs << " s, " << count_nodes(t) << " nodes");
  auto ls = all_leaves(t, 2);
  CHECK(ls.size() > 4);
  for (const auto& l : ls) CHECK(l.payload->certified);
  check_group_descent(t);
}

TEST_CASE("properties") {
  PolyFamily P = quad(-(X(2, 0) + X(2, 1).scaled(Scalar::i())));
  RootTree t = desingularize(P);
  check_group_descent(t);

  // corrupting one coefficient breaks the certificate
  auto ls = leaves(t, 2);
  REQUIRE(!ls.empty());
  std::vector<Jet> roots = ls[0].payload->roots;
  MultiPoly p = roots[0].poly();
  p.add_term(Exponent({1, 0}), q(1, 1000));
  roots[0] = Jet(p, roots[0].ideal());
  CHECK(!leaf_certificate(P, ls[0].chart, roots));
  CHECK(leaf_certificate(P, ls[0].chart, ls[0].payload->roots));

  // equal-root collapse: a1 = a2 = 0 forces all roots to vanish
  PolyFamily Z = PolyFamily::from_coeffs({Jet(2), Jet(2), Jet(2)});
  RootTree z = desingularize_hyperbolic(Z);
  REQUIRE(z.leaf);
  for (const auto& r : z.leaf->roots) CHECK(r.is_zero());
}
