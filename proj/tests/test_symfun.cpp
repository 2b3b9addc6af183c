#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "rootcharts/errors.hpp"
#include "rootcharts/numeric_roots.hpp"
#include "rootcharts/symfun.hpp"

using namespace rc;
using rc::test::q;

namespace {
bool same(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].exact_equal(b[i])) return false;
  return true;
}

std::vector<Scalar> ints(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (long x : v) out.push_back(Scalar(x));
  return out;
}

MultiPoly d_dx(const MultiPoly& p, int i) {
  MultiPoly r(p.q());
  for (const auto& [e, c] : p.terms()) {
    if (!e[i]) continue;
    Exponent f = e;
    f[i] -= 1;
    r.add_term(f, c * Scalar(static_cast<long>(e[i])));
  }
  return r;
}
}  // namespace

TEST_CASE("elementary symmetric functions") {
  CHECK(same(elementary_symmetric(ints({1, 2, 3})), ints({6, 11, 6})));
  CHECK(same(elementary_symmetric(ints({0, 0, 0})), ints({0, 0, 0})));
  CHECK(same(elementary_symmetric({test::gi(0, 1), test::gi(0, -1)}), ints({0, 1})));
}

TEST_CASE("newton recurrence") {
  // s2 = sigma1^2 - 2 sigma2 on symbolic sigmas.
  Jet s1 = Jet::variable(2, 0), s2 = Jet::variable(2, 1);
  auto s = newton_from_elementary(std::vector<Jet>{s1, s2}, 2, Jet(2));
  CHECK(s[1] == s1 * s1 - s2.scaled(Scalar(2)));
  CHECK(same(newton_from_elementary(ints({0, 1}), 2), ints({0, -2})));
  CHECK(same(newton_from_elementary(ints({2, 1}), 2), ints({2, 2})));
  CHECK(same(elementary_from_newton(ints({0, -2})), ints({0, 1})));
  CHECK(same(elementary_from_newton(ints({0, 0, 0})), ints({0, 0, 0})));
  CHECK(same(elementary_from_newton(ints({2, 2})), ints({2, 1})));
}

TEST_CASE("newton round trip") {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 500; ++it) {
    size_t n = 1 + static_cast<size_t>(it % 6);
    std::vector<Scalar> sig;
    for (size_t k = 0; k < n; ++k) sig.push_back(test::random_rational(rng));
    auto s = newton_from_elementary(sig, static_cast<int>(n));
    REQUIRE(same(elementary_from_newton(s), sig));
  }
}

TEST_CASE("power sums agree with roots") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 50; ++it) {
    std::vector<Scalar> lam;
    for (int k = 0; k < 4; ++k) lam.push_back(test::random_gauss(rng));
    auto s = newton_from_elementary(elementary_symmetric(lam), 7);
    for (unsigned k = 1; k <= 7; ++k) {
      Scalar direct;
      for (const auto& l : lam) direct += l.pow(k);
      CHECK(direct.exact_equal(s[k - 1]));
    }
  }
}

TEST_CASE("bezoutiant") {
  auto B = bezoutiant(ints({0, -1}));
  CHECK(B[0][0].exact_equal(q(2)));
  CHECK(B[0][1].exact_equal(q(0)));
  CHECK(B[1][1].exact_equal(q(2)));
  auto C = bezoutiant(ints({0, 1}));
  CHECK(C[1][1].exact_equal(q(-2)));
  auto Z = bezoutiant(ints({0, 0, 0, 0}));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) CHECK(Z[i][j].exact_equal(q(i + j == 0 ? 4 : 0)));
}

TEST_CASE("subdiscriminants") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<Scalar> a(static_cast<size_t>(n), q(3, 7));
    CHECK(subdiscriminants(a)[0].exact_equal(q(n)));
  }
  CHECK(subdiscriminants(elementary_symmetric(ints({0, 1})))[1].exact_equal(q(1)));
  CHECK(subdiscriminants(ints({0, 0}))[1].exact_equal(q(0)));
}

TEST_CASE("subdiscriminants equal sums of squared difference products") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 60; ++it) {
    size_t n = 2 + static_cast<size_t>(it % 3);
    std::vector<Scalar> lam;
    for (size_t k = 0; k < n; ++k) lam.push_back(test::random_rational(rng, 3, 2));
    auto d = subdiscriminants(elementary_symmetric(lam));
    for (size_t k = 1; k <= n; ++k) {
      Scalar oracle;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<size_t>(__builtin_popcount(mask)) != k) continue;
        Scalar prod(1);
        for (size_t i = 0; i < n; ++i)
          for (size_t j = i + 1; j < n; ++j)
            if ((mask >> i & 1u) && (mask >> j & 1u)) prod *= (lam[i] - lam[j]) * (lam[i] - lam[j]);
        oracle += prod;
      }
      CHECK(oracle.exact_equal(d[k - 1]));
    }
  }
}

TEST_CASE("jacobian of the elementary symmetric map") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Jet> lam;
    for (int i = 0; i < n; ++i) lam.push_back(Jet::variable(n, i));
    auto sig = elementary_symmetric(lam, Jet(n));
    Matrix<Jet> J(static_cast<size_t>(n), std::vector<Jet>(static_cast<size_t>(n), Jet(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        J[static_cast<size_t>(i)][static_cast<size_t>(j)] = Jet(d_dx(sig[static_cast<size_t>(i)].poly(), j));
    Jet det = determinant(J, Jet(n));
    Jet vdm = Jet::constant(n, Scalar(1));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) vdm = vdm * (lam[static_cast<size_t>(i)] - lam[static_cast<size_t>(j)]);
    CHECK(det == vdm);
  }
}

TEST_CASE("hyperbolicity test") {
  auto r1 = hyperbolicity_test(ints({0, -1}));
  CHECK(r1.hyperbolic);
  CHECK(r1.distinct == 2);
  CHECK(r1.distinct_real == 2);
  auto r2 = hyperbolicity_test(ints({0, 1}));
  CHECK(!r2.hyperbolic);
  CHECK(r2.distinct == 2);
  CHECK(r2.distinct_real == 0);
  auto r3 = hyperbolicity_test(ints({0, 0}));
  CHECK(r3.hyperbolic);
  CHECK(r3.distinct == 1);
  CHECK(r3.distinct_real == 1);
  CHECK_THROWS_AS(hyperbolicity_test({test::gi(0, 1), q(0)}), Error);
}

TEST_CASE("hyperbolicity test agrees with the numeric oracle") {
  std::mt19937_64 rng(9);
  int compared = 0;
  for (int it = 0; it < 1000; ++it) {
    size_t n = 1 + static_cast<size_t>(it % 5);
    std::vector<Scalar> a;
    if (it % 2) {
      std::vector<Scalar> lam;
      for (size_t k = 0; k < n; ++k) lam.push_back(test::random_rational(rng, 3, 3));
      a = elementary_symmetric(lam);
    } else {
      for (size_t k = 0; k < n; ++k) a.push_back(test::random_rational(rng, 4, 3));
    }
    auto res = hyperbolicity_test(a);
    CHECK(subdiscriminants(a)[0].exact_equal(q(static_cast<long>(n))));
    Scalar disc = subdiscriminants(a).back();
    if (std::abs(disc.to_complex()) < 1e-4) continue;
    std::vector<cplx> ac;
    for (const auto& x : a) ac.push_back(x.to_complex());
    auto roots = numeric_roots(ac);
    bool all_real = std::all_of(roots.begin(), roots.end(), [](cplx z) { return std::abs(z.imag()) <= 1e-9; });
    int real_count = static_cast<int>(std::count_if(roots.begin(), roots.end(), [](cplx z) { return std::abs(z.imag()) <= 1e-9; }));
    REQUIRE(res.hyperbolic == all_real);
    CHECK(res.distinct == static_cast<int>(n));
    CHECK(res.distinct_real == real_count);
    ++compared;
  }
  CHECK(compared > 800);
}

TEST_CASE("hyperbolic with vanishing a1 and a2 forces zero roots") {
  std::mt19937_64 rng(12);
  int hyper = 0;
  for (int it = 0; it < 200; ++it) {
    size_t n = 2 + static_cast<size_t>(it % 4);
    std::vector<Scalar> a(n);
    for (size_t k = 2; k < n; ++k) a[k] = (it % 3 == 0) ? Scalar() : test::random_rational(rng);
    auto res = hyperbolicity_test(a);
    if (!res.hyperbolic) continue;
    ++hyper;
    auto d = subdiscriminants(a);
    for (size_t k = 1; k < n; ++k) CHECK(d[k].is_zero());
  }
  CHECK(hyper > 0);
}

TEST_CASE("root bound") {
  CHECK(root_bound(ints({0, -1})) == doctest::Approx(2.0));
  CHECK(root_bound(ints({0, 0, 0})) == doctest::Approx(1.0));
  CHECK(root_bound(ints({2, 1})) >= 1.0);
  CHECK(root_bound(ints({2, 1})) == doctest::Approx(3.0));
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    std::vector<cplx> a;
    for (int k = 0; k < 4; ++k) a.push_back(test::random_gauss(rng, 5, 2).to_complex());
    double R = root_bound(a);
    for (cplx z : numeric_roots(a)) CHECK(std::abs(z) <= R);
  }
}

TEST_CASE("tschirnhaus shift") {
  Jet x = Jet::variable(1, 0);
  PolyFamily P = PolyFamily::from_coeffs({x.scaled(q(2)), x * x});
  auto r = tschirnhaus_shift(P);
  CHECK(r.shift == x);
  CHECK(r.reduced.a[0].is_zero());
  CHECK(r.reduced.a[1].is_zero());

  PolyFamily Z = PolyFamily::from_coeffs({Jet(1), x});
  auto rz = tschirnhaus_shift(Z);
  CHECK(rz.shift.is_zero());
  CHECK(rz.reduced.a[1] == x);

  PolyFamily C = PolyFamily::from_coeffs({Jet::constant(1, q(2)), Jet(1)});
  auto rc = tschirnhaus_shift(C);
  CHECK(rc.shift == Jet::constant(1, q(1)));
  CHECK(rc.reduced.a[1] == Jet::constant(1, q(-1)));
}
