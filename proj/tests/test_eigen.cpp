#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "rootcharts/eigen.hpp"
#include "rootcharts/errors.hpp"
#include "rootcharts/symfun.hpp"

using namespace rc;
using rc::test::gi;
using rc::test::q;

namespace {

Jet X(int qd, int i) { return Jet::variable(qd, i); }
Jet C(int qd, const Scalar& c) { return Jet::constant(qd, c); }

bool vanishes(const Jet& f) {
  for (const auto& [e, c] : f.poly().terms())
    if (!c.contains_zero()) return false;
  return true;
}

// sqrt(1 + t^2) through order 2*terms, exact binomial coefficients.
Jet sqrt_one_plus_square(int qd, int var, int terms) {
  MultiPoly p(qd);
  mpq_class c = 1;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) c = c * (mpq_class(1, 2) - (k - 1)) / k;
    p.add_term(Exponent::unit(qd, var, 2 * k), Scalar(c));
  }
  return Jet(p, PrecisionIdeal::from(qd, {Exponent::unit(qd, var, 2 * terms)}));
}

MatrixFamily hermitian_example() {
  Jet x = X(2, 0), y = X(2, 1);
  Jet iy = y.scaled(Scalar::i());
  return MatrixFamily::from({{x, iy}, {-iy, -x}});
}

Eigen::MatrixXcd eval_matrix(const MatrixFamily& A, const std::vector<double>& x) {
  std::vector<std::complex<double>> xc(x.begin(), x.end());
  Eigen::MatrixXcd M(A.n, A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) M(i, j) = A.A[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(xc);
  return M;
}

// Checks every structural property of an eigen tree and samples each leaf
// against a dense evaluation of A near the leaf origin.
void check_tree(const MatrixFamily& A, const EigenTree& t, bool hermitian) {
  PolyFamily P = characteristic_family(A);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  auto ls = leaves(t, A.q);
  REQUIRE(!ls.empty());
  for (const auto& l : ls) {
    const EigenChart& E = *l.payload;
    CHECK(E.certified);
    CHECK(eigen_certificate(A, l.chart, E));
    CHECK(leaf_certificate(P, l.chart, E.eigenvalues));
    REQUIRE(E.eigenvectors.size() == static_cast<size_t>(A.n));
    for (const auto& v : E.eigenvectors) {
      bool unit = false, first = true;
      for (const auto& e : v) {
        if (!e.constant_term().is_invertible()) continue;
        if (first) CHECK(e.constant_term().compatible(q(1)));
        first = false;
        unit = true;
      }
      CHECK(unit);
    }
    if (hermitian) {
      CHECK(l.chart.count_powersubs() == 0);
      for (const auto& lam : E.eigenvalues) CHECK(lam.is_real());
    }
    Box box = leaf_box(l.chart, Box::cube(A.q, 1.0));
    for (int s = 0; s < 4; ++s) {
      std::vector<double> y(static_cast<size_t>(A.q));
      for (int i = 0; i < A.q; ++i) {
        double r = std::min(0.02, box.radius[static_cast<size_t>(i)]);
        y[static_cast<size_t>(i)] = r * u(rng);
      }
      if (!box.contains(y)) continue;
      Eigen::MatrixXcd M = eval_matrix(A, push_forward_point(l.chart, y));
      std::vector<std::complex<double>> yc(y.begin(), y.end());
      for (size_t k = 0; k < E.eigenvalues.size(); ++k) {
        Eigen::VectorXcd v(A.n);
        for (int i = 0; i < A.n; ++i) v(i) = E.eigenvectors[k][static_cast<size_t>(i)].eval(yc);
        std::complex<double> lam = E.eigenvalues[k].eval(yc);
        CHECK((M * v - lam * v).norm() <= 1e-8 * (1 + v.norm()));
      }
    }
  }
}

}  // namespace

TEST_CASE("characteristic families") {
  auto P = characteristic_family(hermitian_example());
  Jet x = X(2, 0), y = X(2, 1);
  CHECK(P.a[0].is_zero());
  CHECK(P.a[1] == -(x * x + y * y));

  for (int n = 1; n <= 4; ++n) {
    Matrix<Jet> I(static_cast<size_t>(n), std::vector<Jet>(static_cast<size_t>(n), Jet(2)));
    for (int i = 0; i < n; ++i) I[static_cast<size_t>(i)][static_cast<size_t>(i)] = C(2, q(1));
    auto Q = characteristic_family(MatrixFamily::from(I));
    long binom = 1;
    for (int j = 1; j <= n; ++j) {
      binom = binom * (n - j + 1) / j;
      CHECK(Q.a[static_cast<size_t>(j - 1)] == C(2, q(binom)));
    }
  }

  auto R = characteristic_family(MatrixFamily::from({{Jet(2), x * x}, {y * y, Jet(2)}}));
  CHECK(R.a[1] == -(x * x * y * y));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 4;
    Matrix<Jet> A(static_cast<size_t>(n), std::vector<Jet>(static_cast<size_t>(n), Jet(1)));
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar s = rc::test::random_gauss(rng);
        A[static_cast<size_t>(i)][static_cast<size_t>(j)] = C(1, s);
        M(i, j) = s.to_complex();
      }
    auto Q = characteristic_family(MatrixFamily::from(A));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    std::vector<Scalar> ev;
    for (int i = 0; i < n; ++i) ev.push_back(Scalar::from_complex(es.eigenvalues()(i), 0));
    auto sig = elementary_symmetric(ev);
    for (int j = 0; j < n; ++j) {
      std::complex<double> d = Q.a[static_cast<size_t>(j)].constant_term().to_complex() -
                               sig[static_cast<size_t>(j)].to_complex();
      CHECK(std::abs(d) < 1e-8 * (1 + std::abs(sig[static_cast<size_t>(j)].to_complex())));
    }
  }
  CHECK_THROWS(characteristic_family(MatrixFamily::from(Matrix<Jet>(7, std::vector<Jet>(7, Jet(1))))));
}

TEST_CASE("normality") {
  auto h = normality_check(hermitian_example());
  CHECK(h.normal);
  CHECK(h.hermitian);

  Jet x = X(1, 0);
  auto nn = normality_check(MatrixFamily::from({{Jet(1), C(1, q(1))}, {x, Jet(1)}}));
  CHECK(!nn.normal);

  auto z = normality_check(MatrixFamily::from({{Jet(1), Jet(1)}, {Jet(1), Jet(1)}}));
  CHECK(z.normal);
  CHECK(z.hermitian);

  // U diag(f, g) U^T with a rational rotation: normal, not Hermitian.
  Jet f = X(2, 0) + X(2, 1).scaled(Scalar::i()), g = X(2, 0).scaled(q(-2));
  Scalar c = q(3, 5), s = q(4, 5);
  Matrix<Jet> A = {{f.scaled(c * c) + g.scaled(s * s), (f - g).scaled(c * s)},
                   {(f - g).scaled(c * s), f.scaled(s * s) + g.scaled(c * c)}};
  auto r = normality_check(MatrixFamily::from(A));
  CHECK(r.normal);
  CHECK(!r.hermitian);

  Jet y = X(2, 1);
  CHECK(!normality_check(MatrixFamily::from({{Jet(2), X(2, 0) * X(2, 0)}, {y * y, Jet(2)}})).normal);
}

TEST_CASE("kernel frames") {
  Jet x = X(1, 0);
  auto kf = kernel_frame({{Jet(1), Jet(1)}, {Jet(1), C(1, q(1)) + x}});
  REQUIRE(kf.basis.size() == 1);
  CHECK(kf.basis[0][0] == C(1, q(1)));
  CHECK(kf.basis[0][1].known_zero());

  auto z = kernel_frame(Matrix<Jet>(3, std::vector<Jet>(3, Jet(1))));
  REQUIRE(z.basis.size() == 3);
  for (size_t k = 0; k < 3; ++k)
    for (size_t i = 0; i < 3; ++i) CHECK(z.basis[k][i] == (i == k ? C(1, q(1)) : Jet(1)));

  try {
    kernel_frame({{x, Jet(1)}, {Jet(1), C(1, q(1))}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PivotNotUnit);
  }

  // Rank-one families u w^T with unit entries: kernel vectors annihilate B.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Jet> uu, ww;
    for (int i = 0; i < 3; ++i) {
      uu.push_back(C(2, rc::test::random_gauss(rng)) + X(2, 0).scaled(rc::test::random_gauss(rng)));
      ww.push_back(C(2, rc::test::random_gauss(rng)) + X(2, 1).scaled(rc::test::random_gauss(rng)));
    }
    uu[0] = uu[0] + C(2, q(10));
    ww[0] = ww[0] + C(2, q(10));
    Matrix<Jet> B(3, std::vector<Jet>(3, Jet(2)));
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) B[i][j] = uu[i] * ww[j];
    auto k = kernel_frame(B, 10);
    REQUIRE(k.basis.size() == 2);
    for (const auto& v : k.basis)
      for (size_t i = 0; i < 3; ++i) {
        Jet r(2);
        for (size_t j = 0; j < 3; ++j) r += B[i][j] * v[j];
        CHECK(vanishes(r));
      }
  }
}

TEST_CASE("blown-up Hermitian family") {
  MatrixFamily A = hermitian_example();
  EigenTree t = eigen_desingularize(A);
  auto ls = leaves(t, 2);
  REQUIRE(ls.size() == 2);
  Scalar I = Scalar::i();
  for (const auto& l : ls) {
    CHECK(l.chart.count_blowups() == 1);
    CHECK(l.chart.count_powersubs() == 0);
    int chart = -1;
    for (const auto& st : l.chart.steps)
      if (auto b = std::get_if<BlowUp>(&st)) chart = b->chart;
    REQUIRE(chart >= 0);
    int sv = chart == 0 ? 1 : 0;  // the slope variable
    int ev = 1 - sv;              // the exceptional variable
    Jet s = sqrt_one_plus_square(2, sv, 20);
    Jet yv = X(2, sv), ye = X(2, ev);
    const EigenChart& E = *l.payload;
    for (size_t k = 0; k < 2; ++k) {
      const Jet& lam = E.eigenvalues[k];
      CHECK(vanishes(lam * lam - ye * ye * s * s));
      // sign of lambda / y_exceptional at the origin
      Scalar lead = lam.poly().coeff(Exponent::unit(2, ev));
      bool plus = lead.compatible(q(1));
      CHECK((plus || lead.compatible(q(-1))));
      std::vector<Jet> w;
      if (chart == 0) {
        Jet a = C(2, q(-1)) - s, b = yv.scaled(I);
        w = plus ? std::vector<Jet>{a, b} : std::vector<Jet>{b, a};
      } else {
        Jet a = s - yv, b = C(2, I);
        w = plus ? std::vector<Jet>{b, a} : std::vector<Jet>{a, b};
      }
      const auto& v = E.eigenvectors[k];
      CHECK(vanishes(v[0] * w[1] - v[1] * w[0]));
    }
  }
  check_tree(A, t, true);
}

TEST_CASE("constant matrices") {
  Matrix<Jet> D(3, std::vector<Jet>(3, Jet(2)));
  D[0][0] = C(2, q(1));
  D[1][1] = C(2, q(-2));
  D[2][2] = C(2, q(5));
  EigenTree t = eigen_desingularize(MatrixFamily::from(D));
  auto ls = leaves(t, 2);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].chart.steps.empty());
  const EigenChart& E = *ls[0].payload;
  for (size_t k = 0; k < 3; ++k) {
    size_t idx = 0;
    for (size_t i = 0; i < 3; ++i)
      if (E.eigenvalues[k] == D[i][i]) idx = i;
    for (size_t i = 0; i < 3; ++i) CHECK(E.eigenvectors[k][i] == (i == idx ? C(2, q(1)) : Jet(2)));
  }
  CHECK(E.soundness == Soundness::Exact);

  Matrix<Jet> I(2, std::vector<Jet>(2, Jet(2)));
  I[0][0] = I[1][1] = C(2, q(1));
  EigenTree ti = eigen_desingularize(MatrixFamily::from(I));
  auto li = leaves(ti, 2);
  REQUIRE(li.size() == 1);
  CHECK(li[0].payload->eigenvectors[0][0] == C(2, q(1)));
  CHECK(li[0].payload->eigenvectors[1][1] == C(2, q(1)));
}

TEST_CASE("non-normal families are refused") {
  Jet x = X(2, 0), y = X(2, 1);
  for (const auto& A : {MatrixFamily::from({{Jet(2), x * x}, {y * y, Jet(2)}}),
                        MatrixFamily::from({{Jet(2), C(2, q(1))}, {x, Jet(2)}})}) {
    try {
      eigen_desingularize(A);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotNormal);
    }
  }
}

TEST_CASE("normal non-Hermitian family") {
  Jet f = X(2, 0) + X(2, 1).scaled(Scalar::i()), g = X(2, 0).scaled(q(-2)) + X(2, 1) * X(2, 1);
  Scalar c = q(3, 5), s = q(4, 5);
  Matrix<Jet> A = {{f.scaled(c * c) + g.scaled(s * s), (f - g).scaled(c * s)},
                   {(f - g).scaled(c * s), f.scaled(s * s) + g.scaled(c * c)}};
  MatrixFamily M = MatrixFamily::from(A);
  EigenTree t = eigen_desingularize(M);
  check_tree(M, t, false);
  for (const auto& l : leaves(t, 2)) {
    const auto& E = *l.payload;
    Jet fp = pullback(f, l.chart, true), gp = pullback(g, l.chart, true);
    bool one = vanishes(E.eigenvalues[0] - fp) && vanishes(E.eigenvalues[1] - gp);
    bool two = vanishes(E.eigenvalues[0] - gp) && vanishes(E.eigenvalues[1] - fp);
    CHECK((one || two));
  }
}

TEST_CASE("Hermitian families with a repeated eigenvalue") {
  Jet x = X(2, 0), y = X(2, 1);
  Scalar I = Scalar::i();
  // diag(1, 1, 3) plus a traceless Hermitian perturbation
  Matrix<Jet> A = {{C(2, q(1)) + x, y.scaled(I) + x * y, y},
                   {y.scaled(-I) + x * y, C(2, q(1)) - x, x},
                   {y, x, C(2, q(3)) + x * x}};
  MatrixFamily M = MatrixFamily::from(A);
  auto nm = normality_check(M);
  REQUIRE(nm.hermitian);
  EigenTree t = eigen_desingularize(M);
  check_tree(M, t, true);
  MESSAGE("leaves: ", leaves(t, 2).size(), " nodes: ", count_nodes(t));
}

TEST_CASE("certificate detects a corrupted eigenvector") {
  MatrixFamily A = hermitian_example();
  EigenTree t = eigen_desingularize(A);
  auto ls = leaves(t, 2);
  EigenChart E = *ls[0].payload;
  CHECK(eigen_certificate(A, ls[0].chart, E));
  E.eigenvectors[0][1] = E.eigenvectors[0][1] + X(2, 1).scaled(q(1, 1000));
  CHECK(!eigen_certificate(A, ls[0].chart, E));
  EigenChart F = *ls[0].payload;
  std::swap(F.eigenvalues[0], F.eigenvalues[1]);
  CHECK(!eigen_certificate(A, ls[0].chart, F));
}
