#include "rootcharts/eigen.hpp"

#include <optional>

#include "rootcharts/errors.hpp"

namespace rc {

namespace {

bool vanishes(const Jet& f) {
  for (const auto& [e, c] : f.poly().terms())
    if (!c.contains_zero()) return false;
  return true;
}

Jet zero_jet(int q) { return Jet(q); }

Jet pb(const Jet& f, const ChartMap& m) { return m.steps.empty() ? f : pullback(f, m, true); }

Matrix<Jet> pb(const Matrix<Jet>& M, const ChartMap& m) {
  Matrix<Jet> out = M;
  for (auto& row : out)
    for (auto& e : row) e = pb(e, m);
  return out;
}

std::vector<Jet> pb(const std::vector<Jet>& v, const ChartMap& m) {
  std::vector<Jet> out = v;
  for (auto& e : out) e = pb(e, m);
  return out;
}

Matrix<Jet> minus_scalar_identity(Matrix<Jet> M, const Jet& lambda) {
  for (size_t i = 0; i < M.size(); ++i) M[i][i] = M[i][i] - lambda;
  return M;
}

std::vector<Jet> mat_vec(const Matrix<Jet>& M, const std::vector<Jet>& v, int q) {
  std::vector<Jet> out(M.size(), zero_jet(q));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] = out[i] + M[i][j] * v[j];
  return out;
}

// 0: zero, 1: nonzero, 2: undecided ball
int zero_status(const Jet& f) {
  bool ball = false;
  for (const auto& [e, c] : f.poly().terms()) {
    if (!c.contains_zero()) return 1;
    if (!c.is_exact()) ball = true;
  }
  return ball ? 2 : 0;
}

bool matrix_zero(const Matrix<Jet>& M) {
  bool undecided = false;
  for (const auto& row : M)
    for (const auto& e : row) {
      int s = zero_status(e);
      if (s == 1) return false;
      if (s == 2) undecided = true;
    }
  if (undecided) fail(ErrorKind::Indeterminate, "cannot certify a zero entry at this precision");
  return true;
}

// x^alpha dividing every entry as a germ, with a unit cofactor in some entry.
std::optional<Exponent> common_monomial_factor(const std::vector<Jet>& entries) {
  std::optional<Exponent> a;
  for (const auto& f : entries)
    for (const auto& [e, c] : f.poly().terms()) a = a ? a->gcd(e) : e;
  if (!a) return std::nullopt;
  bool unit = false;
  for (const auto& f : entries) {
    bool strict = true;
    for (const auto& g : f.ideal().gens()) {
      if (!a->divides(g)) return std::nullopt;
      strict = strict && g != *a;
    }
    unit = unit || (strict && f.poly().coeff(*a).is_invertible());
  }
  if (!unit) return std::nullopt;
  return a;
}

struct EigenPair {
  Jet lambda;
  std::vector<Jet> v;
};

struct Block {
  Matrix<Jet> V;  // n x m frame
  Matrix<Jet> B;  // m x m, A V = V B
  Jet lambda;     // the eigenvalue when m = 1
};

struct State {
  std::vector<EigenPair> done;
  std::vector<Block> pending;
};

State pull(const State& s, const ChartMap& m) {
  if (m.steps.empty()) return s;
  State out;
  for (const auto& p : s.done) out.done.push_back({pb(p.lambda, m), pb(p.v, m)});
  for (const auto& b : s.pending) out.pending.push_back({pb(b.V, m), pb(b.B, m), pb(b.lambda, m)});
  return out;
}

void normalize(std::vector<Jet>& v) {
  for (auto& e : v) {
    Scalar c = e.constant_term();
    if (!c.is_invertible()) continue;
    Scalar inv = Scalar(1) / c;
    for (auto& f : v) f = f.scaled(inv);
    return;
  }
  fail(ErrorKind::PivotNotUnit, "eigenvector without a unit entry");
}

Matrix<Jet> identity(size_t n, int q) {
  Matrix<Jet> I(n, std::vector<Jet>(n, zero_jet(q)));
  for (size_t i = 0; i < n; ++i) I[i][i] = Jet::constant(q, Scalar(1));
  return I;
}

// sum_k c_k A^k for ascending coefficients c.
Matrix<Jet> poly_of_matrix(const std::vector<Jet>& c, const Matrix<Jet>& A, int q) {
  Matrix<Jet> R = identity(A.size(), q);
  for (auto& row : R)
    for (auto& e : row) e = e * c.back();
  for (size_t k = c.size() - 1; k-- > 0;) {
    R = mat_mul(R, A, zero_jet(q));
    for (size_t i = 0; i < A.size(); ++i) R[i][i] += c[k];
  }
  return R;
}

struct EigenSolver {
  DesingOptions o;
  int q;

  // Splits A at the origin into blocks on kernel frames of the cluster
  // factors of its characteristic family.
  EigenTree solve(const Matrix<Jet>& A, int depth) {
    if (depth > o.max_depth) fail(ErrorKind::DepthExceeded, "eigen recursion depth " + std::to_string(depth));
    size_t n = A.size();
    State s;
    if (n == 1) {
      s.pending.push_back({identity(1, q), A, A[0][0]});
      return refine(std::move(s), depth);
    }
    PolyFamily P = characteristic_family(MatrixFamily::from(A));
    auto cl = upoly_roots(z_coeffs_scalar(P.at_origin()), o.precision, o.cluster_tol);
    if (cl.size() == 1) {
      s.pending.push_back({identity(n, q), A, zero_jet(q)});
      EigenTree t = refine(std::move(s), depth);
      t.log.group_order = group_order_of(cl);
      return t;
    }
    ClusterSplit sp = split_family(P, cl, o.K, o.cluster_tol);
    for (const auto& F : sp.factors) {
      KernelFrame kf = kernel_frame(poly_of_matrix(F.z_coeffs(), A, q), o.K);
      size_t m = static_cast<size_t>(F.n);
      if (kf.basis.size() != m) fail(ErrorKind::PivotNotUnit, "frame dimension differs from cluster size");
      Block b;
      b.V.assign(n, std::vector<Jet>(m, zero_jet(q)));
      for (size_t k = 0; k < m; ++k)
        for (size_t i = 0; i < n; ++i) b.V[i][k] = kf.basis[k][i];
      Matrix<Jet> AV = mat_mul(A, b.V, zero_jet(q));
      for (size_t l : kf.free) b.B.push_back(AV[l]);
      b.lambda = m == 1 ? F.a[0] : zero_jet(q);
      s.pending.push_back(std::move(b));
    }
    EigenTree t = refine(std::move(s), depth);
    t.log.group_order = group_order_of(cl);
    return t;
  }

  // Solves B = c + x^alpha Bk on the frame V (all given before the chart d)
  // and continues with the remaining blocks.
  EigenTree descend(const State& s, const Matrix<Jet>& V, const Jet& c, const Exponent& alpha,
                    const Matrix<Jet>& Bk, const ChartMap& d, int depth) {
    size_t m = Bk.size();
    EigenTree sub = solve(Bk, depth + 1);
    State sd = pull(s, d);
    Matrix<Jet> Vd = pb(V, d);
    Jet cd = pb(c, d);
    Jet xa = Jet::monomial(q, alpha);
    std::function<EigenTree(const ChartMap&, const EigenChart&)> at_sub = [&](const ChartMap& e,
                                                                             const EigenChart& E) {
      State se = pull(sd, e);
      Matrix<Jet> Ve = pb(Vd, e);
      Jet ce = pb(cd, e), xe = pb(xa, e);
      for (size_t k = 0; k < m; ++k)
        se.done.push_back({ce + xe * E.eigenvalues[k], mat_vec(Ve, E.eigenvectors[k], q)});
      return refine(std::move(se), depth);
    };
    EigenTree t = graft<EigenChart, EigenChart>(sub, at_sub, ChartMap{q, {}});
    t.log.notes.push_back("block of size " + std::to_string(m) + " scaled by x^" + alpha.str());
    return t;
  }

  EigenTree refine(State s, int depth) {
    if (s.pending.empty()) {
      EigenChart E;
      for (auto& p : s.done) {
        normalize(p.v);
        E.eigenvalues.push_back(p.lambda);
        E.eigenvectors.push_back(p.v);
      }
      EigenTree t;
      t.leaf = std::move(E);
      return t;
    }
    Block b = std::move(s.pending.front());
    s.pending.erase(s.pending.begin());
    size_t m = b.B.size(), n = b.V.size();
    auto column = [&](size_t k) {
      std::vector<Jet> v(n, zero_jet(q));
      for (size_t i = 0; i < n; ++i) v[i] = b.V[i][k];
      return v;
    };
    if (m == 1) {
      s.done.push_back({b.lambda, column(0)});
      return refine(std::move(s), depth);
    }
    Jet tr = zero_jet(q);
    for (size_t i = 0; i < m; ++i) tr += b.B[i][i];
    Jet c = tr.scaled(Scalar(mpq_class(1, static_cast<long>(m))));
    Matrix<Jet> Bp = minus_scalar_identity(b.B, c);

    std::vector<std::pair<size_t, size_t>> pos;
    std::vector<Jet> entries;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j)
        if (!vanishes(Bp[i][j])) {
          pos.push_back({i, j});
          entries.push_back(Bp[i][j]);
        }
    if (entries.empty()) {
      for (size_t k = 0; k < m; ++k) s.done.push_back({c, column(k)});
      EigenTree t = refine(std::move(s), depth);
      t.log.notes.push_back("scalar block of size " + std::to_string(m));
      return t;
    }
    auto assemble = [&](const std::vector<Jet>& quotients) {
      Matrix<Jet> Bk(m, std::vector<Jet>(m, zero_jet(q)));
      for (size_t k = 0; k < quotients.size(); ++k) Bk[pos[k].first][pos[k].second] = quotients[k];
      return Bk;
    };
    if (auto a = common_monomial_factor(entries)) {
      std::vector<Jet> quo;
      for (const auto& e : entries) quo.push_back(monomial_divide(e, *a));
      return descend(s, b.V, c, *a, assemble(quo), ChartMap{q, {}}, depth);
    }

    MonomializeOptions mo;
    mo.max_depth = o.max_depth;
    mo.radius = o.radius;
    mo.precision = o.precision;
    std::optional<NcTree> N;
    try {
      std::vector<std::pair<size_t, size_t>> diffs;
      for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = i + 1; j < entries.size(); ++j) diffs.push_back({i, j});
      N = monomialize(entries, diffs, mo);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionLoss) throw;
    }
    if (N) {
      std::function<EigenTree(const ChartMap&, const NcLeaf&)> at_nc = [&](const ChartMap& d, const NcLeaf& L) {
        std::vector<Exponent> alphas;
        for (size_t k = 0; k < entries.size(); ++k) alphas.push_back(L.certs[k].alpha);
        Exponent alpha = compare_exponents(alphas);
        std::vector<Jet> quo;
        for (size_t k = 0; k < entries.size(); ++k) quo.push_back(L.certs[k].unit.monomial_mul(alphas[k] - alpha));
        return descend(s, b.V, c, alpha, assemble(quo), d, depth);
      };
      EigenTree t = graft<NcLeaf, EigenChart>(*N, at_nc, ChartMap{q, {}});
      t.log.multiplicity = static_cast<int>(m);
      return t;
    }

    // Entry certificates are undecidable at this precision; resolve the Gram
    // function sum |B_ij|^2 instead, whose monomial part is x^(2 alpha).
    Jet gram = zero_jet(q);
    for (const auto& e : entries) gram += e * e.conj();
    NcTree G = monomialize({gram}, {}, mo);
    std::function<EigenTree(const ChartMap&, const NcLeaf&)> at_gram = [&](const ChartMap& d, const NcLeaf& L) {
      const Exponent& beta = L.certs[0].alpha;
      Exponent alpha(q);
      for (int i = 0; i < q; ++i) {
        if (beta[i] % 2) fail(ErrorKind::PrecisionLoss, "odd Gram exponent " + beta.str());
        alpha[i] = beta[i] / 2;
      }
      std::vector<Jet> quo;
      bool unit = false;
      for (const auto& e : entries) {
        quo.push_back(divide_known_multiple(pb(e, d), alpha));
        unit = unit || quo.back().constant_term().is_invertible();
      }
      if (!unit) fail(ErrorKind::PrecisionLoss, "no unit entry after the Gram factor");
      return descend(s, b.V, c, alpha, assemble(quo), d, depth);
    };
    EigenTree t = graft<NcLeaf, EigenChart>(G, at_gram, ChartMap{q, {}});
    t.log.multiplicity = static_cast<int>(m);
    t.log.notes.push_back("Gram function resolved");
    return t;
  }
};

EigenTree run(const MatrixFamily& A, const DesingOptions& o) {
  EigenSolver S{o, A.q};
  EigenTree t = S.solve(A.A, 0);
  if (certify_eigen_tree(A, t) != 0) fail(ErrorKind::CertificateFailure, "eigen certificate failed");
  return t;
}

}  // namespace

MatrixFamily MatrixFamily::from(Matrix<Jet> A) {
  MatrixFamily M;
  M.n = static_cast<int>(A.size());
  for (const auto& row : A)
    if (row.size() != A.size()) fail(ErrorKind::DimensionMismatch, "matrix family must be square");
  M.q = M.n ? A[0][0].q() : 0;
  for (const auto& row : A)
    for (const auto& e : row)
      if (e.q() != M.q) fail(ErrorKind::DimensionMismatch, "entries with different q");
  M.A = std::move(A);
  return M;
}

MatrixFamily MatrixFamily::conj_transpose() const {
  MatrixFamily M = *this;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A.size(); ++j) M.A[i][j] = A[j][i].conj();
  return M;
}

std::string MatrixFamily::str() const {
  std::string s = "[";
  for (size_t i = 0; i < A.size(); ++i) {
    s += i ? ", [" : "[";
    for (size_t j = 0; j < A.size(); ++j) s += (j ? ", " : "") + A[i][j].str();
    s += "]";
  }
  return s + "]";
}

PolyFamily characteristic_family(const MatrixFamily& M) {
  int n = M.n;
  if (n < 1 || n > 6) fail(ErrorKind::InvalidArgument, "characteristic family needs 1 <= n <= 6");
  std::vector<Jet> a(static_cast<size_t>(n), zero_jet(M.q));
  for (unsigned S = 1; S < (1u << n); ++S) {
    std::vector<size_t> idx;
    for (int i = 0; i < n; ++i)
      if (S & (1u << i)) idx.push_back(static_cast<size_t>(i));
    Matrix<Jet> sub(idx.size(), std::vector<Jet>(idx.size(), zero_jet(M.q)));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) sub[i][j] = M.A[idx[i]][idx[j]];
    a[idx.size() - 1] += determinant(sub, zero_jet(M.q));
  }
  return PolyFamily::from_coeffs(a);
}

Normality normality_check(const MatrixFamily& M) {
  MatrixFamily S = M.conj_transpose();
  Jet z = zero_jet(M.q);
  Matrix<Jet> C = mat_mul(M.A, S.A, z), D = mat_mul(S.A, M.A, z);
  Matrix<Jet> H = S.A;
  for (size_t i = 0; i < C.size(); ++i)
    for (size_t j = 0; j < C.size(); ++j) {
      C[i][j] = C[i][j] - D[i][j];
      H[i][j] = H[i][j] - M.A[i][j];
    }
  Normality r;
  r.normal = matrix_zero(C);
  r.hermitian = r.normal && matrix_zero(H);
  return r;
}

KernelFrame kernel_frame(const Matrix<Jet>& B, int K) {
  size_t n = B.size();
  size_t m = n ? B[0].size() : 0;
  int q = n ? B[0][0].q() : 0;
  Matrix<Jet> M = B;
  std::vector<long> pivot_row(m, -1);
  std::vector<bool> used(n, false);
  for (size_t c = 0; c < m; ++c) {
    size_t r = n;
    for (size_t i = 0; i < n; ++i)
      if (!used[i] && M[i][c].constant_term().is_invertible()) {
        r = i;
        break;
      }
    if (r == n) continue;
    used[r] = true;
    pivot_row[c] = static_cast<long>(r);
    Jet inv = unit_inverse(M[r][c], K);
    for (size_t j = 0; j < m; ++j)
      if (j == c)
        M[r][j] = Jet::constant(q, Scalar(1));
      else if (!M[r][j].is_zero())
        M[r][j] = M[r][j] * inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      Jet f = M[i][c];
      for (size_t j = 0; j < m; ++j)
        if (j == c)
          M[i][j] = zero_jet(q);
        else if (!M[r][j].is_zero())
          M[i][j] = M[i][j] - f * M[r][j];
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (!used[i])
      for (size_t j = 0; j < m; ++j)
        if (!vanishes(M[i][j]))
          fail(ErrorKind::PivotNotUnit, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") survives elimination without a unit pivot");
  KernelFrame kf;
  for (size_t f = 0; f < m; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::vector<Jet> v(m, zero_jet(q));
    v[f] = Jet::constant(q, Scalar(1));
    for (size_t c = 0; c < m; ++c)
      if (pivot_row[c] >= 0) v[c] = -M[static_cast<size_t>(pivot_row[c])][f];
    kf.basis.push_back(std::move(v));
    kf.free.push_back(f);
  }
  return kf;
}

bool eigen_certificate(const MatrixFamily& A, const ChartMap& chart, const EigenChart& E) {
  if (E.eigenvalues.size() != static_cast<size_t>(A.n) || E.eigenvectors.size() != E.eigenvalues.size())
    return false;
  Matrix<Jet> Ac = pb(A.A, chart);
  for (size_t k = 0; k < E.eigenvalues.size(); ++k) {
    const auto& v = E.eigenvectors[k];
    std::vector<Jet> Av = mat_vec(Ac, v, A.q);
    bool unit = false;
    for (size_t i = 0; i < v.size(); ++i) {
      if (!vanishes(Av[i] - E.eigenvalues[k] * v[i])) return false;
      unit = unit || v[i].constant_term().is_invertible();
    }
    if (!unit) return false;
  }
  return true;
}

size_t certify_eigen_tree(const MatrixFamily& A, EigenTree& tree) {
  size_t bad = 0;
  ChartMap root{A.q, tree.steps};
  for_each_leaf<EigenChart>(tree, A.q, [&](const ChartMap& R, EigenChart& E) {
    ChartMap full = root.then(R);
    E.certified = eigen_certificate(A, full, E);
    bool ex = full.exact();
    for (size_t k = 0; k < E.eigenvalues.size(); ++k) {
      ex = ex && E.eigenvalues[k].scalars_exact();
      for (const auto& f : E.eigenvectors[k]) ex = ex && f.scalars_exact();
    }
    E.soundness = ex ? Soundness::Exact : Soundness::Numeric;
    if (!E.certified) ++bad;
  });
  return bad;
}

EigenTree eigen_desingularize(const MatrixFamily& A, const DesingOptions& opts) {
  if (A.n < 1 || A.n > 6) fail(ErrorKind::InvalidArgument, "matrix size must be between 1 and 6");
  Normality nm = normality_check(A);
  if (!nm.normal) fail(ErrorKind::NotNormal, "A A* != A* A");
  try {
    return run(A, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PrecisionLoss || !opts.retry) throw;
  }
  DesingOptions o = opts;
  o.K *= 2;
  EigenTree t = run(A, o);
  t.log.notes.push_back("retried at K = " + std::to_string(o.K));
  return t;
}

}  // namespace rc
