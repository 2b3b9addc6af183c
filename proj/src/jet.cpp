#include "rootcharts/jet.hpp"

#include <algorithm>
#include <cmath>

#include "rootcharts/errors.hpp"

namespace rc {

namespace {
MultiPoly reduce_poly(const MultiPoly& p, const PrecisionIdeal& I) {
  if (I.is_zero()) return p;
  MultiPoly r(p.q());
  for (const auto& [e, c] : p.terms())
    if (!I.contains(e)) r.set_term(e, c);
  return r;
}

void check_q(const Jet& a, const Jet& b) {
  if (a.q() != b.q()) fail(ErrorKind::DimensionMismatch, "jet parameter count");
}
}  // namespace

Jet::Jet(MultiPoly p, PrecisionIdeal I) : poly_(std::move(p)), ideal_(std::move(I)) {
  if (ideal_.q() != poly_.q()) {
    if (ideal_.is_zero())
      ideal_ = PrecisionIdeal(poly_.q());
    else
      fail(ErrorKind::DimensionMismatch, "jet ideal dimension");
  }
  poly_ = reduce_poly(poly_, ideal_);
}

Scalar Jet::constant_term() const {
  if (ideal_.is_whole()) fail(ErrorKind::PrecisionLoss, "constant term unknown");
  return poly_.constant_term();
}

int Jet::order() const {
  int a = poly_.order(), b = ideal_.min_degree();
  if (a < 0) return b;
  if (b < 0) return a;
  return std::min(a, b);
}

Jet Jet::reduced(const PrecisionIdeal& extra) const { return Jet(poly_, ideal_ + extra); }

Jet Jet::truncated(int K) const { return reduced(truncation_ideal(q(), K)); }

Jet Jet::operator-() const { return Jet(-poly_, ideal_); }
Jet Jet::conj() const { return Jet(poly_.conj(), ideal_); }
Jet Jet::scaled(const Scalar& c) const {
  if (c.is_negligible()) return Jet(MultiPoly(q()), ideal_);
  return Jet(poly_.scaled(c), ideal_);
}

Jet Jet::monomial_mul(const Exponent& e) const {
  Jet r(q());
  r.poly_ = poly_.shifted(e);
  r.ideal_ = ideal_.times(e);
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  check_q(a, b);
  return Jet(a.poly_ + b.poly_, a.ideal_ + b.ideal_);
}

Jet operator-(const Jet& a, const Jet& b) {
  check_q(a, b);
  return Jet(a.poly_ - b.poly_, a.ideal_ + b.ideal_);
}

Jet operator*(const Jet& a, const Jet& b) {
  check_q(a, b);
  PrecisionIdeal I = a.ideal_ + b.ideal_;
  MultiPoly p(a.q());
  for (const auto& [ea, ca] : a.poly_.terms())
    for (const auto& [eb, cb] : b.poly_.terms()) {
      Exponent e = ea + eb;
      if (!I.contains(e)) p.add_term(e, ca * cb);
    }
  Jet r(a.q());
  r.poly_ = std::move(p);
  r.ideal_ = std::move(I);
  return r;
}

Jet Jet::pow(unsigned k) const {
  Jet r = Jet::constant(q(), Scalar(1)), base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

bool operator==(const Jet& a, const Jet& b) {
  return a.poly() == b.poly() && a.ideal() == b.ideal();
}

std::string Jet::str() const {
  std::string s = poly_.str();
  if (!ideal_.is_zero()) s += " mod " + ideal_.str();
  return s;
}

bool jets_agree(const Jet& a, const Jet& b) {
  PrecisionIdeal I = a.ideal() + b.ideal();
  MultiPoly d = a.poly() - b.poly();
  for (const auto& [e, c] : d.terms())
    if (!I.contains(e) && !c.contains_zero()) return false;
  return true;
}

Jet monomial_divide(const Jet& f, const Exponent& alpha) {
  if (alpha.q() != f.q()) fail(ErrorKind::DimensionMismatch, "monomial_divide exponent");
  if (alpha.is_zero()) return f;
  MultiPoly p(f.q());
  for (const auto& [e, c] : f.poly().terms()) {
    if (!alpha.divides(e))
      fail(ErrorKind::DivisionObstruction, "term " + e.str() + " not divisible by " + alpha.str());
    p.set_term(e - alpha, c);
  }
  std::vector<Exponent> gens;
  for (const auto& g : f.ideal().gens()) {
    if (!alpha.divides(g))
      fail(ErrorKind::DivisionObstruction,
           "ideal generator " + g.str() + " not divisible by " + alpha.str());
    gens.push_back(g - alpha);
  }
  return Jet(std::move(p), PrecisionIdeal::from(f.q(), std::move(gens)));
}

Jet compose_monomial(const Jet& f, const MonomialMap& m) {
  if (static_cast<int>(m.images.size()) != f.q() || m.signs.size() != m.images.size())
    fail(ErrorKind::DimensionMismatch, "monomial map arity");
  MultiPoly p(m.q_out);
  for (const auto& [e, c] : f.poly().terms()) {
    Exponent out(m.q_out);
    int sign = 1;
    for (int i = 0; i < f.q(); ++i) {
      if (!e[i]) continue;
      out = out + m.images[static_cast<size_t>(i)].scaled(e[i]);
      if (m.signs[static_cast<size_t>(i)] < 0 && (e[i] & 1)) sign = -sign;
    }
    p.add_term(out, sign > 0 ? c : -c);
  }
  std::vector<Exponent> gens;
  for (const auto& g : f.ideal().gens()) {
    Exponent out(m.q_out);
    for (int i = 0; i < f.q(); ++i)
      if (g[i]) out = out + m.images[static_cast<size_t>(i)].scaled(g[i]);
    gens.push_back(out);
  }
  return Jet(std::move(p), PrecisionIdeal::from(m.q_out, std::move(gens)));
}

namespace {
std::vector<mpz_class> binomial_row(int n) {
  std::vector<mpz_class> row(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) mpz_bin_uiui(row[static_cast<size_t>(k)].get_mpz_t(), n, k);
  return row;
}
}  // namespace

Jet compose_translate(const Jet& f, const std::vector<Scalar>& c) {
  if (static_cast<int>(c.size()) != f.q()) fail(ErrorKind::DimensionMismatch, "translation");
  for (const auto& g : f.ideal().gens())
    for (int i = 0; i < f.q(); ++i)
      if (g[i] > 0 && !c[static_cast<size_t>(i)].is_negligible())
        fail(ErrorKind::PrecisionLoss,
             "translation along x" + std::to_string(i + 1) + " meets ideal generator " + g.str());
  MultiPoly cur = f.poly();
  for (int i = 0; i < f.q(); ++i) {
    const Scalar& ci = c[static_cast<size_t>(i)];
    if (ci.is_negligible()) continue;
    MultiPoly next(f.q());
    for (const auto& [e, coef] : cur.terms()) {
      int n = e[i];
      if (n == 0) {
        next.add_term(e, coef);
        continue;
      }
      auto row = binomial_row(n);
      Scalar cpow(1);
      // (x_i + c)^n = sum_k binom(n,k) c^{n-k} x_i^k, accumulated from k = n down.
      for (int k = n; k >= 0; --k) {
        Exponent ek = e;
        ek[i] = k;
        next.add_term(ek, coef * cpow * Scalar(mpq_class(row[static_cast<size_t>(k)])));
        cpow *= ci;
      }
    }
    cur = std::move(next);
  }
  return Jet(std::move(cur), f.ideal());
}

Jet compose_translate_local(const Jet& f, const std::vector<Scalar>& c) {
  if (static_cast<int>(c.size()) != f.q()) fail(ErrorKind::DimensionMismatch, "translation");
  std::vector<Exponent> gens;
  for (auto g : f.ideal().gens()) {
    for (int i = 0; i < f.q(); ++i)
      if (!c[static_cast<size_t>(i)].is_negligible()) g[i] = 0;
    gens.push_back(g);
  }
  return compose_translate(Jet(f.poly(), PrecisionIdeal::from(f.q(), std::move(gens))), c);
}

Jet divide_known_multiple(const Jet& f, const Exponent& alpha) {
  std::vector<Exponent> gens;
  for (auto g : f.ideal().gens()) {
    for (int i = 0; i < f.q(); ++i) g[i] = std::max(0, g[i] - alpha[i]);
    gens.push_back(g);
  }
  MultiPoly p(f.q());
  for (const auto& [e, c] : f.poly().terms()) {
    if (!alpha.divides(e)) fail(ErrorKind::DivisionObstruction, "term " + e.str() + " not divisible by " + alpha.str());
    p.set_term(e - alpha, c);
  }
  return Jet(std::move(p), PrecisionIdeal::from(f.q(), std::move(gens)));
}

Jet compose_general(const Jet& f, const std::vector<Jet>& phi) {
  if (static_cast<int>(phi.size()) != f.q()) fail(ErrorKind::DimensionMismatch, "composition");
  if (phi.empty()) return f;
  int qo = phi[0].q();
  std::vector<int> val(phi.size());
  for (size_t i = 0; i < phi.size(); ++i) {
    if (phi[i].q() != qo) fail(ErrorKind::DimensionMismatch, "composition components");
    int v = phi[i].order();
    if (v == 0) fail(ErrorKind::InvalidArgument, "composition component with valuation 0");
    val[i] = v < 0 ? 1 << 20 : v;
  }
  PrecisionIdeal extra(qo);
  for (const auto& g : f.ideal().gens()) {
    long d = 0;
    for (int i = 0; i < f.q(); ++i) d += static_cast<long>(g[i]) * val[static_cast<size_t>(i)];
    if (d < (1 << 20)) extra = extra + PrecisionIdeal::degree(qo, static_cast<int>(d));
  }
  // Cache powers of each component.
  std::vector<std::vector<Jet>> pw(phi.size());
  Jet acc(MultiPoly(qo), extra);
  for (const auto& [e, c] : f.poly().terms()) {
    Jet t = Jet::constant(qo, c).reduced(extra);
    for (size_t i = 0; i < phi.size(); ++i) {
      int k = e[static_cast<int>(i)];
      if (!k) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(Jet::constant(qo, Scalar(1)));
      while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * phi[i]);
      t = t * cache[static_cast<size_t>(k)];
    }
    acc = acc + t;
  }
  return acc;
}

PrecisionIdeal truncation_ideal(int q, int K) { return PrecisionIdeal::degree(q, K + 1); }

int newton_rounds(int K) {
  int r = 1;
  while ((1 << r) < K + 2) ++r;
  return r + 2;
}

Jet unit_inverse(const Jet& f, int K) {
  Scalar c0 = f.constant_term();
  if (!c0.is_invertible()) fail(ErrorKind::NotUnit, "inverse of a non-unit jet");
  PrecisionIdeal T = f.ideal() + truncation_ideal(f.q(), K);
  Jet g = Jet::constant(f.q(), Scalar(1) / c0).reduced(T);
  Jet two = Jet::constant(f.q(), Scalar(2));
  for (int it = 0; it < newton_rounds(K); ++it) {
    Jet next = (g * (two - f.reduced(T) * g)).reduced(T);
    if (next.poly() == g.poly()) break;
    g = next;
  }
  Jet cand(g.poly(), f.ideal());
  Jet res = cand * f - Jet::constant(f.q(), Scalar(1));
  if (res.known_zero()) return cand;
  return g;
}

Jet unit_kth_root(const Jet& f, unsigned k, const Scalar& branch, int K) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "k must be positive");
  Scalar c0 = f.constant_term();
  if (!c0.is_invertible()) fail(ErrorKind::NotUnit, "kth root of a non-unit jet");
  if (!branch.pow(k).compatible(c0))
    fail(ErrorKind::BranchMismatch, "branch^k differs from f(0)");
  if (k == 1) return f;
  PrecisionIdeal T = f.ideal() + truncation_ideal(f.q(), K);
  Jet fr = f.reduced(T);
  Jet g = Jet::constant(f.q(), branch).reduced(T);
  Scalar invk = Scalar(1) / Scalar(static_cast<long>(k));
  for (int it = 0; it < newton_rounds(K); ++it) {
    Jet gk1 = g.pow(k - 1);
    Jet corr = ((gk1 * g - fr) * unit_inverse(gk1, K)).scaled(invk);
    Jet next = (g - corr).reduced(T);
    if (next.poly() == g.poly()) break;
    g = next;
  }
  Jet cand(g.poly(), f.ideal());
  if ((cand.pow(k) - f).known_zero()) return cand;
  return g;
}

}  // namespace rc
