#include "rootcharts/multipoly.hpp"

#include <sstream>

#include "rootcharts/errors.hpp"

namespace rc {

MultiPoly MultiPoly::constant(int q, const Scalar& c) {
  MultiPoly p(q);
  p.add_term(Exponent(q), c);
  return p;
}

MultiPoly MultiPoly::monomial(int q, const Exponent& e, const Scalar& c) {
  MultiPoly p(q);
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::variable(int q, int i) { return monomial(q, Exponent::unit(q, i)); }

void MultiPoly::add_term(const Exponent& e, const Scalar& c) {
  if (e.q() != q_) fail(ErrorKind::DimensionMismatch, "term exponent length");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_negligible()) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_negligible()) terms_.erase(it);
}

void MultiPoly::set_term(const Exponent& e, const Scalar& c) {
  if (c.is_negligible())
    terms_.erase(e);
  else
    terms_[e] = c;
}

Scalar MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar MultiPoly::constant_term() const { return coeff(Exponent(q_)); }

bool MultiPoly::is_exact() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_exact()) return false;
  return true;
}

bool MultiPoly::is_real() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_real()) return false;
  return true;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

int MultiPoly::order() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = (d < 0) ? e.degree() : std::min(d, e.degree());
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(q_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::conj() const {
  MultiPoly r(q_);
  for (const auto& [e, c] : terms_) r.add_term(e, c.conj());
  return r;
}

MultiPoly MultiPoly::scaled(const Scalar& s) const {
  MultiPoly r(q_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

MultiPoly MultiPoly::shifted(const Exponent& s) const {
  MultiPoly r(q_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + s, c);
  return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.q_ != b.q_) fail(ErrorKind::DimensionMismatch, "polynomial add");
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  if (a.q_ != b.q_) fail(ErrorKind::DimensionMismatch, "polynomial sub");
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.q_ != b.q_) fail(ErrorKind::DimensionMismatch, "polynomial mul");
  MultiPoly r(a.q_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.q_ != b.q_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (!(it->first == e) || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

Scalar MultiPoly::eval(const std::vector<Scalar>& x) const {
  if (static_cast<int>(x.size()) != q_) fail(ErrorKind::DimensionMismatch, "eval point");
  Scalar s;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (int i = 0; i < q_; ++i)
      if (e[i]) t *= x[static_cast<size_t>(i)].pow(static_cast<unsigned>(e[i]));
    s += t;
  }
  return s;
}

std::complex<double> MultiPoly::eval(const std::vector<std::complex<double>>& x) const {
  if (static_cast<int>(x.size()) != q_) fail(ErrorKind::DimensionMismatch, "eval point");
  std::complex<double> s = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int i = 0; i < q_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[static_cast<size_t>(i)];
    s += t;
  }
  return s;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int i = 0; i < q_; ++i) {
      if (!e[i]) continue;
      std::string nm = (static_cast<size_t>(i) < names.size()) ? names[static_cast<size_t>(i)]
                                                               : "x" + std::to_string(i + 1);
      os << "*" << nm;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace rc
