#include "rootcharts/exponent.hpp"

#include <algorithm>

#include "rootcharts/errors.hpp"

namespace rc {

Exponent Exponent::unit(int q, int i, int k) {
  Exponent e(q);
  e[i] = k;
  return e;
}

int Exponent::degree() const {
  int d = 0;
  for (int v : e_) d += v;
  return d;
}

bool Exponent::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

bool Exponent::divides(const Exponent& o) const {
  if (e_.size() != o.e_.size()) fail(ErrorKind::DimensionMismatch, "exponent length");
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Exponent Exponent::operator+(const Exponent& o) const {
  if (e_.size() != o.e_.size()) fail(ErrorKind::DimensionMismatch, "exponent length");
  Exponent r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

Exponent Exponent::operator-(const Exponent& o) const {
  if (e_.size() != o.e_.size()) fail(ErrorKind::DimensionMismatch, "exponent length");
  Exponent r = *this;
  for (size_t i = 0; i < e_.size(); ++i) {
    r.e_[i] -= o.e_[i];
    if (r.e_[i] < 0) fail(ErrorKind::DivisionObstruction, "negative exponent");
  }
  return r;
}

Exponent Exponent::scaled(int k) const {
  Exponent r = *this;
  for (auto& v : r.e_) v *= k;
  return r;
}

Exponent Exponent::lcm(const Exponent& o) const {
  Exponent r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
  return r;
}

Exponent Exponent::gcd(const Exponent& o) const {
  Exponent r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::min(e_[i], o.e_[i]);
  return r;
}

std::string Exponent::str() const {
  std::string s = "(";
  for (size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

}  // namespace rc
