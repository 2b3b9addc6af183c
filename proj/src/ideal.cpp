#include "rootcharts/ideal.hpp"

#include <algorithm>

#include "rootcharts/errors.hpp"

namespace rc {

PrecisionIdeal PrecisionIdeal::from(int q, std::vector<Exponent> gens) {
  PrecisionIdeal I(q);
  for (const auto& g : gens)
    if (g.q() != q) fail(ErrorKind::DimensionMismatch, "ideal generator length");
  std::sort(gens.begin(), gens.end(), [](const Exponent& a, const Exponent& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : I.gens_)
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) I.gens_.push_back(g);
  }
  std::sort(I.gens_.begin(), I.gens_.end());
  return I;
}

PrecisionIdeal PrecisionIdeal::degree(int q, int d) {
  std::vector<Exponent> gens;
  Exponent e(q);
  // Enumerate compositions of d into q parts.
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == q - 1) {
      e[i] = left;
      gens.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (q == 0) return PrecisionIdeal(0);
  rec(rec, 0, d);
  return from(q, std::move(gens));
}

bool PrecisionIdeal::is_whole() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const Exponent& g) { return g.is_zero(); });
}

bool PrecisionIdeal::contains(const Exponent& e) const {
  for (const auto& g : gens_)
    if (g.divides(e)) return true;
  return false;
}

bool PrecisionIdeal::contains(const PrecisionIdeal& o) const {
  for (const auto& g : o.gens_)
    if (!contains(g)) return false;
  return true;
}

int PrecisionIdeal::min_degree() const {
  int d = -1;
  for (const auto& g : gens_) d = (d < 0) ? g.degree() : std::min(d, g.degree());
  return d;
}

PrecisionIdeal PrecisionIdeal::operator+(const PrecisionIdeal& o) const {
  if (o.gens_.empty()) return *this;
  if (gens_.empty()) return o;
  if (q_ != o.q_) fail(ErrorKind::DimensionMismatch, "ideal sum");
  std::vector<Exponent> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return from(q_, std::move(g));
}

PrecisionIdeal PrecisionIdeal::times(const Exponent& e) const {
  PrecisionIdeal r(q_);
  for (const auto& g : gens_) r.gens_.push_back(g + e);
  std::sort(r.gens_.begin(), r.gens_.end());
  return r;
}

std::string PrecisionIdeal::str() const {
  if (gens_.empty()) return "0";
  std::string s = "<";
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ",";
    s += gens_[i].str();
  }
  return s + ">";
}

}  // namespace rc
