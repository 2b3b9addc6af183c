#pragma once

#include <vector>

#include "rootcharts/exponent.hpp"

namespace rc {

// Monomial ideal given by an antichain of generators; empty means the zero ideal.
class PrecisionIdeal {
 public:
  explicit PrecisionIdeal(int q = 0) : q_(q) {}
  static PrecisionIdeal from(int q, std::vector<Exponent> gens);
  static PrecisionIdeal degree(int q, int d);  // all monomials of total degree d
  static PrecisionIdeal whole(int q) { return from(q, {Exponent(q)}); }

  int q() const { return q_; }
  const std::vector<Exponent>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_whole() const;
  bool contains(const Exponent& e) const;
  bool contains(const PrecisionIdeal& o) const;  // o ⊆ this
  int min_degree() const;                        // -1 for the zero ideal

  PrecisionIdeal operator+(const PrecisionIdeal& o) const;
  PrecisionIdeal times(const Exponent& e) const;
  bool operator==(const PrecisionIdeal& o) const { return q_ == o.q_ && gens_ == o.gens_; }
  std::string str() const;

 private:
  int q_;
  std::vector<Exponent> gens_;
};

}  // namespace rc
