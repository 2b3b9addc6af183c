#pragma once

#include <compare>
#include <string>
#include <vector>

namespace rc {

class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(int q) : e_(static_cast<size_t>(q), 0) {}
  Exponent(std::initializer_list<int> v) : e_(v) {}
  explicit Exponent(std::vector<int> v) : e_(std::move(v)) {}
  static Exponent unit(int q, int i, int k = 1);

  int q() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[static_cast<size_t>(i)]; }
  int& operator[](int i) { return e_[static_cast<size_t>(i)]; }
  const std::vector<int>& data() const { return e_; }

  int degree() const;
  bool is_zero() const;
  // Componentwise order.
  bool divides(const Exponent& o) const;
  bool comparable(const Exponent& o) const { return divides(o) || o.divides(*this); }

  Exponent operator+(const Exponent& o) const;
  Exponent operator-(const Exponent& o) const;
  Exponent scaled(int k) const;
  Exponent lcm(const Exponent& o) const;
  Exponent gcd(const Exponent& o) const;

  auto operator<=>(const Exponent& o) const = default;
  std::string str() const;

 private:
  std::vector<int> e_;
};

}  // namespace rc
