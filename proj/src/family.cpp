#include "rootcharts/family.hpp"

#include "rootcharts/errors.hpp"

namespace rc {

PolyFamily PolyFamily::from_coeffs(std::vector<Jet> a) {
  PolyFamily P;
  P.n = static_cast<int>(a.size());
  if (P.n == 0) fail(ErrorKind::InvalidArgument, "family of degree 0");
  P.q = a[0].q();
  for (const auto& j : a)
    if (j.q() != P.q) fail(ErrorKind::DimensionMismatch, "family coefficients");
  P.a = std::move(a);
  return P;
}

std::vector<Jet> PolyFamily::z_coeffs() const {
  std::vector<Jet> c(static_cast<size_t>(n) + 1, Jet(q));
  c[static_cast<size_t>(n)] = Jet::constant(q, Scalar(1));
  for (int j = 1; j <= n; ++j) {
    const Jet& aj = a[static_cast<size_t>(j - 1)];
    c[static_cast<size_t>(n - j)] = (j % 2) ? -aj : aj;
  }
  return c;
}

PolyFamily PolyFamily::from_z_coeffs(const std::vector<Jet>& c) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<Jet> a;
  for (int j = 1; j <= n; ++j) {
    const Jet& cj = c[static_cast<size_t>(n - j)];
    a.push_back((j % 2) ? -cj : cj);
  }
  return from_coeffs(std::move(a));
}

std::vector<Scalar> PolyFamily::at_origin() const {
  std::vector<Scalar> v;
  for (const auto& j : a) v.push_back(j.constant_term());
  return v;
}

std::vector<std::complex<double>> PolyFamily::eval_coeffs(
    const std::vector<std::complex<double>>& x) const {
  std::vector<std::complex<double>> v;
  for (const auto& j : a) v.push_back(j.eval(x));
  return v;
}

bool PolyFamily::exact_data() const {
  for (const auto& j : a)
    if (!j.exact_data()) return false;
  return true;
}

bool PolyFamily::scalars_exact() const {
  for (const auto& j : a)
    if (!j.scalars_exact()) return false;
  return true;
}

bool PolyFamily::is_real() const {
  for (const auto& j : a)
    if (!j.is_real()) return false;
  return true;
}

PrecisionIdeal PolyFamily::ideal() const {
  PrecisionIdeal I(q);
  for (const auto& j : a) I = I + j.ideal();
  return I;
}

PolyFamily PolyFamily::reduced(const PrecisionIdeal& I) const {
  PolyFamily P = *this;
  for (auto& j : P.a) j = j.reduced(I);
  return P;
}

std::string PolyFamily::str() const {
  std::string s = "z^" + std::to_string(n);
  for (int j = 1; j <= n; ++j)
    s += std::string(j % 2 ? " - " : " + ") + "(" + a[static_cast<size_t>(j - 1)].str() + ")z^" +
         std::to_string(n - j);
  return s;
}

Jet eval_family(const PolyFamily& P, const Jet& lambda) {
  auto c = P.z_coeffs();
  Jet acc = c[static_cast<size_t>(P.n)];
  for (int k = P.n - 1; k >= 0; --k) acc = acc * lambda + c[static_cast<size_t>(k)];
  return acc;
}

Jet eval_family_derivative(const PolyFamily& P, const Jet& lambda) {
  auto c = P.z_coeffs();
  Jet acc = c[static_cast<size_t>(P.n)].scaled(Scalar(static_cast<long>(P.n)));
  for (int k = P.n - 1; k >= 1; --k)
    acc = acc * lambda + c[static_cast<size_t>(k)].scaled(Scalar(static_cast<long>(k)));
  return acc;
}

std::vector<Scalar> z_coeffs_scalar(const std::vector<Scalar>& a) {
  int n = static_cast<int>(a.size());
  std::vector<Scalar> c(static_cast<size_t>(n) + 1);
  c[static_cast<size_t>(n)] = Scalar(1);
  for (int j = 1; j <= n; ++j) {
    const Scalar& aj = a[static_cast<size_t>(j - 1)];
    c[static_cast<size_t>(n - j)] = (j % 2) ? -aj : aj;
  }
  return c;
}

std::vector<Scalar> a_from_z_coeffs(const std::vector<Scalar>& c) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<Scalar> a;
  Scalar lead = c[static_cast<size_t>(n)];
  for (int j = 1; j <= n; ++j) {
    Scalar cj = c[static_cast<size_t>(n - j)] / lead;
    a.push_back((j % 2) ? -cj : cj);
  }
  return a;
}

}  // namespace rc
