#include "rootcharts/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rootcharts/errors.hpp"

namespace rc {

UPoly upoly_trim(UPoly p) {
  while (!p.empty() && p.back().is_negligible()) p.pop_back();
  return p;
}

int upoly_degree(const UPoly& p) { return static_cast<int>(upoly_trim(p).size()) - 1; }

UPoly upoly_derivative(const UPoly& p) {
  UPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Scalar(static_cast<long>(k)));
  return upoly_trim(d);
}

Scalar upoly_eval(const UPoly& p, const Scalar& z) {
  Scalar acc;
  for (size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
  return acc;
}

void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem) {
  UPoly bb = upoly_trim(b);
  if (bb.empty()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  rem = upoly_trim(a);
  int db = static_cast<int>(bb.size()) - 1;
  int da = static_cast<int>(rem.size()) - 1;
  quot.assign(static_cast<size_t>(std::max(0, da - db + 1)), Scalar());
  while (!rem.empty() && static_cast<int>(rem.size()) - 1 >= db) {
    int d = static_cast<int>(rem.size()) - 1;
    Scalar f = rem.back() / bb.back();
    quot[static_cast<size_t>(d - db)] = f;
    for (int k = 0; k <= db; ++k) rem[static_cast<size_t>(d - db + k)] -= f * bb[static_cast<size_t>(k)];
    rem.pop_back();
    rem = upoly_trim(rem);
  }
  quot = upoly_trim(quot);
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  a = upoly_trim(a);
  b = upoly_trim(b);
  while (!b.empty()) {
    UPoly q, r;
    upoly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Scalar lead = a.back();
  for (auto& c : a) c = c / lead;
  return a;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return upoly_trim(r);
}

std::vector<cplx> upoly_to_complex(const UPoly& p) {
  std::vector<cplx> c;
  for (const auto& s : p) c.push_back(s.to_complex());
  return c;
}

namespace {

bool all_exact(const UPoly& p) {
  return std::all_of(p.begin(), p.end(), [](const Scalar& s) { return s.is_exact(); });
}

std::vector<UPoly> yun(const UPoly& p) {
  std::vector<UPoly> out;
  UPoly dp = upoly_derivative(p);
  UPoly a0 = upoly_gcd(p, dp);
  UPoly b, c, q, r;
  upoly_divmod(p, a0, b, r);
  upoly_divmod(dp, a0, c, r);
  UPoly d = c;
  {
    UPoly db = upoly_derivative(b);
    d.resize(std::max(d.size(), db.size()));
    for (size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
    d = upoly_trim(d);
  }
  while (upoly_degree(b) > 0) {
    UPoly g = upoly_gcd(b, d);
    out.push_back(g);
    UPoly nb, nc;
    upoly_divmod(b, g, nb, r);
    upoly_divmod(d, g, nc, r);
    b = nb;
    UPoly db = upoly_derivative(b);
    d = nc;
    d.resize(std::max(d.size(), db.size()));
    for (size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
    d = upoly_trim(d);
  }
  return out;
}

std::optional<Scalar> recognize(const UPoly& p, cplx z) {
  for (long den : {1L, 1000L, 1000000L}) {
    mpq_class re = rational_approx(z.real(), den), im = rational_approx(z.imag(), den);
    if (std::abs(z.imag()) < 1e-13) im = 0;
    if (std::abs(z.real()) < 1e-13) re = 0;
    Scalar s(re, im);
    if (upoly_eval(p, s).is_negligible()) return s;
  }
  return std::nullopt;
}

}  // namespace

Scalar refine_simple_root(const UPoly& p, cplx approx, long prec) {
  UPoly pb;
  double coeff_rad = 0;
  for (const auto& c : p) pb.push_back(c);
  UPoly dp = upoly_derivative(pb);
  Scalar z = Scalar::from_complex(approx, 0.0, prec);
  for (int it = 0; it < 12; ++it) {
    Scalar v = upoly_eval(pb, z), d = upoly_eval(dp, z);
    if (!d.is_invertible()) break;
    Scalar step = v / d;
    const ComplexBall& sb = (z - step).to_ball(prec);
    z = Scalar::ball(sb.re, sb.im, 0.0);
    if (step.abs_upper() < std::ldexp(1.0, static_cast<int>(-prec))) break;
  }
  // Inclusion: some root lies within n |p(z)| / |p'(z)|, inflated by the
  // coefficient radii bound sum rad_k |z|^k.
  Scalar v = upoly_eval(pb, z), d = upoly_eval(dp, z);
  double az = z.abs_upper(), pw = 1;
  for (const auto& c : p) {
    coeff_rad = add_up(coeff_rad, mul_up(c.radius(), pw));
    pw = mul_up(pw, az);
  }
  double dlow = std::abs(d.to_complex()) - d.radius();
  if (!(dlow > 0)) fail(ErrorKind::PrecisionLoss, "root refinement at a multiple root");
  double n = static_cast<double>(p.size() - 1);
  double rad = mul_up(n, div_up(add_up(v.abs_upper(), coeff_rad), dlow));
  rad = add_up(rad, std::ldexp(1.0, static_cast<int>(-prec + 4)));
  const ComplexBall& b = z.to_ball(prec);
  return Scalar::ball(b.re, b.im, rad);
}

std::vector<RootMult> upoly_roots(const UPoly& pin, long prec, double tol) {
  UPoly p = upoly_trim(pin);
  if (p.size() < 2) return {};
  std::vector<RootMult> out;
  if (all_exact(p)) {
    auto parts = yun(p);
    for (size_t i = 0; i < parts.size(); ++i) {
      const UPoly& qi = parts[i];
      if (upoly_degree(qi) < 1) continue;
      for (cplx z : numeric_roots_ascending(upoly_to_complex(qi))) {
        if (auto s = recognize(qi, z))
          out.push_back({*s, static_cast<int>(i + 1)});
        else
          out.push_back({refine_simple_root(qi, z, prec), static_cast<int>(i + 1)});
      }
    }
  } else {
    auto z = numeric_roots_ascending(upoly_to_complex(p));
    std::vector<bool> used(z.size(), false);
    for (size_t i = 0; i < z.size(); ++i) {
      if (used[i]) continue;
      std::vector<size_t> cl{i};
      used[i] = true;
      for (size_t k = 0; k < cl.size(); ++k)
        for (size_t j = 0; j < z.size(); ++j)
          if (!used[j] && std::abs(z[cl[k]] - z[j]) <= tol) {
            used[j] = true;
            cl.push_back(j);
          }
      if (cl.size() == 1) {
        out.push_back({refine_simple_root(p, z[i], prec), 1});
      } else {
        cplx c = 0;
        for (size_t j : cl) c += z[j];
        c /= static_cast<double>(cl.size());
        double r = 0;
        for (size_t j : cl) r = std::max(r, std::abs(z[j] - c));
        out.push_back({Scalar::from_complex(c, 2 * r + tol, prec), static_cast<int>(cl.size())});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const RootMult& a, const RootMult& b) {
    cplx x = a.value.to_complex(), y = b.value.to_complex();
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

std::vector<Scalar> upoly_real_roots(const UPoly& pin, long prec) {
  UPoly p = upoly_trim(pin);
  if (p.size() < 2) return {};
  std::vector<Scalar> out;
  if (all_exact(p)) {
    UPoly re, im;
    for (const auto& c : p) {
      re.push_back(Scalar(c.exact().re));
      im.push_back(Scalar(c.exact().im));
    }
    im = upoly_trim(im);
    UPoly h = im.empty() ? upoly_trim(re) : upoly_gcd(re, im);
    if (upoly_degree(h) < 1) return {};
    for (const auto& r : upoly_roots(h, prec)) {
      if (r.value.is_exact()) {
        if (r.value.exact().im == 0) out.push_back(r.value);
      } else if (r.value.is_real()) {
        const ComplexBall& b = r.value.as_ball();
        out.push_back(Scalar::ball(b.re, BigFloat(prec), b.rad));
      }
    }
  } else {
    for (const auto& r : upoly_roots(p, prec)) {
      cplx z = r.value.to_complex();
      if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z))) {
        const ComplexBall& b = r.value.as_ball();
        out.push_back(Scalar::ball(b.re, BigFloat(prec), add_up(b.rad, std::abs(z.imag()))));
      }
    }
  }
  return out;
}

}  // namespace rc
