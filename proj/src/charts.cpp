#include "rootcharts/charts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rootcharts/errors.hpp"

namespace rc {

bool Box::contains(const std::vector<double>& y, double slack) const {
  for (size_t i = 0; i < y.size() && i < center.size(); ++i)
    if (std::abs(y[i] - center[i]) > radius[i] * (1 + slack) + slack) return false;
  return true;
}

Box Box::scaled(double f) const {
  Box b = *this;
  for (auto& r : b.radius) r *= f;
  return b;
}

ChartMap ChartMap::then(const ChartStep& s) const {
  ChartMap m = *this;
  m.steps.push_back(s);
  return m;
}

ChartMap ChartMap::then(const ChartMap& o) const {
  ChartMap m = *this;
  m.steps.insert(m.steps.end(), o.steps.begin(), o.steps.end());
  return m;
}

bool ChartMap::exact() const {
  for (const auto& s : steps)
    if (auto t = std::get_if<Translate>(&s))
      for (const auto& c : t->point)
        if (!c.is_exact()) return false;
  return true;
}

int ChartMap::count_blowups() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(),
                                        [](const ChartStep& s) { return std::holds_alternative<BlowUp>(s); }));
}

int ChartMap::count_powersubs() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(),
                                        [](const ChartStep& s) { return std::holds_alternative<PowerSub>(s); }));
}

std::vector<ChartMap> blow_up_charts(int q, const std::vector<int>& I) {
  if (I.size() < 2) fail(ErrorKind::InvalidArgument, "blow-up center needs at least two coordinates");
  for (int i : I)
    if (i < 0 || i >= q) fail(ErrorKind::DimensionMismatch, "blow-up index out of range");
  std::vector<ChartMap> out;
  for (int i : I) out.push_back(ChartMap{q, {BlowUp{I, i}}});
  return out;
}

MonomialMap step_monomial_map(int q, const ChartStep& s) {
  MonomialMap m;
  m.q_out = q;
  m.signs.assign(static_cast<size_t>(q), 1);
  for (int j = 0; j < q; ++j) m.images.push_back(Exponent::unit(q, j));
  if (auto b = std::get_if<BlowUp>(&s)) {
    for (int j : b->center)
      if (j != b->chart) m.images[static_cast<size_t>(j)] = Exponent::unit(q, j) + Exponent::unit(q, b->chart);
  } else if (auto p = std::get_if<PowerSub>(&s)) {
    for (int j = 0; j < q; ++j) {
      m.images[static_cast<size_t>(j)] = Exponent::unit(q, j, p->gamma[j]);
      m.signs[static_cast<size_t>(j)] = p->eps[static_cast<size_t>(j)] % 2 ? -1 : 1;
    }
  } else {
    fail(ErrorKind::InvalidArgument, "step is not monomial");
  }
  return m;
}

Jet pullback(const Jet& f, const ChartStep& s, bool local) {
  if (std::holds_alternative<Open>(s)) return f;
  if (auto t = std::get_if<Translate>(&s))
    return local ? compose_translate_local(f, t->point) : compose_translate(f, t->point);
  return compose_monomial(f, step_monomial_map(f.q(), s));
}

Jet pullback(const Jet& f, const ChartMap& m, bool local) {
  Jet g = f;
  for (const auto& s : m.steps) g = pullback(g, s, local);
  return g;
}

PolyFamily pullback(const PolyFamily& P, const ChartStep& s, bool local) {
  PolyFamily R = P;
  for (auto& a : R.a) a = pullback(a, s, local);
  return R;
}

PolyFamily pullback(const PolyFamily& P, const ChartMap& m, bool local) {
  PolyFamily R = P;
  for (auto& a : R.a) a = pullback(a, m, local);
  return R;
}

namespace {

template <class T>
T step_forward(const ChartStep& s, const T& y);

template <>
std::vector<double> step_forward(const ChartStep& s, const std::vector<double>& y) {
  std::vector<double> x = y;
  if (auto b = std::get_if<BlowUp>(&s)) {
    for (int j : b->center)
      if (j != b->chart) x[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] * y[static_cast<size_t>(b->chart)];
  } else if (auto p = std::get_if<PowerSub>(&s)) {
    for (size_t j = 0; j < y.size(); ++j) {
      x[j] = std::pow(y[j], p->gamma[static_cast<int>(j)]);
      if (p->eps[j] % 2) x[j] = -x[j];
    }
  } else if (auto t = std::get_if<Translate>(&s)) {
    for (size_t j = 0; j < y.size(); ++j) x[j] = y[j] + t->point[j].to_complex().real();
  }
  return x;
}

template <>
std::vector<Scalar> step_forward(const ChartStep& s, const std::vector<Scalar>& y) {
  std::vector<Scalar> x = y;
  if (auto b = std::get_if<BlowUp>(&s)) {
    for (int j : b->center)
      if (j != b->chart) x[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] * y[static_cast<size_t>(b->chart)];
  } else if (auto p = std::get_if<PowerSub>(&s)) {
    for (size_t j = 0; j < y.size(); ++j) {
      x[j] = y[j].pow(static_cast<unsigned>(p->gamma[static_cast<int>(j)]));
      if (p->eps[j] % 2) x[j] = -x[j];
    }
  } else if (auto t = std::get_if<Translate>(&s)) {
    for (size_t j = 0; j < y.size(); ++j) x[j] = y[j] + t->point[j];
  }
  return x;
}

}  // namespace

std::vector<double> push_forward_point(const ChartMap& m, std::vector<double> y) {
  if (static_cast<int>(y.size()) != m.q) fail(ErrorKind::DimensionMismatch, "point dimension");
  for (auto it = m.steps.rbegin(); it != m.steps.rend(); ++it) y = step_forward(*it, y);
  return y;
}

std::vector<Scalar> push_forward_point(const ChartMap& m, std::vector<Scalar> y) {
  if (static_cast<int>(y.size()) != m.q) fail(ErrorKind::DimensionMismatch, "point dimension");
  for (auto it = m.steps.rbegin(); it != m.steps.rend(); ++it) y = step_forward(*it, y);
  return y;
}

std::vector<double> psibar(const Exponent& gamma, const std::vector<int>& eps, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    y[i] = std::pow(std::abs(x[i]), gamma[static_cast<int>(i)]);
    if (eps[i] % 2) y[i] = -y[i];
  }
  return y;
}

std::vector<double> psibar_inverse(const Exponent& gamma, const std::vector<int>& eps, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    y[i] = std::pow(std::abs(x[i]), 1.0 / gamma[static_cast<int>(i)]);
    if (eps[i] % 2) y[i] = -y[i];
  }
  return y;
}

std::vector<Preimage> preimage_points(const ChartMap& m, const std::vector<double>& x, const Box& box) {
  if (static_cast<int>(x.size()) != m.q) fail(ErrorKind::DimensionMismatch, "point dimension");
  std::vector<Preimage> cur{{x, true}};
  for (const auto& s : m.steps) {
    std::vector<Preimage> next;
    for (auto& P : cur) {
      Preimage Q = P;
      bool keep = true;
      if (auto b = std::get_if<BlowUp>(&s)) {
        double xi = P.y[static_cast<size_t>(b->chart)];
        if (xi == 0.0) {
          for (int j : b->center)
            if (P.y[static_cast<size_t>(j)] != 0.0) keep = false;
          Q.unique = false;
        } else {
          for (int j : b->center)
            if (j != b->chart) Q.y[static_cast<size_t>(j)] = P.y[static_cast<size_t>(j)] / xi;
        }
      } else if (auto p = std::get_if<PowerSub>(&s)) {
        for (size_t j = 0; j < P.y.size(); ++j) {
          int g = p->gamma[static_cast<int>(j)];
          double v = p->eps[j] % 2 ? -P.y[j] : P.y[j];
          if (g % 2 == 0) {
            if (v < 0) keep = false;
            Q.y[j] = std::pow(std::max(v, 0.0), 1.0 / g);
            if (p->eps[j] % 2) Q.y[j] = -Q.y[j];
          } else {
            Q.y[j] = std::copysign(std::pow(std::abs(v), 1.0 / g), v);
          }
        }
      } else if (auto t = std::get_if<Translate>(&s)) {
        for (size_t j = 0; j < P.y.size(); ++j) Q.y[j] = P.y[j] - t->point[j].to_complex().real();
      } else if (auto o = std::get_if<Open>(&s)) {
        keep = o->box.contains(P.y);
      }
      if (keep) next.push_back(std::move(Q));
    }
    cur = std::move(next);
  }
  std::vector<Preimage> out;
  for (auto& P : cur)
    if (box.center.empty() || box.contains(P.y)) out.push_back(std::move(P));
  return out;
}

std::vector<LocusComponent> exceptional_locus(const ChartMap& m) {
  std::vector<LocusComponent> cur;
  auto add = [](std::vector<LocusComponent>& v, LocusComponent c) {
    if (c.offset == 0.0 && c.axes.size() > 1) {
      for (int k : c.axes) {
        LocusComponent s{{k}, 0.0};
        if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
      }
      return;
    }
    std::sort(c.axes.begin(), c.axes.end());
    if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(std::move(c));
  };
  for (const auto& s : m.steps) {
    std::vector<LocusComponent> next;
    for (const auto& c : cur) {
      if (auto b = std::get_if<BlowUp>(&s)) {
        LocusComponent d = c;
        bool hits = false;
        for (int k : c.axes)
          if (k != b->chart && std::find(b->center.begin(), b->center.end(), k) != b->center.end()) hits = true;
        if (hits) {
          if (c.offset != 0.0) continue;
          if (std::find(d.axes.begin(), d.axes.end(), b->chart) == d.axes.end()) d.axes.push_back(b->chart);
        }
        add(next, d);
      } else if (auto p = std::get_if<PowerSub>(&s)) {
        if (c.offset == 0.0) {
          add(next, c);
        } else if (c.axes.size() == 1) {
          int k = c.axes[0];
          int g = p->gamma[k];
          double v = p->eps[static_cast<size_t>(k)] % 2 ? -c.offset : c.offset;
          if (g % 2 == 0) {
            if (v < 0) continue;
            double r = std::pow(v, 1.0 / g);
            add(next, {{k}, r});
            add(next, {{k}, -r});
          } else {
            add(next, {{k}, std::copysign(std::pow(std::abs(v), 1.0 / g), v)});
          }
        }
      } else if (auto t = std::get_if<Translate>(&s)) {
        bool moved = false;
        for (int k : c.axes)
          if (!t->point[static_cast<size_t>(k)].is_negligible()) moved = true;
        if (!moved) {
          add(next, c);
        } else if (c.axes.size() == 1) {
          int k = c.axes[0];
          add(next, {{k}, c.offset - t->point[static_cast<size_t>(k)].to_complex().real()});
        }
      } else {
        add(next, c);
      }
    }
    if (auto b = std::get_if<BlowUp>(&s)) {
      add(next, {{b->chart}, 0.0});
    } else if (auto p = std::get_if<PowerSub>(&s)) {
      for (int k = 0; k < m.q; ++k)
        if (p->gamma[k] >= 2) add(next, {{k}, 0.0});
    }
    cur = std::move(next);
  }
  return cur;
}

Box leaf_box(const ChartMap& m, const Box& base) {
  Box b = base;
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& s : m.steps) {
    if (auto bu = std::get_if<BlowUp>(&s)) {
      for (int j : bu->center)
        if (j != bu->chart) {
          b.center[static_cast<size_t>(j)] = 0.0;
          b.radius[static_cast<size_t>(j)] = inf;
        }
    } else if (auto p = std::get_if<PowerSub>(&s)) {
      for (size_t j = 0; j < b.center.size(); ++j) {
        double r = std::abs(b.center[j]) + b.radius[j];
        b.center[j] = 0.0;
        b.radius[j] = std::pow(r, 1.0 / p->gamma[static_cast<int>(j)]);
      }
    } else if (auto t = std::get_if<Translate>(&s)) {
      for (size_t j = 0; j < b.center.size(); ++j) b.center[j] -= t->point[j].to_complex().real();
    } else if (auto o = std::get_if<Open>(&s)) {
      b = o->box;
    }
  }
  return b;
}

}  // namespace rc
