#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rootcharts/regularity.hpp"

namespace rc {

namespace {

struct Lattice {
  size_t q = 0;
  std::vector<size_t> N;        // cells per axis
  std::vector<double> lo, step;
  std::vector<size_t> nstride;  // node strides, N_i + 1 nodes per axis
  std::vector<size_t> cstride;
  size_t nodes = 1, cells = 1;

  Lattice(const Box& box, double h) {
    q = box.center.size();
    N.resize(q);
    lo.resize(q);
    step.resize(q);
    nstride.resize(q);
    cstride.resize(q);
    for (size_t i = 0; i < q; ++i) {
      double w = 2 * box.radius[i];
      N[i] = std::max<size_t>(1, static_cast<size_t>(std::llround(w / h)));
      lo[i] = box.center[i] - box.radius[i];
      step[i] = w / static_cast<double>(N[i]);
    }
    for (size_t i = q; i-- > 0;) {
      nstride[i] = nodes;
      cstride[i] = cells;
      nodes *= N[i] + 1;
      cells *= N[i];
    }
  }

  Point node_point(size_t k) const {
    Point x(q);
    for (size_t i = 0; i < q; ++i) x[i] = lo[i] + static_cast<double>((k / nstride[i]) % (N[i] + 1)) * step[i];
    return x;
  }
  size_t cell_base(size_t c) const {
    size_t b = 0;
    for (size_t i = 0; i < q; ++i) b += ((c / cstride[i]) % N[i]) * nstride[i];
    return b;
  }
  Point cell_center(size_t c) const {
    Point x(q);
    for (size_t i = 0; i < q; ++i) x[i] = lo[i] + (static_cast<double>((c / cstride[i]) % N[i]) + 0.5) * step[i];
    return x;
  }
  long cell_of(const Point& x, size_t i) const {
    return static_cast<long>(std::floor((x[i] - lo[i]) / step[i]));
  }
};

struct CellData {
  double max_dq = 0;  // max |df| / h over cell edges
  double grad = 0;    // sum_i |mean d_i f / h|^p
  double sup = 0;
  bool seam = false;
  bool exceptional = false;
  bool jump = false;
};

}  // namespace

LevelEstimate grid_level(const Sampler& f, const GridSpec& grid, double h, double p, double jump_threshold,
                         Exec exec) {
  Lattice L(grid.box, h);
  const size_t q = L.q;
  const bool par = exec == Exec::Parallel;
  const size_t corners = size_t{1} << q;

  std::vector<Sample> S(L.nodes);
  const auto M = static_cast<std::int64_t>(L.nodes);
#pragma omp parallel for schedule(dynamic, 64) if (par)
  for (std::int64_t k = 0; k < M; ++k) S[static_cast<size_t>(k)] = f(L.node_point(static_cast<size_t>(k)));

  std::vector<char> marked(L.cells, 0);
  for (const auto& m : grid.marks) {
    if (m.size() != q) continue;
    std::vector<long> base(q);
    bool near = true;
    for (size_t i = 0; i < q; ++i) {
      base[i] = L.cell_of(m, i);
      if (base[i] < -1 || base[i] > static_cast<long>(L.N[i])) near = false;
    }
    if (!near) continue;
    size_t span = 1;
    for (size_t i = 0; i < q; ++i) span *= 3;
    for (size_t o = 0; o < span; ++o) {
      size_t c = 0, t = o;
      bool ok = true;
      for (size_t i = 0; i < q; ++i) {
        long v = base[i] + static_cast<long>(t % 3) - 1;
        t /= 3;
        if (v < 0 || v >= static_cast<long>(L.N[i])) ok = false;
        else c += static_cast<size_t>(v) * L.cstride[i];
      }
      if (ok) marked[c] = 1;
    }
  }

  double hvol = 1;
  for (size_t i = 0; i < q; ++i) hvol *= L.step[i];
  double hmin = *std::min_element(L.step.begin(), L.step.end());

  std::vector<CellData> C(L.cells);
  const auto NC = static_cast<std::int64_t>(L.cells);
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t ci = 0; ci < NC; ++ci) {
    auto c = static_cast<size_t>(ci);
    CellData& d = C[c];
    size_t b = L.cell_base(c);
    int id0 = S[b].id;
    for (size_t s = 0; s < corners; ++s) {
      size_t k = b;
      for (size_t i = 0; i < q; ++i)
        if (s >> i & 1) k += L.nstride[i];
      if (S[k].id != id0 || S[k].id < 0) d.seam = true;
      d.sup = std::max(d.sup, std::abs(S[k].value));
    }
    for (size_t i = 0; i < q; ++i) {
      cplx sum = 0;
      for (size_t s = 0; s < corners; ++s) {
        if (s >> i & 1) continue;
        size_t k = b;
        for (size_t j = 0; j < q; ++j)
          if (s >> j & 1) k += L.nstride[j];
        cplx e = S[k + L.nstride[i]].value - S[k].value;
        sum += e;
        d.max_dq = std::max(d.max_dq, std::abs(e) / L.step[i]);
      }
      double g = std::abs(sum) / static_cast<double>(corners / 2) / L.step[i];
      d.grad += std::pow(g, p);
    }
    if (grid.exceptional && grid.exceptional(L.cell_center(c), hmin)) d.exceptional = true;
  }

  std::vector<double> dq;
  dq.reserve(L.cells);
  for (size_t c = 0; c < L.cells; ++c)
    if (!marked[c] && !C[c].seam && !C[c].exceptional && std::isfinite(C[c].max_dq)) dq.push_back(C[c].max_dq);
  double median = 0;
  if (!dq.empty()) {
    auto mid = dq.begin() + static_cast<long>(dq.size() / 2);
    std::nth_element(dq.begin(), mid, dq.end());
    median = *mid;
  }
  const double cut = jump_threshold * std::sqrt(hmin) * median;

  LevelEstimate out;
  out.h = hmin;
  out.cells = L.cells;

  // Jump edges, visited once each from their lower node.
  std::vector<double> row_mass(L.nodes, 0.0);
  std::vector<char> jump_node_dir(L.nodes * q, 0);
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t ki = 0; ki < M; ++ki) {
    auto k = static_cast<size_t>(ki);
    double face = hvol;
    for (size_t i = 0; i < q; ++i) {
      if ((k / L.nstride[i]) % (L.N[i] + 1) == L.N[i]) continue;
      double e = std::abs(S[k + L.nstride[i]].value - S[k].value);
      if (!(e > cut) && std::isfinite(e)) continue;
      jump_node_dir[k * q + i] = 1;
      row_mass[k] += (std::isfinite(e) ? e : 0.0) * face / L.step[i];
    }
  }
  for (size_t k = 0; k < L.nodes; ++k) out.jump_mass += row_mass[k];

  std::vector<size_t> jumps;
  for (size_t e = 0; e < jump_node_dir.size(); ++e)
    if (jump_node_dir[e]) jumps.push_back(e);
  const size_t keep = std::min<size_t>(32, jumps.size());
  for (size_t t = 0; t < keep; ++t) {
    size_t e = jumps[t * jumps.size() / keep];
    Point x = L.node_point(e / q);
    x[e % q] += 0.5 * L.step[e % q];
    out.jump_points.push_back(x);
  }

#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t ci = 0; ci < NC; ++ci) {
    auto c = static_cast<size_t>(ci);
    size_t b = L.cell_base(c);
    for (size_t s = 0; s < corners && !C[c].jump; ++s) {
      size_t k = b;
      for (size_t j = 0; j < q; ++j)
        if (s >> j & 1) k += L.nstride[j];
      for (size_t i = 0; i < q; ++i)
        if (!(s >> i & 1) && jump_node_dir[k * q + i]) C[c].jump = true;
    }
  }

  double face = hvol / hmin;
  for (size_t c = 0; c < L.cells; ++c) {
    const CellData& d = C[c];
    if (d.jump) ++out.jump_cells;
    if (marked[c] || d.seam || d.exceptional || d.jump) {
      ++out.e_cells;
      continue;
    }
    out.value += d.grad * hvol;
    out.sup_off_e = std::max(out.sup_off_e, d.sup);
  }
  out.e_measure = static_cast<double>(out.e_cells) * face;
  return out;
}

}  // namespace rc
