#include "trifuzz/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "trifuzz/solver.hpp"

namespace trifuzz {

namespace {

constexpr double kInteriorEps = 1e-7;
constexpr double kDikinCap = 1000.0;

struct Projected {
  // Rows over the free dimensions only, constants adjusted for pins.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> norm;
  bool infeasible = false;
};

double dot(const std::vector<double>& a, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

double min_margin(const Projected& pr, const std::vector<double>& x, int* arg = nullptr) {
  double best = 1e300;
  for (std::size_t r = 0; r < pr.a.size(); ++r) {
    double m = (pr.b[r] - dot(pr.a[r], x)) / pr.norm[r];
    if (m < best) {
      best = m;
      if (arg) *arg = static_cast<int>(r);
    }
  }
  return best;
}

// Chebyshev-style search: subgradient ascent on the minimum face margin.
// Returns true when a strictly interior point was found.
bool find_interior(const Projected& pr, std::vector<double>& x, double span) {
  std::vector<double> best_x = x;
  double best = min_margin(pr, x);
  std::vector<double> cur = x;
  double step0 = std::max(span / 2.0, 1.0);
  for (int t = 1; t <= 4000; ++t) {
    int arg = -1;
    double m = min_margin(pr, cur, &arg);
    if (m > best) {
      best = m;
      best_x = cur;
    }
    if (arg < 0) break;
    double step = step0 / std::sqrt(static_cast<double>(t));
    const auto& a = pr.a[arg];
    double n = pr.norm[arg];
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= step * a[i] / n;
  }
  x = best_x;
  return best > kInteriorEps;
}

}  // namespace

SampleResult sample_polytope(const Polytope& p, std::size_t n, Rng& rng) {
  SampleResult out;
  if (p.infeasible) {
    out.status = SampleStatus::Infeasible;
    return out;
  }
  const std::size_t dim = p.vars.size();
  if (dim == 0 || n == 0) {
    out.status = SampleStatus::Degenerate;
    return out;
  }

  // Integer bounds per variable, derived from the rows themselves.
  std::vector<Atom> row_atoms;
  for (std::size_t r = 0; r < p.rows_a.size(); ++r) {
    LinExpr e;
    for (std::size_t j = 0; j < dim; ++j)
      if (p.rows_a[r][j] != 0) e.coeffs[p.vars[j]] = p.rows_a[r][j];
    e.constant = -p.rows_b[r];
    row_atoms.push_back(Atom::linear(std::move(e), Rel::Le));
  }
  Domains doms = propagate_intervals(make_path_condition(std::move(row_atoms)));
  if (doms.empty()) {
    out.status = SampleStatus::Infeasible;
    return out;
  }
  std::map<ByteIndex, std::array<std::int32_t, 2>> bound;
  for (std::size_t i = 0; i < doms.vars.size(); ++i) bound[doms.vars[i]] = doms.range[i];

  std::vector<std::size_t> free_dims;
  std::vector<std::int32_t> pinned(dim, 0);
  for (std::size_t j = 0; j < dim; ++j) {
    auto it = bound.find(p.vars[j]);
    std::array<std::int32_t, 2> r = it == bound.end()
                                        ? std::array<std::int32_t, 2>{0, 255}
                                        : it->second;
    if (r[0] == r[1])
      pinned[j] = r[0];
    else
      free_dims.push_back(j);
  }

  if (free_dims.empty()) {
    // Zero-volume region: at most the single pinned lattice point.
    std::vector<std::int64_t> pt(pinned.begin(), pinned.end());
    if (!p.contains(pt)) {
      out.status = SampleStatus::Infeasible;
      return out;
    }
    std::map<ByteIndex, std::uint8_t> point;
    std::vector<double> raw(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      point[p.vars[j]] = static_cast<std::uint8_t>(pinned[j]);
      raw[j] = pinned[j];
    }
    out.points.push_back(std::move(point));
    out.raw.push_back(std::move(raw));
    out.status = SampleStatus::Ok;
    return out;
  }

  // Project rows onto the free dimensions.
  Projected pr;
  double span = 1.0;
  for (std::size_t j : free_dims) {
    auto r = bound.count(p.vars[j]) ? bound[p.vars[j]] : std::array<std::int32_t, 2>{0, 255};
    span = std::max(span, static_cast<double>(r[1] - r[0]));
  }
  for (std::size_t r = 0; r < p.rows_a.size(); ++r) {
    std::vector<double> a(free_dims.size(), 0.0);
    double nn = 0;
    for (std::size_t k = 0; k < free_dims.size(); ++k) {
      a[k] = static_cast<double>(p.rows_a[r][free_dims[k]]);
      nn += a[k] * a[k];
    }
    double b = static_cast<double>(p.rows_b[r]);
    for (std::size_t j = 0; j < dim; ++j) {
      bool is_free = std::find(free_dims.begin(), free_dims.end(), j) != free_dims.end();
      if (!is_free) b -= static_cast<double>(p.rows_a[r][j]) * pinned[j];
    }
    if (nn == 0) {
      if (b < 0) {
        out.status = SampleStatus::Infeasible;
        return out;
      }
      continue;
    }
    pr.a.push_back(std::move(a));
    pr.b.push_back(b);
    pr.norm.push_back(std::sqrt(nn));
  }

  // Interior point of the projected polytope.
  std::vector<double> x(free_dims.size());
  for (std::size_t k = 0; k < free_dims.size(); ++k) {
    auto r = bound.count(p.vars[free_dims[k]]) ? bound[p.vars[free_dims[k]]]
                                               : std::array<std::int32_t, 2>{0, 255};
    x[k] = 0.5 * (r[0] + r[1]);
  }
  if (!find_interior(pr, x, span)) {
    out.status = SampleStatus::Degenerate;
    return out;
  }

  // Hit-and-run with a Dikin-radius step cap.
  const std::size_t d = free_dims.size();
  std::vector<double> dir(d);
  auto step = [&]() {
    double nn = 0;
    for (std::size_t k = 0; k < d; ++k) {
      dir[k] = rng.gauss();
      nn += dir[k] * dir[k];
    }
    if (nn == 0) return;
    double inv = 1.0 / std::sqrt(nn);
    for (auto& v : dir) v *= inv;

    double t_lo = -1e18, t_hi = 1e18;
    double dikin_sum = 0;
    for (std::size_t r = 0; r < pr.a.size(); ++r) {
      double denom = dot(pr.a[r], dir);
      double slack = pr.b[r] - dot(pr.a[r], x);
      if (slack < 0) slack = 0;
      if (std::abs(denom) < 1e-14) continue;
      double tr = slack / denom;
      if (denom > 0)
        t_hi = std::min(t_hi, tr);
      else
        t_lo = std::max(t_lo, tr);
      if (slack > 1e-14) dikin_sum += (denom / slack) * (denom / slack);
    }
    if (dikin_sum > 0) {
      double cap = kDikinCap / std::sqrt(dikin_sum);
      t_lo = std::max(t_lo, -cap);
      t_hi = std::min(t_hi, cap);
    }
    if (!(t_hi > t_lo)) return;
    double u = 1e-9 + (1.0 - 2e-9) * rng.unit();
    double t = t_lo + u * (t_hi - t_lo);
    // Shrink slightly toward the current point so the walk stays strictly
    // feasible under floating-point rounding.
    t *= 1.0 - 1e-12;
    for (std::size_t k = 0; k < d; ++k) x[k] += t * dir[k];
  };

  for (std::size_t i = 0; i < 10 * d; ++i) step();

  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < d; ++i) step();

    std::vector<double> raw(dim);
    std::vector<std::uint8_t> rounded(dim);
    for (std::size_t j = 0; j < dim; ++j) raw[j] = pinned[j];
    for (std::size_t k = 0; k < d; ++k) raw[free_dims[k]] = x[k];
    for (std::size_t j = 0; j < dim; ++j) {
      double v = std::nearbyint(raw[j]);
      v = std::clamp(v, 0.0, 255.0);
      rounded[j] = static_cast<std::uint8_t>(v);
    }
    out.raw.push_back(raw);
    if (seen.insert(rounded).second) {
      std::map<ByteIndex, std::uint8_t> point;
      for (std::size_t j = 0; j < dim; ++j) point[p.vars[j]] = rounded[j];
      out.points.push_back(std::move(point));
    }
  }
  out.status = SampleStatus::Ok;
  return out;
}

SampleResult sample_box(const Box& b, std::size_t n, Rng& rng) {
  SampleResult out;
  if (b.infeasible) {
    out.status = SampleStatus::Infeasible;
    return out;
  }
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::uint8_t> draw(b.vars.size());
    for (std::size_t j = 0; j < b.vars.size(); ++j)
      draw[j] = static_cast<std::uint8_t>(
          rng.range(static_cast<std::uint64_t>(b.range[j][0]),
                    static_cast<std::uint64_t>(b.range[j][1])));
    if (seen.insert(draw).second) {
      std::map<ByteIndex, std::uint8_t> point;
      for (std::size_t j = 0; j < b.vars.size(); ++j) point[b.vars[j]] = draw[j];
      out.points.push_back(std::move(point));
    }
  }
  out.status = SampleStatus::Ok;
  return out;
}

}  // namespace trifuzz
