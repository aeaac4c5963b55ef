#pragma once

// Brute-force confirmation of the per-block optima registry: dense grid
// scans over each base's native domain, local refinement of every candidate
// basin, and a count of distinct minimizers reaching the registered minimum.
// This is the enumeration route that cross-checks the closed-form counts.

#include <algorithm>
#include <functional>
#include <vector>

#include "mmopt/core.hpp"
#include "mmopt/functions.hpp"

namespace mmopt {

struct BaseValidation {
  BaseId base{};
  int expected = 0;
  int found = 0;
  double worst_counted = 0.0;  // largest value among counted minima
  double value_tol = 1e-8;

  bool passed() const { return found == expected && worst_counted <= value_tol; }
};

namespace detail {

inline double golden_min_1d(const std::function<double(double)>& f, double lo,
                            double hi, double& xmin) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  double fx = f(x);
  // A bracket endpoint can be the true minimizer (boundary optima).
  for (const double cand : {lo, hi}) {
    const double fcand = f(cand);
    if (fcand < fx) {
      fx = fcand;
      x = cand;
    }
  }
  xmin = x;
  return fx;
}

// Nelder-Mead on a box-clamped 2-D objective.
inline double nelder_mead_2d(const std::function<double(double, double)>& f,
                             double x0, double y0, double scale, double lo_x,
                             double hi_x, double lo_y, double hi_y, double& xm,
                             double& ym) {
  auto eval = [&](double x, double y) {
    x = std::clamp(x, lo_x, hi_x);
    y = std::clamp(y, lo_y, hi_y);
    return f(x, y);
  };
  struct Vertex {
    double x, y, f;
  };
  std::array<Vertex, 3> s = {{{x0, y0, eval(x0, y0)},
                              {x0 + scale, y0, eval(x0 + scale, y0)},
                              {x0, y0 + scale, eval(x0, y0 + scale)}}};
  for (int it = 0; it < 400; ++it) {
    std::sort(s.begin(), s.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (std::abs(s[2].f - s[0].f) < 1e-16 &&
        std::abs(s[2].x - s[0].x) + std::abs(s[2].y - s[0].y) < 1e-14)
      break;
    const double cx = 0.5 * (s[0].x + s[1].x);
    const double cy = 0.5 * (s[0].y + s[1].y);
    Vertex r{cx + (cx - s[2].x), cy + (cy - s[2].y), 0.0};
    r.f = eval(r.x, r.y);
    if (r.f < s[0].f) {
      Vertex e{cx + 2.0 * (cx - s[2].x), cy + 2.0 * (cy - s[2].y), 0.0};
      e.f = eval(e.x, e.y);
      s[2] = e.f < r.f ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      Vertex c{cx + 0.5 * (s[2].x - cx), cy + 0.5 * (s[2].y - cy), 0.0};
      c.f = eval(c.x, c.y);
      if (c.f < s[2].f) {
        s[2] = c;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
          s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
          s[i].f = eval(s[i].x, s[i].y);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(),
            [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  xm = std::clamp(s[0].x, lo_x, hi_x);
  ym = std::clamp(s[0].y, lo_y, hi_y);
  return s[0].f;
}

}  // namespace detail

// Grid scan + refinement for a 1-D base block.
inline BaseValidation validate_block_1d(BaseId id, long long grid_points,
                                        double value_tol) {
  const BaseTraits& t = base_traits(id);
  BaseValidation res;
  res.base = id;
  res.expected = t.block_optima_count;
  res.value_tol = value_tol;
  auto f = [&](double x) { return eval_block(id, &x); };
  const double lo = t.native_lo[0], hi = t.native_hi[0];
  const long long n = grid_points;
  const double step = (hi - lo) / static_cast<double>(n);
  std::vector<double> minima_x, minima_f;
  double prev2 = f(lo), prev1 = f(lo + step);
  if (prev2 <= prev1) {  // left boundary candidate
    double x;
    const double v = detail::golden_min_1d(f, lo, lo + step, x);
    minima_x.push_back(x);
    minima_f.push_back(v);
  }
  for (long long i = 2; i <= n; ++i) {
    const double xi = lo + step * static_cast<double>(i);
    const double cur = f(xi);
    if (prev1 <= prev2 && prev1 <= cur) {
      double x;
      const double v =
          detail::golden_min_1d(f, xi - 2.0 * step, xi, x);
      minima_x.push_back(x);
      minima_f.push_back(v);
    }
    prev2 = prev1;
    prev1 = cur;
  }
  if (prev1 <= prev2) {  // right boundary candidate
    double x;
    const double v = detail::golden_min_1d(f, hi - step, hi, x);
    minima_x.push_back(x);
    minima_f.push_back(v);
  }
  // Merge refinements that landed in the same basin.
  std::vector<std::size_t> order(minima_x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return minima_x[a] < minima_x[b]; });
  const double merge_dist = 4.0 * step;
  double last_x = -std::numeric_limits<double>::infinity();
  res.found = 0;
  res.worst_counted = 0.0;
  for (const std::size_t i : order) {
    if (minima_f[i] > value_tol) continue;
    if (minima_x[i] - last_x <= merge_dist && res.found > 0) {
      last_x = minima_x[i];
      continue;
    }
    ++res.found;
    last_x = minima_x[i];
    res.worst_counted = std::max(res.worst_counted, minima_f[i]);
  }
  return res;
}

// Grid scan + Nelder-Mead refinement for a 2-D base block.
inline BaseValidation validate_block_2d(BaseId id, int grid_points,
                                        double value_tol) {
  const BaseTraits& t = base_traits(id);
  BaseValidation res;
  res.base = id;
  res.expected = t.block_optima_count;
  res.value_tol = value_tol;
  auto f = [&](double x, double y) {
    const double v[2] = {x, y};
    return eval_block(id, v);
  };
  const double lox = t.native_lo[0], hix = t.native_hi[0];
  const double loy = t.native_lo[1], hiy = t.native_hi[1];
  const int g = grid_points;
  const double sx = (hix - lox) / static_cast<double>(g - 1);
  const double sy = (hiy - loy) / static_cast<double>(g - 1);
  std::vector<double> grid(static_cast<std::size_t>(g) * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      grid[static_cast<std::size_t>(i) * g + j] =
          f(lox + sx * i, loy + sy * j);
  std::vector<std::array<double, 3>> minima;  // x, y, f
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const double v = grid[static_cast<std::size_t>(i) * g + j];
      if (v > value_tol * 1e6 && v > 1.0) continue;  // cheap prune far from 0
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= g || jj >= g) continue;
          if (grid[static_cast<std::size_t>(ii) * g + jj] < v) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;
      double xm, ym;
      const double fv = detail::nelder_mead_2d(f, lox + sx * i, loy + sy * j,
                                               std::max(sx, sy), lox, hix, loy,
                                               hiy, xm, ym);
      if (fv <= value_tol) minima.push_back({xm, ym, fv});
    }
  }
  // Distinctness by separation in the native box.
  const double dedup = 1e-3 * std::hypot(hix - lox, hiy - loy);
  std::vector<std::array<double, 3>> distinct;
  for (const auto& m : minima) {
    bool dup = false;
    for (const auto& d : distinct) {
      if (std::hypot(m[0] - d[0], m[1] - d[1]) < dedup) {
        dup = true;
        break;
      }
    }
    if (!dup) distinct.push_back(m);
  }
  res.found = static_cast<int>(distinct.size());
  res.worst_counted = 0.0;
  for (const auto& d : distinct)
    res.worst_counted = std::max(res.worst_counted, d[2]);
  return res;
}

inline BaseValidation validate_base_block(BaseId id, long long grid_1d = 1000000,
                                          int grid_2d = 2000,
                                          double value_tol = 1e-8) {
  const BaseTraits& t = base_traits(id);
  if (t.arity == 1) return validate_block_1d(id, grid_1d, value_tol);
  if (t.arity == 2) return validate_block_2d(id, grid_2d, value_tol);
  throw ConfigError("validate_base_block: only blockwise bases have a grid oracle");
}

// The eight expanded bases, in registry order.
inline std::vector<BaseValidation> validate_expanded_bases(
    long long grid_1d = 1000000, int grid_2d = 2000, double value_tol = 1e-8) {
  const BaseId ids[] = {
      BaseId::two_peak_trap, BaseId::five_uneven_peak_trap,
      BaseId::equal_minima,  BaseId::decreasing_minima,
      BaseId::uneven_minima, BaseId::himmelblau,
      BaseId::six_hump_camel, BaseId::vincent,
  };
  std::vector<BaseValidation> out;
  for (const BaseId id : ids)
    out.push_back(validate_base_block(id, grid_1d, grid_2d, value_tol));
  return out;
}

}  // namespace mmopt
