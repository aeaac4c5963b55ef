#pragma once

// Benchmark objective functions. The expanded bases (traps, equal/uneven
// minima, Himmelblau, six-hump camel, Vincent) are summed over consecutive
// non-overlapping coordinate blocks after an affine map from the search range
// onto each base's native domain; the classical high-dimensional functions
// (Griewank, Ackley, Rosenbrock, Rastrigin, expanded Scaffer F6) evaluate the
// whole vector at once. Every base is oriented for minimization and
// normalized so its global optima evaluate to exactly 0.

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mmopt/core.hpp"

namespace mmopt {

enum class BaseId {
  two_peak_trap,
  five_uneven_peak_trap,
  equal_minima,
  decreasing_minima,
  uneven_minima,
  himmelblau,
  six_hump_camel,
  vincent,
  griewank,
  ackley,
  rosenbrock,
  rastrigin,
  scaffer_f6,
};

inline constexpr double kPi = 3.14159265358979323846;

namespace bases {

// --- expanded bases, per-block forms (minimization, min value 0) ---

inline double two_peak_trap(double x) {  // native [0, 20]
  const double f = x < 15.0 ? 160.0 / 15.0 * (15.0 - x) : 200.0 / 5.0 * (x - 15.0);
  return 200.0 - f;
}

inline double five_uneven_peak_trap(double x) {  // native [0, 30]
  double f;
  if (x < 2.5)
    f = 80.0 * (2.5 - x);
  else if (x < 5.0)
    f = 64.0 * (x - 2.5);
  else if (x < 7.5)
    f = 64.0 * (7.5 - x);
  else if (x < 12.5)
    f = 28.0 * (x - 7.5);
  else if (x < 17.5)
    f = 28.0 * (17.5 - x);
  else if (x < 22.5)
    f = 32.0 * (x - 17.5);
  else if (x < 27.5)
    f = 32.0 * (27.5 - x);
  else
    f = 80.0 * (x - 27.5);
  return 200.0 - f;
}

inline double equal_minima(double x) {  // native [0, 1]
  const double s = std::sin(5.0 * kPi * x);
  const double s2 = s * s;
  return 1.0 - s2 * s2 * s2;
}

inline double decreasing_minima(double x) {  // native [0, 1]
  const double t = (x - 0.1) / 0.8;
  const double env = std::exp(-2.0 * std::log(2.0) * t * t);
  const double s = std::sin(5.0 * kPi * x);
  const double s2 = s * s;
  return 1.0 - env * s2 * s2 * s2;
}

inline double uneven_minima(double x) {  // native [0, 1]
  const double s = std::sin(5.0 * kPi * (std::pow(x, 0.75) - 0.05));
  const double s2 = s * s;
  return 1.0 - s2 * s2 * s2;
}

inline double himmelblau(double x, double y) {  // native [-6, 6]^2
  const double a = x * x + y - 11.0;
  const double b = x + y * y - 7.0;
  return a * a + b * b;
}

// Global minimum of the raw six-hump camel function, subtracted so the
// normalized block bottoms out at 0.
inline constexpr double kCamelMin = -1.03162845348987735;

inline double six_hump_camel(double x, double y) {  // native [-1.9,1.9]x[-1.1,1.1]
  const double x2 = x * x;
  const double y2 = y * y;
  const double f =
      (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x * y + (-4.0 + 4.0 * y2) * y2;
  return f - kCamelMin;
}

inline double vincent(double x) {  // native [0.25, 10]
  return 1.0 - std::sin(10.0 * std::log(x));
}

// --- classical high-dimensional functions, whole-vector forms ---

inline double griewank(std::span<const double> z) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum += z[i] * z[i];
    prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum / 4000.0 - prod + 1.0;
}

inline double ackley(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  double sq = 0.0, cs = 0.0;
  for (const double v : z) {
    sq += v * v;
    cs += std::cos(2.0 * kPi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
         std::exp(1.0);
}

inline double rosenbrock(std::span<const double> z) {
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i + 1] - z[i] * z[i];
    const double b = 1.0 - z[i];
    f += 100.0 * a * a + b * b;
  }
  return f;
}

inline double rastrigin(std::span<const double> z) {
  double f = 0.0;
  for (const double v : z)
    f += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
  return f;
}

inline double scaffer_f6(std::span<const double> z) {  // cyclic pair sum
  auto g = [](double x, double y) {
    const double r2 = x * x + y * y;
    const double s = std::sin(std::sqrt(r2));
    const double d = 1.0 + 0.001 * r2;
    return 0.5 + (s * s - 0.5) / (d * d);
  };
  double f = 0.0;
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i) f += g(z[i], z[(i + 1) % n]);
  return f;
}

}  // namespace bases

struct BaseTraits {
  BaseId id;
  std::string_view name;
  int arity;  // block size; 0 means the whole vector forms one block
  std::array<double, 2> native_lo;  // per block coordinate (arity <= 2)
  std::array<double, 2> native_hi;
  int block_optima_count;  // global optima per block (1 for classical bases)
};

inline const BaseTraits& base_traits(BaseId id) {
  static const std::array<BaseTraits, 13> table = {{
      {BaseId::two_peak_trap, "two_peak_trap", 1, {0.0, 0.0}, {20.0, 0.0}, 1},
      {BaseId::five_uneven_peak_trap, "five_uneven_peak_trap", 1, {0.0, 0.0}, {30.0, 0.0}, 2},
      {BaseId::equal_minima, "equal_minima", 1, {0.0, 0.0}, {1.0, 0.0}, 5},
      {BaseId::decreasing_minima, "decreasing_minima", 1, {0.0, 0.0}, {1.0, 0.0}, 1},
      {BaseId::uneven_minima, "uneven_minima", 1, {0.0, 0.0}, {1.0, 0.0}, 5},
      {BaseId::himmelblau, "himmelblau", 2, {-6.0, -6.0}, {6.0, 6.0}, 4},
      {BaseId::six_hump_camel, "six_hump_camel", 2, {-1.9, -1.1}, {1.9, 1.1}, 2},
      {BaseId::vincent, "vincent", 1, {0.25, 0.0}, {10.0, 0.0}, 6},
      {BaseId::griewank, "griewank", 0, {}, {}, 1},
      {BaseId::ackley, "ackley", 0, {}, {}, 1},
      {BaseId::rosenbrock, "rosenbrock", 0, {}, {}, 1},
      {BaseId::rastrigin, "rastrigin", 0, {}, {}, 1},
      {BaseId::scaffer_f6, "scaffer_f6", 0, {}, {}, 1},
  }};
  return table[static_cast<std::size_t>(id)];
}

inline std::string_view base_name(BaseId id) { return base_traits(id).name; }

inline BaseId base_from_name(std::string_view name) {
  for (int i = 0; i < 13; ++i) {
    const auto id = static_cast<BaseId>(i);
    if (base_traits(id).name == name) return id;
  }
  throw ConfigError("unknown base function: " + std::string(name));
}

// Per-block global minimizers in native coordinates. High-precision
// constants; each evaluates to 0 within 1e-12 under the per-block forms.
inline std::vector<Position> block_optima_native(BaseId id) {
  switch (id) {
    case BaseId::two_peak_trap:
      return {{20.0}};
    case BaseId::five_uneven_peak_trap:
      return {{0.0}, {30.0}};
    case BaseId::equal_minima:
      return {{0.1}, {0.3}, {0.5}, {0.7}, {0.9}};
    case BaseId::decreasing_minima:
      return {{0.1}};
    case BaseId::uneven_minima:
      return {{0.07969939268869583},
              {0.246655455622271217},
              {0.450626698830355201},
              {0.681420222312052372},
              {0.933895193866980576}};
    case BaseId::himmelblau:
      return {{3.0, 2.0},
              {-2.80511808695274485, 3.13131251825057297},
              {-3.77931025337774689, -3.28318599128616941},
              {3.58442834033049174, -1.84812652696440355}};
    case BaseId::six_hump_camel:
      return {{0.0898420131003180624, -0.712656403020739633},
              {-0.0898420131003180624, 0.712656403020739633}};
    case BaseId::vincent:
      return {{0.333018435471964858},
              {0.624228433648569708},
              {1.17008878749642195},
              {2.19328005073801546},
              {4.11120714288535284},
              {7.70627725630577559}};
    default:
      return {};  // classical bases: single whole-vector optimum, see below
  }
}

// Whole-vector native optimum for the classical bases.
inline Position classical_optimum_native(BaseId id, int n) {
  if (id == BaseId::rosenbrock) return Position(static_cast<std::size_t>(n), 1.0);
  return Position(static_cast<std::size_t>(n), 0.0);
}

inline double eval_block(BaseId id, const double* v) {
  switch (id) {
    case BaseId::two_peak_trap:
      return bases::two_peak_trap(v[0]);
    case BaseId::five_uneven_peak_trap:
      return bases::five_uneven_peak_trap(v[0]);
    case BaseId::equal_minima:
      return bases::equal_minima(v[0]);
    case BaseId::decreasing_minima:
      return bases::decreasing_minima(v[0]);
    case BaseId::uneven_minima:
      return bases::uneven_minima(v[0]);
    case BaseId::himmelblau:
      return bases::himmelblau(v[0], v[1]);
    case BaseId::six_hump_camel:
      return bases::six_hump_camel(v[0], v[1]);
    case BaseId::vincent:
      return bases::vincent(v[0]);
    default:
      throw ConfigError("eval_block: not a blockwise base");
  }
}

inline double eval_whole(BaseId id, std::span<const double> z) {
  switch (id) {
    case BaseId::griewank:
      return bases::griewank(z);
    case BaseId::ackley:
      return bases::ackley(z);
    case BaseId::rosenbrock:
      return bases::rosenbrock(z);
    case BaseId::rastrigin:
      return bases::rastrigin(z);
    case BaseId::scaffer_f6:
      return bases::scaffer_f6(z);
    default:
      throw ConfigError("eval_whole: not a whole-vector base");
  }
}

// Known-global-optima registry for one problem instance.
struct OptimaRegistry {
  std::uint64_t count = 0;
  bool count_exact = true;  // false when count^(blocks) overflows uint64
  double minimum_value = 0.0;
  // Optima in search-space coordinates; empty when count exceeds the
  // enumeration cap (the per-block decoder in metrics covers that case).
  std::vector<Position> representatives;
  std::vector<Position> block_optima;  // native per-block minimizers
};

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t base, int exp, bool& exact) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      exact = false;
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= base;
  }
  return r;
}

}  // namespace detail

// Per-block optima count raised to the number of blocks: the Table-style
// global-optima count for an expanded function of the given dimension.
inline OptimaRegistry registry_lookup(BaseId base, int dimension) {
  const BaseTraits& t = base_traits(base);
  const int arity = t.arity == 0 ? dimension : t.arity;
  if (dimension < 1 || dimension % arity != 0)
    throw ConfigError("registry_lookup: dimension " + std::to_string(dimension) +
                      " is not a multiple of base arity " + std::to_string(arity));
  if ((base == BaseId::rosenbrock || base == BaseId::scaffer_f6) && dimension < 2)
    throw ConfigError("registry_lookup: base requires dimension >= 2");
  OptimaRegistry reg;
  reg.minimum_value = 0.0;
  reg.count = detail::saturating_pow(
      static_cast<std::uint64_t>(t.block_optima_count), dimension / arity,
      reg.count_exact);
  reg.block_optima = t.arity == 0 ? std::vector<Position>{classical_optimum_native(base, dimension)}
                                  : block_optima_native(base);
  return reg;
}

// --- rotation matrices and transform files ---

inline double orthogonality_error(const std::vector<double>& r, int n) {
  if (r.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw DimensionError("orthogonality_error: matrix size mismatch");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += r[k * n + i] * r[k * n + j];
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(dot - target));
    }
  }
  return worst;
}

// Deterministic orthogonal matrix from a seed (row-major). Seed 0 is
// reserved for the identity. Rows come from Gram-Schmidt over seeded
// Gaussian draws, orthonormalized twice for stability.
inline std::vector<double> make_rotation(std::uint64_t seed, int n) {
  if (n < 1) throw ConfigError("make_rotation: dimension must be >= 1");
  std::vector<double> r(static_cast<std::size_t>(n) * n, 0.0);
  if (seed == 0) {
    for (int i = 0; i < n; ++i) r[i * n + i] = 1.0;
    return r;
  }
  RngStream rng(seed);
  for (auto& v : r) v = rng.gaussian();
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      double* row = &r[static_cast<std::size_t>(i) * n];
      for (int j = 0; j < i; ++j) {
        const double* prev = &r[static_cast<std::size_t>(j) * n];
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += row[k] * prev[k];
        for (int k = 0; k < n; ++k) row[k] -= dot * prev[k];
      }
      double norm = 0.0;
      for (int k = 0; k < n; ++k) norm += row[k] * row[k];
      norm = std::sqrt(norm);
      while (norm < 1e-12) {  // degenerate draw; redraw the row
        for (int k = 0; k < n; ++k) row[k] = rng.gaussian();
        for (int j = 0; j < i; ++j) {
          const double* prev = &r[static_cast<std::size_t>(j) * n];
          double dot = 0.0;
          for (int k = 0; k < n; ++k) dot += row[k] * prev[k];
          for (int k = 0; k < n; ++k) row[k] -= dot * prev[k];
        }
        norm = 0.0;
        for (int k = 0; k < n; ++k) norm += row[k] * row[k];
        norm = std::sqrt(norm);
      }
      for (int k = 0; k < n; ++k) row[k] /= norm;
    }
  }
  if (orthogonality_error(r, n) >= 1e-10)
    throw OrthogonalityError("make_rotation: orthonormalization failed");
  return r;
}

namespace detail {

inline std::vector<double> parse_reals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("invalid real '" + tok + "' in " + path);
    }
    if (used != tok.size())
      throw ParseError("invalid real '" + tok + "' in " + path);
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("no values in " + path);
  return out;
}

}  // namespace detail

inline Position load_shift_file(const std::string& path, int n) {
  auto vals = detail::parse_reals(path);
  if (vals.size() != static_cast<std::size_t>(n))
    throw DimensionError("shift file " + path + ": expected " +
                         std::to_string(n) + " values, got " +
                         std::to_string(vals.size()));
  return vals;
}

// Row-major n x n matrix; orthogonality gate at 1e-6 (external data).
inline std::vector<double> load_rotation_file(const std::string& path, int n) {
  auto vals = detail::parse_reals(path);
  if (vals.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw DimensionError("rotation file " + path + ": expected " +
                         std::to_string(n * n) + " values, got " +
                         std::to_string(vals.size()));
  const double err = orthogonality_error(vals, n);
  if (err > 1e-6)
    throw OrthogonalityError("rotation file " + path +
                             ": not orthogonal (max deviation " +
                             std::to_string(err) + ")");
  return vals;
}

inline std::pair<Position, std::vector<double>> load_transform_files(
    const std::string& shift_path, const std::string& rotation_path, int n) {
  return {load_shift_file(shift_path, n), load_rotation_file(rotation_path, n)};
}

// --- the problem instance ---

struct ProblemOptions {
  Bounds bounds;                  // default [-100, 100]^n when empty
  Position shift;                 // default zero when empty
  std::vector<double> rotation;   // row-major; identity when empty
  double epsilon_f = 1e-8;
  std::uint64_t representative_cap = 200000;
};

class Problem {
 public:
  Problem(BaseId base, int dimension, ProblemOptions opts)
      : base_(base), n_(dimension) {
    const BaseTraits& t = base_traits(base);
    arity_ = t.arity == 0 ? n_ : t.arity;
    if (n_ < 1 || n_ % arity_ != 0)
      throw ConfigError("Problem: dimension " + std::to_string(n_) +
                        " is not a multiple of base arity " +
                        std::to_string(arity_));
    if ((base == BaseId::rosenbrock || base == BaseId::scaffer_f6) && n_ < 2)
      throw ConfigError("Problem: base requires dimension >= 2");
    bounds_ = opts.bounds.lower.empty() ? Bounds::uniform(n_, -100.0, 100.0)
                                        : std::move(opts.bounds);
    bounds_.validate();
    if (bounds_.dimension() != n_)
      throw DimensionError("Problem: bounds dimension mismatch");
    shift_ = opts.shift.empty() ? Position(static_cast<std::size_t>(n_), 0.0)
                                : std::move(opts.shift);
    if (shift_.size() != static_cast<std::size_t>(n_))
      throw DimensionError("Problem: shift dimension mismatch");
    has_shift_ = false;
    for (const double s : shift_)
      if (s != 0.0) has_shift_ = true;
    rotation_ = std::move(opts.rotation);
    if (!rotation_.empty()) {
      if (rotation_.size() != static_cast<std::size_t>(n_) * n_)
        throw DimensionError("Problem: rotation size mismatch");
      if (orthogonality_error(rotation_, n_) > 1e-6)
        throw OrthogonalityError("Problem: rotation matrix is not orthogonal");
    }
    if (!(opts.epsilon_f > 0.0))
      throw ConfigError("Problem: epsilon_f must be positive");
    epsilon_f_ = opts.epsilon_f;

    // Per-coordinate affine map from the search range onto the native block
    // domain: v_k = off_k + scale_k * z_k. Identity for classical bases.
    map_scale_.assign(static_cast<std::size_t>(n_), 1.0);
    map_offset_.assign(static_cast<std::size_t>(n_), 0.0);
    native_lo_.assign(static_cast<std::size_t>(n_), 0.0);
    native_hi_.assign(static_cast<std::size_t>(n_), 0.0);
    const bool classical = t.arity == 0;
    for (int k = 0; k < n_; ++k) {
      const double lo = bounds_.lower[static_cast<std::size_t>(k)];
      const double hi = bounds_.upper[static_cast<std::size_t>(k)];
      const double nlo = classical ? lo : t.native_lo[static_cast<std::size_t>(k % arity_)];
      const double nhi = classical ? hi : t.native_hi[static_cast<std::size_t>(k % arity_)];
      map_scale_[static_cast<std::size_t>(k)] = (nhi - nlo) / (hi - lo);
      map_offset_[static_cast<std::size_t>(k)] = nlo - map_scale_[static_cast<std::size_t>(k)] * lo;
      native_lo_[static_cast<std::size_t>(k)] = nlo;
      native_hi_[static_cast<std::size_t>(k)] = nhi;
    }
    build_registry(opts.representative_cap);
  }

  Problem(BaseId base, int dimension) : Problem(base, dimension, ProblemOptions{}) {}

  BaseId base() const { return base_; }
  int dimension() const { return n_; }
  int arity() const { return arity_; }
  int blocks() const { return n_ / arity_; }
  const Bounds& bounds() const { return bounds_; }
  double epsilon_f() const { return epsilon_f_; }
  const Position& shift() const { return shift_; }
  const std::vector<double>& rotation() const { return rotation_; }
  bool identity_rotation() const { return rotation_.empty(); }
  const OptimaRegistry& registry() const { return registry_; }

  // Block-optima positions mapped into search coordinates, one list per
  // coordinate: block_rep_u()[k][j] is the k-th coordinate of the j-th
  // per-block optimum embedded at coordinate k. Used by the optima decoder.
  const std::vector<std::vector<double>>& block_rep_u() const {
    return block_rep_u_;
  }

  // z = R * (x - shift): the frame the domain map applies in.
  void to_base_frame(std::span<const double> x, std::vector<double>& z) const {
    if (x.size() != static_cast<std::size_t>(n_))
      throw DimensionError("to_base_frame: dimension mismatch");
    z.resize(static_cast<std::size_t>(n_));
    if (rotation_.empty()) {
      for (int k = 0; k < n_; ++k)
        z[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] - shift_[static_cast<std::size_t>(k)];
      return;
    }
    thread_local std::vector<double> tmp;
    tmp.resize(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k)
      tmp[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] - shift_[static_cast<std::size_t>(k)];
    for (int i = 0; i < n_; ++i) {
      const double* row = &rotation_[static_cast<std::size_t>(i) * n_];
      double acc = 0.0;
      for (int k = 0; k < n_; ++k) acc += row[k] * tmp[static_cast<std::size_t>(k)];
      z[static_cast<std::size_t>(i)] = acc;
    }
  }

  double evaluate(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n_))
      throw DimensionError("evaluate: dimension mismatch");
    const double* z = x.data();
    thread_local std::vector<double> zbuf;
    if (has_shift_ || !rotation_.empty()) {
      to_base_frame(x, zbuf);
      z = zbuf.data();
    }
    const BaseTraits& t = base_traits(base_);
    if (t.arity == 0)
      return eval_whole(base_, std::span<const double>(z, static_cast<std::size_t>(n_)));
    double total = 0.0;
    double v[2];
    for (int k = 0; k < n_; k += arity_) {
      for (int c = 0; c < arity_; ++c) {
        const std::size_t kc = static_cast<std::size_t>(k + c);
        double m = map_offset_[kc] + map_scale_[kc] * z[kc];
        // Projection onto the native block domain keeps every base finite
        // (e.g. Vincent's log) when rotation pushes z outside the range.
        if (m < native_lo_[kc]) m = native_lo_[kc];
        if (m > native_hi_[kc]) m = native_hi_[kc];
        v[c] = m;
      }
      total += eval_block(base_, v);
    }
    return total;
  }

  // Search-space position of the optimum with the given per-block pattern.
  Position decode_pattern(std::span<const int> pattern) const {
    if (pattern.size() != static_cast<std::size_t>(blocks()))
      throw DimensionError("decode_pattern: wrong block count");
    Position u(static_cast<std::size_t>(n_));
    for (int b = 0; b < blocks(); ++b) {
      const int j = pattern[static_cast<std::size_t>(b)];
      for (int c = 0; c < arity_; ++c) {
        const std::size_t k = static_cast<std::size_t>(b * arity_ + c);
        u[k] = block_rep_u_[k][static_cast<std::size_t>(j)];
      }
    }
    return from_base_frame(u);
  }

  // x = shift + R^T u.
  Position from_base_frame(std::span<const double> u) const {
    Position x(static_cast<std::size_t>(n_));
    if (rotation_.empty()) {
      for (int k = 0; k < n_; ++k)
        x[static_cast<std::size_t>(k)] = shift_[static_cast<std::size_t>(k)] + u[static_cast<std::size_t>(k)];
      return x;
    }
    for (int k = 0; k < n_; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n_; ++i)
        acc += rotation_[static_cast<std::size_t>(i) * n_ + k] * u[static_cast<std::size_t>(i)];
      x[static_cast<std::size_t>(k)] = shift_[static_cast<std::size_t>(k)] + acc;
    }
    return x;
  }

 private:
  void build_registry(std::uint64_t cap) {
    registry_ = registry_lookup(base_, n_);
    // Block optima embedded in search coordinates, per coordinate.
    const auto& block_opts = registry_.block_optima;
    const int m = static_cast<int>(block_opts.size());
    block_rep_u_.assign(static_cast<std::size_t>(n_), {});
    for (int k = 0; k < n_; ++k) {
      auto& lst = block_rep_u_[static_cast<std::size_t>(k)];
      lst.resize(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) {
        const double native =
            base_traits(base_).arity == 0
                ? block_opts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]
                : block_opts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k % arity_)];
        lst[static_cast<std::size_t>(j)] =
            (native - map_offset_[static_cast<std::size_t>(k)]) / map_scale_[static_cast<std::size_t>(k)];
      }
    }
    if (!registry_.count_exact || registry_.count > cap) return;
    // Enumerate the full optima grid (mixed-radix over block patterns).
    const int nblocks = blocks();
    std::vector<int> pattern(static_cast<std::size_t>(nblocks), 0);
    registry_.representatives.reserve(static_cast<std::size_t>(registry_.count));
    for (;;) {
      registry_.representatives.push_back(decode_pattern(pattern));
      int b = nblocks - 1;
      while (b >= 0 && ++pattern[static_cast<std::size_t>(b)] == m) {
        pattern[static_cast<std::size_t>(b)] = 0;
        --b;
      }
      if (b < 0) break;
    }
  }

  BaseId base_;
  int n_;
  int arity_;
  Bounds bounds_;
  Position shift_;
  bool has_shift_ = false;
  std::vector<double> rotation_;
  double epsilon_f_ = 1e-8;
  std::vector<double> map_scale_, map_offset_, native_lo_, native_hi_;
  OptimaRegistry registry_;
  std::vector<std::vector<double>> block_rep_u_;
};

inline Problem make_problem(BaseId base, int dimension, ProblemOptions opts = {}) {
  return Problem(base, dimension, std::move(opts));
}

}  // namespace mmopt
