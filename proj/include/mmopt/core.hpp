#pragma once

// Core domain types shared by the optimizers, the benchmark suite and the
// experiment harness: positions, box bounds, the seeded RNG stream used for
// reproducible runs, and the "better and nearest" neighbor scan.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmopt {

using Position = std::vector<double>;

// Error kinds surfaced by configuration and file ingestion. Kept distinct so
// callers (and tests) can tell a malformed file from a mismatched dimension.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : ConfigError {
  using ConfigError::ConfigError;
};
struct ParseError : ConfigError {
  using ConfigError::ConfigError;
};
struct OrthogonalityError : ConfigError {
  using ConfigError::ConfigError;
};

// Axis-aligned box constraints. Invariant: lower[k] < upper[k] for all k.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds uniform(int dimension, double lo, double hi) {
    if (dimension < 1) throw ConfigError("Bounds: dimension must be >= 1");
    if (!(lo < hi)) throw ConfigError("Bounds: lower must be < upper");
    Bounds b;
    b.lower.assign(static_cast<std::size_t>(dimension), lo);
    b.upper.assign(static_cast<std::size_t>(dimension), hi);
    return b;
  }

  int dimension() const { return static_cast<int>(lower.size()); }

  void validate() const {
    if (lower.size() != upper.size())
      throw DimensionError("Bounds: lower/upper size mismatch");
    if (lower.empty()) throw ConfigError("Bounds: empty");
    for (std::size_t k = 0; k < lower.size(); ++k)
      if (!(lower[k] < upper[k]))
        throw ConfigError("Bounds: lower[" + std::to_string(k) +
                          "] must be < upper[" + std::to_string(k) + "]");
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] < lower[k] || x[k] > upper[k]) return false;
    return true;
  }

  // Length of the box diagonal; the FERPSO scaling factor's ||s||.
  double diagonal() const {
    double s = 0.0;
    for (std::size_t k = 0; k < lower.size(); ++k) {
      const double w = upper[k] - lower[k];
      s += w * w;
    }
    return std::sqrt(s);
  }
};

inline void clamp_in_place(std::span<double> x, const Bounds& b) {
  if (x.size() != b.lower.size())
    throw DimensionError("clamp: dimension mismatch");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < b.lower[k])
      x[k] = b.lower[k];
    else if (x[k] > b.upper[k])
      x[k] = b.upper[k];
  }
}

inline Position clamp_to_bounds(Position p, const Bounds& b) {
  clamp_in_place(p, b);
  return p;
}

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  if (a.size() != b.size())
    throw DimensionError("distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

inline double euclidean_distance(std::span<const double> a,
                                 std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

// A candidate solution. fitness caches the objective at position
// (minimization); counter is the number of consecutive non-improving
// iterations since the last improvement or reinitialization.
struct Whale {
  Position position;
  double fitness = std::numeric_limits<double>::infinity();
  long long counter = 0;
};

// Deterministic stream of random draws. Identical seeds produce identical
// sequences; uniform(a, b) lies in [a, b). The unit draw is derived from the
// top 53 engine bits so sequences do not depend on the standard library's
// distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double unit() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // Box-Muller on our own unit draws, for cross-platform reproducibility.
    double u = unit();
    while (u <= 0.0) u = unit();
    const double v = unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double two_pi_v = 2.0 * 3.14159265358979323846 * v;
    spare_ = r * std::sin(two_pi_v);
    has_spare_ = true;
    return r * std::cos(two_pi_v);
  }

  Position uniform_point(const Bounds& b) {
    Position p(b.lower.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      p[k] = uniform(b.lower[k], b.upper[k]);
    return p;
  }

  void uniform_point_into(std::span<double> p, const Bounds& b) {
    if (p.size() != b.lower.size())
      throw DimensionError("uniform_point: dimension mismatch");
    for (std::size_t k = 0; k < p.size(); ++k)
      p[k] = uniform(b.lower[k], b.upper[k]);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Index of the whale with strictly better fitness that is nearest to whale i,
// or nullopt when no strictly better whale exists. Distance ties break to the
// lowest index so runs are reproducible.
inline std::optional<std::size_t> find_better_nearest(
    std::span<const Whale> swarm, std::size_t i) {
  if (swarm.empty()) throw ConfigError("find_better_nearest: empty swarm");
  if (i >= swarm.size())
    throw ConfigError("find_better_nearest: index out of range");
  const double fi = swarm[i].fitness;
  std::optional<std::size_t> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < swarm.size(); ++j) {
    if (j == i || !(swarm[j].fitness < fi)) continue;
    const double d2 = squared_distance(swarm[i].position, swarm[j].position);
    if (d2 < best_d2) {  // strict: ties keep the earlier index
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

}  // namespace mmopt
