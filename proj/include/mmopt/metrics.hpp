#pragma once

// Counting archived solutions against the known-optima registry, the
// success-rate / ANOF / quality metrics, and the two-sample Z-test used to
// compare algorithms. Standard deviations use divisor N throughout.

#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "mmopt/algorithms.hpp"
#include "mmopt/core.hpp"
#include "mmopt/functions.hpp"

namespace mmopt {

// Smallest distance between two optima of the expanded grid, measured in
// search coordinates. Equals the smallest per-block gap because squared
// distance decomposes over blocks. +inf when the problem has one optimum.
inline double min_optima_gap(const Problem& problem) {
  const auto& reps = problem.block_rep_u();
  const int arity = problem.arity();
  const int m = reps.empty() ? 0 : static_cast<int>(reps[0].size());
  if (m < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (int b = 0; b < problem.blocks(); ++b) {
    for (int j1 = 0; j1 < m; ++j1) {
      for (int j2 = j1 + 1; j2 < m; ++j2) {
        double d2 = 0.0;
        for (int c = 0; c < arity; ++c) {
          const auto& lst = reps[static_cast<std::size_t>(b * arity + c)];
          const double d = lst[static_cast<std::size_t>(j1)] - lst[static_cast<std::size_t>(j2)];
          d2 += d * d;
        }
        best = std::min(best, d2);
      }
    }
  }
  return std::sqrt(best);
}

// Niche radius policy: 1% of the narrowest coordinate width, shrunk when
// needed so that distinct optima are separated by more than two radii.
inline double default_niche_radius(const Problem& problem) {
  const Bounds& b = problem.bounds();
  double width = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < b.lower.size(); ++k)
    width = std::min(width, b.upper[k] - b.lower[k]);
  double r = 0.01 * width;
  const double gap = min_optima_gap(problem);
  if (std::isfinite(gap) && 2.0 * r >= gap) r = 0.499 * gap;
  return r;
}

// A known optimum counts as found when at least one archived solution lies
// within the niche radius of it and has fitness within epsilon_f of the
// known minimum. Each archived solution claims only its nearest optimum.
inline int count_matched_optima(const std::vector<ArchiveEntry>& archive,
                                const std::vector<Position>& optima,
                                double minimum_value, double epsilon_f,
                                double niche_radius) {
  if (optima.empty()) throw ConfigError("count_matched_optima: empty registry");
  const double r2 = niche_radius * niche_radius;
  std::vector<char> found(optima.size(), 0);
  for (const auto& e : archive) {
    if (std::abs(e.fitness - minimum_value) > epsilon_f) continue;
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < optima.size(); ++j) {
      const double d2 = squared_distance(e.position, optima[j]);
      if (d2 < best) {
        best = d2;
        nearest = j;
      }
    }
    if (best <= r2) found[nearest] = 1;
  }
  int count = 0;
  for (const char f : found) count += f;
  return count;
}

// Registry-aware counting. Uses the enumerated representatives when present;
// otherwise decodes each solution to its per-block nearest optimum pattern
// (distances are preserved because the rotation is orthogonal).
inline int count_matched_optima(const std::vector<ArchiveEntry>& archive,
                                const Problem& problem, double epsilon_f = 0.0,
                                double niche_radius = 0.0) {
  const double eps = epsilon_f > 0.0 ? epsilon_f : problem.epsilon_f();
  const double r = niche_radius > 0.0 ? niche_radius : default_niche_radius(problem);
  const OptimaRegistry& reg = problem.registry();
  if (!reg.representatives.empty())
    return count_matched_optima(archive, reg.representatives,
                                reg.minimum_value, eps, r);
  if (reg.block_optima.empty())
    throw ConfigError(
        "count_matched_optima: registry has neither representatives nor a "
        "per-block decoder");
  const int arity = problem.arity();
  const int blocks = problem.blocks();
  const auto& reps = problem.block_rep_u();
  const int m = static_cast<int>(reps[0].size());
  const double r2 = r * r;
  std::set<std::vector<int>> found;
  std::vector<double> z;
  std::vector<int> pattern(static_cast<std::size_t>(blocks), 0);
  for (const auto& e : archive) {
    if (std::abs(e.fitness - reg.minimum_value) > eps) continue;
    problem.to_base_frame(e.position, z);
    double total_d2 = 0.0;
    for (int b = 0; b < blocks; ++b) {
      int best_j = 0;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j) {
        double d2 = 0.0;
        for (int c = 0; c < arity; ++c) {
          const std::size_t k = static_cast<std::size_t>(b * arity + c);
          const double d = z[k] - reps[k][static_cast<std::size_t>(j)];
          d2 += d * d;
        }
        if (d2 < best_d2) {
          best_d2 = d2;
          best_j = j;
        }
      }
      pattern[static_cast<std::size_t>(b)] = best_j;
      total_d2 += best_d2;
    }
    if (total_d2 <= r2) found.insert(pattern);
  }
  return static_cast<int>(found.size());
}

// --- batch statistics ---

inline void require_matched(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ConfigError("metrics: no run records");
  for (const auto& r : records)
    if (r.matched_optima < 0)
      throw ConfigError("metrics: record without matched-optima count");
}

// Fraction of runs that located every known optimum.
inline double success_rate(const std::vector<RunRecord>& records,
                           std::uint64_t registry_count) {
  require_matched(records);
  std::size_t full = 0;
  for (const auto& r : records)
    if (static_cast<std::uint64_t>(r.matched_optima) == registry_count) ++full;
  return static_cast<double>(full) / static_cast<double>(records.size());
}

inline std::pair<double, double> mean_and_population_sd(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (const double x : xs) var += (x - mean) * (x - mean);
  var /= n;
  return {mean, std::sqrt(var)};
}

// Average number of optima found: mean and divisor-N standard deviation.
inline std::pair<double, double> anof(const std::vector<RunRecord>& records) {
  require_matched(records);
  std::vector<double> xs;
  xs.reserve(records.size());
  for (const auto& r : records) xs.push_back(static_cast<double>(r.matched_optima));
  return mean_and_population_sd(xs);
}

// Mean/sd of archived-optima fitness pooled across runs; nullopt when every
// archive is empty (no data is not the same as zero).
inline std::optional<std::pair<double, double>> quality_stats(
    const std::vector<RunRecord>& records) {
  if (records.empty()) throw ConfigError("metrics: no run records");
  std::vector<double> xs;
  for (const auto& r : records)
    for (const auto& e : r.archive) xs.push_back(e.fitness);
  if (xs.empty()) return std::nullopt;
  return mean_and_population_sd(xs);
}

// --- two-sample Z-test ---

enum class Direction { higher_better, lower_better };

struct ComparisonVerdict {
  char symbol = '=';  // '+': a better (significant), '-': a worse, '=': not significant
  double z_statistic = 0.0;
  double mean_a = 0.0, sd_a = 0.0;
  double mean_b = 0.0, sd_b = 0.0;
  std::size_t n_a = 0, n_b = 0;
  bool large_sample = true;  // both samples have >= 30 elements
};

inline constexpr double kZCritical005 = 1.959964;

inline ComparisonVerdict z_test(std::span<const double> a,
                                std::span<const double> b, Direction direction,
                                double critical = kZCritical005) {
  if (a.empty() || b.empty()) throw ConfigError("z_test: empty sample");
  ComparisonVerdict v;
  std::tie(v.mean_a, v.sd_a) = mean_and_population_sd(a);
  std::tie(v.mean_b, v.sd_b) = mean_and_population_sd(b);
  v.n_a = a.size();
  v.n_b = b.size();
  v.large_sample = a.size() >= 30 && b.size() >= 30;
  const double se =
      std::sqrt(v.sd_a * v.sd_a / static_cast<double>(a.size()) +
                v.sd_b * v.sd_b / static_cast<double>(b.size()));
  bool significant = false;
  if (se == 0.0) {
    // Degenerate samples: equal means tie, unequal means decide directly.
    if (v.mean_a == v.mean_b) {
      v.z_statistic = 0.0;
    } else {
      v.z_statistic = v.mean_a > v.mean_b
                          ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
      significant = true;
    }
  } else {
    v.z_statistic = (v.mean_a - v.mean_b) / se;
    significant = std::abs(v.z_statistic) > critical;
  }
  if (!significant) {
    v.symbol = '=';
    return v;
  }
  const bool a_better = direction == Direction::higher_better
                            ? v.mean_a > v.mean_b
                            : v.mean_a < v.mean_b;
  v.symbol = a_better ? '+' : '-';
  return v;
}

}  // namespace mmopt
