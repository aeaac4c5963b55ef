#pragma once

// The optimizers. WSA-IC is the main algorithm: whales move under their
// "better and nearest" guide with an elitist acceptance test, a per-whale
// iterative counter detects steady state, and stabilized whales are judged
// against the current-global-optima archive before being reinitialized.
// The original WSA, FERPSO and LIPS serve as comparison baselines; each run
// ends with a final sweep that judges the last generation into the archive.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string_view>
#include <variant>
#include <vector>

#include "mmopt/core.hpp"
#include "mmopt/functions.hpp"

namespace mmopt {

struct ArchiveEntry {
  Position position;
  double fitness = 0.0;
};

struct TracePoint {
  long long evaluations = 0;
  double f_gbest = 0.0;
};

struct RunRecord {
  std::uint64_t seed = 0;
  long long evaluations_used = 0;
  double best_fitness = std::numeric_limits<double>::infinity();
  std::vector<ArchiveEntry> archive;
  std::vector<TracePoint> trace;
  int matched_optima = -1;  // filled in by the metrics layer
};

// The current-global-optima set. Entries stay within fitness_threshold of
// f_gbest; an improvement beyond the threshold clears the set. Near-duplicate
// positions (within dedup_radius) are merged, keeping the better fitness.
class Archive {
 public:
  Archive(double fitness_threshold, double dedup_radius)
      : tf_(fitness_threshold), eps_x_(dedup_radius) {
    if (!(tf_ > 0.0)) throw ConfigError("Archive: fitness threshold must be positive");
    if (!(eps_x_ >= 0.0)) throw ConfigError("Archive: dedup radius must be non-negative");
  }

  void judge(std::span<const double> x, double f) {
    if (entries_.empty()) {
      entries_.push_back({Position(x.begin(), x.end()), f});
      f_gbest_ = f;
      return;
    }
    if (f < f_gbest_) {
      // Entries no longer within T_f of the new best are dropped; when the
      // improvement exceeds T_f this clears the whole set.
      std::erase_if(entries_,
                    [&](const ArchiveEntry& e) { return e.fitness - f > tf_; });
      f_gbest_ = f;
      insert_dedup(x, f);
    } else if (f - f_gbest_ <= tf_) {
      insert_dedup(x, f);
    }
  }

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  double f_gbest() const {
    return entries_.empty() ? std::numeric_limits<double>::infinity() : f_gbest_;
  }

  double spread() const {  // max - min archived fitness
    if (entries_.empty()) return 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& e : entries_) worst = std::max(worst, e.fitness);
    return worst - f_gbest_;
  }

  double fitness_threshold() const { return tf_; }
  double dedup_radius() const { return eps_x_; }

 private:
  void insert_dedup(std::span<const double> x, double f) {
    const double r2 = eps_x_ * eps_x_;
    double cluster_best = std::numeric_limits<double>::infinity();
    bool clustered = false;
    for (const auto& e : entries_) {
      if (squared_distance(x, e.position) <= r2) {
        clustered = true;
        cluster_best = std::min(cluster_best, e.fitness);
      }
    }
    if (!clustered) {
      entries_.push_back({Position(x.begin(), x.end()), f});
      return;
    }
    if (f < cluster_best) {
      std::erase_if(entries_, [&](const ArchiveEntry& e) {
        return squared_distance(x, e.position) <= r2;
      });
      entries_.push_back({Position(x.begin(), x.end()), f});
    }
    // otherwise dropped: an archived neighbor is at least as good
  }

  double tf_;
  double eps_x_;
  double f_gbest_ = std::numeric_limits<double>::infinity();
  std::vector<ArchiveEntry> entries_;
};

// One whale step of Eq.-11 style movement: each coordinate gets a fresh
// uniform draw from [0, rho0 * exp(-eta * d(x, y))). Result is clamped.
inline void wsa_move_into(std::span<const double> x, std::span<const double> y,
                          double rho0, double eta, const Bounds& bounds,
                          RngStream& rng, std::vector<double>& out) {
  if (x.size() != y.size()) throw DimensionError("wsa_move: dimension mismatch");
  double range = rho0;
  if (eta != 0.0) range = rho0 * std::exp(-eta * euclidean_distance(x, y));
  out.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double u = rng.uniform(0.0, range);
    double v = x[k] + u * (y[k] - x[k]);
    if (v < bounds.lower[k])
      v = bounds.lower[k];
    else if (v > bounds.upper[k])
      v = bounds.upper[k];
    out[k] = v;
  }
}

inline Position wsa_move(const Position& x, const Position& y, double rho0,
                         double eta, const Bounds& bounds, RngStream& rng) {
  std::vector<double> out;
  wsa_move_into(x, y, rho0, eta, bounds, rng, out);
  return out;
}

// Default archive dedup radius: a small fraction of the per-axis scale of
// the search box (diagonal / sqrt(n) = axis width for a uniform box).
inline double default_dedup_radius(const Bounds& bounds) {
  return 1e-4 * bounds.diagonal() /
         std::sqrt(static_cast<double>(bounds.dimension()));
}

namespace detail {

inline void validate_run_setup(int population, long long budget) {
  if (population < 2) throw ConfigError("population must be >= 2");
  if (budget < population)
    throw ConfigError("budget (" + std::to_string(budget) +
                      ") cannot cover initialization of population " +
                      std::to_string(population));
}

// Collects (evaluations, best-so-far) pairs every `stride` evaluations.
class Tracer {
 public:
  Tracer(long long stride, bool enabled) : stride_(std::max<long long>(1, stride)), enabled_(enabled) {}

  void sample(long long evals, double best) {
    if (!enabled_ || evals < next_) return;
    points_.push_back({evals, best});
    next_ = (evals / stride_ + 1) * stride_;
  }

  void finalize(long long evals, double best) {
    if (!enabled_) return;
    if (points_.empty() || points_.back().evaluations != evals)
      points_.push_back({evals, best});
  }

  std::vector<TracePoint> take() { return std::move(points_); }

 private:
  long long stride_;
  bool enabled_;
  long long next_ = 0;
  std::vector<TracePoint> points_;
};

inline long long resolve_stride(long long trace_stride, long long budget) {
  if (trace_stride > 0) return trace_stride;
  return std::max<long long>(1, budget / 1000);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// WSA-IC

struct WsaIcParams {
  double rho0 = 2.0;
  double eta = 0.0;
  long long stability_threshold = 0;  // 0 -> 100 * dimension
  double fitness_threshold = 0.0;     // 0 -> problem epsilon_f
  double dedup_radius = 0.0;          // 0 -> default_dedup_radius(bounds)
  int population = 50;
  long long budget = 0;

  static WsaIcParams for_problem(const Problem& problem, int population,
                                 long long budget) {
    WsaIcParams p;
    p.population = population;
    p.budget = budget;
    p.stability_threshold = 100LL * problem.dimension();
    p.fitness_threshold = problem.epsilon_f();
    return p;
  }
};

struct WsaIcIterationStats {
  int copy_evaluations = 0;
  int improvements = 0;
  std::vector<int> reinitialized;  // whale indices reinitialized this pass
};

class WsaIcRun {
 public:
  WsaIcRun(const Problem& problem, const WsaIcParams& params, std::uint64_t seed)
      : problem_(&problem),
        params_(params),
        rng_(seed),
        archive_(params.fitness_threshold > 0.0 ? params.fitness_threshold
                                                : problem.epsilon_f(),
                 params.dedup_radius > 0.0 ? params.dedup_radius
                                           : default_dedup_radius(problem.bounds())) {
    detail::validate_run_setup(params_.population, params_.budget);
    if (!(params_.rho0 > 0.0)) throw ConfigError("WSA-IC: rho0 must be positive");
    if (params_.stability_threshold == 0)
      params_.stability_threshold = 100LL * problem.dimension();
    if (params_.stability_threshold < 1)
      throw ConfigError("WSA-IC: stability threshold must be >= 1");
    swarm_.resize(static_cast<std::size_t>(params_.population));
    for (auto& w : swarm_) {
      w.position = rng_.uniform_point(problem.bounds());
      w.fitness = evaluate(w.position);
      w.counter = 0;
    }
  }

  bool budget_exhausted() const { return evals_ >= params_.budget; }

  // One pass over the swarm in index order against the live swarm. Stops
  // early once the budget is reached; whales already processed keep their
  // updates.
  WsaIcIterationStats iterate() {
    WsaIcIterationStats stats;
    const int p = params_.population;
    for (int i = 0; i < p; ++i) {
      if (evals_ >= params_.budget) break;
      Whale& w = swarm_[static_cast<std::size_t>(i)];
      bool improved = false;
      const auto guide = find_better_nearest(swarm_, static_cast<std::size_t>(i));
      if (guide) {
        wsa_move_into(w.position, swarm_[*guide].position, params_.rho0,
                      params_.eta, problem_->bounds(), rng_, candidate_);
        const double f = evaluate(candidate_);
        ++copy_evals_;
        ++stats.copy_evaluations;
        if (f < w.fitness) {
          std::swap(w.position, candidate_);
          w.fitness = f;
          w.counter = 0;
          improved = true;
          ++stats.improvements;
        }
      }
      if (!improved) check_counter(i, stats);
    }
    return stats;
  }

  // Judge every whale of the current generation into the archive.
  void final_sweep() {
    for (const auto& w : swarm_) archive_.judge(w.position, w.fitness);
  }

  RunRecord finish() {
    final_sweep();
    RunRecord rec;
    rec.evaluations_used = evals_;
    rec.best_fitness = best_seen_;
    rec.archive = archive_.entries();
    return rec;
  }

  const std::vector<Whale>& swarm() const { return swarm_; }
  const Archive& archive() const { return archive_; }
  long long evaluations() const { return evals_; }
  long long copy_evaluations() const { return copy_evals_; }
  long long reinit_evaluations() const { return reinit_evals_; }
  double best_seen() const { return best_seen_; }
  long long stability_threshold() const { return params_.stability_threshold; }

 private:
  double evaluate(std::span<const double> x) {
    ++evals_;
    const double f = problem_->evaluate(x);
    if (f < best_seen_) best_seen_ = f;
    return f;
  }

  void check_counter(int i, WsaIcIterationStats& stats) {
    Whale& w = swarm_[static_cast<std::size_t>(i)];
    if (w.counter < params_.stability_threshold) {
      ++w.counter;
      return;
    }
    // Steady state: the whale has located an extreme point. Judge it, then
    // jump elsewhere.
    archive_.judge(w.position, w.fitness);
    rng_.uniform_point_into(w.position, problem_->bounds());
    w.fitness = evaluate(w.position);
    ++reinit_evals_;
    w.counter = 0;
    stats.reinitialized.push_back(i);
  }

  const Problem* problem_;
  WsaIcParams params_;
  RngStream rng_;
  Archive archive_;
  std::vector<Whale> swarm_;
  std::vector<double> candidate_;
  long long evals_ = 0;
  long long copy_evals_ = 0;
  long long reinit_evals_ = 0;
  double best_seen_ = std::numeric_limits<double>::infinity();
};

inline RunRecord run_wsa_ic(const Problem& problem, const WsaIcParams& params,
                            std::uint64_t seed, long long trace_stride = 0) {
  WsaIcRun run(problem, params, seed);
  detail::Tracer tracer(detail::resolve_stride(trace_stride, params.budget),
                        trace_stride >= 0);
  tracer.sample(run.evaluations(), run.best_seen());
  while (!run.budget_exhausted()) {
    run.iterate();
    tracer.sample(run.evaluations(), run.best_seen());
  }
  RunRecord rec = run.finish();
  tracer.finalize(rec.evaluations_used, rec.best_fitness);
  rec.trace = tracer.take();
  rec.seed = seed;
  return rec;
}

// ---------------------------------------------------------------------------
// Original WSA (no elitism, no counter; eta is problem-specific)

struct WsaParams {
  double rho0 = 2.0;
  double eta = 0.0;
  int population = 50;
  long long budget = 0;
};

class WsaRun {
 public:
  WsaRun(const Problem& problem, const WsaParams& params, std::uint64_t seed)
      : problem_(&problem), params_(params), rng_(seed) {
    detail::validate_run_setup(params_.population, params_.budget);
    swarm_.resize(static_cast<std::size_t>(params_.population));
    for (auto& w : swarm_) {
      w.position = rng_.uniform_point(problem.bounds());
      w.fitness = evaluate(w.position);
    }
  }

  bool budget_exhausted() const { return evals_ >= params_.budget; }

  void iterate() {
    const int p = params_.population;
    for (int i = 0; i < p; ++i) {
      if (evals_ >= params_.budget) break;
      Whale& w = swarm_[static_cast<std::size_t>(i)];
      const auto guide = find_better_nearest(swarm_, static_cast<std::size_t>(i));
      if (!guide) continue;  // the best whale stays put
      wsa_move_into(w.position, swarm_[*guide].position, params_.rho0,
                    params_.eta, problem_->bounds(), rng_, candidate_);
      std::swap(w.position, candidate_);
      w.fitness = evaluate(w.position);  // accepted unconditionally
    }
  }

  RunRecord finish() {
    Archive archive(problem_->epsilon_f(), default_dedup_radius(problem_->bounds()));
    for (const auto& w : swarm_) archive.judge(w.position, w.fitness);
    RunRecord rec;
    rec.evaluations_used = evals_;
    rec.best_fitness = best_seen_;
    rec.archive = archive.entries();
    return rec;
  }

  long long evaluations() const { return evals_; }
  double best_seen() const { return best_seen_; }

 private:
  double evaluate(std::span<const double> x) {
    ++evals_;
    const double f = problem_->evaluate(x);
    if (f < best_seen_) best_seen_ = f;
    return f;
  }

  const Problem* problem_;
  WsaParams params_;
  RngStream rng_;
  std::vector<Whale> swarm_;
  std::vector<double> candidate_;
  long long evals_ = 0;
  double best_seen_ = std::numeric_limits<double>::infinity();
};

inline RunRecord run_wsa(const Problem& problem, const WsaParams& params,
                         std::uint64_t seed, long long trace_stride = 0) {
  WsaRun run(problem, params, seed);
  detail::Tracer tracer(detail::resolve_stride(trace_stride, params.budget),
                        trace_stride >= 0);
  tracer.sample(run.evaluations(), run.best_seen());
  while (!run.budget_exhausted()) {
    run.iterate();
    tracer.sample(run.evaluations(), run.best_seen());
  }
  RunRecord rec = run.finish();
  tracer.finalize(rec.evaluations_used, rec.best_fitness);
  rec.trace = tracer.take();
  rec.seed = seed;
  return rec;
}

// ---------------------------------------------------------------------------
// FERPSO

struct FerpsoParams {
  double chi = 0.729844;
  double phi_max = 4.1;
  int population = 50;
  long long budget = 0;
};

class FerpsoRun {
 public:
  FerpsoRun(const Problem& problem, const FerpsoParams& params, std::uint64_t seed)
      : problem_(&problem), params_(params), rng_(seed) {
    detail::validate_run_setup(params_.population, params_.budget);
    const std::size_t n = static_cast<std::size_t>(problem.dimension());
    const std::size_t p = static_cast<std::size_t>(params_.population);
    pos_.assign(p, Position(n, 0.0));
    vel_.assign(p, Position(n, 0.0));  // zero initial velocities
    pbest_.assign(p, Position(n, 0.0));
    fit_.assign(p, 0.0);
    pbest_fit_.assign(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
      rng_.uniform_point_into(pos_[i], problem.bounds());
      fit_[i] = evaluate(pos_[i]);
      pbest_[i] = pos_[i];
      pbest_fit_[i] = fit_[i];
    }
    diagonal_ = problem.bounds().diagonal();
  }

  bool budget_exhausted() const { return evals_ >= params_.budget; }

  void iterate() {
    const int p = params_.population;
    const std::size_t n = pos_[0].size();
    for (int i = 0; i < p; ++i) {
      if (evals_ >= params_.budget) break;
      const std::size_t nbr = fer_neighbor(static_cast<std::size_t>(i));
      const double half = params_.phi_max / 2.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double r1 = rng_.uniform(0.0, half);
        const double r2 = rng_.uniform(0.0, half);
        vel_[static_cast<std::size_t>(i)][k] =
            params_.chi *
            (vel_[static_cast<std::size_t>(i)][k] +
             r1 * (pbest_[static_cast<std::size_t>(i)][k] - pos_[static_cast<std::size_t>(i)][k]) +
             r2 * (pbest_[nbr][k] - pos_[static_cast<std::size_t>(i)][k]));
        pos_[static_cast<std::size_t>(i)][k] += vel_[static_cast<std::size_t>(i)][k];
      }
      clamp_in_place(pos_[static_cast<std::size_t>(i)], problem_->bounds());
      fit_[static_cast<std::size_t>(i)] = evaluate(pos_[static_cast<std::size_t>(i)]);
      if (fit_[static_cast<std::size_t>(i)] < pbest_fit_[static_cast<std::size_t>(i)]) {
        pbest_[static_cast<std::size_t>(i)] = pos_[static_cast<std::size_t>(i)];
        pbest_fit_[static_cast<std::size_t>(i)] = fit_[static_cast<std::size_t>(i)];
      }
    }
  }

  RunRecord finish() {
    Archive archive(problem_->epsilon_f(), default_dedup_radius(problem_->bounds()));
    for (std::size_t i = 0; i < pbest_.size(); ++i)
      archive.judge(pbest_[i], pbest_fit_[i]);
    RunRecord rec;
    rec.evaluations_used = evals_;
    rec.best_fitness = best_seen_;
    rec.archive = archive.entries();
    return rec;
  }

  long long evaluations() const { return evals_; }
  double best_seen() const { return best_seen_; }

 private:
  double evaluate(std::span<const double> x) {
    ++evals_;
    const double f = problem_->evaluate(x);
    if (f < best_seen_) best_seen_ = f;
    return f;
  }

  // Neighborhood best by fitness-Euclidean-distance ratio over personal
  // bests, adapted to minimization (better = smaller fitness attracts).
  std::size_t fer_neighbor(std::size_t i) {
    std::size_t g = 0, w = 0;
    for (std::size_t j = 1; j < pbest_fit_.size(); ++j) {
      if (pbest_fit_[j] < pbest_fit_[g]) g = j;
      if (pbest_fit_[j] > pbest_fit_[w]) w = j;
    }
    const double denom = pbest_fit_[w] - pbest_fit_[g];
    if (!(denom > 0.0)) return g;  // all personal bests equal: fall back to the best
    const double alpha = diagonal_ / denom;
    double best_fer = -std::numeric_limits<double>::infinity();
    std::size_t best_j = g;
    bool found = false;
    for (std::size_t j = 0; j < pbest_.size(); ++j) {
      if (j == i) continue;
      const double gain = pbest_fit_[i] - pbest_fit_[j];  // > 0 when j is better
      const double d = euclidean_distance(pbest_[j], pbest_[i]);
      if (d == 0.0) {
        if (gain > 0.0) return j;  // coincident strictly better neighbor
        continue;
      }
      const double fer = alpha * gain / d;
      if (!found || fer > best_fer) {
        best_fer = fer;
        best_j = j;
        found = true;
      }
    }
    return best_j;
  }

  const Problem* problem_;
  FerpsoParams params_;
  RngStream rng_;
  std::vector<Position> pos_, vel_, pbest_;
  std::vector<double> fit_, pbest_fit_;
  double diagonal_ = 0.0;
  long long evals_ = 0;
  double best_seen_ = std::numeric_limits<double>::infinity();
};

inline RunRecord run_ferpso(const Problem& problem, const FerpsoParams& params,
                            std::uint64_t seed, long long trace_stride = 0) {
  FerpsoRun run(problem, params, seed);
  detail::Tracer tracer(detail::resolve_stride(trace_stride, params.budget),
                        trace_stride >= 0);
  tracer.sample(run.evaluations(), run.best_seen());
  while (!run.budget_exhausted()) {
    run.iterate();
    tracer.sample(run.evaluations(), run.best_seen());
  }
  RunRecord rec = run.finish();
  tracer.finalize(rec.evaluations_used, rec.best_fitness);
  rec.trace = tracer.take();
  rec.seed = seed;
  return rec;
}

// ---------------------------------------------------------------------------
// LIPS (locally informed PSO)

struct LipsParams {
  double omega = 0.729844;
  int nsize_min = 2;
  int nsize_max = 5;
  int population = 50;
  long long budget = 0;
};

inline constexpr double kLipsPhiRange = 4.1;

class LipsRun {
 public:
  LipsRun(const Problem& problem, const LipsParams& params, std::uint64_t seed)
      : problem_(&problem), params_(params), rng_(seed) {
    detail::validate_run_setup(params_.population, params_.budget);
    if (params_.nsize_min < 1 || params_.nsize_max < params_.nsize_min)
      throw ConfigError("LIPS: invalid nsize schedule");
    if (params_.population < params_.nsize_max + 1)
      throw ConfigError("LIPS: population must exceed the largest neighborhood");
    const std::size_t n = static_cast<std::size_t>(problem.dimension());
    const std::size_t p = static_cast<std::size_t>(params_.population);
    pos_.assign(p, Position(n, 0.0));
    vel_.assign(p, Position(n, 0.0));
    pbest_.assign(p, Position(n, 0.0));
    fit_.assign(p, 0.0);
    pbest_fit_.assign(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
      rng_.uniform_point_into(pos_[i], problem.bounds());
      fit_[i] = evaluate(pos_[i]);
      pbest_[i] = pos_[i];
      pbest_fit_[i] = fit_[i];
    }
  }

  bool budget_exhausted() const { return evals_ >= params_.budget; }

  // Neighborhood size grows linearly with the consumed budget (floored).
  int current_nsize() const {
    const double frac = std::min(
        1.0, static_cast<double>(evals_) / static_cast<double>(params_.budget));
    const int span = params_.nsize_max - params_.nsize_min;
    return std::min(params_.nsize_max,
                    params_.nsize_min + static_cast<int>(std::floor(span * frac)));
  }

  void iterate() {
    const int p = params_.population;
    const std::size_t n = pos_[0].size();
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(static_cast<std::size_t>(p) - 1);
    for (int i = 0; i < p; ++i) {
      if (evals_ >= params_.budget) break;
      const int nsize = current_nsize();
      const std::size_t si = static_cast<std::size_t>(i);
      order.clear();
      for (std::size_t j = 0; j < pbest_.size(); ++j) {
        if (j == si) continue;
        order.emplace_back(squared_distance(pbest_[j], pbest_[si]), j);
      }
      std::partial_sort(order.begin(), order.begin() + nsize, order.end());
      // Weighted mean of the nsize nearest personal bests.
      double phi_sum = 0.0;
      pbuf_.assign(n, 0.0);
      for (int j = 0; j < nsize; ++j) {
        const double phi_j = rng_.uniform(0.0, kLipsPhiRange / nsize);
        phi_sum += phi_j;
        const Position& nb = pbest_[order[static_cast<std::size_t>(j)].second];
        for (std::size_t k = 0; k < n; ++k) pbuf_[k] += phi_j * nb[k];
      }
      if (phi_sum > 0.0) {
        for (std::size_t k = 0; k < n; ++k) pbuf_[k] /= phi_sum;
      } else {
        pbuf_ = pbest_[si];  // all-zero draws: hold to the own best
      }
      for (std::size_t k = 0; k < n; ++k) {
        vel_[si][k] = params_.omega * (vel_[si][k] + phi_sum * (pbuf_[k] - pos_[si][k]));
        pos_[si][k] += vel_[si][k];
      }
      clamp_in_place(pos_[si], problem_->bounds());
      fit_[si] = evaluate(pos_[si]);
      if (fit_[si] < pbest_fit_[si]) {
        pbest_[si] = pos_[si];
        pbest_fit_[si] = fit_[si];
      }
    }
  }

  RunRecord finish() {
    Archive archive(problem_->epsilon_f(), default_dedup_radius(problem_->bounds()));
    for (std::size_t i = 0; i < pbest_.size(); ++i)
      archive.judge(pbest_[i], pbest_fit_[i]);
    RunRecord rec;
    rec.evaluations_used = evals_;
    rec.best_fitness = best_seen_;
    rec.archive = archive.entries();
    return rec;
  }

  long long evaluations() const { return evals_; }
  double best_seen() const { return best_seen_; }

 private:
  double evaluate(std::span<const double> x) {
    ++evals_;
    const double f = problem_->evaluate(x);
    if (f < best_seen_) best_seen_ = f;
    return f;
  }

  const Problem* problem_;
  LipsParams params_;
  RngStream rng_;
  std::vector<Position> pos_, vel_, pbest_;
  std::vector<double> fit_, pbest_fit_;
  std::vector<double> pbuf_;
  long long evals_ = 0;
  double best_seen_ = std::numeric_limits<double>::infinity();
};

inline RunRecord run_lips(const Problem& problem, const LipsParams& params,
                          std::uint64_t seed, long long trace_stride = 0) {
  LipsRun run(problem, params, seed);
  detail::Tracer tracer(detail::resolve_stride(trace_stride, params.budget),
                        trace_stride >= 0);
  tracer.sample(run.evaluations(), run.best_seen());
  while (!run.budget_exhausted()) {
    run.iterate();
    tracer.sample(run.evaluations(), run.best_seen());
  }
  RunRecord rec = run.finish();
  tracer.finalize(rec.evaluations_used, rec.best_fitness);
  rec.trace = tracer.take();
  rec.seed = seed;
  return rec;
}

// ---------------------------------------------------------------------------
// Convergence-moment sampling: the accepted move is x' = A x + B y with
// A = 1 - rand(0, 2) and B = rand(0, 2) sharing the same draw.

struct MomentEstimates {
  double e_a = 0.0;
  double e_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  double e_ab = 0.0;
  long long samples = 0;
};

inline MomentEstimates sample_moments(long long n_samples, RngStream& rng) {
  if (n_samples < 1) throw ConfigError("sample_moments: need at least one sample");
  double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const double u = rng.uniform(0.0, 2.0);
    const double a = 1.0 - u;
    const double b = u;
    sa += a;
    sb += b;
    saa += a * a;
    sbb += b * b;
    sab += a * b;
  }
  const double n = static_cast<double>(n_samples);
  MomentEstimates m;
  m.samples = n_samples;
  m.e_a = sa / n;
  m.e_b = sb / n;
  m.var_a = saa / n - m.e_a * m.e_a;
  m.var_b = sbb / n - m.e_b * m.e_b;
  m.e_ab = sab / n;
  return m;
}

// ---------------------------------------------------------------------------
// Dispatch

enum class AlgorithmId { wsa_ic, wsa, ferpso, lips };

using AlgorithmParams = std::variant<WsaIcParams, WsaParams, FerpsoParams, LipsParams>;

inline AlgorithmId algorithm_of(const AlgorithmParams& params) {
  return static_cast<AlgorithmId>(params.index());
}

inline std::string_view algorithm_name(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::wsa_ic: return "wsa-ic";
    case AlgorithmId::wsa: return "wsa";
    case AlgorithmId::ferpso: return "ferpso";
    case AlgorithmId::lips: return "lips";
  }
  throw ConfigError("unknown algorithm id");
}

inline AlgorithmId algorithm_from_name(std::string_view name) {
  if (name == "wsa-ic" || name == "wsa_ic") return AlgorithmId::wsa_ic;
  if (name == "wsa") return AlgorithmId::wsa;
  if (name == "ferpso") return AlgorithmId::ferpso;
  if (name == "lips") return AlgorithmId::lips;
  throw ConfigError("unknown algorithm: " + std::string(name));
}

inline RunRecord run_optimizer(const Problem& problem,
                               const AlgorithmParams& params,
                               std::uint64_t seed, long long trace_stride = 0) {
  return std::visit(
      [&](const auto& p) -> RunRecord {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, WsaIcParams>)
          return run_wsa_ic(problem, p, seed, trace_stride);
        else if constexpr (std::is_same_v<T, WsaParams>)
          return run_wsa(problem, p, seed, trace_stride);
        else if constexpr (std::is_same_v<T, FerpsoParams>)
          return run_ferpso(problem, p, seed, trace_stride);
        else
          return run_lips(problem, p, seed, trace_stride);
      },
      params);
}

}  // namespace mmopt
