#pragma once

// Metaheuristic estimators for the grey-model parameters (a, b):
// adaptive dynamic cat swarm optimization (ADCSO) and global-best PSO,
// plus repeat-run statistics and the fractional-order grid search.
//
// Every run is a pure function of (objective, bounds, config incl. seed).
// All random draws happen in a fixed serial order.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fgm/greymodel.hpp"

namespace fgm {

using Rng = std::mt19937_64;

/// Minimization target. Degenerate points should return +infinity, not throw.
using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Axis-aligned search box.
class Bounds {
public:
    Bounds(Eigen::VectorXd lower, Eigen::VectorXd upper);

    [[nodiscard]] const Eigen::VectorXd& lower() const noexcept { return lower_; }
    [[nodiscard]] const Eigen::VectorXd& upper() const noexcept { return upper_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return lower_.size(); }
    [[nodiscard]] Eigen::VectorXd width() const { return upper_ - lower_; }
    [[nodiscard]] bool contains(const Eigen::VectorXd& x) const;
    [[nodiscard]] Eigen::VectorXd clamp(const Eigen::VectorXd& x) const;
    [[nodiscard]] Eigen::VectorXd sample(Rng& rng) const;

private:
    Eigen::VectorXd lower_;
    Eigen::VectorXd upper_;
};

/// a in [-1, 1], b in [-2 max(x), 2 max(x)].
Bounds default_grey_bounds(const Series& series);

enum class Mode { Seeking, Tracing };

struct Agent {
    Eigen::VectorXd position;
    Eigen::VectorXd velocity;
    Mode mode = Mode::Seeking;
    double fitness = std::numeric_limits<double>::infinity();
};

/// ADCSO hyperparameters. Defaults follow the published CSO settings table.
struct SwarmConfig {
    int n_agents = 40;   ///< N
    int smp = 30;        ///< M, seeking memory pool
    double srd = 0.2;    ///< eta, seeking range of the selected dimension
    int cdc = 2;         ///< dimensions mutated per copy
    bool spc = true;     ///< keep the current position as a candidate
    double mr = 0.2;     ///< fraction of cats in tracing mode
    double c0 = 1.05;    ///< initial acceleration coefficient
    double w0 = 0.6;     ///< initial inertia weight
    int iter_max = 300;
    double v_frac = 0.2; ///< |v| <= v_frac * box width
    std::uint64_t seed = 1;

    void validate(Eigen::Index dim) const;
};

/// Global-best PSO hyperparameters. Defaults follow the published PSO settings table.
struct PsoConfig {
    int n_particles = 40;
    double c1 = 1.5;
    double c2 = 1.5;
    double w = 0.7;
    int iter_max = 300;
    double v_frac = 0.2;
    std::uint64_t seed = 1;

    void validate() const;
};

struct RunTrace {
    std::vector<double> best_fitness_per_iter;
    Eigen::VectorXd best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    std::uint64_t evaluations = 0;
};

/// Called after every iteration with the current population (for inspection and tests).
using SwarmObserver = std::function<void(int iteration, std::span<const Agent> agents)>;

/// Wraps the grey-model MAPE at a fixed order; degenerate or out-of-box points map to +inf.
Objective make_objective(const Series& series, FracOrder order,
                         std::optional<Bounds> bounds = std::nullopt);

/// Selection probabilities for seeking-mode candidates under minimization.
/// Equal finite fitnesses get equal weight; +inf candidates get 0.
Eigen::VectorXd seeking_probabilities(std::span<const double> fitness);

/// Adaptive per-dimension inertia weight, d is 1-based.
double adaptive_inertia(double w0, Eigen::Index d, Eigen::Index dim);
/// Adaptive per-dimension acceleration coefficient, d is 1-based.
double adaptive_acceleration(double c0, Eigen::Index d, Eigen::Index dim);

Agent seeking_step(const Agent& agent, const SwarmConfig& cfg, const Bounds& bounds,
                   const Objective& objective, Rng& rng);

/// Moves a tracing cat toward the global best. Fitness is not re-evaluated.
Agent tracing_step(const Agent& agent, const Eigen::VectorXd& global_best, const SwarmConfig& cfg,
                   const Bounds& bounds, Rng& rng);

RunTrace adcso_minimize(const Objective& objective, const Bounds& bounds, const SwarmConfig& cfg,
                        const SwarmObserver& observer = {});

RunTrace pso_minimize(const Objective& objective, const Bounds& bounds, const PsoConfig& cfg,
                      const SwarmObserver& observer = {});

struct RepeatStats {
    double mean = 0.0;
    double stddev = 0.0; ///< sample standard deviation, 0 for a single run
    double min = 0.0;
    double max = 0.0;
    std::vector<RunTrace> runs;

    /// Run with the lowest best fitness (first on ties).
    [[nodiscard]] const RunTrace& best_run() const;
};

/// Seeds are cfg.seed + 0 .. cfg.seed + repeats - 1.
RepeatStats repeat_stats(const Objective& objective, const Bounds& bounds, const SwarmConfig& cfg,
                         int repeats);
RepeatStats repeat_stats(const Objective& objective, const Bounds& bounds, const PsoConfig& cfg,
                         int repeats);

enum class EstimatorKind { Lsm, Pso, Adcso };

struct Estimator {
    EstimatorKind kind = EstimatorKind::Adcso;
    SwarmConfig swarm{};
    PsoConfig pso{};
    /// Overrides default_grey_bounds when set.
    std::optional<Bounds> bounds{};

    [[nodiscard]] std::uint64_t seed() const noexcept;
    void set_seed(std::uint64_t seed) noexcept;
};

/// Result of estimating (a, b) at one order.
struct Estimate {
    GreyParams params;
    RepeatStats stats; ///< LSM: one deterministic run
};

/// LSM fits once; stochastic estimators run `repeats` seeded runs.
Estimate estimate(const Series& series, FracOrder order, const Estimator& estimator, int repeats);

struct OrderSearchResult {
    FracOrder order;
    GreyParams params;
    RunTrace trace;
    std::vector<double> grid;
    std::vector<double> mean_fitness; ///< one per grid point
};

/// Grid {step, 2 step, ..., <= 1}; returns the order with minimal mean fitness (lowest r on ties).
std::vector<double> order_grid(double grid_step);

OrderSearchResult order_search(const Series& series, double grid_step, const Estimator& estimator,
                               int repeats);

} // namespace fgm
