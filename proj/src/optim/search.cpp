#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgm/optim.hpp"
#include "fgm/parallel.hpp"

namespace fgm {

namespace {

template <typename Config, typename Minimizer>
RepeatStats run_repeats(const Objective& objective, const Bounds& bounds, const Config& cfg,
                        int repeats, Minimizer&& minimize)
{
    if (repeats < 1) {
        throw PreconditionError("repeats must be >= 1");
    }
    RepeatStats stats;
    stats.runs.reserve(static_cast<std::size_t>(repeats));
    for (int k = 0; k < repeats; ++k) {
        Config run_cfg = cfg;
        run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(k);
        stats.runs.push_back(minimize(objective, bounds, run_cfg));
    }

    Eigen::VectorXd best(repeats);
    for (int k = 0; k < repeats; ++k) {
        best(k) = stats.runs[static_cast<std::size_t>(k)].best_fitness;
    }
    stats.mean = best.mean();
    stats.min = best.minCoeff();
    stats.max = best.maxCoeff();
    stats.stddev = repeats > 1
                       ? std::sqrt((best.array() - stats.mean).square().sum() / (repeats - 1))
                       : 0.0;
    return stats;
}

} // namespace

const RunTrace& RepeatStats::best_run() const
{
    if (runs.empty()) {
        throw PreconditionError("no runs recorded");
    }
    return *std::min_element(runs.begin(), runs.end(), [](const RunTrace& l, const RunTrace& r) {
        return l.best_fitness < r.best_fitness;
    });
}

RepeatStats repeat_stats(const Objective& objective, const Bounds& bounds, const SwarmConfig& cfg,
                         int repeats)
{
    return run_repeats(objective, bounds, cfg, repeats,
                       [](const Objective& f, const Bounds& b, const SwarmConfig& c) {
                           return adcso_minimize(f, b, c);
                       });
}

RepeatStats repeat_stats(const Objective& objective, const Bounds& bounds, const PsoConfig& cfg,
                         int repeats)
{
    return run_repeats(objective, bounds, cfg, repeats,
                       [](const Objective& f, const Bounds& b, const PsoConfig& c) {
                           return pso_minimize(f, b, c);
                       });
}

std::uint64_t Estimator::seed() const noexcept
{
    return kind == EstimatorKind::Pso ? pso.seed : swarm.seed;
}

void Estimator::set_seed(std::uint64_t seed) noexcept
{
    swarm.seed = seed;
    pso.seed = seed;
}

Estimate estimate(const Series& series, FracOrder order, const Estimator& estimator, int repeats)
{
    if (series.size() < Series::kMinFitLength) {
        throw DataError("need at least " + std::to_string(Series::kMinFitLength) + " observations");
    }
    if (estimator.kind == EstimatorKind::Lsm) {
        const GreyParams params = lsm_fit(series, order);
        RunTrace trace;
        trace.best_position = Eigen::Vector2d(params.a, params.b);
        trace.best_fitness = make_objective(series, order)(trace.best_position);
        trace.best_fitness_per_iter = {trace.best_fitness};
        trace.evaluations = 1;
        RepeatStats stats{trace.best_fitness, 0.0, trace.best_fitness, trace.best_fitness, {trace}};
        return Estimate{params, std::move(stats)};
    }

    const Bounds bounds = estimator.bounds.value_or(default_grey_bounds(series));
    const Objective objective = make_objective(series, order, bounds);
    RepeatStats stats = estimator.kind == EstimatorKind::Pso
                            ? repeat_stats(objective, bounds, estimator.pso, repeats)
                            : repeat_stats(objective, bounds, estimator.swarm, repeats);
    const RunTrace& best = stats.best_run();
    GreyParams params{order, best.best_position(0), best.best_position(1)};
    return Estimate{params, std::move(stats)};
}

std::vector<double> order_grid(double grid_step)
{
    if (!(grid_step > 0.0 && grid_step <= 0.5)) {
        throw PreconditionError("order grid step must satisfy 0 < step <= 0.5");
    }
    const auto count = static_cast<int>(std::floor(1.0 / grid_step + 1e-9));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) {
        grid.push_back(std::min(1.0, k * grid_step));
    }
    if (grid.empty()) {
        throw PreconditionError("order grid is empty");
    }
    return grid;
}

OrderSearchResult order_search(const Series& series, double grid_step, const Estimator& estimator,
                               int repeats)
{
    const std::vector<double> grid = order_grid(grid_step);
    std::vector<std::optional<Estimate>> cells(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        cells[i] = estimate(series, FracOrder(grid[i]), estimator, repeats);
    });

    std::vector<double> means(grid.size());
    std::transform(cells.begin(), cells.end(), means.begin(),
                   [](const std::optional<Estimate>& e) { return e->stats.mean; });
    const auto best = static_cast<std::size_t>(
        std::distance(means.begin(), std::min_element(means.begin(), means.end())));
    const Estimate& winner = *cells[best];
    return OrderSearchResult{FracOrder(grid[best]), winner.params, winner.stats.best_run(), grid,
                             std::move(means)};
}

} // namespace fgm
