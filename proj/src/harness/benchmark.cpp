#include "fgm/harness/benchmark.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <string>

#include "fgm/parallel.hpp"

namespace fgm::harness {

std::string_view estimator_name(EstimatorKind kind)
{
    switch (kind) {
    case EstimatorKind::Lsm: return "lsm";
    case EstimatorKind::Pso: return "pso";
    case EstimatorKind::Adcso: return "adcso";
    }
    return "unknown";
}

EstimatorKind parse_estimator(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "lsm") return EstimatorKind::Lsm;
    if (lower == "pso") return EstimatorKind::Pso;
    if (lower == "adcso") return EstimatorKind::Adcso;
    throw PreconditionError("unknown estimator '" + std::string(name) + "' (expected lsm, pso or adcso)");
}

BenchmarkResult run_benchmark(std::string dataset, const Series& series, int repeats,
                              std::uint64_t seed, const Estimator& base)
{
    if (repeats < 1) {
        throw PreconditionError("repeats must be >= 1");
    }
    BenchmarkResult result{std::move(dataset), {}};
    for (EstimatorKind kind : kBenchmarkEstimators) {
        for (double r : kBenchmarkOrders) {
            CellRecord cell;
            cell.estimator = kind;
            cell.r = r;
            cell.repeats = kind == EstimatorKind::Lsm ? 1 : repeats;
            cell.seed = seed;
            result.cells.push_back(std::move(cell));
        }
    }

    parallel_for(result.cells.size(), [&](std::size_t i) {
        CellRecord& cell = result.cells[i];
        Estimator est = base;
        est.kind = cell.estimator;
        est.set_seed(seed);
        const auto start = std::chrono::steady_clock::now();
        Estimate e = estimate(series, FracOrder(cell.r), est, cell.repeats);
        cell.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        cell.mean_error_pct = e.stats.mean;
        cell.stddev = e.stats.stddev;
        cell.traces = std::move(e.stats.runs);
    });
    return result;
}

} // namespace fgm::harness
