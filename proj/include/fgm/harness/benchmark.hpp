#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fgm/optim.hpp"

namespace fgm::harness {

inline constexpr std::array<double, 3> kBenchmarkOrders{0.25, 0.5, 0.75};
inline constexpr std::array<EstimatorKind, 3> kBenchmarkEstimators{
    EstimatorKind::Lsm, EstimatorKind::Pso, EstimatorKind::Adcso};

std::string_view estimator_name(EstimatorKind kind);
/// Accepts lsm | pso | adcso (case-insensitive).
EstimatorKind parse_estimator(std::string_view name);

/// One (estimator, order) cell of the comparison table.
struct CellRecord {
    EstimatorKind estimator = EstimatorKind::Lsm;
    double r = 0.0;
    double mean_error_pct = 0.0;
    double stddev = 0.0;
    int repeats = 1;         ///< 1 for LSM
    std::uint64_t seed = 0;  ///< first seed; run k used seed + k
    double elapsed_ms = 0.0; ///< wall time, the only non-deterministic field
    std::vector<RunTrace> traces{};
};

struct BenchmarkResult {
    std::string dataset;
    std::vector<CellRecord> cells; ///< estimator-major, then order
};

/// Runs all estimator x order cells. Cells may run concurrently; numbers do not depend on it.
BenchmarkResult run_benchmark(std::string dataset, const Series& series, int repeats,
                              std::uint64_t seed, const Estimator& base = {});

} // namespace fgm::harness
