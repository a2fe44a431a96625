#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgm/harness/benchmark.hpp"

namespace fgm::harness {

/// What a `fit` run produced: the report of the chosen parameters plus, for
/// stochastic estimators, the repeat statistics it was selected from.
struct FitSummary {
    std::string dataset;
    EstimatorKind estimator = EstimatorKind::Lsm;
    Series series;
    FitReport report;
    std::optional<RepeatStats> stats;
    std::uint64_t seed = 0;
};

void render_fit(std::ostream& out, const FitSummary& fit);
nlohmann::json fit_to_json(const FitSummary& fit);

/// Table in the layout of the published comparison tables; errors with 2 decimals.
std::string render_benchmark_table(const BenchmarkResult& result);

/// Machine-readable records: {dataset, estimator, r, mean_error_pct, stddev, repeats, seed, elapsed_ms}.
nlohmann::json benchmark_to_json(const BenchmarkResult& result);
/// Inverse of benchmark_to_json (traces are not part of the records).
BenchmarkResult benchmark_from_json(const nlohmann::json& records);

std::string trace_file_name(const std::string& dataset, const CellRecord& cell, std::size_t run);

/// Writes results.json, table.txt and traces/<cell>_run<k>.csv under `dir`.
void write_benchmark_outputs(const std::filesystem::path& dir, const BenchmarkResult& result);

} // namespace fgm::harness
