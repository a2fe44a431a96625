#include "fgm/harness/report.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "fgm/harness/csv.hpp"

namespace fgm::harness {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v)
{
    return {v.data(), v.data() + v.size()};
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw DataError(fmt::format("cannot write '{}'", path.string()));
    }
    return out;
}

} // namespace

void render_fit(std::ostream& out, const FitSummary& fit)
{
    const FitReport& rep = fit.report;
    out << fmt::format("dataset: {} ({} observations)\n", fit.dataset, fit.series.size());
    out << fmt::format("estimator: {}\n", estimator_name(fit.estimator));
    out << fmt::format("r = {}\na = {:.10g}\nb = {:.10g}\n", format_order(rep.params.order.value()),
                       rep.params.a, rep.params.b);
    if (fit.stats) {
        const RepeatStats& s = *fit.stats;
        out << fmt::format("runs: {} (seeds {}..{})\n", s.runs.size(), fit.seed,
                           fit.seed + s.runs.size() - 1);
        out << fmt::format("best MAPE over runs: mean {:.4f}%  stddev {:.4f}  min {:.4f}%  max {:.4f}%\n",
                           s.mean, s.stddev, s.min, s.max);
    }
    out << "label,actual,fitted,error_pct\n";
    const auto& labels = fit.series.labels();
    for (Eigen::Index k = 0; k < fit.series.size(); ++k) {
        const std::string err = k == 0 ? "" : fmt::format("{:.4f}", rep.per_point_error(k - 1));
        out << fmt::format("{},{:.2f},{:.2f},{}\n", labels[static_cast<std::size_t>(k)],
                           fit.series.values()(k), rep.fitted(k), err);
    }
    out << fmt::format("MAPE = {:.4f}%\n", rep.mape);
}

nlohmann::json fit_to_json(const FitSummary& fit)
{
    const FitReport& rep = fit.report;
    nlohmann::json j{
        {"dataset", fit.dataset},
        {"estimator", estimator_name(fit.estimator)},
        {"r", rep.params.order.value()},
        {"a", rep.params.a},
        {"b", rep.params.b},
        {"mape", rep.mape},
        {"labels", fit.series.labels()},
        {"actual", to_std(fit.series.values())},
        {"fitted", to_std(rep.fitted)},
        {"residuals", to_std(rep.residuals)},
        {"per_point_error", to_std(rep.per_point_error)},
    };
    if (fit.stats) {
        j["runs"] = {{"repeats", fit.stats->runs.size()}, {"seed", fit.seed},
                     {"mean", fit.stats->mean},          {"stddev", fit.stats->stddev},
                     {"min", fit.stats->min},            {"max", fit.stats->max}};
    }
    return j;
}

std::string render_benchmark_table(const BenchmarkResult& result)
{
    std::string out = fmt::format("Dataset: {}\n{:<10}", result.dataset, "Algorithm");
    for (double r : kBenchmarkOrders) {
        out += fmt::format("{:>24}", fmt::format("Error when r={} (%)", format_order(r)));
    }
    out += '\n';
    for (EstimatorKind kind : kBenchmarkEstimators) {
        std::string name(estimator_name(kind));
        for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        out += fmt::format("{:<10}", name);
        for (double r : kBenchmarkOrders) {
            for (const CellRecord& cell : result.cells) {
                if (cell.estimator == kind && cell.r == r) {
                    out += fmt::format("{:>24.2f}", cell.mean_error_pct);
                }
            }
        }
        out += '\n';
    }
    return out;
}

nlohmann::json benchmark_to_json(const BenchmarkResult& result)
{
    nlohmann::json records = nlohmann::json::array();
    for (const CellRecord& cell : result.cells) {
        records.push_back({{"dataset", result.dataset},
                           {"estimator", estimator_name(cell.estimator)},
                           {"r", cell.r},
                           {"mean_error_pct", cell.mean_error_pct},
                           {"stddev", cell.stddev},
                           {"repeats", cell.repeats},
                           {"seed", cell.seed},
                           {"elapsed_ms", cell.elapsed_ms}});
    }
    return records;
}

BenchmarkResult benchmark_from_json(const nlohmann::json& records)
{
    if (!records.is_array()) {
        throw DataError("benchmark results: expected a JSON array of records");
    }
    BenchmarkResult result;
    try {
        for (const auto& rec : records) {
            const std::string dataset = rec.at("dataset").get<std::string>();
            if (result.cells.empty()) {
                result.dataset = dataset;
            } else if (dataset != result.dataset) {
                throw DataError("benchmark results: mixed datasets");
            }
            CellRecord cell;
            cell.estimator = parse_estimator(rec.at("estimator").get<std::string>());
            cell.r = rec.at("r").get<double>();
            cell.mean_error_pct = rec.at("mean_error_pct").get<double>();
            cell.stddev = rec.at("stddev").get<double>();
            cell.repeats = rec.at("repeats").get<int>();
            cell.seed = rec.at("seed").get<std::uint64_t>();
            cell.elapsed_ms = rec.at("elapsed_ms").get<double>();
            result.cells.push_back(std::move(cell));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("benchmark results: ") + e.what());
    }
    return result;
}

std::string trace_file_name(const std::string& dataset, const CellRecord& cell, std::size_t run)
{
    return fmt::format("{}_{}_r{}_run{}.csv", dataset, estimator_name(cell.estimator),
                       format_order(cell.r), run + 1);
}

void write_benchmark_outputs(const std::filesystem::path& dir, const BenchmarkResult& result)
{
    const auto traces = dir / "traces";
    std::filesystem::create_directories(traces);
    open_for_write(dir / "results.json") << benchmark_to_json(result).dump(2) << '\n';
    open_for_write(dir / "table.txt") << render_benchmark_table(result);
    for (const CellRecord& cell : result.cells) {
        for (std::size_t k = 0; k < cell.traces.size(); ++k) {
            auto out = open_for_write(traces / trace_file_name(result.dataset, cell, k));
            write_trace_csv(out, cell.traces[k]);
        }
    }
}

} // namespace fgm::harness
