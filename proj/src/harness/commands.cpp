#include "fgm/harness/commands.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fgm/harness/benchmark.hpp"
#include "fgm/harness/config.hpp"
#include "fgm/harness/csv.hpp"
#include "fgm/harness/datasets.hpp"
#include "fgm/harness/report.hpp"

namespace fgm::harness {

namespace {

struct InputOptions {
    std::string dataset;
    std::string csv;

    [[nodiscard]] std::pair<std::string, Series> resolve() const
    {
        if (dataset.empty() == csv.empty()) {
            throw PreconditionError("exactly one of --dataset or --csv is required");
        }
        if (!dataset.empty()) {
            const Dataset& d = dataset_by_name(dataset);
            return {d.name, d.series};
        }
        return {csv, load_csv(csv)};
    }

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--dataset", dataset, "Embedded dataset: wuhan | zhejiang");
        cmd.add_option("--csv", csv, "CSV file with header label,value");
    }
};

struct EstimatorOptions {
    std::string estimator = "adcso";
    int repeats = 10;
    std::uint64_t seed = 1;
    std::string config;

    [[nodiscard]] Estimator build() const
    {
        Estimator est;
        if (!config.empty()) {
            load_config(config, est);
        }
        est.kind = parse_estimator(estimator);
        est.set_seed(seed);
        return est;
    }

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--estimator", estimator, "lsm | pso | adcso")->capture_default_str();
        cmd.add_option("--repeats", repeats, "Seeded runs per stochastic estimate")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd.add_option("--seed", seed, "First seed; run k uses seed + k")->capture_default_str();
        cmd.add_option("--config", config, "Hyperparameter file with [CSO] / [PSO] sections");
    }
};

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f) {
        throw DataError(fmt::format("cannot write '{}'", path));
    }
    return f;
}

int cmd_fit(const InputOptions& in, const EstimatorOptions& eo, double r, const std::string& out_path,
            std::ostream& out)
{
    const FracOrder order(r);
    auto [name, series] = in.resolve();
    const Estimator est = eo.build();
    Estimate e = estimate(series, order, est, eo.repeats);
    FitSummary fit{name, est.kind, series, fit_series(series, e.params), std::nullopt, est.seed()};
    if (est.kind != EstimatorKind::Lsm) {
        fit.stats = std::move(e.stats);
    }
    render_fit(out, fit);
    if (!out_path.empty()) {
        open_out(out_path) << fit_to_json(fit).dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_order_search(const InputOptions& in, const EstimatorOptions& eo, double step,
                     const std::string& out_path, std::ostream& out)
{
    auto [name, series] = in.resolve();
    const Estimator est = eo.build();
    const OrderSearchResult res = order_search(series, step, est, eo.repeats);
    std::ostringstream curve;
    write_curve_csv(curve, res.grid, res.mean_fitness);
    out << curve.str();
    const auto best = static_cast<std::size_t>(
        std::find(res.grid.begin(), res.grid.end(), res.order.value()) - res.grid.begin());
    out << fmt::format("# argmin r={} mean_error={:.6f} a={:.10g} b={:.10g} dataset={} estimator={}\n",
                       format_order(res.order.value()), res.mean_fitness[best], res.params.a,
                       res.params.b, name, estimator_name(est.kind));
    if (!out_path.empty()) {
        open_out(out_path) << curve.str();
    }
    return kExitOk;
}

int cmd_benchmark(const InputOptions& in, const EstimatorOptions& eo, const std::string& out_dir,
                  std::ostream& out)
{
    auto [name, series] = in.resolve();
    Estimator base = eo.build();
    const BenchmarkResult result = run_benchmark(name, series, eo.repeats, eo.seed, base);
    out << render_benchmark_table(result);
    if (!out_dir.empty()) {
        write_benchmark_outputs(out_dir, result);
    }
    return kExitOk;
}

int cmd_forecast(const InputOptions& in, const EstimatorOptions& eo, int horizon,
                 std::optional<double> r, double step, const std::string& out_path,
                 std::ostream& out)
{
    if (horizon < 1) {
        throw PreconditionError("--horizon must be at least 1");
    }
    auto [name, series] = in.resolve();
    const Estimator est = eo.build();
    GreyParams params = r ? estimate(series, FracOrder(*r), est, eo.repeats).params
                          : order_search(series, step, est, eo.repeats).params;
    const FitReport fit = fit_series(series, params);
    const Eigen::VectorXd pred = forecast(series, params, horizon);

    std::vector<std::int64_t> labels;
    for (int h = 1; h <= horizon; ++h) {
        labels.push_back(series.labels().back() + h * series.label_step());
    }
    std::ostringstream csv;
    csv << fmt::format("# {} {}: r={} a={:.10g} b={:.10g} in-sample MAPE={:.4f}%\n", name,
                       estimator_name(est.kind), format_order(params.order.value()), params.a,
                       params.b, fit.mape);
    write_series_csv(csv, labels, pred);
    out << csv.str();
    if (!out_path.empty()) {
        open_out(out_path) << csv.str();
    }
    return kExitOk;
}

} // namespace

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const PreconditionError*>(&e) != nullptr) return kExitUsage;
    if (dynamic_cast<const DataError*>(&e) != nullptr) return kExitData;
    if (dynamic_cast<const NumericalError*>(&e) != nullptr) return kExitNumerical;
    return kExitData;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fractional-order grey model FGM(1,1) with LSM, PSO and ADCSO estimators", "fgm"};
    app.require_subcommand(1);

    InputOptions in;
    EstimatorOptions eo;
    double r = 0.0;
    double step = 0.01;
    int horizon = 0;
    std::optional<double> forecast_r;
    std::string out_path;

    auto* fit = app.add_subcommand("fit", "Estimate (a, b) at a fixed order and report the fit");
    in.add_to(*fit);
    eo.add_to(*fit);
    fit->add_option("--r", r, "Fractional order, 0 < r <= 2")->required();
    fit->add_option("--out", out_path, "Write a JSON report");

    auto* search = app.add_subcommand("order-search", "Grid-search the fractional order");
    in.add_to(*search);
    eo.add_to(*search);
    search->add_option("--step", step, "Grid step in (0, 0.5]")->capture_default_str();
    search->add_option("--out", out_path, "Write the r,mean_error curve as CSV");

    auto* bench = app.add_subcommand("benchmark", "Reproduce the 3 estimators x 3 orders comparison");
    in.add_to(*bench);
    eo.add_to(*bench);
    bench->add_option("--out", out_path, "Directory for results.json, table.txt and traces/");

    auto* fc = app.add_subcommand("forecast", "Order search + fit, then predict future periods");
    in.add_to(*fc);
    eo.add_to(*fc);
    fc->add_option("--horizon", horizon, "Periods to predict")->required()->check(CLI::PositiveNumber);
    fc->add_option("--r", forecast_r, "Skip the order search and use this order");
    fc->add_option("--step", step, "Order-search grid step")->capture_default_str();
    fc->add_option("--out", out_path, "Write the predictions CSV");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fit->parsed()) return cmd_fit(in, eo, r, out_path, out);
        if (search->parsed()) return cmd_order_search(in, eo, step, out_path, out);
        if (bench->parsed()) return cmd_benchmark(in, eo, out_path, out);
        if (fc->parsed()) return cmd_forecast(in, eo, horizon, forecast_r, step, out_path, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitUsage;
}

} // namespace fgm::harness
