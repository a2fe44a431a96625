#include "fgm/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

namespace fgm::harness {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end && !text.empty();
}

DataError line_error(std::string_view source, std::size_t line, const std::string& what)
{
    return DataError(fmt::format("{}: line {}: {}", source, line, what));
}

/// Splits "a,b" into two fields; returns false for any other field count.
bool split_pair(std::string_view line, std::string_view& first, std::string_view& second)
{
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
        return false;
    }
    first = trim(line.substr(0, comma));
    second = trim(line.substr(comma + 1));
    return true;
}

bool skippable(std::string_view line)
{
    line = trim(line);
    return line.empty() || line.front() == '#';
}

} // namespace

std::string format_exact(double value)
{
    return fmt::format("{}", value);
}

std::string format_order(double r)
{
    return fmt::format("{}", std::round(r * 1e9) / 1e9);
}

Series parse_series_csv(std::istream& in, std::string_view source)
{
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::int64_t> labels;
    std::vector<double> values;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.remove_prefix(3);
        }
        if (skippable(line)) {
            continue;
        }
        std::string_view f1;
        std::string_view f2;
        if (!have_header) {
            if (!split_pair(line, f1, f2) || f1 != "label" || f2 != "value") {
                throw line_error(source, line_no, "expected header 'label,value'");
            }
            have_header = true;
            continue;
        }
        if (!split_pair(line, f1, f2)) {
            throw line_error(source, line_no, "expected two comma-separated fields");
        }
        std::int64_t label = 0;
        double value = 0.0;
        if (!parse_number(f1, label)) {
            throw line_error(source, line_no, fmt::format("label '{}' is not an integer", f1));
        }
        if (!parse_number(f2, value) || !std::isfinite(value)) {
            throw line_error(source, line_no, fmt::format("value '{}' is not a number", f2));
        }
        if (value <= 0.0) {
            throw line_error(source, line_no, "value must be positive");
        }
        if (!labels.empty() && label <= labels.back()) {
            throw line_error(source, line_no, "labels must be strictly increasing");
        }
        if (labels.size() >= 2 && label - labels.back() != labels[1] - labels[0]) {
            throw line_error(source, line_no, "labels must be equally spaced");
        }
        labels.push_back(label);
        values.push_back(value);
    }
    if (!have_header) {
        throw DataError(fmt::format("{}: empty input", source));
    }
    if (values.empty()) {
        throw DataError(fmt::format("{}: no observations after header", source));
    }
    return Series(std::move(labels),
                  Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
}

Series load_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DataError(fmt::format("cannot open '{}'", path.string()));
    }
    return parse_series_csv(in, path.string());
}

void write_series_csv(std::ostream& out, const std::vector<std::int64_t>& labels,
                      const Eigen::VectorXd& values)
{
    out << "label,value\n";
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        out << labels[static_cast<std::size_t>(i)] << ',' << format_exact(values(i)) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const RunTrace& trace)
{
    out << "iteration,best_fitness\n";
    for (std::size_t i = 0; i < trace.best_fitness_per_iter.size(); ++i) {
        out << (i + 1) << ',' << format_exact(trace.best_fitness_per_iter[i]) << '\n';
    }
}

std::vector<double> read_trace_csv(std::istream& in)
{
    std::string raw;
    std::getline(in, raw);
    if (trim(raw) != "iteration,best_fitness") {
        throw DataError("trace: expected header 'iteration,best_fitness'");
    }
    std::vector<double> fitness;
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        if (skippable(raw)) continue;
        std::string_view f1;
        std::string_view f2;
        std::size_t iteration = 0;
        double value = 0.0;
        if (!split_pair(raw, f1, f2) || !parse_number(f1, iteration) || !parse_number(f2, value) ||
            iteration != fitness.size() + 1) {
            throw line_error("trace", line_no, "malformed row");
        }
        fitness.push_back(value);
    }
    return fitness;
}

void write_curve_csv(std::ostream& out, const std::vector<double>& grid,
                     const std::vector<double>& mean_fitness)
{
    out << "r,mean_error\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_order(grid[i]) << ',' << format_exact(mean_fitness[i]) << '\n';
    }
}

std::vector<std::pair<double, double>> read_curve_csv(std::istream& in)
{
    std::string raw;
    std::getline(in, raw);
    if (trim(raw) != "r,mean_error") {
        throw DataError("curve: expected header 'r,mean_error'");
    }
    std::vector<std::pair<double, double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        if (skippable(raw)) continue;
        std::string_view f1;
        std::string_view f2;
        double r = 0.0;
        double e = 0.0;
        if (!split_pair(raw, f1, f2) || !parse_number(f1, r) || !parse_number(f2, e)) {
            throw line_error("curve", line_no, "malformed row");
        }
        rows.emplace_back(r, e);
    }
    return rows;
}

} // namespace fgm::harness
