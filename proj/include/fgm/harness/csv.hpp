#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fgm/greymodel.hpp"
#include "fgm/optim.hpp"

namespace fgm::harness {

/// Reads a `label,value` CSV (header required). Errors name the offending line.
Series load_csv(const std::filesystem::path& path);
Series parse_series_csv(std::istream& in, std::string_view source = "<stream>");

void write_series_csv(std::ostream& out, const std::vector<std::int64_t>& labels,
                      const Eigen::VectorXd& values);

/// `iteration,best_fitness`, iterations numbered from 1.
void write_trace_csv(std::ostream& out, const RunTrace& trace);
std::vector<double> read_trace_csv(std::istream& in);

/// `r,mean_error` rows of an order search.
void write_curve_csv(std::ostream& out, const std::vector<double>& grid,
                     const std::vector<double>& mean_fitness);
std::vector<std::pair<double, double>> read_curve_csv(std::istream& in);

/// Shortest decimal text that round-trips to the same double.
std::string format_exact(double value);
/// Grid order without accumulated floating-point noise (0.07, not 0.07000000000000001).
std::string format_order(double r);

} // namespace fgm::harness
