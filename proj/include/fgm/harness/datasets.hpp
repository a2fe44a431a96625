#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fgm/greymodel.hpp"

namespace fgm::harness {

struct Dataset {
    std::string name;
    Series series;
    std::string source;
};

/// Wuhan Port container throughput 2011-2015, TEU.
const Dataset& wuhan();
/// Zhejiang Province marine capture production 2007-2013, tonnes.
const Dataset& zhejiang();

/// Looks up an embedded dataset by name; throws PreconditionError for unknown names.
const Dataset& dataset_by_name(std::string_view name);
std::vector<std::string> dataset_names();

} // namespace fgm::harness
