#pragma once

// Hyperparameter files: flat `key = value` lines under [CSO] and [PSO] sections,
// keyed by the names of the published settings tables:
//
//   [CSO]                 [PSO]
//   N = 40                N = 40
//   M = 30                c1 = 1.5
//   SRD = 0.2             c2 = 1.5
//   CDC = 2               w = 0.7
//   SPC = true            Iter_max = 300
//   mr = 0.2              v_frac = 0.2
//   c = 1.05
//   w = 0.6
//   Iter_max = 300
//   v_frac = 0.2
//
// `#` starts a comment. Unknown keys and keys outside a section are errors.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fgm/optim.hpp"

namespace fgm::harness {

void apply_config(std::istream& in, Estimator& estimator, std::string_view source = "<config>");
void load_config(const std::filesystem::path& path, Estimator& estimator);
std::string render_config(const Estimator& estimator);

} // namespace fgm::harness
