#pragma once

#include <string>

#include "casimir/config.hpp"
#include "casimir/parallel.hpp"
#include "casimir/results.hpp"

namespace casimir {

// One row per (saturation setting, separation), settings in config order. The
// (setting, separation) cells run on `executor`; rows are assembled in a fixed
// order, so the table does not depend on the worker count.
ResultTable run(const RunConfig& cfg, Executor* executor = nullptr);

// Cartesian product temperatures x sweep settings x separations.
ResultTable sweep(const RunConfig& cfg, Executor* executor = nullptr);

// Lossless mode frequencies for every (separation, k, polarization), as CSV
// with the same '#' metadata block as result tables.
std::string dispersion(const RunConfig& cfg, Executor* executor = nullptr);

// Header block shared by every output of a config.
ResultTable table_header(const RunConfig& cfg, const std::string& command);

}  // namespace casimir
