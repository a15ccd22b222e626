#pragma once

#include <string>

#include "gzk/analysis.hpp"
#include "gzk/functionals.hpp"
#include "gzk/groundstate.hpp"

namespace gzk::report {

// JSON emitters for the documented report schemas. Key order is alphabetical
// (library default), which together with shortest-round-trip doubles keeps
// the bytes reproducible run to run.
std::string groundstate_json(const groundstate::GroundState& gs);
std::string threshold_json(const functionals::ThresholdReport& r);
std::string probe_json(const analysis::ProbeReport& r);

} // namespace gzk::report
