#pragma once

#include <string>
#include <vector>

#include "solibound/verifier.hpp"

namespace solibound {

/* Names of the built-in verification suites, in run order for "all". */
std::vector<std::string> suite_names();

/* Builds a named suite with its pinned grids, steps, and tolerances.
   errors: invalid-config (unknown name). */
CheckSuite build_suite(const std::string& name);

SuiteOutcome run_named_suite(const std::string& name);

}  // namespace solibound
