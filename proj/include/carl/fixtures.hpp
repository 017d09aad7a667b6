#pragma once

#include <string>
#include <vector>

#include "carl/model.hpp"

namespace carl {

/// Names of the bundled example systems.
std::vector<std::string> fixture_names();

/// JSON model document for a bundled fixture. Throws parse_error for unknown names.
std::string fixture_document(const std::string& name);

ModelSpec fixture_model(const std::string& name);

/// The ODE twin used by `validate` (test1 -> test1-ode, test2 -> test2-ode).
/// Empty string if the fixture has no reference ODE.
std::string fixture_ode_twin(const std::string& name);

} // namespace carl
