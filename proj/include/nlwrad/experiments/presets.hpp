#pragma once

#include <string>
#include <vector>

#include "nlwrad/experiments/config.hpp"

namespace nlwrad {

/// Names accepted by preset(), in listing order.
std::vector<std::string> preset_names();

/// Canned configuration; InvalidParameter listing the known names otherwise.
ExperimentConfig preset(const std::string& name);

}  // namespace nlwrad
