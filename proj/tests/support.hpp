#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nlwrad/solver/field_state.hpp"

namespace testing {

inline nlwrad::RadialProfile zero_profile() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

inline nlwrad::RadialProfile gaussian(double a, double sigma) {
    return {[=](double r) { return a * std::exp(-r * r / (sigma * sigma)); },
            [=](double r) { return -2.0 * a * r / (sigma * sigma) * std::exp(-r * r / (sigma * sigma)); }};
}

inline nlwrad::FieldState gaussian_state(int d, double p, double dr, double r_max, double a = 1.0) {
    const auto params = nlwrad::make_params(d, p);
    return nlwrad::init_from_profile(gaussian(a, 1.0), zero_profile(), nlwrad::RadialGrid::covering(dr, r_max), params);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("nlwrad_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace testing
