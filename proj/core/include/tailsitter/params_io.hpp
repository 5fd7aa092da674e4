#pragma once

#include <string>

#include "tailsitter/vehicle.hpp"

namespace YAML {
class Node;
}

namespace tailsitter {

/// Reads a YAML mapping keyed by the parameter symbols (m, c, b, S, S_p or S_f, Jxx, ...,
/// rho, mu, delta_r, S_wet). Keys that are absent keep the reference() value; unknown keys throw.
VehicleParams load_params(const std::string& path);
VehicleParams params_from_yaml(const YAML::Node& node, VehicleParams base = VehicleParams::reference());
VehicleParams params_from_string(const std::string& yaml_text);

std::string params_to_yaml(const VehicleParams& params);

}  // namespace tailsitter
