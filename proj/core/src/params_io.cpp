#include "tailsitter/params_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

std::vector<std::pair<const char*, double VehicleParams::*>> fields() {
  return {
      {"m", &VehicleParams::m},         {"c", &VehicleParams::c},
      {"b", &VehicleParams::b},         {"S", &VehicleParams::S},
      {"S_p", &VehicleParams::S_p},     {"Jxx", &VehicleParams::Jxx},
      {"Jyy", &VehicleParams::Jyy},     {"Jzz", &VehicleParams::Jzz},
      {"J_p", &VehicleParams::J_p},     {"k_f", &VehicleParams::k_f},
      {"k_m", &VehicleParams::k_m},     {"C_d0", &VehicleParams::C_d0},
      {"C_y0", &VehicleParams::C_y0},   {"p_x", &VehicleParams::p_x},
      {"p_y", &VehicleParams::p_y},     {"p_z", &VehicleParams::p_z},
      {"a_x", &VehicleParams::a_x},     {"a_y", &VehicleParams::a_y},
      {"a_z", &VehicleParams::a_z},     {"xi_f", &VehicleParams::xi_f},
      {"xi_m", &VehicleParams::xi_m},   {"C_lp", &VehicleParams::C_lp},
      {"C_lq", &VehicleParams::C_lq},   {"C_lr", &VehicleParams::C_lr},
      {"C_mp", &VehicleParams::C_mp},   {"C_mq", &VehicleParams::C_mq},
      {"C_mr", &VehicleParams::C_mr},   {"C_np", &VehicleParams::C_np},
      {"C_nq", &VehicleParams::C_nq},   {"C_nr", &VehicleParams::C_nr},
      {"rho", &VehicleParams::rho},     {"mu", &VehicleParams::mu},
      {"delta_r", &VehicleParams::delta_r}, {"S_wet", &VehicleParams::S_wet},
      {"g", &VehicleParams::g},
  };
}

}  // namespace

VehicleParams params_from_yaml(const YAML::Node& node, VehicleParams base) {
  if (!node.IsMap()) throw ParseError("vehicle parameters must be a mapping");
  const auto table = fields();
  for (const auto& kv : node) {
    std::string key = kv.first.as<std::string>();
    if (key == "S_f") key = "S_p";
    bool found = false;
    for (const auto& [name, member] : table) {
      if (key == name) {
        try {
          base.*member = kv.second.as<double>();
        } catch (const YAML::Exception&) {
          throw ParseError("parameter '" + key + "' is not a number");
        }
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("unknown vehicle parameter '" + key + "'");
  }
  base.validate();
  return base;
}

VehicleParams params_from_string(const std::string& yaml_text) {
  try {
    return params_from_yaml(YAML::Load(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("vehicle parameters: ") + e.what());
  }
}

VehicleParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return params_from_string(ss.str());
}

std::string params_to_yaml(const VehicleParams& params) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  for (const auto& [name, member] : fields()) out << YAML::Key << name << YAML::Value << params.*member;
  out << YAML::EndMap;
  return out.c_str();
}

}  // namespace tailsitter
