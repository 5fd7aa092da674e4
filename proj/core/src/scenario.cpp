#include "tailsitter/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "tailsitter/errors.hpp"
#include "tailsitter/params_io.hpp"

namespace tailsitter {

LqrDiagonalWeights::LqrDiagonalWeights() {
  q << 1, 1, 1, 1, 1, 1, 10, 10, 10, 0.1, 0.1, 0.1;
  r << 1, 1, 1, 1;
  q_int << 0.5, 0.5, 0.5;
}

LqrWeights LqrDiagonalWeights::hover() const {
  return {q.asDiagonal().toDenseMatrix(), r.asDiagonal().toDenseMatrix(), {}};
}

LqrWeights LqrDiagonalWeights::integral() const {
  Eigen::VectorXd qa(15);
  qa << q, q_int;
  return {qa.asDiagonal().toDenseMatrix(), r.asDiagonal().toDenseMatrix(), {}};
}

Vec3 Scenario::target_at(double t) const {
  Vec3 p = targets.front().p;
  for (const auto& tp : targets)
    if (tp.t <= t) p = tp.p;
  return p;
}

Vec3 Scenario::wind_at(double t) const {
  Vec3 w = Vec3::Zero();
  for (const auto& wp : wind)
    if (wp.t <= t) w = wp.v;
  return w;
}

void Scenario::validate() const {
  if (!(dt > 0.0)) throw ParseError("scenario: dt must be positive");
  if (!(t_end > 0.0)) throw ParseError("scenario: t_end must be positive");
  if (targets.empty()) throw ParseError("scenario: at least one target required");
  auto sorted_t = [](const auto& v) {
    return std::is_sorted(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  };
  if (!sorted_t(targets)) throw ParseError("scenario: targets not time-sorted");
  if (!sorted_t(wind)) throw ParseError("scenario: wind schedule not time-sorted");
  if (std::abs(initial.q.norm() - 1.0) > 1e-6) throw ParseError("scenario: initial quaternion not unit");
  supervisor.validate();
  flight.validate();
}

namespace {

Vec3 vec3(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence() || n.size() != 3) throw ParseError(what + ": expected a 3-element list");
  return {n[0].as<double>(), n[1].as<double>(), n[2].as<double>()};
}

template <int N>
Eigen::Matrix<double, N, 1> vecn(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence() || static_cast<int>(n.size()) != N)
    throw ParseError(what + ": expected a " + std::to_string(N) + "-element list");
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = n[i].as<double>();
  return v;
}

void read_doubles(const YAML::Node& n, const std::map<std::string, double*>& fields, const std::string& section) {
  if (!n) return;
  if (!n.IsMap()) throw ParseError(section + ": expected a mapping");
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(section + ": unknown key '" + key + "'");
    *it->second = kv.second.as<double>();
  }
}

void check_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& section) {
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ParseError(section + ": unknown key '" + key + "'");
  }
}

ForceMode force_mode(const std::string& s) {
  if (s == "linear") return ForceMode::Linear;
  if (s == "qto") return ForceMode::Qto;
  if (s == "gompertz") return ForceMode::GompertzSat;
  if (s == "error_governor") return ForceMode::ErrorGovernor;
  throw ParseError("hover.mode: unknown force law '" + s + "'");
}

Mode mode_from(const std::string& s) {
  if (s == "nl_hover") return Mode::NlHover;
  if (s == "lin_hover") return Mode::LinHover;
  if (s == "flight") return Mode::Flight;
  throw ParseError("initial_mode: unknown mode '" + s + "'");
}

void read_hover(const YAML::Node& n, HoverGains& g) {
  if (!n) return;
  YAML::Node rest = YAML::Clone(n);
  if (n["mode"]) {
    g.mode = force_mode(n["mode"].as<std::string>());
    rest.remove("mode");
  }
  if (n["use_nu_prime"]) {
    g.use_nu_prime = n["use_nu_prime"].as<bool>();
    rest.remove("use_nu_prime");
  }
  read_doubles(rest,
               {{"k_pp", &g.k_pp}, {"k_pd", &g.k_pd}, {"k_delta", &g.k_delta}, {"k_q", &g.k_q},
                {"k_R", &g.k_R}, {"k_omega", &g.k_omega}, {"M_i", &g.M_i}, {"e_p_max", &g.e_p_max},
                {"e_v_max", &g.e_v_max}, {"gompertz_b", &g.gompertz_b}, {"gompertz_c", &g.gompertz_c},
                {"smooth_max_eps", &g.smooth_max_eps}, {"f_min", &g.f_min}, {"f_max", &g.f_max}},
               "hover");
}

}  // namespace

Scenario scenario_from_string(const std::string& text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!root.IsMap()) throw ParseError("scenario: top level must be a mapping");
  check_keys(root,
             {"name", "controller", "initial_mode", "model", "dt", "t_end", "v_c", "params", "initial", "targets",
              "wind", "hover", "flight", "supervisor", "limits", "lqr"},
             "scenario");
  Scenario s;
  try {
    if (root["name"]) s.name = root["name"].as<std::string>();
    if (root["controller"]) s.controller = controller_from_name(root["controller"].as<std::string>());
    if (root["initial_mode"]) s.initial_mode = mode_from(root["initial_mode"].as<std::string>());
    if (root["model"]) {
      const auto m = root["model"].as<std::string>();
      if (m == "augmented")
        s.model = Model::Augmented;
      else if (m == "simplified")
        s.model = Model::Simplified;
      else
        throw ParseError("model: expected augmented or simplified");
    }
    if (root["dt"]) s.dt = root["dt"].as<double>();
    if (root["t_end"]) s.t_end = root["t_end"].as<double>();
    if (root["v_c"]) s.v_c = root["v_c"].as<double>();
    if (root["params"]) {
      const std::filesystem::path p = root["params"].as<std::string>();
      s.params_file = p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
    }
    if (const auto in = root["initial"]) {
      check_keys(in, {"p", "v", "q", "omega", "actuators"}, "initial");
      if (in["p"]) s.initial.p = vec3(in["p"], "initial.p");
      if (in["v"]) s.initial.v = vec3(in["v"], "initial.v");
      if (in["q"]) s.initial.q = UnitQuat::from_vec(vecn<4>(in["q"], "initial.q")).normalized();
      if (in["omega"]) s.initial.omega_b = vec3(in["omega"], "initial.omega");
      if (in["actuators"]) {
        const Vec4 a = vecn<4>(in["actuators"], "initial.actuators");
        s.initial_actuators = PhysicalCommand{a(0), a(1), a(2), a(3)};
      }
    }
    if (const auto tg = root["targets"]) {
      s.targets.clear();
      for (const auto& e : tg) s.targets.push_back({e["t"].as<double>(), vec3(e["p"], "targets.p")});
    }
    if (const auto w = root["wind"]) {
      for (const auto& e : w) s.wind.push_back({e["t"].as<double>(), vec3(e["v"], "wind.v")});
    }
    read_hover(root["hover"], s.hover);
    auto& f = s.flight;
    read_doubles(root["flight"],
                 {{"k_c", &f.k_c}, {"k_d", &f.k_d}, {"k_p", &f.k_p}, {"k_i", &f.k_i}, {"k_dv", &f.k_dv},
                  {"k_u", &f.k_u}, {"sigma_floor", &f.sigma_floor}, {"deriv_tau", &f.deriv_tau},
                  {"v_min", &f.v_min}},
                 "flight");
    auto& sv = s.supervisor;
    read_doubles(root["supervisor"],
                 {{"v_enter", &sv.v_enter}, {"v_exit", &sv.v_exit}, {"d_flight", &sv.d_flight},
                  {"v_min_flight", &sv.v_min_flight}},
                 "supervisor");
    auto& l = s.limits;
    read_doubles(root["limits"],
                 {{"omega_min", &l.omega_min}, {"omega_max", &l.omega_max}, {"omega_dot_max", &l.omega_dot_max},
                  {"delta_max", &l.delta_max}, {"delta_rate_max", &l.delta_rate_max}},
                 "limits");
    if (const auto q = root["lqr"]) {
      check_keys(q, {"q", "r", "q_int"}, "lqr");
      if (q["q"]) s.lqr.q = vecn<12>(q["q"], "lqr.q");
      if (q["r"]) s.lqr.r = vecn<4>(q["r"], "lqr.r");
      if (q["q_int"]) s.lqr.q_int = vecn<3>(q["q_int"], "lqr.q_int");
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  YAML::Node probe;
  try {
    probe = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ParseError("cannot read scenario '" + path + "': " + e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path();
  return scenario_from_string(YAML::Dump(probe), dir.empty() ? "." : dir.string());
}

VehicleParams scenario_params(const Scenario& s) {
  return s.params_file.empty() ? VehicleParams::reference() : load_params(s.params_file);
}

ControllerSet build_controllers(const Scenario& s, const VehicleParams& params) {
  ControllerSet c;
  c.hover = s.hover;
  c.flight = s.flight;
  c.supervisor = s.supervisor;
  c.limits = s.limits;
  c.v_c = s.v_c;
  c.model = s.model;
  c.lqr = design_hover_lqr(params, s.lqr.hover(), false);
  if (s.controller == ControllerKind::LqrInt) c.lqi = design_hover_lqr(params, s.lqr.integral(), true);
  return c;
}

}  // namespace tailsitter
