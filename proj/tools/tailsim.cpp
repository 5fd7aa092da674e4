// tailsim: scenario runner and design utilities for the tail-sitter model.

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tailsitter/equilibria.hpp"
#include "tailsitter/errors.hpp"
#include "tailsitter/lqr.hpp"
#include "tailsitter/params_io.hpp"
#include "tailsitter/simharness.hpp"

using namespace tailsitter;
using nlohmann::json;

namespace {

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json to_json(const EquilibriumPoint& eq) {
  return {{"p", {eq.x_eq.p.x(), eq.x_eq.p.y(), eq.x_eq.p.z()}},
          {"v", {eq.x_eq.v.x(), eq.x_eq.v.y(), eq.x_eq.v.z()}},
          {"q", {eq.x_eq.q.eta, eq.x_eq.q.eps.x(), eq.x_eq.q.eps.y(), eq.x_eq.q.eps.z()}},
          {"u", {eq.u_eq.u1, eq.u_eq.u2, eq.u_eq.u3, eq.u_eq.u4}},
          {"u_virtual", {eq.u_virtual.t_sum, eq.u_virtual.t_diff, eq.u_virtual.d_sum, eq.u_virtual.d_diff}},
          {"residual", eq.residual_norm},
          {"airspeed", eq.airspeed},
          {"iterations", eq.iterations}};
}

VehicleParams params_or_default(const std::string& path) {
  return path.empty() ? VehicleParams::reference() : load_params(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail-sitter simulation and control design"};
  app.require_subcommand(1);
  std::string params_path;
  bool verbose = false;
  app.add_option("--params", params_path, "vehicle parameter YAML (default: built-in reference vehicle)");
  app.add_flag("-v,--verbose", verbose, "debug logging");

  auto* sim = app.add_subcommand("simulate", "run a scenario file");
  std::string scenario_path, out_dir = "out";
  bool plot = false;
  sim->add_option("--scenario", scenario_path, "scenario YAML")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "output directory");
  sim->add_flag("--plot", plot, "write SVG charts next to the CSV");

  auto* trim = app.add_subcommand("trim", "level-flight trim of the airspeed-dependent model");
  double speed = 5.0;
  trim->add_option("--speed", speed, "airspeed [m/s]")->required();

  auto* lin = app.add_subcommand("linearize", "Jacobians at an operating point");
  std::string at = "hover";
  bool fd = false;
  lin->add_option("--at", at, "hover or trim:<speed>");
  lin->add_flag("--fd", fd, "finite differences instead of the analytic hover form");

  auto* lqr = app.add_subcommand("lqr", "hover LQR gain");
  std::string lqr_at = "hover", weights_scenario;
  bool integrator = false;
  lqr->add_option("--at", lqr_at, "operating point (hover)")->check(CLI::IsMember({"hover"}));
  lqr->add_flag("--integrator", integrator, "augment with position integrators");
  lqr->add_option("--weights", weights_scenario, "take Q/R from this scenario file");

  auto* roa = app.add_subcommand("roa", "sampled region-of-attraction estimate of the hover LQR");
  RoaSampling sampling;
  std::string roa_csv;
  roa->add_option("--samples", sampling.n_samples, "number of samples")->check(CLI::PositiveNumber);
  roa->add_option("--seed", sampling.seed, "RNG seed");
  roa->add_option("--workers", sampling.workers, "worker threads");
  roa->add_option("--radii", sampling.radii, "radius schedule");
  roa->add_option("--csv", roa_csv, "write samples to this CSV");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (*sim) {
      const Scenario s = load_scenario(scenario_path);
      const VehicleParams params = params_path.empty() ? scenario_params(s) : load_params(params_path);
      const SimResult r = run_scenario(s, params);
      std::vector<std::string> files;
      if (plot) {
        files = emit_plots(r, out_dir, {s.supervisor.v_enter, s.supervisor.v_exit});
      } else {
        std::filesystem::create_directories(out_dir);
        const auto log_path = (std::filesystem::path(out_dir) / "log.csv").string();
        std::ofstream f(log_path, std::ios::binary);
        write_log_csv(f, r.log);
        const auto jumps_path = (std::filesystem::path(out_dir) / "jumps.csv").string();
        std::ofstream g(jumps_path, std::ios::binary);
        write_jumps_csv(g, r.jumps);
        files = {log_path, jumps_path};
      }
      const auto& x = r.final_state;
      json summary = {{"scenario", s.name},
                      {"steps", r.log.size()},
                      {"jumps", r.jumps.size()},
                      {"final_p", {x.p.x(), x.p.y(), x.p.z()}},
                      {"final_v", {x.v.x(), x.v.y(), x.v.z()}},
                      {"final_target_error", (x.p - s.target_at(s.t_end)).norm()},
                      {"files", files}};
      std::cout << summary.dump(2) << "\n";
    } else if (*trim) {
      const EquilibriumPoint eq = trim_level_flight(params_or_default(params_path), speed);
      std::cout << to_json(eq).dump(2) << "\n";
    } else if (*lin) {
      const VehicleParams params = params_or_default(params_path);
      LinearModel lm;
      if (at == "hover") {
        lm = fd ? linearize_fd(params, hover_equilibrium(params), Model::Simplified) : linearize_analytic_hover(params);
      } else if (at.rfind("trim:", 0) == 0) {
        const EquilibriumPoint eq = trim_level_flight(params, std::stod(at.substr(5)));
        lm = linearize_fd(params, eq, Model::Augmented, Layout::Flight10);
      } else {
        throw Error("--at expects hover or trim:<speed>");
      }
      std::cout << json{{"states", lm.states}, {"A", to_json(lm.A)}, {"B", to_json(lm.B)}, {"equilibrium", to_json(lm.eq)}}
                       .dump(2)
                << "\n";
    } else if (*lqr) {
      const VehicleParams params = params_or_default(params_path);
      const LqrDiagonalWeights w = weights_scenario.empty() ? LqrDiagonalWeights{} : load_scenario(weights_scenario).lqr;
      const LqrDesign d = design_hover_lqr(params, integrator ? w.integral() : w.hover(), integrator);
      json eigs = json::array();
      for (const auto& e : d.closed_loop_eigs) eigs.push_back({e.real(), e.imag()});
      // the 4x13 form carries a zero column for the quaternion scalar part
      const Eigen::MatrixXd K13 = embed_eta_column(d.K, 6);
      std::cout << json{{"K", to_json(K13)},
                        {"S", to_json(d.S)},
                        {"closed_loop_eigs", eigs},
                        {"spectral_abscissa", d.spectral_abscissa()},
                        {"care_residual", d.care_residual},
                        {"newton_iterations", d.newton_iterations}}
                       .dump(2)
                << "\n";
    } else if (*roa) {
      const VehicleParams params = params_or_default(params_path);
      const LqrDesign d = design_hover_lqr(params, LqrDiagonalWeights{}.hover());
      const RoaEstimate est = estimate_roa(d, params, sampling);
      int ok = 0;
      for (const auto& s : est.samples) ok += s.converged;
      if (!roa_csv.empty()) {
        std::ofstream f(roa_csv, std::ios::binary);
        f << "index,V0,converged\r\n";
        for (std::size_t i = 0; i < est.samples.size(); ++i)
          f << i << ',' << csv_number(est.samples[i].V0) << ',' << est.samples[i].converged << "\r\n";
      }
      std::cout << json{{"samples", est.samples.size()}, {"converged", ok}, {"c_star", est.c_star}}.dump(2) << "\n";
    }
  } catch (const NoConvergence& e) {
    spdlog::error("{} (residual {:.3g})", e.what(), e.residual);
    return 2;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
