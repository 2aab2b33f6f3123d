// cdgate — command-line front end for the conditional-driving two-qubit gate
// simulator: configuration ingestion, experiment orchestration, and
// figure-data export (CSV/JSON). Exit codes: 0 success, 1 configuration
// error, 2 numerical failure.
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cdg/config.hpp"
#include "cdg/fidelity.hpp"
#include "cdg/optimizer.hpp"
#include "cdg/system.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace cdg;

std::string flags_name(bool sta, bool cancellation) {
  if (sta && cancellation) return "sta+cancellation";
  if (cancellation) return "cancellation";
  if (sta) return "sta";
  return "alone";
}

json record_to_json(const OptimizationRecord& r) {
  return json{{"T_g_ns", s_to_ns(r.T_g)},
              {"flags", flags_name(r.flags.sta, r.flags.cancellation)},
              {"model", r.model},
              {"A_rad", r.A},
              {"B_rad", r.B},
              {"C_rad", r.C},
              {"fidelity", r.fidelity},
              {"infidelity_history", r.infidelity_history},
              {"objective_evaluations", r.objective_evaluations},
              {"wall_time_s", r.wall_time_s},
              {"converged", r.converged},
              {"status", r.status}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_manifest(const fs::path& out_dir, const RunConfig& cfg) {
  json manifest{{"version", kVersion},
                {"command", cfg.experiment.kind},
                {"config", json::parse(serialize_config(cfg))}};
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string csv_num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

PulseProgram program_from_experiment(const GateSystem& sys,
                                     const ExperimentConfig& e) {
  return sys.program_for(ns_to_s(e.T_g_ns), e.A, e.B, e.C, e.enable_sta,
                         e.enable_cancellation);
}

int cmd_simulate(const GateSystem& sys, const RunConfig& cfg,
                 const fs::path& out_dir) {
  const PulseProgram program = program_from_experiment(sys, cfg.experiment);
  const GateMatrix gate = sys.gate(program);
  const double phase = best_fit_conditional_phase(gate.U);

  std::ostringstream csv;
  csv << "# gate matrix in the computational basis |00>,|01>,|10>,|11> "
         "(dimensionless amplitudes)\n"
      << "row,col,re,im\n";
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      csv << r << ',' << c << ',' << csv_num(gate.U(r, c).real()) << ','
          << csv_num(gate.U(r, c).imag()) << '\n';
  write_text(out_dir / "gate_matrix.csv", csv.str());

  json result{{"fidelity", gate.fidelity},
              {"conditional_phase_rad", phase},
              {"T_g_ns", cfg.experiment.T_g_ns},
              {"model", cfg.model}};
  write_text(out_dir / "result.json", result.dump(2) + "\n");

  std::cout << "model = " << cfg.model << ", T_g = " << cfg.experiment.T_g_ns
            << " ns\n"
            << "average gate fidelity F_bar = " << std::setprecision(10)
            << gate.fidelity << "\n"
            << "best-fit conditional phase = " << std::setprecision(10) << phase
            << " rad\n";
  return 0;
}

int cmd_optimize(const GateSystem& sys, const RunConfig& cfg,
                 const fs::path& out_dir) {
  const OptimizeSettings settings = optimize_settings_from_config(cfg);
  const OptimizeFlags flags = optimize_flags_from_config(cfg.experiment);
  std::optional<std::vector<double>> init;
  if (!cfg.experiment.A.empty()) {
    std::vector<double> x = cfg.experiment.A;
    x.resize(size_t(cfg.N_f), 0.0);
    if (flags.sta) {
      std::vector<double> b = cfg.experiment.B;
      b.resize(size_t(cfg.N_f), 0.0);
      x.insert(x.end(), b.begin(), b.end());
    }
    if (flags.cancellation) {
      std::vector<double> c = cfg.experiment.C;
      c.resize(size_t(cfg.N_f), 0.0);
      x.insert(x.end(), c.begin(), c.end());
    }
    init = std::move(x);
  }

  const OptimizationRecord rec =
      optimize_pulse(sys, ns_to_s(cfg.experiment.T_g_ns), flags, settings, init);
  write_text(out_dir / "record.json", record_to_json(rec).dump(2) + "\n");

  std::cout << "model = " << rec.model << ", T_g = " << s_to_ns(rec.T_g)
            << " ns, flags = " << flags_name(flags.sta, flags.cancellation)
            << "\n"
            << "fidelity = " << std::setprecision(10) << rec.fidelity
            << " (converged = " << (rec.converged ? "true" : "false")
            << ", evaluations = " << rec.objective_evaluations << ")\n"
            << "status = " << rec.status << "\n";
  return rec.status == "ok" ? 0 : 2;
}

int cmd_sweep(const GateSystem& sys, const RunConfig& cfg,
              const fs::path& out_dir) {
  const OptimizeSettings settings = optimize_settings_from_config(cfg);
  std::vector<double> T_list;
  for (double t_ns : cfg.experiment.T_list_ns) T_list.push_back(ns_to_s(t_ns));
  std::vector<OptimizeFlags> flag_sets;
  for (const auto& f : cfg.experiment.flag_sets)
    flag_sets.push_back(OptimizeFlags{f.sta, f.cancellation});

  const auto records = sweep_gate_times(sys, T_list, flag_sets, settings);

  std::ostringstream csv;
  csv << "T_g_ns,flags,fidelity,evaluations,status\n";
  json jrecords = json::array();
  int ok_cells = 0;
  for (const auto& r : records) {
    csv << csv_num(s_to_ns(r.T_g)) << ','
        << flags_name(r.flags.sta, r.flags.cancellation) << ','
        << csv_num(r.fidelity) << ',' << r.objective_evaluations << ','
        << (r.status == "ok" ? "ok" : "failed") << '\n';
    jrecords.push_back(record_to_json(r));
    if (r.status == "ok") ++ok_cells;
  }
  write_text(out_dir / "sweep.csv", csv.str());
  write_text(out_dir / "records.json", jrecords.dump(2) + "\n");

  std::cout << "sweep finished: " << records.size() << " cells, " << ok_cells
            << " ok\n";
  for (const auto& r : records)
    std::cout << "  T_g = " << std::setw(6) << s_to_ns(r.T_g)
              << " ns  " << std::setw(18)
              << flags_name(r.flags.sta, r.flags.cancellation)
              << "  F_bar = " << std::setprecision(8) << r.fidelity
              << (r.status == "ok" ? "" : "  [" + r.status + "]") << "\n";
  return ok_cells > 0 ? 0 : 2;
}

int cmd_trace(const GateSystem& sys, const RunConfig& cfg,
              const fs::path& out_dir) {
  const PulseProgram program = program_from_experiment(sys, cfg.experiment);
  const Vec initial = sys.basis.states.col(cfg.experiment.basis_state);
  const PhotonTrace trace =
      photon_trace(initial, sys.action(program), ns_to_s(cfg.experiment.T_g_ns),
                   sys.settings, ns_to_s(cfg.experiment.sample_dt_ns));

  std::ostringstream csv;
  csv << "t_ns,n_1_photons,n_2_photons\n";
  for (size_t i = 0; i < trace.times.size(); ++i)
    csv << csv_num(s_to_ns(trace.times[i])) << ',' << csv_num(trace.n_1[i])
        << ',' << csv_num(trace.n_2[i]) << '\n';
  write_text(out_dir / "trace.csv", csv.str());

  json result{{"peak_n_1", trace.peak_n_1},
              {"peak_n_2", trace.peak_n_2},
              {"basis_state", cfg.experiment.basis_state},
              {"T_g_ns", cfg.experiment.T_g_ns},
              {"model", cfg.model}};
  write_text(out_dir / "result.json", result.dump(2) + "\n");

  std::cout << "peak <n_1> = " << std::setprecision(6) << trace.peak_n_1
            << ", peak <n_2> = " << trace.peak_n_2 << " over " << std::
            setprecision(6) << cfg.experiment.T_g_ns << " ns\n";
  return 0;
}

int cmd_verify_static(const GateSystem& sys, const RunConfig& cfg,
                      const fs::path& out_dir) {
  const PulseProgram program = program_from_experiment(sys, cfg.experiment);
  const Vec initial = sys.basis.states.col(cfg.experiment.basis_state);
  const double T_g = ns_to_s(cfg.experiment.T_g_ns);
  const double overlap = verify_static_vs_rwa(initial, program, sys.rwa, T_g,
                                              sys.dim_per_mode, sys.settings.dt);
  const double shift_mid =
      ac_zeeman_shift(0.5 * T_g, sys.rwa, program);

  json result{{"rwa_static_overlap", overlap},
              {"ac_zeeman_shift_mid_hz", angular_to_hz(shift_mid)},
              {"T_g_ns", cfg.experiment.T_g_ns},
              {"basis_state", cfg.experiment.basis_state}};
  write_text(out_dir / "result.json", result.dump(2) + "\n");

  std::cout << "static-vs-RWA final-state overlap = " << std::setprecision(10)
            << overlap << "\n"
            << "AC-Zeeman shift at T_g/2 = "
            << angular_to_hz(shift_mid) / 1e6 << " MHz\n";
  return 0;
}

int cmd_basis_report(const GateSystem& sys, const RunConfig& cfg,
                     const fs::path& out_dir) {
  (void)cfg;
  const auto& m = sys.modes;
  const auto& b = sys.bmode;
  json result{
      {"omega_tilde_1_hz", angular_to_hz(sys.ef.omega_tilde_1)},
      {"omega_tilde_2_hz", angular_to_hz(sys.ef.omega_tilde_2)},
      {"omega_minus_hz", angular_to_hz(m.omega_minus)},
      {"omega_plus_hz", angular_to_hz(m.omega_plus)},
      {"U_tilde", {{m.U_tilde(0, 0), m.U_tilde(0, 1)},
                   {m.U_tilde(1, 0), m.U_tilde(1, 1)}}},
      {"K_1b_hz", angular_to_hz(b.K_1b)},
      {"K_2b_hz", angular_to_hz(b.K_2b)},
      {"K_12b_hz", angular_to_hz(b.K_12b)},
      {"P_1b_hz", angular_to_hz(b.P_1b)},
      {"P_2b_hz", angular_to_hz(b.P_2b)},
      {"beta_1", b.beta_1},
      {"beta_2", b.beta_2},
      {"beta_approx_1", b.beta_approx_1},
      {"beta_approx_2", b.beta_approx_2},
      {"max_gram_deviation", sys.basis.max_gram_deviation},
      {"truncation", sys.dim_per_mode - 1}};
  write_text(out_dir / "basis_report.json", result.dump(2) + "\n");

  std::cout << std::setprecision(8)
            << "normal modes: omega_-/2pi = "
            << angular_to_hz(m.omega_minus) / 1e9
            << " GHz, omega_+/2pi = " << angular_to_hz(m.omega_plus) / 1e9
            << " GHz\n"
            << "cat amplitudes: beta_1 = " << b.beta_1
            << ", beta_2 = " << b.beta_2 << "\n"
            << "basis Gram deviation (max off-diagonal) = "
            << sys.basis.max_gram_deviation << "\n";
  return 0;
}

int run_command(const RunConfig& cfg, const fs::path& out_dir) {
  const GateSystem sys =
      make_gate_system(circuit_params_from_config(cfg.circuit),
                       system_options_from_config(cfg));
  write_manifest(out_dir, cfg);

  const std::string& kind = cfg.experiment.kind;
  if (kind == "simulate") return cmd_simulate(sys, cfg, out_dir);
  if (kind == "optimize") return cmd_optimize(sys, cfg, out_dir);
  if (kind == "sweep") return cmd_sweep(sys, cfg, out_dir);
  if (kind == "trace") return cmd_trace(sys, cfg, out_dir);
  if (kind == "verify-static") return cmd_verify_static(sys, cfg, out_dir);
  if (kind == "basis-report") return cmd_basis_report(sys, cfg, out_dir);
  throw ConfigError("unknown experiment kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cdgate — conditional-driving two-qubit gate on Kerr-cat qubits: "
      "simulation, pulse optimization, and figure-data export"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string model_override;
  int workers = -1;
  int truncation = -1;
  double dt = -1.0;
  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--workers", workers, "parallel objective evaluations");
  app.add_option("--model", model_override, "model override")
      ->check(CLI::IsMember({"circuit", "rwa", "static"}));
  app.add_option("--truncation", truncation, "max Fock index per mode");
  app.add_option("--dt", dt, "integrator step in seconds (0 = model default)");

  app.add_subcommand("simulate", "propagate one gate and report F_bar");
  app.add_subcommand("optimize", "optimize pulse coefficients at one T_g");
  app.add_subcommand("sweep", "optimize over gate times and flag sets");
  app.add_subcommand("trace", "photon-number expectation trace");
  app.add_subcommand("verify-static",
                     "static-model vs RWA final-state overlap");
  app.add_subcommand("basis-report", "normal modes, cat amplitudes, Gram");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad command line = configuration error
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    cfg.experiment.kind = app.get_subcommands().front()->get_name();
    if (!model_override.empty()) cfg.model = model_override;
    if (truncation > 0) cfg.truncation = truncation;
    if (dt > 0) cfg.dt_s = dt;
    if (workers >= 1) cfg.workers = workers;
    // Round-trip to re-validate the overridden config and materialize
    // kind-dependent defaults.
    cfg = parse_config(serialize_config(cfg));

    const fs::path out(out_dir);
    fs::create_directories(out);
    return run_command(cfg, out);
  } catch (const cdg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
