// cdg/config.hpp — run configuration: JSON ingestion with defaults, strict
// validation, and canonical serialization.
//
// Unit conventions at the config boundary: frequencies in plain Hz, gate
// times in nanoseconds, flux-pulse coefficients and angles in radians.
// Everything is converted to angular frequencies and seconds exactly once,
// when a RunConfig is turned into library objects.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cdg/optimizer.hpp"
#include "cdg/system.hpp"

namespace cdg {

inline constexpr const char* kVersion = "cdgate 1.0.0";

// Configuration problems (malformed JSON, unknown keys, out-of-range values).
// The CLI maps this type to exit code 1; numerical failures map to 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CircuitConfig {
  std::string preset = "default";  // "default" or "explicit"
  double omega_1_hz = 10e9;
  double omega_2_hz = 11e9;
  double E_C1_hz = 300e6;
  double E_C2_hz = 300e6;
  double theta_0_rad = 0.78539816339744831;  // π/4
  int squid_count = 5;
  double g_hz = 10e6;
};

struct FlagSetConfig {
  bool sta = false;
  bool cancellation = false;
};

// Per-subcommand payload. One struct holds the union of fields; each
// subcommand reads its own subset and validation is per-kind.
struct ExperimentConfig {
  std::string kind = "simulate";  // simulate|optimize|sweep|trace|verify-static|basis-report
  double T_g_ns = 25.0;
  std::vector<double> A, B, C;  // envelope coefficients (rad)
  bool enable_sta = false;
  bool enable_cancellation = false;

  // optimize / sweep
  int max_iterations = 200;
  double fd_step_rad = 1e-4;
  double bound_rad = 0.5;
  double improvement_tol = 1e-6;
  int improvement_window = 3;
  int coarse_scan_points = 5;
  std::vector<double> T_list_ns;          // sweep
  std::vector<FlagSetConfig> flag_sets;   // sweep; empty → the 3 standard sets

  // trace / verify-static
  int basis_state = 0;        // 0..3, which computational-basis column
  double sample_dt_ns = 0.1;  // trace sampling grid
};

struct RunConfig {
  CircuitConfig circuit;
  std::string model = "rwa";  // circuit|rwa|static
  int truncation = 12;        // max Fock index per mode
  double dt_s = 0.0;          // 0 → per-model default step
  double P_over_K = 4.0;
  double trim_p1_hz = 0.0;
  double trim_p2_hz = 0.0;
  double basis_max_leakage = 1e-2;
  double norm_tol = 1e-6;
  int N_f = 2;
  int workers = 1;
  ExperimentConfig experiment;
};

// Parse JSON text into a fully-resolved RunConfig (defaults materialized).
// Unknown keys, wrong types, and out-of-range values throw ConfigError with
// the offending field path. parse(serialize(parse(text))) == parse(text).
RunConfig parse_config(const std::string& json_text);

// Canonical JSON form with every field present, keys sorted.
std::string serialize_config(const RunConfig& config);

// Read and parse a config file; file-system problems throw ConfigError.
RunConfig load_config_file(const std::string& path);

bool operator==(const CircuitConfig& a, const CircuitConfig& b);
bool operator==(const FlagSetConfig& a, const FlagSetConfig& b);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
bool operator==(const RunConfig& a, const RunConfig& b);

// Conversion to library objects (Hz → rad/s, ns → s happen here).
CircuitParams circuit_params_from_config(const CircuitConfig& c);
SystemOptions system_options_from_config(const RunConfig& c);
OptimizeSettings optimize_settings_from_config(const RunConfig& c);
OptimizeFlags optimize_flags_from_config(const ExperimentConfig& e);

}  // namespace cdg
