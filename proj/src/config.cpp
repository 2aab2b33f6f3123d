// cdg/config.cpp — JSON config parsing/serialization with strict key checks.
#include "cdg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cdg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config field '" + path + "': " + msg);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + key, "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(path + key, "expected a boolean");
  return v.get<bool>();
}

std::string get_str(const json& obj, const std::string& path,
                    const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_vec(const json& obj, const std::string& path,
                            const std::string& key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  const json& v = obj.at(key);
  if (!v.is_array()) fail(path + key, "expected an array of numbers");
  for (const auto& e : v) {
    if (!e.is_number()) fail(path + key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

CircuitConfig parse_circuit(const json& obj) {
  CircuitConfig c;
  check_keys(obj, "circuit",
             {"preset", "omega_1_hz", "omega_2_hz", "E_C1_hz", "E_C2_hz",
              "theta_0_rad", "squid_count", "g_hz"});
  c.preset = get_str(obj, "circuit.", "preset", "default");
  if (c.preset != "default" && c.preset != "explicit")
    fail("circuit.preset", "must be 'default' or 'explicit'");
  c.omega_1_hz = get_num(obj, "circuit.", "omega_1_hz", c.omega_1_hz);
  c.omega_2_hz = get_num(obj, "circuit.", "omega_2_hz", c.omega_2_hz);
  c.E_C1_hz = get_num(obj, "circuit.", "E_C1_hz", c.E_C1_hz);
  c.E_C2_hz = get_num(obj, "circuit.", "E_C2_hz", c.E_C2_hz);
  c.theta_0_rad = get_num(obj, "circuit.", "theta_0_rad", c.theta_0_rad);
  c.squid_count = get_int(obj, "circuit.", "squid_count", c.squid_count);
  c.g_hz = get_num(obj, "circuit.", "g_hz", c.g_hz);
  if (c.omega_1_hz <= 0 || c.omega_2_hz <= 0)
    fail("circuit.omega_j_hz", "mode frequencies must be positive");
  if (c.E_C1_hz <= 0 || c.E_C2_hz <= 0)
    fail("circuit.E_Cj_hz", "charging energies must be positive");
  if (c.theta_0_rad <= 0 || c.theta_0_rad >= two_pi / 4.0)
    fail("circuit.theta_0_rad", "flux bias must lie in (0, pi/2)");
  if (c.squid_count < 1) fail("circuit.squid_count", "must be >= 1");
  if (c.g_hz == 0) fail("circuit.g_hz", "coupling must be nonzero");
  return c;
}

ExperimentConfig parse_experiment(const json& obj) {
  ExperimentConfig e;
  check_keys(obj, "experiment",
             {"kind", "T_g_ns", "A", "B", "C", "enable_sta",
              "enable_cancellation", "max_iterations", "fd_step_rad",
              "bound_rad", "improvement_tol", "improvement_window",
              "coarse_scan_points", "T_list_ns", "flag_sets", "basis_state",
              "sample_dt_ns"});
  e.kind = get_str(obj, "experiment.", "kind", "simulate");
  const std::set<std::string> kinds{"simulate",      "optimize",
                                    "sweep",         "trace",
                                    "verify-static", "basis-report"};
  if (!kinds.count(e.kind))
    fail("experiment.kind",
         "must be one of simulate|optimize|sweep|trace|verify-static|"
         "basis-report");
  e.T_g_ns = get_num(obj, "experiment.", "T_g_ns", e.T_g_ns);
  e.A = get_vec(obj, "experiment.", "A");
  e.B = get_vec(obj, "experiment.", "B");
  e.C = get_vec(obj, "experiment.", "C");
  e.enable_sta = get_bool(obj, "experiment.", "enable_sta", false);
  e.enable_cancellation =
      get_bool(obj, "experiment.", "enable_cancellation", false);
  e.max_iterations = get_int(obj, "experiment.", "max_iterations", 200);
  e.fd_step_rad = get_num(obj, "experiment.", "fd_step_rad", 1e-4);
  e.bound_rad = get_num(obj, "experiment.", "bound_rad", 0.5);
  e.improvement_tol = get_num(obj, "experiment.", "improvement_tol", 1e-6);
  e.improvement_window = get_int(obj, "experiment.", "improvement_window", 3);
  e.coarse_scan_points = get_int(obj, "experiment.", "coarse_scan_points", 5);
  e.T_list_ns = get_vec(obj, "experiment.", "T_list_ns");
  e.basis_state = get_int(obj, "experiment.", "basis_state", 0);
  e.sample_dt_ns = get_num(obj, "experiment.", "sample_dt_ns", 0.1);

  if (obj.contains("flag_sets")) {
    const json& fs = obj.at("flag_sets");
    if (!fs.is_array()) fail("experiment.flag_sets", "expected an array");
    for (size_t i = 0; i < fs.size(); ++i) {
      const json& f = fs[i];
      const std::string p = "experiment.flag_sets[" + std::to_string(i) + "]";
      if (!f.is_object()) fail(p, "expected an object");
      check_keys(f, p, {"sta", "cancellation"});
      FlagSetConfig fc;
      fc.sta = get_bool(f, p + ".", "sta", false);
      fc.cancellation = get_bool(f, p + ".", "cancellation", false);
      e.flag_sets.push_back(fc);
    }
  }
  if (e.kind == "sweep" && e.flag_sets.empty()) {
    // The three standard configurations: pulse alone, +cancellation,
    // +cancellation+STA.
    e.flag_sets = {{false, false}, {false, true}, {true, true}};
  }

  const bool needs_T =
      e.kind == "simulate" || e.kind == "optimize" || e.kind == "trace" ||
      e.kind == "verify-static";
  if (needs_T && !(e.T_g_ns > 0))
    fail("experiment.T_g_ns", "gate time must be positive");
  if (e.kind == "sweep") {
    if (e.T_list_ns.empty()) fail("experiment.T_list_ns", "must be non-empty");
    for (double t : e.T_list_ns)
      if (!(t > 0)) fail("experiment.T_list_ns", "gate times must be positive");
  }
  if (e.kind == "optimize" || e.kind == "sweep") {
    if (e.max_iterations < 1) fail("experiment.max_iterations", "must be >= 1");
    if (!(e.fd_step_rad > 0)) fail("experiment.fd_step_rad", "must be > 0");
    if (!(e.bound_rad > 0)) fail("experiment.bound_rad", "must be > 0");
    if (e.improvement_window < 1)
      fail("experiment.improvement_window", "must be >= 1");
  }
  if (e.basis_state < 0 || e.basis_state > 3)
    fail("experiment.basis_state", "must be in 0..3");
  if (e.kind == "trace" && !(e.sample_dt_ns > 0))
    fail("experiment.sample_dt_ns", "must be > 0");
  return e;
}

json circuit_to_json(const CircuitConfig& c) {
  return json{{"preset", c.preset},
              {"omega_1_hz", c.omega_1_hz},
              {"omega_2_hz", c.omega_2_hz},
              {"E_C1_hz", c.E_C1_hz},
              {"E_C2_hz", c.E_C2_hz},
              {"theta_0_rad", c.theta_0_rad},
              {"squid_count", c.squid_count},
              {"g_hz", c.g_hz}};
}

json experiment_to_json(const ExperimentConfig& e) {
  json fs = json::array();
  for (const auto& f : e.flag_sets)
    fs.push_back(json{{"sta", f.sta}, {"cancellation", f.cancellation}});
  return json{{"kind", e.kind},
              {"T_g_ns", e.T_g_ns},
              {"A", e.A},
              {"B", e.B},
              {"C", e.C},
              {"enable_sta", e.enable_sta},
              {"enable_cancellation", e.enable_cancellation},
              {"max_iterations", e.max_iterations},
              {"fd_step_rad", e.fd_step_rad},
              {"bound_rad", e.bound_rad},
              {"improvement_tol", e.improvement_tol},
              {"improvement_window", e.improvement_window},
              {"coarse_scan_points", e.coarse_scan_points},
              {"T_list_ns", e.T_list_ns},
              {"flag_sets", fs},
              {"basis_state", e.basis_state},
              {"sample_dt_ns", e.sample_dt_ns}};
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig c;
  check_keys(root, "",
             {"circuit", "model", "truncation", "dt_s", "P_over_K",
              "trim_p1_hz", "trim_p2_hz", "basis_max_leakage", "norm_tol",
              "N_f", "workers", "experiment"});

  if (root.contains("circuit")) {
    if (!root.at("circuit").is_object()) fail("circuit", "expected an object");
    c.circuit = parse_circuit(root.at("circuit"));
  }
  c.model = get_str(root, "", "model", "rwa");
  try {
    (void)model_kind_from_string(c.model);
  } catch (const std::exception&) {
    fail("model", "must be one of circuit|rwa|static");
  }
  c.truncation = get_int(root, "", "truncation", 12);
  if (c.truncation < 2) fail("truncation", "must be >= 2");
  c.dt_s = get_num(root, "", "dt_s", 0.0);
  if (c.dt_s < 0) fail("dt_s", "must be >= 0 (0 selects the model default)");
  c.P_over_K = get_num(root, "", "P_over_K", 4.0);
  if (!(c.P_over_K > 0)) fail("P_over_K", "must be > 0");
  c.trim_p1_hz = get_num(root, "", "trim_p1_hz", 0.0);
  c.trim_p2_hz = get_num(root, "", "trim_p2_hz", 0.0);
  c.basis_max_leakage = get_num(root, "", "basis_max_leakage", 1e-2);
  if (!(c.basis_max_leakage > 0)) fail("basis_max_leakage", "must be > 0");
  c.norm_tol = get_num(root, "", "norm_tol", 1e-6);
  if (!(c.norm_tol > 0)) fail("norm_tol", "must be > 0");
  c.N_f = get_int(root, "", "N_f", 2);
  if (c.N_f < 1) fail("N_f", "must be >= 1");
  c.workers = get_int(root, "", "workers", 1);
  if (c.workers < 1) fail("workers", "must be >= 1");

  if (root.contains("experiment")) {
    if (!root.at("experiment").is_object())
      fail("experiment", "expected an object");
    c.experiment = parse_experiment(root.at("experiment"));
  }

  for (const char* name : {"A", "B", "C"}) {
    const std::vector<double>& v = name[0] == 'A'   ? c.experiment.A
                                   : name[0] == 'B' ? c.experiment.B
                                                    : c.experiment.C;
    if (int(v.size()) > c.N_f)
      fail(std::string("experiment.") + name,
           "has more coefficients than N_f");
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json root{{"circuit", circuit_to_json(c.circuit)},
            {"model", c.model},
            {"truncation", c.truncation},
            {"dt_s", c.dt_s},
            {"P_over_K", c.P_over_K},
            {"trim_p1_hz", c.trim_p1_hz},
            {"trim_p2_hz", c.trim_p2_hz},
            {"basis_max_leakage", c.basis_max_leakage},
            {"norm_tol", c.norm_tol},
            {"N_f", c.N_f},
            {"workers", c.workers},
            {"experiment", experiment_to_json(c.experiment)}};
  return root.dump(2);
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

bool operator==(const CircuitConfig& a, const CircuitConfig& b) {
  return a.preset == b.preset && a.omega_1_hz == b.omega_1_hz &&
         a.omega_2_hz == b.omega_2_hz && a.E_C1_hz == b.E_C1_hz &&
         a.E_C2_hz == b.E_C2_hz && a.theta_0_rad == b.theta_0_rad &&
         a.squid_count == b.squid_count && a.g_hz == b.g_hz;
}

bool operator==(const FlagSetConfig& a, const FlagSetConfig& b) {
  return a.sta == b.sta && a.cancellation == b.cancellation;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.kind == b.kind && a.T_g_ns == b.T_g_ns && a.A == b.A && a.B == b.B &&
         a.C == b.C && a.enable_sta == b.enable_sta &&
         a.enable_cancellation == b.enable_cancellation &&
         a.max_iterations == b.max_iterations &&
         a.fd_step_rad == b.fd_step_rad && a.bound_rad == b.bound_rad &&
         a.improvement_tol == b.improvement_tol &&
         a.improvement_window == b.improvement_window &&
         a.coarse_scan_points == b.coarse_scan_points &&
         a.T_list_ns == b.T_list_ns && a.flag_sets == b.flag_sets &&
         a.basis_state == b.basis_state && a.sample_dt_ns == b.sample_dt_ns;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.circuit == b.circuit && a.model == b.model &&
         a.truncation == b.truncation && a.dt_s == b.dt_s &&
         a.P_over_K == b.P_over_K && a.trim_p1_hz == b.trim_p1_hz &&
         a.trim_p2_hz == b.trim_p2_hz &&
         a.basis_max_leakage == b.basis_max_leakage &&
         a.norm_tol == b.norm_tol && a.N_f == b.N_f && a.workers == b.workers &&
         a.experiment == b.experiment;
}

CircuitParams circuit_params_from_config(const CircuitConfig& c) {
  if (c.preset == "default") return default_circuit_params();
  return derive_circuit_params(hz_to_angular(c.omega_1_hz),
                               hz_to_angular(c.omega_2_hz),
                               hz_to_angular(c.E_C1_hz),
                               hz_to_angular(c.E_C2_hz), c.theta_0_rad,
                               c.squid_count, hz_to_angular(c.g_hz));
}

SystemOptions system_options_from_config(const RunConfig& c) {
  SystemOptions o;
  o.model = model_kind_from_string(c.model);
  o.truncation = c.truncation;
  o.dt = c.dt_s;
  o.P_over_K = c.P_over_K;
  o.trim_p1 = hz_to_angular(c.trim_p1_hz);
  o.trim_p2 = hz_to_angular(c.trim_p2_hz);
  o.basis_max_leakage = c.basis_max_leakage;
  o.norm_tol = c.norm_tol;
  o.N_f = c.N_f;
  return o;
}

OptimizeSettings optimize_settings_from_config(const RunConfig& c) {
  OptimizeSettings s;
  s.max_iterations = c.experiment.max_iterations;
  s.fd_step = c.experiment.fd_step_rad;
  s.bound = c.experiment.bound_rad;
  s.improvement_tol = c.experiment.improvement_tol;
  s.improvement_window = c.experiment.improvement_window;
  s.coarse_scan_points = c.experiment.coarse_scan_points;
  s.workers = c.workers;
  return s;
}

OptimizeFlags optimize_flags_from_config(const ExperimentConfig& e) {
  OptimizeFlags f;
  f.sta = e.enable_sta;
  f.cancellation = e.enable_cancellation;
  return f;
}

}  // namespace cdg
