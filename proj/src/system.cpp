// cdg/system.cpp — gate-system assembly.
#include "cdg/system.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::circuit: return "circuit";
    case ModelKind::rwa: return "rwa";
    case ModelKind::staticmodel: return "static";
  }
  throw std::logic_error("to_string(ModelKind): unreachable");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "circuit") return ModelKind::circuit;
  if (name == "rwa") return ModelKind::rwa;
  if (name == "static") return ModelKind::staticmodel;
  throw std::invalid_argument("model_kind_from_string: unknown model '" + name +
                              "' (expected circuit|rwa|static)");
}

CircuitParams default_circuit_params() {
  return derive_circuit_params(hz_to_angular(10.0e9), hz_to_angular(11.0e9),
                               hz_to_angular(300.0e6), hz_to_angular(300.0e6),
                               two_pi / 8.0, 5, hz_to_angular(10.0e6));
}

PulseProgram GateSystem::program_for(double T_g, const std::vector<double>& A,
                                     const std::vector<double>& B,
                                     const std::vector<double>& C,
                                     bool enable_sta,
                                     bool enable_cancellation) const {
  PulseProgram p = base_program;
  p.T_g = T_g;
  const int nf =
      int(std::max({size_t(p.N_f), A.size(), B.size(), C.size()}));
  p.N_f = nf;
  auto pad = [nf](const std::vector<double>& v) {
    std::vector<double> out(v);
    out.resize(size_t(nf), 0.0);
    return out;
  };
  p.A = pad(A);
  p.B = pad(B);
  p.C = pad(C);
  p.enable_sta = enable_sta;
  p.enable_cancellation = enable_cancellation;
  validate(p);
  return p;
}

HamAction GateSystem::action(const PulseProgram& program) const {
  switch (model) {
    case ModelKind::circuit: return circuit_terms->action(program);
    case ModelKind::rwa: return rwa_terms->action(program);
    case ModelKind::staticmodel: return static_terms->action(program);
  }
  throw std::logic_error("GateSystem::action: unreachable");
}

Mat GateSystem::measurement_W(double T_g) const {
  // The lab-frame circuit model needs the full b-mode rotation; the
  // rotating-frame models already rotate at the bare ω̃_j, so only the
  // residual b-mode mismatch is applied.
  const bool undo_bare = (model != ModelKind::circuit);
  return frame.measurement_rotation(T_g, undo_bare);
}

GateMatrix GateSystem::gate(const PulseProgram& program) const {
  return run_gate(basis.states, action(program), measurement_W(program.T_g),
                  program.T_g, settings);
}

GateSystem make_gate_system(const CircuitParams& circuit, const SystemOptions& opt) {
  if (opt.truncation < 1)
    throw std::invalid_argument("make_gate_system: truncation must be >= 1");
  GateSystem sys;
  sys.model = opt.model;
  sys.options = opt;
  sys.circuit = circuit;
  sys.dim_per_mode = opt.truncation + 1;
  const int d = sys.dim_per_mode;

  sys.ef = eigenfrequencies(circuit, d);
  sys.rwa = rwa_params_from_circuit(circuit, sys.ef, opt.P_over_K);
  sys.modes = normal_modes(sys.ef.omega_tilde_1, sys.ef.omega_tilde_2, circuit.g);
  sys.bmode = b_mode_params(sys.modes, sys.rwa);
  sys.basis = computational_basis(sys.bmode, sys.modes, d, opt.basis_max_leakage);
  sys.frame = make_frame_rotation(sys.ef.omega_tilde_1, sys.ef.omega_tilde_2,
                                  circuit.g, d);

  sys.base_program.delta_1 = sys.rwa.delta_1;
  sys.base_program.delta_2 = sys.rwa.delta_2;
  sys.base_program.omega_p1 = 2.0 * sys.ef.omega_tilde_1 + opt.trim_p1;
  sys.base_program.omega_p2 = 2.0 * sys.ef.omega_tilde_2 + opt.trim_p2;
  sys.base_program.omega_g = sys.ef.omega_tilde_1 + sys.ef.omega_tilde_2;
  sys.base_program.N_f = opt.N_f;
  sys.base_program.A.assign(size_t(opt.N_f), 0.0);
  sys.base_program.B.assign(size_t(opt.N_f), 0.0);
  sys.base_program.C.assign(size_t(opt.N_f), 0.0);

  switch (opt.model) {
    case ModelKind::circuit: {
      auto ops1 = build_mode_operators(d, circuit.E_C1, circuit.E_Jeff1,
                                       circuit.squid_count);
      auto ops2 = build_mode_operators(d, circuit.E_C2, circuit.E_Jeff2,
                                       circuit.squid_count);
      // Recenter on the exact mean basis-state energy so the occupied band
      // accumulates minimal global phase.
      Mat Hs = static_circuit_hamiltonian(circuit, ops1, ops2);
      double e_mean = 0.0;
      for (int k = 0; k < 4; ++k) {
        const Vec v = sys.basis.states.col(k);
        e_mean += (v.adjoint() * (Hs * v))(0, 0).real();
      }
      e_mean /= 4.0;
      sys.circuit_terms = std::make_shared<CircuitTerms>(
          hamiltonian_terms(circuit, ops1, ops2, e_mean));
      break;
    }
    case ModelKind::rwa:
      sys.rwa_terms = std::make_shared<RwaTerms>(build_rwa_terms(sys.rwa, d));
      break;
    case ModelKind::staticmodel:
      sys.static_terms =
          std::make_shared<StaticModelTerms>(build_static_terms(sys.rwa, d));
      break;
  }

  sys.settings.dt = opt.dt;
  if (sys.settings.dt <= 0.0)
    sys.settings.dt =
        (opt.model == ModelKind::circuit) ? kCircuitDefaultDt : kRwaDefaultDt;
  sys.settings.norm_tol = opt.norm_tol;

  // Guard the step against the fastest tone of the chosen model.
  double cap = 0.0;
  switch (opt.model) {
    case ModelKind::circuit:
      cap = sys.circuit_terms->max_dt(sys.base_program);
      break;
    case ModelKind::rwa: cap = sys.rwa_terms->max_dt(); break;
    case ModelKind::staticmodel: cap = sys.static_terms->max_dt(); break;
  }
  if (sys.settings.dt > cap)
    throw std::invalid_argument(
        "make_gate_system: dt " + std::to_string(sys.settings.dt) +
        " s exceeds the fastest-tone cap " + std::to_string(cap) + " s");
  return sys;
}

double rwa_vs_circuit_overlap(const CircuitParams& circuit, int dim_per_mode,
                              const PulseProgram& program, const Vec& initial,
                              double dt_circuit, double dt_rwa) {
  const int d = dim_per_mode;
  auto ops1 = build_mode_operators(d, circuit.E_C1, circuit.E_Jeff1,
                                   circuit.squid_count);
  auto ops2 = build_mode_operators(d, circuit.E_C2, circuit.E_Jeff2,
                                   circuit.squid_count);
  const auto ef = eigenfrequencies(circuit, d);
  const RwaParams rwa = rwa_params_from_circuit(circuit, ef);

  // Recenter the circuit Hamiltonian on the initial state's energy.
  Mat Hs = static_circuit_hamiltonian(circuit, ops1, ops2);
  const double e0 = (initial.adjoint() * (Hs * initial))(0, 0).real();
  const CircuitTerms cterms = hamiltonian_terms(circuit, ops1, ops2, e0);
  const RwaTerms rterms = build_rwa_terms(rwa, d);

  IntegratorSettings sc, sr;
  sc.dt = dt_circuit > 0.0 ? dt_circuit : kCircuitDefaultDt;
  sr.dt = dt_rwa > 0.0 ? dt_rwa : kRwaDefaultDt;

  Mat psi_c = initial;
  Mat psi_r = initial;
  evolve_block(psi_c, cterms.action(program), 0.0, program.T_g, sc);
  evolve_block(psi_r, rterms.action(program), 0.0, program.T_g, sr);

  // Rotate the lab-frame state into the rotating frame.
  Vec rotated(psi_c.rows());
  for (int m1 = 0; m1 < d; ++m1)
    for (int m2 = 0; m2 < d; ++m2) {
      const double phase =
          (ef.omega_tilde_1 * m1 + ef.omega_tilde_2 * m2) * program.T_g;
      rotated(m1 * d + m2) =
          std::exp(cxd(0.0, phase)) * psi_c(m1 * d + m2, 0);
    }
  const cxd ov = (psi_r.col(0).adjoint() * rotated)(0, 0);
  return std::norm(ov);
}

}  // namespace cdg
