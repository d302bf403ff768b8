#pragma once

#include "sws/channel.hpp"

namespace sws {

// Two qutrits |c t>, index 3c + t; |0> = 0_L, |1> = 1_L, |2> = leaked.
inline constexpr int kQutritDim = 3;
inline constexpr int kQutritPairDim = 9;
inline constexpr int kLeaked = 2;

struct ChannelRates {
  double p_leak_control = 0.0;
  double p_leak_target = 0.0;
  double p_z_control = 0.0;
  double p_z_target = 0.0;
  double p_zz = 0.0;

  void validate() const;
};

// |11> acquires e^{+i phi}.
Matrix cz_phase(double phi);

// Off-diagonal weight of the phase-averaged channel:
// (1/pi) int_0^pi CZ(phi) rho CZ(-phi) dphi = (rho + CZ rho CZ)/2 + (i/pi)(rho CZ - CZ rho).
double leakage_average_coefficient();

// Chi form over {I, CZ}.
QuantumChannel leakage_averaged_channel();
QuantumChannel digitized_channel();
std::vector<Matrix> cz_extended_basis();

Matrix qutrit_pair_isometry();  // 9x4, |c t> -> index 3c + t
Matrix embed_qubit_pair(const Matrix& u4);  // acts as identity on leaked sectors
Matrix qutrit_cz();
Matrix qutrit_local(const Matrix& u3, int qubit);  // qubit 0 = control

QuantumChannel qutrit_dephasing_channel(const ChannelRates& r);
// Leakage of one qutrit; with `digitize`, Lambda_CZ precedes the jump.
QuantumChannel qutrit_leakage_channel(double p, int qubit, bool digitize);

// Leak_c o Leak_t o Dephase o CZ
QuantumChannel qutrit_gate_channel(const ChannelRates& r);
QuantumChannel full_gate_channel(const ChannelRates& r);

struct NoJump {
  Matrix kraus;  // 4x4, control (x) target
  double epsilon = 0.0;
};

NoJump no_jump_kraus(double p_loss_a1, double p_loss_c);
// Infidelity of the normalized worst-case equator state under the no-jump Kraus.
double no_jump_exact_infidelity(double p_loss_a1, double p_loss_c);

struct EchoCheck {
  double residual = 0.0;       // || rho_out / Tr rho_out - rho_in ||
  double scalar_factor = 0.0;  // Tr rho_out
  Matrix rho_out;
};

// Qubitized no-jump evolution of an idling control with the lossy state |1>.
EchoCheck echo_cancellation_check(double kappa, double tau, const Matrix& rho_in, bool echo = true);
EchoCheck echo_cancellation_check(double kappa, double tau);

struct QubitSpam {
  double misassignment = 0.0;         // 0_L <-> 1_L
  double leak_detection_error = 0.0;  // leaked assigned to the codespace
  double erasure_assignment = 0.0;    // codespace assigned to erasure

  // rows: assigned {0, 1, E}; columns: true {0, 1, *}
  RealMatrix confusion() const;
  bool operator==(const QubitSpam&) const = default;
};

struct SpamModel {
  QubitSpam control;
  QubitSpam target;

  static SpamModel perfect() { return {}; }
  static SpamModel two_round();
  static SpamModel one_round();
  bool operator==(const SpamModel&) const = default;
};

// 9x9 -> 4x4 trace-decreasing map of assigned codespace outcomes.
QuantumChannel assignment_map(const SpamModel& spam);

struct FidelityResult {
  double fidelity = 0.0;
  double condition_number = 0.0;
};

FidelityResult postselected_fidelity_detail(const QuantumChannel& ch, const Matrix& reference,
                                            const SpamModel& spam);
double postselected_fidelity(const QuantumChannel& ch, const Matrix& reference, const SpamModel& spam);

}  // namespace sws
