#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sws/channel.hpp"
#include "sws/gate.hpp"
#include "sws/lindblad.hpp"

namespace sws {

struct BudgetEntry {
  std::string name;
  double probability = 0.0;
};

struct ErrorBudget {
  double control_loss = 0.0;
  double target_loss = 0.0;
  double double_loss = 0.0;
  double stuck = 0.0;         // |00e10>, |00e01>
  double lone_coupler = 0.0;  // |00e00>
  double control_z = 0.0;
  double target_z = 0.0;
  double zz = 0.0;
  double no_error = 0.0;
  double other = 0.0;  // remaining codespace chi-error weight

  // Diagnostics
  double residual_coupler_excitation = 0.0;  // stuck + lone coupler
  double correlated_double_erasure = 0.0;    // target loss while the coupler holds the control photon
  double stuck_suppression = 0.0;            // (chi_bc / g_ac)^2

  std::vector<BudgetEntry> entries() const;  // nine budget entries then "other"
  double total() const;
  double erasure_asymmetry() const { return control_loss / target_loss; }
};

struct BudgetOptions {
  int truncation = 2;
  ScheduleOptions schedule;
};

ErrorBudget compute_error_budget(const SystemParams& p, const BudgetOptions& opts = {});

// Pauli-basis chi of a superoperator on n qubits: J = sum chi_mn vec(P_m) vec(P_n)^dag.
Matrix pauli_chi_from_superop(const Matrix& superop, int n_qubits);

// Two-qutrit channel of the simulated gate: qutrit basis states are embedded
// in the physical register, propagated with the master equation, and mapped
// back with every non-code rail configuration coarse-grained to |*>. With
// `frame_correct` the local Z frame of the noiseless gate is undone.
QuantumChannel physical_qutrit_channel(const SystemParams& p, const BudgetOptions& opts = {},
                                       bool frame_correct = true);

// Target chi after one simulated gate with the control rails prepared in
// `control_rails` ("00", "10" or "01"), conditioned on the control being
// found with no photon in a1, a2 and the coupler. Normalized to unit trace.
Matrix leakage_conditioned_target_chi(const SystemParams& p, const std::string& control_rails,
                                      const BudgetOptions& opts = {});

struct FundamentalLimits {
  double p_e_control = 0.0;
  double p_e_target = 0.0;
  double p_z_control = 0.0;
  double p_z_target = 0.0;
  double bias_bound = 0.0;  // 1 / G^2
};

// Scalings with unit prefactors; alpha_c in rad/us, times in us.
FundamentalLimits fundamental_limits(double hybridization, double alpha_c, double t1_c, double tphi_c);

}  // namespace sws
