#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sws/gate.hpp"

namespace sws {

// Rates in 1/us.
struct ModeNoise {
  double loss = 0.0;       // kappa = 1/T1
  double dephasing = 0.0;  // kappa_phi = 1/Tphi
  double heating = 0.0;    // upward jumps, off by default
};

class NoiseModel {
 public:
  NoiseModel() = default;
  static NoiseModel from_params(const SystemParams& p, const ModeRegister& reg);

  void set(const std::string& label, const ModeNoise& n);
  ModeNoise get(const std::string& label) const;
  void disable(const std::string& label);
  const std::map<std::string, ModeNoise>& modes() const { return modes_; }
  bool is_zero() const;

 private:
  std::map<std::string, ModeNoise> modes_;
};

// sqrt(kappa) a, sqrt(2 kappa_phi) n, sqrt(heating) a^dag. With this
// normalization a lone mode's coherence decays as exp(-t/Tphi).
std::vector<Matrix> collapse_operators(const ModeRegister& reg, const NoiseModel& noise);

// Column stacking: L = -i(I(x)H - H^T(x)I) + sum_k [conj(c)(x)c - (I(x)c^dag c + (c^dag c)^T(x)I)/2]
Matrix liouvillian(const Matrix& h, std::span<const Matrix> collapse);
Matrix liouvillian(const Matrix& h, const NoiseModel& noise, const ModeRegister& reg);

// exp(L t) rho by a scaled Taylor series, never forming L.
Matrix expm_action(const Matrix& h, std::span<const Matrix> collapse, const Matrix& rho, double t);

// Basis states closed under the action of the given operators.
std::vector<Eigen::Index> reachable_states(std::span<const Matrix> ops, std::vector<Eigen::Index> seeds);

struct PropagationResult {
  Matrix rho;
  std::vector<double> probabilities;
  double elapsed = 0.0;
};

PropagationResult propagate(const GateSchedule& s, const NoiseModel& noise, const Matrix& rho0,
                            std::span<const Matrix> partition = {});

// Superoperator of the full gate restricted to an invariant set of basis
// states containing `seeds`.
struct SubspaceSuperop {
  std::vector<Eigen::Index> states;
  Matrix superop;

  Matrix apply(const Matrix& rho_full) const;
  Eigen::Index local_index(Eigen::Index full_index) const;
};

SubspaceSuperop gate_superoperator(const GateSchedule& s, const NoiseModel& noise,
                                   std::vector<Eigen::Index> seeds);

struct Conditioned {
  Matrix rho;
  double fraction = 0.0;
};

class NullConditioning : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Conditioned condition(const Matrix& rho, const Matrix& projector);
Conditioned condition(const PropagationResult& r, const Matrix& projector);

}  // namespace sws
