#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sws/clifford.hpp"
#include "sws/error_channels.hpp"
#include "sws/gate.hpp"

namespace sws {

// Two-qutrit superoperators (81 x 81, column stacking).
struct QutritGateSet {
  Matrix cz;
  Matrix x90_control;
  Matrix x90_target;

  static QutritGateSet ideal();
};

struct SingleQubitGateTimes {
  double control_us = 0.208;
  double target_us = 0.136;
};

// Coherence-limited X90 on one dual rail with the other idling, plus the
// a2-b1 cross-Kerr phase accumulated during the pulse.
QuantumChannel single_qubit_gate_channel(const SystemParams& p, int qubit, double duration_us,
                                         bool cross_kerr = true);
QutritGateSet make_gate_set(const QuantumChannel& cz, const SystemParams& p,
                            const SingleQubitGateTimes& times = {}, bool cross_kerr = true);

// Two-qubit depolarizing noise after an ideal CZ; leaked sectors untouched.
QuantumChannel depolarizing_cz_channel(double p);

struct RbOptions {
  std::vector<int> depths;
  int seeds = 20;
  std::uint64_t seed = 1;
  bool interleave_cz = false;
  SpamModel spam;
};

struct RbPoint {
  int depth = 0;
  int seed = 0;
  double survival_raw = 0.0;
  double survival_postselected = 0.0;
  double postselected_fraction = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool monotonic = true;
};

struct ExponentialFit {
  double p = 0.0;
  double a = 0.0;
  double b = 0.0;
  double p_stderr = 0.0;
  bool converged = false;
};

struct RbRecord {
  std::vector<int> depths;
  std::vector<RbPoint> points;
  bool interleaved = false;
  std::optional<LinearFit> linear;
  std::optional<ExponentialFit> exponential;

  std::vector<double> mean_survival(bool postselected) const;
  std::vector<double> mean_fraction() const;
  void write_csv(std::ostream& out) const;
};

class RbSimulator {
 public:
  RbSimulator(const CliffordGroup& two_qubit, const CliffordGroup& one_qubit, QutritGateSet gates);
  // Same programs, different gate noise.
  RbSimulator(const RbSimulator& base, QutritGateSet gates);

  RbRecord run(const RbOptions& opts) const;
  // Native-gate program for a two-qubit Clifford: canonical one-qubit words
  // between CZs, control before target.
  const std::vector<NativeGate>& program(std::size_t clifford) const { return programs_.at(clifford); }
  double mean_cz_count() const;

 private:
  Vector apply_clifford(std::size_t idx, const Vector& v) const;
  Vector apply_gate(NativeGate g, const Vector& v) const;

  const CliffordGroup& two_;
  QutritGateSet gates_;
  std::vector<std::vector<NativeGate>> programs_;
  std::array<Vector, 8> z_phases_;
  std::size_t cz_index_ = 0;
};

LinearFit fit_linear(const RbRecord& rec, bool postselected = true);
ExponentialFit fit_exponential(const RbRecord& rec, bool postselected = true);

double r_cz_from_slopes(double m_interleaved, double m_reference);
double r_1q_from_slope(double m);
double bell_depolarizing_from_slope(double m);

struct FidelityEstimate {
  double m_reference = 0.0;
  double m_interleaved = 0.0;
  double r = 0.0;
};

FidelityEstimate fit_linear_fidelity(const RbRecord& reference, const RbRecord& interleaved);
FidelityEstimate fit_linear_fidelity(const RbRecord& single, int n_qubits);

struct RateRanges {
  std::array<double, 2> p_z{1e-4, 2e-3};
  std::array<double, 2> p_zz{5e-5, 2e-4};
  std::array<double, 2> p_leak{1e-4, 4e-3};
};

struct IrbSample {
  ChannelRates rates;
  double inferred = 0.0;  // IRB average-gate infidelity
  double channel = 0.0;   // 1 - F_e (postselected entanglement fidelity)
};

struct IrbStudy {
  std::vector<IrbSample> samples;
  double slope = 0.0;
  double offset = 0.0;
  std::optional<IrbSample> operating_point;
  double operating_underestimate = 0.0;  // 1 - inferred / channel
};

struct IrbStudyOptions {
  RateRanges ranges;
  int n_samples = 500;
  std::vector<int> depths{1, 4, 8, 12, 16, 24, 32};
  int seeds = 20;
  std::uint64_t seed = 1;
  SpamModel spam = SpamModel::two_round();
  SystemParams params = SystemParams::measured();
  SingleQubitGateTimes times;
  std::optional<ChannelRates> operating_point;
};

IrbSample irb_point(const RbSimulator& base, const ChannelRates& rates, const IrbStudyOptions& opts);
IrbStudy irb_accuracy_study(const IrbStudyOptions& opts);

// Frame-corrected two-qutrit CZ superoperator used by the circuit generators.
struct RepeatedCzOptions {
  int n_gates = 1;
  bool echo = true;  // X (x) X after (N-1)/2 gates and at the end, N >= 3
};

// Y90 (x) Y90, N CZ, echoes, then Z(-90) (x) Z(-90); returns the two-qutrit state.
Matrix repeated_cz_state(const Matrix& cz_superop, const RepeatedCzOptions& opts);

enum class Spectator { control, target };

struct BitflipResult {
  std::vector<int> n_gates;
  std::vector<double> flip_fraction;
  double rate_per_gate = 0.0;
};

// Spectator prepared in a basis state, Ramsey X90 - N CZ - X90 on the other
// qubit; reports opposite-state assignments of the spectator among shots with
// both qubits assigned to the codespace.
BitflipResult simulate_bitflip_protocol(const Matrix& cz_superop, Spectator spectator, int basis_state,
                                        const std::vector<int>& n_gates, const SpamModel& spam);

}  // namespace sws
