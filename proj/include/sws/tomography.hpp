#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sws/error_channels.hpp"

namespace sws {

enum class PreRotation { I, X90, Xm90, X180, Y90, Ym90 };

const std::array<PreRotation, 6>& all_prerotations();
std::string to_string(PreRotation r);
PreRotation prerotation_from_string(const std::string& s);
Matrix prerotation_unitary(PreRotation r);
// Rotation about `axis` ('X' or 'Y' or 'Z') by `theta` on one qubit.
Matrix rotation(char axis, double theta);

struct Setting {
  PreRotation control = PreRotation::I;
  PreRotation target = PreRotation::I;
  auto operator<=>(const Setting&) const = default;
};

enum class Outcome { zero = 0, one = 1, erasure = 2 };
std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

std::vector<Setting> overcomplete_settings();

// Counts are doubles so that exact probabilities can stand in for shots.
class MeasurementRecord {
 public:
  void add(const Setting& s, Outcome control, Outcome target, double count);
  double count(const Setting& s, Outcome control, Outcome target) const;
  double total(const Setting& s) const;
  std::vector<Setting> settings() const;
  bool empty() const { return counts_.empty(); }

  void write_csv(std::ostream& out) const;
  static MeasurementRecord read_csv(std::istream& in);

 private:
  std::map<Setting, std::array<double, 9>> counts_;
};

// rho9 is a two-qutrit state; shots == 0 stores exact probabilities.
MeasurementRecord simulate_record(const Matrix& rho9, const std::vector<Setting>& settings,
                                  const SpamModel& spam, int shots, std::mt19937_64* rng);

Matrix reconstruct_state(const MeasurementRecord& record, bool postselect);

Matrix canonical_bell_state();  // (II + XX - YZ - ZY) / 4

struct BellMetrics {
  double fidelity = 0.0;
  double purity = 0.0;
};

BellMetrics bell_metrics(const Matrix& rho);
BellMetrics bell_metrics(const Matrix& rho, const Matrix& reference);

// Expectation values of all 16 two-qubit Paulis.
std::vector<double> pauli_correlators(const Matrix& rho);

using QubitProcess = std::function<Matrix(const Matrix&)>;

// Single-qubit chi matrix from preparations {|0>, |1>, |+>, |+i>}; outputs
// are normalized per preparation when `normalize_each`.
Matrix process_tomography(const QubitProcess& process, bool normalize_each = true);
Matrix process_tomography(const QuantumChannel& ch);

Matrix chi_error(const Matrix& chi, const Matrix& reference);

struct ErrorFractions {
  std::vector<double> p;  // Pauli-indexed
  double residual = 0.0;  // 1 - p_I
};

ErrorFractions error_fractions(const Matrix& chi_err);

}  // namespace sws
