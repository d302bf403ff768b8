#pragma once

#include <optional>
#include <vector>

#include "sws/linalg.hpp"

namespace sws {

enum class Representation { kraus, chi, superop };

// Completely positive map. Chi form: E(rho) = sum_mn chi_mn B_m rho B_n^dag.
// Superoperator form uses column stacking.
class QuantumChannel {
 public:
  static QuantumChannel from_kraus(std::vector<Matrix> ops);
  static QuantumChannel from_chi(Matrix chi, std::vector<Matrix> basis);
  static QuantumChannel from_superop(Matrix s, Eigen::Index dim_in, Eigen::Index dim_out);
  static QuantumChannel from_superop(Matrix s);
  static QuantumChannel unitary(const Matrix& u);
  static QuantumChannel identity(Eigen::Index dim);

  Representation representation() const { return rep_; }
  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }

  const std::vector<Matrix>& kraus() const;
  const Matrix& chi() const;
  const std::vector<Matrix>& basis() const;
  const Matrix& superop() const;

  Matrix to_superop() const;
  // J = sum_ij |i><j| (x) E(|i><j|), index (i, a) -> i * dim_out + a.
  Matrix choi() const;
  Matrix apply(const Matrix& rho) const;
  // next o this
  QuantumChannel then(const QuantumChannel& next) const;

  bool is_trace_preserving(double tol = 1e-10) const;
  bool is_trace_nonincreasing(double tol = 1e-10) const;
  // Smallest eigenvalue of J / dim_in (the chi spectrum in the unnormalized Pauli basis).
  double min_choi_eigenvalue() const;
  bool is_cp(double tol = 1e-8) const;

 private:
  Representation rep_ = Representation::superop;
  Eigen::Index dim_in_ = 0, dim_out_ = 0;
  std::vector<Matrix> kraus_;
  Matrix chi_;
  std::vector<Matrix> basis_;
  Matrix superop_;
};

class NotCompletelyPositive : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Chi conversions default to the Pauli basis when dim is a power of 2.
QuantumChannel convert_channel(const QuantumChannel& ch, Representation target,
                               std::optional<std::vector<Matrix>> chi_basis = std::nullopt);

Matrix superop_to_choi(const Matrix& s, Eigen::Index dim_in, Eigen::Index dim_out);
Matrix choi_to_superop(const Matrix& j, Eigen::Index dim_in, Eigen::Index dim_out);

double channel_distance(const QuantumChannel& a, const QuantumChannel& b);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);
QuantumChannel pauli_twirl(const QuantumChannel& ch);
Matrix unitary_superop(const Matrix& u);

}  // namespace sws
