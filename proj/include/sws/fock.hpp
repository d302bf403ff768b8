#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sws/linalg.hpp"

namespace sws {

struct Mode {
  std::string label;
  int dim = 2;
};

// Ordered bosonic modes; the first mode is the most significant Kronecker
// factor.
class ModeRegister {
 public:
  explicit ModeRegister(std::vector<Mode> modes);

  // |a1, a2, c, b1, b2>
  static ModeRegister canonical(int dim = 2);

  std::size_t size() const { return modes_.size(); }
  const Mode& mode(std::size_t i) const { return modes_.at(i); }
  const std::vector<Mode>& modes() const { return modes_; }
  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
  Eigen::Index dimension() const { return dim_; }

  Eigen::Index basis_index(std::span<const int> occupations) const;
  std::vector<int> occupations(Eigen::Index index) const;
  int occupation(Eigen::Index index, std::string_view label) const;

  Vector ket(std::span<const int> occupations) const;
  Vector ket(std::initializer_list<int> occupations) const;
  // Ket from a label such as "01g10"; g/e/f stand for 0/1/2.
  Vector ket(std::string_view label) const;

  bool operator==(const ModeRegister& other) const;

 private:
  std::vector<Mode> modes_;
  Eigen::Index dim_ = 1;
};

enum class OperatorKind { annihilate, number, identity };

Matrix build_mode_operator(const ModeRegister& reg, std::string_view label, OperatorKind kind);
Matrix total_number_operator(const ModeRegister& reg);

// One dual-rail qubit: |0_L> = photon in `first`, |1_L> = photon in `second`.
struct DualRailCode {
  std::string first;
  std::string second;

  std::vector<std::string> leakage_labels(int dim_first, int dim_second) const;
};

inline const DualRailCode kControlCode{"a1", "a2"};
inline const DualRailCode kTargetCode{"b1", "b2"};
inline constexpr std::string_view kCouplerLabel = "c";

// Projector onto one photon per dual rail with the coupler in its ground
// state. Modes outside the codes and coupler are left unconstrained.
Matrix codespace_projector(const ModeRegister& reg, std::span<const DualRailCode> codes,
                           std::string_view coupler_label);
Matrix codespace_projector(const ModeRegister& reg);

// Projector onto the single-photon subspace of one dual rail.
Matrix rail_codespace_projector(const ModeRegister& reg, const DualRailCode& code);

// Logical product states, columns ordered |c t> -> 2c + t.
Matrix codespace_isometry(const ModeRegister& reg, const DualRailCode& control = kControlCode,
                          const DualRailCode& target = kTargetCode,
                          std::string_view coupler_label = kCouplerLabel);

void validate_density(const Matrix& rho, double herm_tol = 1e-12, double psd_tol = -1e-10);
bool is_projector(const Matrix& p, double tol = 1e-12);

Matrix pauli(char name);
// n-qubit Pauli basis, unnormalized; index = sum p_k 4^(n-1-k) with I,X,Y,Z = 0..3.
std::vector<Matrix> pauli_basis(int n_qubits);
std::string pauli_label(int index, int n_qubits);

}  // namespace sws
