#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "sws/linalg.hpp"

namespace sws {

// Native gateset {X90, Z90, Zm90, Z, CZ}; virtual Z gates are free.
enum class NativeGate { x90_c, z90_c, zm90_c, z_c, x90_t, z90_t, zm90_t, z_t, cz };

const char* to_string(NativeGate g);
bool is_virtual(NativeGate g);
int gate_qubit(NativeGate g);  // 0 control, 1 target, -1 both
Matrix single_qubit_native(NativeGate g);  // 2x2 for a one-qubit gate
Matrix native_unitary(NativeGate g, int n_qubits);

// Global phase fixed by making the first entry with |u| > 1e-6 (column-major)
// positive real.
Matrix canonicalize(const Matrix& u);
std::string canonical_key(const Matrix& u);

struct CliffordElement {
  Matrix unitary;                // canonical
  std::vector<NativeGate> word;  // word[0] is applied first
};

Matrix replay(const std::vector<NativeGate>& word, int n_qubits);

class CliffordGroup {
 public:
  static CliffordGroup generate(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return elements_.size(); }
  const CliffordElement& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<CliffordElement>& elements() const { return elements_; }

  bool contains(const Matrix& u) const;
  std::size_t index_of(const Matrix& u) const;
  std::size_t inverse(std::size_t i) const { return inverse_.at(i); }
  std::size_t identity_index() const { return identity_; }
  // index of element(b) * element(a), i.e. a then b
  std::size_t compose(std::size_t a, std::size_t b) const;

 private:
  int n_qubits_ = 1;
  std::vector<CliffordElement> elements_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::size_t identity_ = 0;
};

}  // namespace sws
