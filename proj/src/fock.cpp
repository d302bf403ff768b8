#include "sws/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sws {

ModeRegister::ModeRegister(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::set<std::string> seen;
  for (const auto& m : modes_) {
    if (m.dim < 2) throw std::invalid_argument("mode '" + m.label + "': dim must be >= 2");
    if (!seen.insert(m.label).second)
      throw std::invalid_argument("duplicate mode label '" + m.label + "'");
    dim_ *= m.dim;
  }
}

ModeRegister ModeRegister::canonical(int dim) {
  return ModeRegister({{"a1", dim}, {"a2", dim}, {"c", dim}, {"b1", dim}, {"b2", dim}});
}

bool ModeRegister::contains(std::string_view label) const {
  return std::any_of(modes_.begin(), modes_.end(), [&](const Mode& m) { return m.label == label; });
}

std::size_t ModeRegister::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].label == label) return i;
  throw std::out_of_range("unknown mode label '" + std::string(label) + "'");
}

Eigen::Index ModeRegister::basis_index(std::span<const int> occ) const {
  if (occ.size() != modes_.size()) throw DimensionError("occupation list length mismatch");
  Eigen::Index idx = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (occ[i] < 0 || occ[i] >= modes_[i].dim)
      throw std::out_of_range("occupation exceeds truncation of mode '" + modes_[i].label + "'");
    idx = idx * modes_[i].dim + occ[i];
  }
  return idx;
}

std::vector<int> ModeRegister::occupations(Eigen::Index index) const {
  std::vector<int> occ(modes_.size());
  for (std::size_t k = modes_.size(); k-- > 0;) {
    occ[k] = static_cast<int>(index % modes_[k].dim);
    index /= modes_[k].dim;
  }
  return occ;
}

int ModeRegister::occupation(Eigen::Index index, std::string_view label) const {
  return occupations(index)[index_of(label)];
}

Vector ModeRegister::ket(std::span<const int> occ) const {
  Vector v = Vector::Zero(dim_);
  v(basis_index(occ)) = 1.0;
  return v;
}

Vector ModeRegister::ket(std::initializer_list<int> occ) const {
  return ket(std::span<const int>(occ.begin(), occ.size()));
}

Vector ModeRegister::ket(std::string_view label) const {
  std::vector<int> occ;
  for (char ch : label) {
    switch (ch) {
      case 'g': occ.push_back(0); break;
      case 'e': occ.push_back(1); break;
      case 'f': occ.push_back(2); break;
      default:
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad ket label character");
        occ.push_back(ch - '0');
    }
  }
  return ket(std::span<const int>(occ));
}

bool ModeRegister::operator==(const ModeRegister& other) const {
  if (modes_.size() != other.modes_.size()) return false;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].label != other.modes_[i].label || modes_[i].dim != other.modes_[i].dim) return false;
  return true;
}

namespace {

Matrix local_operator(int dim, OperatorKind kind) {
  Matrix m = Matrix::Zero(dim, dim);
  switch (kind) {
    case OperatorKind::annihilate:
      for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(double(n));
      return m;
    case OperatorKind::number:
      for (int n = 0; n < dim; ++n) m(n, n) = double(n);
      return m;
    case OperatorKind::identity:
      return Matrix::Identity(dim, dim);
  }
  throw std::invalid_argument("unsupported operator kind");
}

}  // namespace

Matrix build_mode_operator(const ModeRegister& reg, std::string_view label, OperatorKind kind) {
  const std::size_t target = reg.index_of(label);
  std::vector<Matrix> factors;
  factors.reserve(reg.size());
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const int d = reg.mode(i).dim;
    factors.push_back(i == target ? local_operator(d, kind) : Matrix::Identity(d, d));
  }
  return kron_all(factors);
}

Matrix total_number_operator(const ModeRegister& reg) {
  Matrix n = Matrix::Zero(reg.dimension(), reg.dimension());
  for (const auto& m : reg.modes()) n += build_mode_operator(reg, m.label, OperatorKind::number);
  return n;
}

std::vector<std::string> DualRailCode::leakage_labels(int dim_first, int dim_second) const {
  std::vector<std::string> out;
  for (int i = 0; i < dim_first; ++i)
    for (int j = 0; j < dim_second; ++j)
      if (i + j != 1) out.push_back(std::to_string(i) + std::to_string(j));
  return out;
}

Matrix codespace_projector(const ModeRegister& reg, std::span<const DualRailCode> codes,
                           std::string_view coupler_label) {
  std::set<std::string> used;
  for (const auto& code : codes) {
    for (const auto& l : {code.first, code.second}) {
      reg.index_of(l);
      if (!used.insert(l).second) throw std::invalid_argument("overlapping dual-rail mode '" + l + "'");
    }
  }
  if (used.count(std::string(coupler_label)))
    throw std::invalid_argument("coupler mode is part of a dual-rail code");
  const std::size_t ci = reg.index_of(coupler_label);

  Matrix p = Matrix::Zero(reg.dimension(), reg.dimension());
  for (Eigen::Index k = 0; k < reg.dimension(); ++k) {
    const auto occ = reg.occupations(k);
    bool in = occ[ci] == 0;
    for (const auto& code : codes) {
      const int n1 = occ[reg.index_of(code.first)];
      const int n2 = occ[reg.index_of(code.second)];
      in = in && n1 + n2 == 1;
    }
    if (in) p(k, k) = 1.0;
  }
  return p;
}

Matrix codespace_projector(const ModeRegister& reg) {
  const DualRailCode codes[] = {kControlCode, kTargetCode};
  return codespace_projector(reg, codes, kCouplerLabel);
}

Matrix rail_codespace_projector(const ModeRegister& reg, const DualRailCode& code) {
  const std::size_t i1 = reg.index_of(code.first), i2 = reg.index_of(code.second);
  Matrix p = Matrix::Zero(reg.dimension(), reg.dimension());
  for (Eigen::Index k = 0; k < reg.dimension(); ++k) {
    const auto occ = reg.occupations(k);
    if (occ[i1] + occ[i2] == 1) p(k, k) = 1.0;
  }
  return p;
}

Matrix codespace_isometry(const ModeRegister& reg, const DualRailCode& control,
                          const DualRailCode& target, std::string_view coupler_label) {
  Matrix v = Matrix::Zero(reg.dimension(), 4);
  for (int c = 0; c < 2; ++c) {
    for (int t = 0; t < 2; ++t) {
      std::vector<int> occ(reg.size(), 0);
      occ[reg.index_of(c == 0 ? control.first : control.second)] = 1;
      occ[reg.index_of(t == 0 ? target.first : target.second)] = 1;
      occ[reg.index_of(coupler_label)] = 0;
      v(reg.basis_index(occ), 2 * c + t) = 1.0;
    }
  }
  return v;
}

void validate_density(const Matrix& rho, double herm_tol, double psd_tol) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix not square");
  if (!is_hermitian(rho, herm_tol)) throw std::domain_error("density matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < psd_tol) throw std::domain_error("density matrix not PSD");
  const double tr = rho.trace().real();
  if (tr < -1e-12 || tr > 1.0 + 1e-12) throw std::domain_error("density matrix trace out of [0,1]");
}

bool is_projector(const Matrix& p, double tol) {
  return is_hermitian(p, tol) && (p * p - p).cwiseAbs().maxCoeff() <= tol;
}

Matrix pauli(char name) {
  Matrix m(2, 2);
  switch (name) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli");
  }
  return m;
}

std::vector<Matrix> pauli_basis(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("pauli_basis: n_qubits >= 1");
  std::vector<Matrix> out;
  const int count = 1 << (2 * n_qubits);
  for (int idx = 0; idx < count; ++idx) {
    Matrix m = Matrix::Identity(1, 1);
    for (char ch : pauli_label(idx, n_qubits)) m = kron(m, pauli(ch));
    out.push_back(m);
  }
  return out;
}

std::string pauli_label(int index, int n_qubits) {
  static constexpr char names[] = {'I', 'X', 'Y', 'Z'};
  std::string s(n_qubits, 'I');
  for (int k = n_qubits - 1; k >= 0; --k) {
    s[k] = names[index % 4];
    index /= 4;
  }
  return s;
}

}  // namespace sws
