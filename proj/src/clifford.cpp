#include "sws/clifford.hpp"

#include <cmath>
#include <queue>
#include <sstream>

#include "sws/fock.hpp"

namespace sws {

const char* to_string(NativeGate g) {
  switch (g) {
    case NativeGate::x90_c: return "X90_c";
    case NativeGate::z90_c: return "Z90_c";
    case NativeGate::zm90_c: return "Zm90_c";
    case NativeGate::z_c: return "Z_c";
    case NativeGate::x90_t: return "X90_t";
    case NativeGate::z90_t: return "Z90_t";
    case NativeGate::zm90_t: return "Zm90_t";
    case NativeGate::z_t: return "Z_t";
    case NativeGate::cz: return "CZ";
  }
  return "?";
}

bool is_virtual(NativeGate g) { return g != NativeGate::x90_c && g != NativeGate::x90_t && g != NativeGate::cz; }

int gate_qubit(NativeGate g) {
  switch (g) {
    case NativeGate::x90_c:
    case NativeGate::z90_c:
    case NativeGate::zm90_c:
    case NativeGate::z_c: return 0;
    case NativeGate::cz: return -1;
    default: return 1;
  }
}

namespace {

Matrix rz(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-kI * theta / 2.0);
  m(1, 1) = std::exp(kI * theta / 2.0);
  return m;
}

Matrix rx(double theta) {
  return std::cos(theta / 2.0) * Matrix::Identity(2, 2) - kI * std::sin(theta / 2.0) * pauli('X');
}

}  // namespace

Matrix single_qubit_native(NativeGate g) {
  switch (g) {
    case NativeGate::x90_c:
    case NativeGate::x90_t: return rx(kPi / 2);
    case NativeGate::z90_c:
    case NativeGate::z90_t: return rz(kPi / 2);
    case NativeGate::zm90_c:
    case NativeGate::zm90_t: return rz(-kPi / 2);
    case NativeGate::z_c:
    case NativeGate::z_t: return rz(kPi);
    case NativeGate::cz: break;
  }
  throw std::invalid_argument("CZ is not a single-qubit gate");
}

Matrix native_unitary(NativeGate g, int n_qubits) {
  if (n_qubits == 1) {
    if (gate_qubit(g) != 0) throw std::invalid_argument("one-qubit words use control-labelled gates only");
    return single_qubit_native(g);
  }
  if (n_qubits != 2) throw std::invalid_argument("only one- and two-qubit Cliffords are supported");
  if (g == NativeGate::cz) {
    Matrix u = Matrix::Identity(4, 4);
    u(3, 3) = -1.0;
    return u;
  }
  const Matrix id = Matrix::Identity(2, 2);
  return gate_qubit(g) == 0 ? kron(single_qubit_native(g), id) : kron(id, single_qubit_native(g));
}

Matrix canonicalize(const Matrix& u) {
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const Complex x = u.data()[k];
    if (std::abs(x) > 1e-6) return u * (std::conj(x) / std::abs(x));
  }
  throw std::invalid_argument("cannot canonicalize a zero matrix");
}

std::string canonical_key(const Matrix& u) {
  const Matrix c = canonicalize(u);
  std::ostringstream os;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    long re = std::lround(c.data()[k].real() * 1e4), im = std::lround(c.data()[k].imag() * 1e4);
    if (re == 0) re = 0;
    if (im == 0) im = 0;
    os << re << ',' << im << ';';
  }
  return os.str();
}

Matrix replay(const std::vector<NativeGate>& word, int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  Matrix u = Matrix::Identity(d, d);
  for (auto g : word) u = native_unitary(g, n_qubits) * u;
  return u;
}

CliffordGroup CliffordGroup::generate(int n_qubits) {
  std::vector<NativeGate> gens;
  if (n_qubits == 1) {
    gens = {NativeGate::x90_c, NativeGate::z90_c, NativeGate::zm90_c, NativeGate::z_c};
  } else if (n_qubits == 2) {
    gens = {NativeGate::x90_c, NativeGate::z90_c, NativeGate::zm90_c, NativeGate::z_c, NativeGate::x90_t,
            NativeGate::z90_t, NativeGate::zm90_t, NativeGate::z_t,    NativeGate::cz};
  } else {
    throw std::invalid_argument("only one- and two-qubit Clifford groups are supported");
  }
  auto cost = [](NativeGate g) {
    if (g == NativeGate::cz) return 1000L;
    return is_virtual(g) ? 1L : 20L;
  };

  CliffordGroup grp;
  grp.n_qubits_ = n_qubits;
  const Eigen::Index d = Eigen::Index(1) << n_qubits;

  // Dijkstra over the Cayley graph so that words minimise CZ, then X90 count.
  struct Node {
    long cost;
    std::size_t order;
    Matrix u;
    std::vector<NativeGate> word;
  };
  auto cmp = [](const Node& a, const Node& b) { return a.cost != b.cost ? a.cost > b.cost : a.order > b.order; };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> pq(cmp);
  std::size_t order = 0;
  pq.push({0, order++, Matrix::Identity(d, d), {}});
  while (!pq.empty()) {
    Node n = pq.top();
    pq.pop();
    const std::string key = canonical_key(n.u);
    if (grp.lookup_.count(key)) continue;
    grp.lookup_.emplace(key, grp.elements_.size());
    grp.elements_.push_back({canonicalize(n.u), n.word});
    for (auto g : gens) {
      Matrix v = native_unitary(g, n_qubits) * n.u;
      if (grp.lookup_.count(canonical_key(v))) continue;
      auto w = n.word;
      w.push_back(g);
      pq.push({n.cost + cost(g), order++, std::move(v), std::move(w)});
    }
  }
  grp.identity_ = grp.index_of(Matrix::Identity(d, d));
  grp.inverse_.resize(grp.elements_.size());
  for (std::size_t i = 0; i < grp.elements_.size(); ++i)
    grp.inverse_[i] = grp.index_of(grp.elements_[i].unitary.adjoint());
  return grp;
}

bool CliffordGroup::contains(const Matrix& u) const { return lookup_.count(canonical_key(u)) > 0; }

std::size_t CliffordGroup::index_of(const Matrix& u) const {
  auto it = lookup_.find(canonical_key(u));
  if (it == lookup_.end()) throw std::out_of_range("unitary is not in the Clifford group");
  return it->second;
}

std::size_t CliffordGroup::compose(std::size_t a, std::size_t b) const {
  return index_of(elements_.at(b).unitary * elements_.at(a).unitary);
}

}  // namespace sws
