#include "sws/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <Eigen/Sparse>

namespace sws {

namespace {

constexpr Eigen::Index kDenseSubspaceLimit = 16;

ModeNoise noise_from_coherence(const Coherence& c) {
  ModeNoise n;
  n.loss = std::isfinite(c.t1) ? 1.0 / c.t1 : 0.0;
  n.dephasing = std::isfinite(c.tphi) ? 1.0 / c.tphi : 0.0;
  return n;
}

Matrix restrict(const Matrix& op, const std::vector<Eigen::Index>& states) {
  const auto n = Eigen::Index(states.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = op(states[i], states[j]);
  return out;
}

}  // namespace

NoiseModel NoiseModel::from_params(const SystemParams& p, const ModeRegister& reg) {
  NoiseModel n;
  for (const auto& m : reg.modes()) n.set(m.label, noise_from_coherence(p.coherence_of(m.label)));
  return n;
}

void NoiseModel::set(const std::string& label, const ModeNoise& n) {
  if (n.loss < 0.0 || n.dephasing < 0.0 || n.heating < 0.0)
    throw std::invalid_argument("noise rates must be non-negative");
  modes_[label] = n;
}

ModeNoise NoiseModel::get(const std::string& label) const {
  auto it = modes_.find(label);
  return it == modes_.end() ? ModeNoise{} : it->second;
}

void NoiseModel::disable(const std::string& label) { modes_.erase(label); }

bool NoiseModel::is_zero() const {
  return std::all_of(modes_.begin(), modes_.end(), [](const auto& kv) {
    return kv.second.loss == 0.0 && kv.second.dephasing == 0.0 && kv.second.heating == 0.0;
  });
}

std::vector<Matrix> collapse_operators(const ModeRegister& reg, const NoiseModel& noise) {
  std::vector<Matrix> ops;
  for (const auto& [label, n] : noise.modes()) {
    if (!reg.contains(label)) throw std::invalid_argument("noise model refers to unknown mode '" + label + "'");
    if (n.loss > 0.0) ops.push_back(std::sqrt(n.loss) * build_mode_operator(reg, label, OperatorKind::annihilate));
    if (n.dephasing > 0.0)
      ops.push_back(std::sqrt(2.0 * n.dephasing) * build_mode_operator(reg, label, OperatorKind::number));
    if (n.heating > 0.0)
      ops.push_back(std::sqrt(n.heating) * build_mode_operator(reg, label, OperatorKind::annihilate).adjoint());
  }
  return ops;
}

Matrix liouvillian(const Matrix& h, std::span<const Matrix> collapse) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw DimensionError("Hamiltonian not square");
  const Matrix id = Matrix::Identity(n, n);
  Matrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& c : collapse) {
    if (c.rows() != n || c.cols() != n) throw DimensionError("collapse operator dimension mismatch");
    const Matrix cc = c.adjoint() * c;
    l += kron(c.conjugate(), c) - 0.5 * kron(id, cc) - 0.5 * kron(cc.transpose(), id);
  }
  return l;
}

Matrix liouvillian(const Matrix& h, const NoiseModel& noise, const ModeRegister& reg) {
  if (h.rows() != reg.dimension()) throw DimensionError("Hamiltonian does not match register");
  const auto ops = collapse_operators(reg, noise);
  return liouvillian(h, ops);
}

Matrix expm_action(const Matrix& h, std::span<const Matrix> collapse, const Matrix& rho, double t) {
  using Sparse = Eigen::SparseMatrix<Complex>;
  const Eigen::Index n = h.rows();
  Matrix heff = h;
  double bound = 2.0 * h.cwiseAbs().colwise().sum().maxCoeff();
  std::vector<Sparse> jumps, jumps_dag;
  for (const auto& c : collapse) {
    heff -= 0.5 * kI * (c.adjoint() * c);
    const double cn = c.cwiseAbs().colwise().sum().maxCoeff() * c.cwiseAbs().rowwise().sum().maxCoeff();
    bound += 2.0 * cn;
    jumps.push_back(c.sparseView());
    jumps_dag.push_back(c.adjoint().sparseView());
  }
  const Sparse heff_s = heff.sparseView();
  const Sparse heff_dag_s = heff.adjoint().sparseView();

  auto apply = [&](const Matrix& x) {
    Matrix y = -kI * (heff_s * x) + kI * (x * heff_dag_s);
    for (std::size_t k = 0; k < jumps.size(); ++k) y += jumps[k] * (x * jumps_dag[k]);
    return y;
  };

  const int steps = std::max(1, int(std::ceil(bound * std::abs(t) / 1.0)));
  const double dt = t / steps;
  Matrix y = rho;
  for (int s = 0; s < steps; ++s) {
    Matrix term = y, acc = y;
    for (int k = 1; k < 60; ++k) {
      term = apply(term) * (dt / k);
      acc += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-18 * std::max(acc.cwiseAbs().maxCoeff(), 1e-300)) break;
    }
    y = acc;
  }
  (void)n;
  return y;
}

std::vector<Eigen::Index> reachable_states(std::span<const Matrix> ops, std::vector<Eigen::Index> seeds) {
  if (ops.empty()) {
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    return seeds;
  }
  const Eigen::Index n = ops.front().rows();
  std::vector<char> seen(n, 0);
  std::deque<Eigen::Index> queue;
  for (auto s : seeds) {
    if (s < 0 || s >= n) throw std::out_of_range("seed state out of range");
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Eigen::Index j = queue.front();
    queue.pop_front();
    for (const auto& op : ops) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!seen[i] && std::abs(op(i, j)) > 0.0) {
          seen[i] = 1;
          queue.push_back(i);
        }
      }
    }
  }
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < n; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

namespace {

std::vector<Matrix> closure_generators(const GateSchedule& s, const std::vector<Matrix>& collapse) {
  std::vector<Matrix> ops;
  for (const auto& seg : s.segments) ops.push_back(seg.hamiltonian);
  for (const auto& c : collapse) {
    ops.push_back(c);
    ops.push_back(c.adjoint() * c);
  }
  return ops;
}

std::vector<Eigen::Index> support_of(const Matrix& rho) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    if (rho.row(i).cwiseAbs().maxCoeff() > 0.0 || rho.col(i).cwiseAbs().maxCoeff() > 0.0) idx.push_back(i);
  return idx;
}

Matrix subspace_gate_superop(const GateSchedule& s, const std::vector<Matrix>& collapse,
                             const std::vector<Eigen::Index>& states) {
  std::vector<Matrix> c_sub;
  for (const auto& c : collapse) c_sub.push_back(restrict(c, states));
  const auto n = Eigen::Index(states.size());
  Matrix total = Matrix::Identity(n * n, n * n);
  for (const auto& seg : s.segments) {
    const Matrix l = liouvillian(restrict(seg.hamiltonian, states), c_sub);
    total = expm(l * seg.duration) * total;
  }
  return total;
}

}  // namespace

Matrix SubspaceSuperop::apply(const Matrix& rho_full) const {
  const auto n = Eigen::Index(states.size());
  const Matrix sub = restrict(rho_full, states);
  const Matrix out_sub = unvec(superop * vec(sub), n, n);
  Matrix out = Matrix::Zero(rho_full.rows(), rho_full.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(states[i], states[j]) = out_sub(i, j);
  return out;
}

Eigen::Index SubspaceSuperop::local_index(Eigen::Index full_index) const {
  auto it = std::lower_bound(states.begin(), states.end(), full_index);
  if (it == states.end() || *it != full_index) throw std::out_of_range("state outside the propagated subspace");
  return Eigen::Index(it - states.begin());
}

SubspaceSuperop gate_superoperator(const GateSchedule& s, const NoiseModel& noise,
                                   std::vector<Eigen::Index> seeds) {
  const auto collapse = collapse_operators(s.reg, noise);
  const auto ops = closure_generators(s, collapse);
  SubspaceSuperop out;
  out.states = reachable_states(ops, std::move(seeds));
  if (Eigen::Index(out.states.size()) > 2 * kDenseSubspaceLimit)
    throw std::length_error("reachable subspace too large for a dense gate superoperator");
  out.superop = subspace_gate_superop(s, collapse, out.states);
  return out;
}

PropagationResult propagate(const GateSchedule& s, const NoiseModel& noise, const Matrix& rho0,
                            std::span<const Matrix> partition) {
  const Eigen::Index d = s.reg.dimension();
  if (rho0.rows() != d || rho0.cols() != d) throw DimensionError("initial state does not match register");
  const auto collapse = collapse_operators(s.reg, noise);
  const auto states = reachable_states(closure_generators(s, collapse), support_of(rho0));

  PropagationResult r;
  if (Eigen::Index(states.size()) <= kDenseSubspaceLimit) {
    SubspaceSuperop sub{states, subspace_gate_superop(s, collapse, states)};
    r.rho = sub.apply(rho0);
  } else {
    r.rho = rho0;
    for (const auto& seg : s.segments) r.rho = expm_action(seg.hamiltonian, collapse, r.rho, seg.duration);
  }
  r.elapsed = s.params.t_gate();
  for (const auto& p : partition) {
    if (p.rows() != d) throw DimensionError("partition projector does not match register");
    r.probabilities.push_back((p * r.rho).trace().real());
  }
  return r;
}

Conditioned condition(const Matrix& rho, const Matrix& projector) {
  if (!is_projector(projector, 1e-10)) throw std::invalid_argument("conditioning operator is not a projector");
  const Matrix prp = projector * rho * projector;
  const double f = prp.trace().real();
  if (f < 1e-15) throw NullConditioning("conditioning on a null outcome");
  return {prp / f, f};
}

Conditioned condition(const PropagationResult& r, const Matrix& projector) { return condition(r.rho, projector); }

}  // namespace sws
