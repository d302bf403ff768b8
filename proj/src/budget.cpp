#include "sws/budget.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "sws/fock.hpp"
#include "sws/tomography.hpp"

namespace sws {

namespace {

struct Physical {
  ModeRegister reg;
  GateSchedule schedule;
  SubspaceSuperop superop;
};

Eigen::Index index_of_label(const ModeRegister& reg, const std::string& label) {
  const Vector k = reg.ket(label);
  Eigen::Index i = 0;
  k.cwiseAbs().maxCoeff(&i);
  return i;
}

std::vector<std::string> code_labels() { return {"10g10", "10g01", "01g10", "01g01"}; }

Physical simulate(const SystemParams& p, const BudgetOptions& opts, std::vector<std::string> seeds) {
  if (opts.truncation < 2) throw std::invalid_argument("truncation must be at least 2");
  const auto reg = ModeRegister::canonical(opts.truncation);
  auto schedule = build_schedule(p, reg, opts.schedule);
  const auto noise = NoiseModel::from_params(p, reg);
  std::vector<Eigen::Index> idx;
  for (const auto& s : seeds) idx.push_back(index_of_label(reg, s));
  auto sup = gate_superoperator(schedule, noise, idx);
  return {reg, std::move(schedule), std::move(sup)};
}

// Local-index block of the propagated output for the input |i><j|.
Matrix propagate_element(const SubspaceSuperop& s, Eigen::Index i, Eigen::Index j) {
  const auto n = Eigen::Index(s.states.size());
  Matrix in = Matrix::Zero(n, n);
  in(s.local_index(i), s.local_index(j)) = 1.0;
  return unvec(s.superop * vec(in), n, n);
}

// Occupation pattern of a rail triple (first, second, coupler) to a qutrit
// value and a hidden label that distinguishes leaked configurations.
std::pair<int, int> coarse_grain(int first, int second, int coupler, int dim) {
  if (first == 1 && second == 0 && coupler == 0) return {0, 0};
  if (first == 0 && second == 1 && coupler == 0) return {1, 0};
  return {kLeaked, 1 + (first * dim + second) * dim + coupler};
}

}  // namespace

std::vector<BudgetEntry> ErrorBudget::entries() const {
  return {{"control_loss", control_loss}, {"target_loss", target_loss}, {"double_loss", double_loss},
          {"stuck_in_coupler", stuck},    {"lone_coupler", lone_coupler}, {"control_z", control_z},
          {"target_z", target_z},         {"zz", zz},                     {"no_error", no_error},
          {"other", other}};
}

double ErrorBudget::total() const {
  double t = 0.0;
  for (const auto& e : entries()) t += e.probability;
  return t;
}

Matrix pauli_chi_from_superop(const Matrix& superop, int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  if (superop.rows() != d * d || superop.cols() != d * d) throw DimensionError("superoperator dimension mismatch");
  const Matrix j = superop_to_choi(superop, d, d);
  const auto paulis = pauli_basis(n_qubits);
  Matrix w(d * d, d * d);
  for (Eigen::Index m = 0; m < d * d; ++m) w.col(m) = vec(paulis[std::size_t(m)]);
  return w.adjoint() * j * w / double(d * d);
}

ErrorBudget compute_error_budget(const SystemParams& p, const BudgetOptions& opts) {
  const auto labels = code_labels();
  const Physical ph = simulate(p, opts, labels);
  const auto& reg = ph.reg;

  Matrix rho0 = Matrix::Zero(reg.dimension(), reg.dimension());
  for (const auto& l : labels) {
    const auto i = index_of_label(reg, l);
    rho0(i, i) = 0.25;
  }
  const Matrix out = ph.superop.apply(rho0);
  auto pop = [&](std::initializer_list<const char*> ls) {
    double s = 0.0;
    for (const char* l : ls) s += out(index_of_label(reg, l), index_of_label(reg, l)).real();
    return s;
  };
  ErrorBudget b;
  b.control_loss = pop({"00g10", "00g01"});
  b.target_loss = pop({"10g00", "01g00"});
  b.double_loss = pop({"00g00"});
  b.stuck = pop({"00e10", "00e01"});
  b.lone_coupler = pop({"00e00"});

  // Codespace-conditioned map on the logical basis 2c + t.
  std::vector<Eigen::Index> code;
  for (const auto& l : labels) code.push_back(index_of_label(reg, l));
  Matrix s(16, 16);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const Matrix o = propagate_element(ph.superop, code[i], code[j]);
      Matrix blk(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) blk(a, c) = o(ph.superop.local_index(code[a]), ph.superop.local_index(code[c]));
      s.col(j * 4 + i) = vec(blk);
    }
  const Matrix u4 = codespace_block(ideal_unitary(ph.schedule), reg);
  const Matrix err = chi_error(pauli_chi_from_superop(s, 2), u4);
  b.no_error = err(0, 0).real();
  b.control_z = err(12, 12).real();
  b.target_z = err(3, 3).real();
  b.zz = err(15, 15).real();
  b.other = err.trace().real() - b.no_error - b.control_z - b.target_z - b.zz;

  b.residual_coupler_excitation = b.stuck + b.lone_coupler;
  b.correlated_double_erasure = b.lone_coupler;
  b.stuck_suppression = (p.chi_bc / p.g_ac) * (p.chi_bc / p.g_ac);
  return b;
}

QuantumChannel physical_qutrit_channel(const SystemParams& p, const BudgetOptions& opts, bool frame_correct) {
  std::vector<std::string> rail = {"10", "01", "00"};
  std::vector<std::string> seeds;
  for (int c = 0; c < 3; ++c)
    for (int t = 0; t < 3; ++t) seeds.push_back(rail[c] + "g" + rail[t]);
  const Physical ph = simulate(p, opts, seeds);
  const auto& reg = ph.reg;
  const int dim = opts.truncation;

  struct Image {
    int q;
    long hidden;
  };
  std::vector<Image> image;
  for (auto st : ph.superop.states) {
    const auto o = reg.occupations(st);
    const auto [qc, hc] = coarse_grain(o[0], o[1], o[2], dim);
    const auto [qt, ht] = coarse_grain(o[3], o[4], 0, dim);
    image.push_back({3 * qc + qt, long(hc) * 1000 + ht});
  }

  Matrix s = Matrix::Zero(81, 81);
  for (int b = 0; b < 9; ++b)
    for (int a = 0; a < 9; ++a) {
      const Matrix o = propagate_element(ph.superop, index_of_label(reg, seeds[a]), index_of_label(reg, seeds[b]));
      Matrix r = Matrix::Zero(9, 9);
      for (std::size_t i = 0; i < image.size(); ++i)
        for (std::size_t j = 0; j < image.size(); ++j)
          if (image[i].hidden == image[j].hidden) r(image[i].q, image[j].q) += o(Eigen::Index(i), Eigen::Index(j));
      s.col(b * 9 + a) = vec(r);
    }
  QuantumChannel ch = QuantumChannel::from_superop(s, 9, 9);
  if (frame_correct) {
    const LocalFrame f = extract_local_frame(codespace_block(ideal_unitary(ph.schedule), reg));
    Matrix zc = Matrix::Identity(3, 3), zt = Matrix::Identity(3, 3);
    zc(1, 1) = std::exp(-kI * f.phi_a);
    zt(1, 1) = std::exp(-kI * f.phi_b);
    ch = ch.then(QuantumChannel::unitary(kron(zc, zt)));
  }
  return ch;
}

Matrix leakage_conditioned_target_chi(const SystemParams& p, const std::string& control_rails,
                                      const BudgetOptions& opts) {
  if (control_rails != "00" && control_rails != "10" && control_rails != "01")
    throw std::invalid_argument("control rails must be 00, 10 or 01");
  const std::string t0 = "10", t1 = "01";
  const Physical ph = simulate(p, opts, {control_rails + "g" + t0, control_rails + "g" + t1});
  const auto& reg = ph.reg;
  const Eigen::Index in[2] = {index_of_label(reg, control_rails + "g" + t0),
                              index_of_label(reg, control_rails + "g" + t1)};
  const Eigen::Index out_idx[2] = {ph.superop.local_index(index_of_label(reg, "00g" + t0)),
                                   ph.superop.local_index(index_of_label(reg, "00g" + t1))};
  std::map<std::pair<int, int>, Matrix> blocks;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Matrix o = propagate_element(ph.superop, in[i], in[j]);
      Matrix blk(2, 2);
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) blk(a, c) = o(out_idx[a], out_idx[c]);
      blocks[{i, j}] = blk;
    }
  auto process = [&](const Matrix& x) {
    Matrix y = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) y += x(i, j) * blocks.at({i, j});
    return y;
  };
  Matrix s(4, 4);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      Matrix e = Matrix::Zero(2, 2);
      e(i, j) = 1.0;
      s.col(j * 2 + i) = vec(process(e));
    }
  Matrix chi = pauli_chi_from_superop(s, 1);
  const double tr = chi.trace().real();
  if (!(tr > 1e-300)) throw NullConditioning("control never ends in the vacuum");
  return chi / tr;
}

FundamentalLimits fundamental_limits(double g, double alpha_c, double t1_c, double tphi_c) {
  if (!(g > 0.0 && g <= 1.0)) throw std::invalid_argument("hybridization G must lie in (0, 1]");
  if (!(alpha_c > 0.0) || !(t1_c > 0.0) || !(tphi_c > 0.0))
    throw std::invalid_argument("anharmonicity and coherence times must be positive");
  FundamentalLimits f;
  f.p_e_control = 1.0 / (g * alpha_c * t1_c);
  f.p_e_target = 1.0 / (alpha_c * t1_c);
  f.p_z_control = 1.0 / (g * alpha_c * tphi_c);
  f.p_z_target = g / (alpha_c * tphi_c);
  f.bias_bound = 1.0 / (g * g);
  return f;
}

}  // namespace sws
