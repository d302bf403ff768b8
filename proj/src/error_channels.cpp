#include "sws/error_channels.hpp"

#include <cmath>

#include "sws/fock.hpp"

namespace sws {

void ChannelRates::validate() const {
  for (double p : {p_leak_control, p_leak_target, p_z_control, p_z_target, p_zz})
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("channel rate outside [0, 1]");
  if (p_z_control + p_z_target + p_zz > 1.0) throw std::invalid_argument("dephasing rates sum above 1");
}

Matrix cz_phase(double phi) {
  Matrix u = Matrix::Identity(4, 4);
  u(3, 3) = std::exp(kI * phi);
  return u;
}

double leakage_average_coefficient() { return 1.0 / kPi; }

std::vector<Matrix> cz_extended_basis() { return {Matrix::Identity(4, 4), cz_phase(kPi)}; }

QuantumChannel leakage_averaged_channel() {
  const double c = leakage_average_coefficient();
  Matrix chi(2, 2);
  chi << 0.5, kI * c, -kI * c, 0.5;
  return QuantumChannel::from_chi(chi, cz_extended_basis());
}

QuantumChannel digitized_channel() {
  Matrix chi = Matrix::Zero(2, 2);
  chi(0, 0) = chi(1, 1) = 0.5;
  return QuantumChannel::from_chi(chi, cz_extended_basis());
}

Matrix qutrit_pair_isometry() {
  Matrix v = Matrix::Zero(kQutritPairDim, 4);
  for (int c = 0; c < 2; ++c)
    for (int t = 0; t < 2; ++t) v(3 * c + t, 2 * c + t) = 1.0;
  return v;
}

Matrix embed_qubit_pair(const Matrix& u4) {
  if (u4.rows() != 4 || u4.cols() != 4) throw DimensionError("embed_qubit_pair expects 4x4");
  const Matrix v = qutrit_pair_isometry();
  return v * u4 * v.adjoint() + (Matrix::Identity(9, 9) - v * v.adjoint());
}

Matrix qutrit_cz() { return embed_qubit_pair(cz_phase(kPi)); }

Matrix qutrit_local(const Matrix& u3, int qubit) {
  if (u3.rows() != 3 || u3.cols() != 3) throw DimensionError("qutrit_local expects 3x3");
  const Matrix id = Matrix::Identity(3, 3);
  return qubit == 0 ? kron(u3, id) : kron(id, u3);
}

namespace {

Matrix gell_mann_dephasing() {
  // exp(-i pi lambda_3 / 2)
  Matrix k = Matrix::Zero(3, 3);
  k(0, 0) = std::exp(-kI * kPi / 2.0);
  k(1, 1) = std::exp(kI * kPi / 2.0);
  k(2, 2) = 1.0;
  return k;
}

Matrix ket_bra3(int i, int j) {
  Matrix m = Matrix::Zero(3, 3);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

QuantumChannel qutrit_dephasing_channel(const ChannelRates& r) {
  r.validate();
  const Matrix k3 = gell_mann_dephasing();
  const Matrix kc = qutrit_local(k3, 0), kt = qutrit_local(k3, 1);
  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(1.0 - r.p_z_control - r.p_z_target - r.p_zz) * Matrix::Identity(9, 9));
  if (r.p_z_control > 0.0) ops.push_back(std::sqrt(r.p_z_control) * kc);
  if (r.p_z_target > 0.0) ops.push_back(std::sqrt(r.p_z_target) * kt);
  if (r.p_zz > 0.0) ops.push_back(std::sqrt(r.p_zz) * kc * kt);
  return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel qutrit_leakage_channel(double p, int qubit, bool digitize) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("leakage probability outside [0, 1]");
  Matrix k0 = std::sqrt(1.0 - p) * (ket_bra3(0, 0) + ket_bra3(1, 1)) + ket_bra3(2, 2);
  std::vector<Matrix> ops{qutrit_local(k0, qubit)};
  if (p > 0.0) {
    const Matrix cz = qutrit_cz();
    for (int x = 0; x < 2; ++x) {
      const Matrix jump = qutrit_local(ket_bra3(kLeaked, x), qubit);
      if (digitize) {
        ops.push_back(std::sqrt(p / 2.0) * jump);
        ops.push_back(std::sqrt(p / 2.0) * jump * cz);
      } else {
        ops.push_back(std::sqrt(p) * jump);
      }
    }
  }
  return QuantumChannel::from_kraus(std::move(ops));
}

namespace {

QuantumChannel compose_gate(const ChannelRates& r, bool digitize) {
  r.validate();
  return QuantumChannel::unitary(qutrit_cz())
      .then(qutrit_dephasing_channel(r))
      .then(qutrit_leakage_channel(r.p_leak_target, 1, digitize))
      .then(qutrit_leakage_channel(r.p_leak_control, 0, digitize));
}

}  // namespace

QuantumChannel qutrit_gate_channel(const ChannelRates& r) { return compose_gate(r, false); }
QuantumChannel full_gate_channel(const ChannelRates& r) { return compose_gate(r, true); }

NoJump no_jump_kraus(double p_a1, double p_c) {
  if (!(p_a1 >= 0.0 && p_a1 < 1.0) || !(p_c >= 0.0 && p_c < 1.0))
    throw std::invalid_argument("loss probabilities must lie in [0, 1)");
  Matrix e2 = Matrix::Zero(2, 2);
  e2(0, 0) = std::sqrt(1.0 - p_a1);
  e2(1, 1) = std::sqrt(1.0 - p_c);
  const double dp = p_a1 - p_c;
  return {kron(e2, Matrix::Identity(2, 2)), dp * dp / 4.0};
}

double no_jump_exact_infidelity(double p_a1, double p_c) {
  const double a = std::sqrt(1.0 - p_a1), b = std::sqrt(1.0 - p_c);
  return (a - b) * (a - b) / (2.0 * (a * a + b * b));
}

EchoCheck echo_cancellation_check(double kappa, double tau, const Matrix& rho_in, bool echo) {
  if (kappa < 0.0) throw std::invalid_argument("kappa must be non-negative");
  if (rho_in.rows() != 2 || rho_in.cols() != 2) throw DimensionError("echo check works on a control qubit");
  // |1> (photon in a2) is the lossy state before the echo.
  auto evolve = [kappa](const Matrix& rho, double t, int lossy) {
    Matrix out = rho;
    out(lossy, lossy) *= std::exp(-kappa * t);
    out(0, 1) *= std::exp(-kappa * t / 2.0);
    out(1, 0) *= std::exp(-kappa * t / 2.0);
    return out;
  };
  const Matrix x = pauli('X');
  Matrix rho;
  if (echo) {
    rho = evolve(rho_in, tau / 2.0, 1);
    rho = x * rho * x;
    rho = evolve(rho, tau / 2.0, 1);
    rho = x * rho * x;
  } else {
    rho = evolve(rho_in, tau, 1);
  }
  EchoCheck out;
  out.rho_out = rho;
  out.scalar_factor = rho.trace().real() / rho_in.trace().real();
  out.residual = spectral_norm(rho / rho.trace() - rho_in / rho_in.trace());
  return out;
}

EchoCheck echo_cancellation_check(double kappa, double tau) {
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  return echo_cancellation_check(kappa, tau, plus, true);
}

RealMatrix QubitSpam::confusion() const {
  const double m = misassignment, l = leak_detection_error, e = erasure_assignment;
  RealMatrix c(3, 3);
  c << 1.0 - m - e, m, l / 2.0,
       m, 1.0 - m - e, l / 2.0,
       e, e, 1.0 - l;
  return c;
}

SpamModel SpamModel::two_round() {
  return {{7e-6, 1.5e-4, 1.81e-1}, {1.2e-5, 1.5e-4, 1.41e-1}};
}

SpamModel SpamModel::one_round() {
  return {{2e-4, 3.46e-3, 6.79e-2}, {2.3e-4, 3.90e-3, 6.43e-2}};
}

namespace {

std::vector<Matrix> qubit_assignment_kraus(const QubitSpam& s) {
  Matrix pi = Matrix::Zero(2, 3);
  pi(0, 0) = pi(1, 1) = 1.0;
  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(std::max(0.0, 1.0 - s.misassignment - s.erasure_assignment)) * pi);
  if (s.misassignment > 0.0) ops.push_back(std::sqrt(s.misassignment) * pauli('X') * pi);
  if (s.leak_detection_error > 0.0) {
    for (int x = 0; x < 2; ++x) {
      Matrix k = Matrix::Zero(2, 3);
      k(x, kLeaked) = std::sqrt(s.leak_detection_error / 2.0);
      ops.push_back(k);
    }
  }
  return ops;
}

}  // namespace

QuantumChannel assignment_map(const SpamModel& spam) {
  std::vector<Matrix> ops;
  for (const auto& kc : qubit_assignment_kraus(spam.control))
    for (const auto& kt : qubit_assignment_kraus(spam.target)) ops.push_back(kron(kc, kt));
  return QuantumChannel::from_kraus(std::move(ops));
}

FidelityResult postselected_fidelity_detail(const QuantumChannel& ch, const Matrix& reference,
                                            const SpamModel& spam) {
  if (ch.dim_in() != kQutritPairDim || ch.dim_out() != kQutritPairDim)
    throw DimensionError("postselected_fidelity expects a two-qutrit channel");
  if (reference.rows() != 4 || !is_unitary(reference, 1e-10))
    throw std::invalid_argument("reference must be a two-qubit unitary");

  // product states of {|0>, |1>, |+>, |+i>}
  std::vector<Matrix> single;
  {
    Vector k0(2), k1(2), kp(2), ki(2);
    k0 << 1, 0;
    k1 << 0, 1;
    kp << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    ki << 1 / std::sqrt(2.0), kI / std::sqrt(2.0);
    for (const Vector& k : {k0, k1, kp, ki}) single.push_back(k * k.adjoint());
  }
  std::vector<Matrix> states;
  for (const auto& a : single)
    for (const auto& b : single) states.push_back(kron(a, b));

  const auto paulis = pauli_basis(2);
  Matrix r(16, 16), u(16, 16);
  for (int k = 0; k < 16; ++k) r.col(k) = vec(states[k]);
  for (int j = 0; j < 16; ++j) u.col(j) = vec(paulis[j]);
  Eigen::JacobiSVD<Matrix> svd(r);
  const auto& sv = svd.singularValues();
  FidelityResult out;
  out.condition_number = sv(0) / sv(sv.size() - 1);
  if (!(out.condition_number < 1e8)) throw std::runtime_error("state basis expansion is ill-conditioned");
  // columns of alpha^T: U_j = sum_k alpha_jk rho_k
  const Matrix alpha_t = r.completeOrthogonalDecomposition().solve(u);

  const QuantumChannel m = assignment_map(spam);
  const Matrix iso = qutrit_pair_isometry();
  const double d = 4.0;
  Complex acc = 0.0;
  for (int k = 0; k < 16; ++k) {
    const Matrix out_k = m.apply(ch.apply(iso * states[k] * iso.adjoint()));
    const double tr = out_k.trace().real();
    if (tr < 1e-15) throw std::runtime_error("no codespace population survives for a basis state");
    const Matrix normed = out_k / tr;
    for (int j = 0; j < 16; ++j) {
      const Complex a = alpha_t(k, j);
      if (a == Complex(0.0)) continue;
      acc += a * (reference * paulis[j].adjoint() * reference.adjoint() * normed).trace();
    }
  }
  out.fidelity = acc.real() / (d * d * d);
  return out;
}

double postselected_fidelity(const QuantumChannel& ch, const Matrix& reference, const SpamModel& spam) {
  return postselected_fidelity_detail(ch, reference, spam).fidelity;
}

}  // namespace sws
