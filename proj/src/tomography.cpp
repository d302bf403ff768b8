#include "sws/tomography.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sws/fock.hpp"

namespace sws {

const std::array<PreRotation, 6>& all_prerotations() {
  static const std::array<PreRotation, 6> all{PreRotation::I,    PreRotation::X90, PreRotation::Xm90,
                                              PreRotation::X180, PreRotation::Y90, PreRotation::Ym90};
  return all;
}

std::string to_string(PreRotation r) {
  switch (r) {
    case PreRotation::I: return "I";
    case PreRotation::X90: return "X90";
    case PreRotation::Xm90: return "Xm90";
    case PreRotation::X180: return "X";
    case PreRotation::Y90: return "Y90";
    case PreRotation::Ym90: return "Ym90";
  }
  return "?";
}

PreRotation prerotation_from_string(const std::string& s) {
  for (auto r : all_prerotations())
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown pre-rotation '" + s + "'");
}

Matrix rotation(char axis, double theta) {
  return std::cos(theta / 2.0) * Matrix::Identity(2, 2) - kI * std::sin(theta / 2.0) * pauli(axis);
}

Matrix prerotation_unitary(PreRotation r) {
  switch (r) {
    case PreRotation::I: return Matrix::Identity(2, 2);
    case PreRotation::X90: return rotation('X', kPi / 2);
    case PreRotation::Xm90: return rotation('X', -kPi / 2);
    case PreRotation::X180: return rotation('X', kPi);
    case PreRotation::Y90: return rotation('Y', kPi / 2);
    case PreRotation::Ym90: return rotation('Y', -kPi / 2);
  }
  throw std::invalid_argument("bad pre-rotation");
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::zero: return "0";
    case Outcome::one: return "1";
    case Outcome::erasure: return "E";
  }
  return "?";
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "0") return Outcome::zero;
  if (s == "1") return Outcome::one;
  if (s == "E") return Outcome::erasure;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

std::vector<Setting> overcomplete_settings() {
  std::vector<Setting> out;
  for (auto c : all_prerotations())
    for (auto t : all_prerotations()) out.push_back({c, t});
  return out;
}

void MeasurementRecord::add(const Setting& s, Outcome control, Outcome target, double count) {
  if (!(count >= 0.0)) throw std::invalid_argument("negative count");
  auto [it, inserted] = counts_.try_emplace(s);
  if (inserted) it->second.fill(0.0);
  it->second[3 * int(control) + int(target)] += count;
}

double MeasurementRecord::count(const Setting& s, Outcome control, Outcome target) const {
  auto it = counts_.find(s);
  return it == counts_.end() ? 0.0 : it->second[3 * int(control) + int(target)];
}

double MeasurementRecord::total(const Setting& s) const {
  auto it = counts_.find(s);
  if (it == counts_.end()) return 0.0;
  double t = 0.0;
  for (double c : it->second) t += c;
  return t;
}

std::vector<Setting> MeasurementRecord::settings() const {
  std::vector<Setting> out;
  for (const auto& kv : counts_) out.push_back(kv.first);
  return out;
}

void MeasurementRecord::write_csv(std::ostream& out) const {
  out << "setting_control,setting_target,outcome_control,outcome_target,count\n";
  const std::streamsize old = out.precision(17);
  for (const auto& [s, c] : counts_)
    for (int oc = 0; oc < 3; ++oc)
      for (int ot = 0; ot < 3; ++ot)
        out << to_string(s.control) << ',' << to_string(s.target) << ',' << to_string(Outcome(oc)) << ','
            << to_string(Outcome(ot)) << ',' << c[3 * oc + ot] << '\n';
  out.precision(old);
}

MeasurementRecord MeasurementRecord::read_csv(std::istream& in) {
  MeasurementRecord rec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("setting_control", 0) == 0) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 5) throw std::runtime_error("measurement CSV line " + std::to_string(line_no) + ": expected 5 fields");
    try {
      rec.add({prerotation_from_string(fields[0]), prerotation_from_string(fields[1])},
              outcome_from_string(fields[2]), outcome_from_string(fields[3]), std::stod(fields[4]));
    } catch (const std::exception& e) {
      throw std::runtime_error("measurement CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rec;
}

namespace {

Matrix qutrit_rotation(PreRotation r) {
  Matrix u = Matrix::Identity(3, 3);
  u.topLeftCorner(2, 2) = prerotation_unitary(r);
  return u;
}

}  // namespace

MeasurementRecord simulate_record(const Matrix& rho9, const std::vector<Setting>& settings,
                                  const SpamModel& spam, int shots, std::mt19937_64* rng) {
  if (rho9.rows() != kQutritPairDim) throw DimensionError("simulate_record expects a two-qutrit state");
  if (shots < 0) throw std::invalid_argument("shots must be non-negative");
  if (shots > 0 && rng == nullptr) throw std::invalid_argument("sampling requires a generator");
  const RealMatrix conf = kron(spam.control.confusion().cast<Complex>(), spam.target.confusion().cast<Complex>()).real();
  MeasurementRecord rec;
  for (const auto& s : settings) {
    const Matrix u = kron(qutrit_rotation(s.control), qutrit_rotation(s.target));
    const Matrix out = u * rho9 * u.adjoint();
    RealVector pop(9);
    for (int i = 0; i < 9; ++i) pop(i) = std::max(0.0, out(i, i).real());
    RealVector assigned = conf * pop;
    if (shots == 0) {
      for (int i = 0; i < 9; ++i) rec.add(s, Outcome(i / 3), Outcome(i % 3), assigned(i));
    } else {
      std::discrete_distribution<int> dist(assigned.data(), assigned.data() + 9);
      std::array<double, 9> n{};
      for (int k = 0; k < shots; ++k) n[dist(*rng)] += 1.0;
      for (int i = 0; i < 9; ++i) rec.add(s, Outcome(i / 3), Outcome(i % 3), n[i]);
    }
  }
  return rec;
}

Matrix reconstruct_state(const MeasurementRecord& record, bool postselect) {
  const auto paulis = pauli_basis(2);
  const auto settings = record.settings();
  std::vector<RealVector> rows;
  std::vector<double> rhs;
  for (const auto& s : settings) {
    double norm = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (!postselect || (a < 2 && b < 2)) norm += record.count(s, Outcome(a), Outcome(b));
    if (norm <= 0.0) continue;
    const Matrix u = kron(prerotation_unitary(s.control), prerotation_unitary(s.target));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        Matrix proj = Matrix::Zero(4, 4);
        proj(2 * a + b, 2 * a + b) = 1.0;
        const Matrix e = u.adjoint() * proj * u;
        RealVector row(16);
        for (int p = 0; p < 16; ++p) row(p) = 0.25 * (e * paulis[p]).trace().real();
        rows.push_back(row);
        rhs.push_back(record.count(s, Outcome(a), Outcome(b)) / norm);
      }
    }
  }
  RealMatrix a(Eigen::Index(rows.size()), 16);
  RealVector y(Eigen::Index(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(Eigen::Index(i)) = rows[i].transpose();
    y(Eigen::Index(i)) = rhs[i];
  }
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (rows.size() < 16 || svd.rank() < 16) throw std::runtime_error("tomography design matrix is rank deficient");
  const RealVector r = svd.solve(y);
  Matrix rho = Matrix::Zero(4, 4);
  for (int p = 0; p < 16; ++p) rho += 0.25 * r(p) * paulis[p];
  const double tr = postselect ? 1.0 : std::max(0.0, rho.trace().real());
  return project_psd(rho, tr);
}

Matrix canonical_bell_state() {
  const Matrix x = pauli('X'), y = pauli('Y'), z = pauli('Z'), id = Matrix::Identity(2, 2);
  return 0.25 * (kron(id, id) + kron(x, x) - kron(y, z) - kron(z, y));
}

BellMetrics bell_metrics(const Matrix& rho, const Matrix& reference) {
  if (rho.rows() != 4 || reference.rows() != 4) throw DimensionError("bell_metrics expects two-qubit states");
  return {(reference * rho).trace().real(), (rho * rho).trace().real()};
}

BellMetrics bell_metrics(const Matrix& rho) { return bell_metrics(rho, canonical_bell_state()); }

std::vector<double> pauli_correlators(const Matrix& rho) {
  std::vector<double> out;
  for (const auto& p : pauli_basis(2)) out.push_back((p * rho).trace().real());
  return out;
}

Matrix process_tomography(const QubitProcess& process, bool normalize_each) {
  std::vector<Vector> kets;
  {
    Vector k0(2), k1(2), kp(2), ki(2);
    k0 << 1, 0;
    k1 << 0, 1;
    kp << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    ki << 1 / std::sqrt(2.0), kI / std::sqrt(2.0);
    kets = {k0, k1, kp, ki};
  }
  Matrix in(4, 4), out(4, 4);
  for (int k = 0; k < 4; ++k) {
    const Matrix rho = kets[k] * kets[k].adjoint();
    Matrix o = process(rho);
    if (o.rows() != 2 || o.cols() != 2) throw DimensionError("process must map qubit states to qubit states");
    if (normalize_each) {
      const double tr = o.trace().real();
      if (tr < 1e-15) throw std::runtime_error("process tomography: preparation has no surviving population");
      o /= tr;
    }
    in.col(k) = vec(rho);
    out.col(k) = vec(o);
  }
  const Matrix s = out * in.inverse();
  const Matrix j = superop_to_choi(s, 2, 2);
  // chi in the unnormalized Pauli basis: J = W chi W^dag with W^dag W = 2 I
  const auto paulis = pauli_basis(1);
  Matrix w(4, 4);
  for (int m = 0; m < 4; ++m) w.col(m) = vec(paulis[m]);
  Matrix chi = w.adjoint() * j * w / 4.0;
  chi = 0.5 * (chi + chi.adjoint()).eval();
  return project_psd(chi, chi.trace().real());
}

Matrix process_tomography(const QuantumChannel& ch) {
  if (ch.dim_in() != 2 || ch.dim_out() != 2) throw DimensionError("single-qubit process tomography");
  return process_tomography([&](const Matrix& rho) { return ch.apply(rho); }, false);
}

Matrix chi_error(const Matrix& chi, const Matrix& reference) {
  const Eigen::Index d = reference.rows();
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  if ((Eigen::Index(1) << n) != d || chi.rows() != d * d) throw DimensionError("chi_error dimension mismatch");
  const auto paulis = pauli_basis(n);
  const auto m = Eigen::Index(paulis.size());
  Matrix c(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k < m; ++k)
      c(i, k) = (paulis[i].adjoint() * paulis[k] * reference.adjoint()).trace() / double(d);
  return c * chi * c.adjoint();
}

ErrorFractions error_fractions(const Matrix& chi_err) {
  ErrorFractions out;
  double total = 0.0;
  for (Eigen::Index i = 0; i < chi_err.rows(); ++i) {
    const double v = std::max(0.0, chi_err(i, i).real());
    out.p.push_back(v);
    total += v;
  }
  if (total <= 0.0) throw std::domain_error("chi-error matrix has no positive diagonal weight");
  for (double& v : out.p) v /= total;
  out.residual = 1.0 - out.p.front();
  return out;
}

}  // namespace sws
