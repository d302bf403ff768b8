#include "sws/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace sws {

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix kron_all(std::span<const Matrix> factors) {
  if (factors.empty()) return Matrix::Identity(1, 1);
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm: matrix not square");
  return a.exp();
}

Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -w(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (rows * cols != v.size()) throw DimensionError("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix unvec(const Vector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  return unvec(v, d, d);
}

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

Complex relative_phase(const Matrix& u, const Matrix& v) {
  const Complex t = (u.adjoint() * v).trace();
  if (std::abs(t) == 0.0) return 1.0;
  return t / std::abs(t);
}

double phase_insensitive_distance(const Matrix& u, const Matrix& v) {
  return spectral_norm(relative_phase(u, v) * u - v);
}

double unitary_entanglement_fidelity(const Matrix& u, const Matrix& v) {
  const double d = double(u.rows());
  return std::norm((u.adjoint() * v).trace()) / (d * d);
}

Matrix project_psd(const Matrix& rho, double trace) {
  const Matrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector w = es.eigenvalues();
  const Eigen::Index n = w.size();
  std::vector<double> s(w.data(), w.data() + n);
  std::sort(s.begin(), s.end(), std::greater<>());
  double cumsum = 0.0, shift = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += s[k];
    const double t = (cumsum - trace) / double(k + 1);
    if (s[k] - t > 0.0) shift = t;
  }
  for (Eigen::Index i = 0; i < n; ++i) w(i) = std::max(w(i) - shift, 0.0);
  return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

}  // namespace sws
