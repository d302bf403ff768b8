#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sws {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(std::span<const Matrix> factors);

// Dense Pade scaling-and-squaring exponential.
Matrix expm(const Matrix& a);
// exp(-i h t) for Hermitian h via eigendecomposition.
Matrix expm_hermitian(const Matrix& h, double t);

// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);
Matrix unvec(const Vector& v);

double wrap_phase(double phi);  // (-pi, pi]
double spectral_norm(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

// Phase e^{i theta} maximizing |Tr(U^dag V)|, i.e. V ~ e^{i theta} U.
Complex relative_phase(const Matrix& u, const Matrix& v);
// ||e^{i theta} U - V|| after removing the best global phase.
double phase_insensitive_distance(const Matrix& u, const Matrix& v);
// |Tr(U^dag V)|^2 / d^2
double unitary_entanglement_fidelity(const Matrix& u, const Matrix& v);

// Frobenius-nearest PSD matrix with the given trace (eigenvalues projected
// onto the scaled simplex).
Matrix project_psd(const Matrix& rho, double trace = 1.0);

Matrix dagger(const Matrix& m);

}  // namespace sws
