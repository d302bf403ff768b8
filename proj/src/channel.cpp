#include "sws/channel.hpp"

#include <cmath>

#include "sws/fock.hpp"

namespace sws {

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> ops) {
  if (ops.empty()) throw std::invalid_argument("empty Kraus list");
  QuantumChannel ch;
  ch.rep_ = Representation::kraus;
  ch.dim_in_ = ops.front().cols();
  ch.dim_out_ = ops.front().rows();
  for (const auto& k : ops)
    if (k.rows() != ch.dim_out_ || k.cols() != ch.dim_in_) throw DimensionError("Kraus dimension mismatch");
  ch.kraus_ = std::move(ops);
  return ch;
}

QuantumChannel QuantumChannel::from_chi(Matrix chi, std::vector<Matrix> basis) {
  if (basis.empty()) throw std::invalid_argument("empty chi basis");
  if (chi.rows() != chi.cols() || chi.rows() != Eigen::Index(basis.size()))
    throw DimensionError("chi matrix does not match basis size");
  QuantumChannel ch;
  ch.rep_ = Representation::chi;
  ch.dim_in_ = basis.front().cols();
  ch.dim_out_ = basis.front().rows();
  for (const auto& b : basis)
    if (b.rows() != ch.dim_out_ || b.cols() != ch.dim_in_) throw DimensionError("chi basis dimension mismatch");
  ch.chi_ = std::move(chi);
  ch.basis_ = std::move(basis);
  return ch;
}

QuantumChannel QuantumChannel::from_superop(Matrix s, Eigen::Index dim_in, Eigen::Index dim_out) {
  if (s.rows() != dim_out * dim_out || s.cols() != dim_in * dim_in)
    throw DimensionError("superoperator dimension mismatch");
  QuantumChannel ch;
  ch.rep_ = Representation::superop;
  ch.dim_in_ = dim_in;
  ch.dim_out_ = dim_out;
  ch.superop_ = std::move(s);
  return ch;
}

QuantumChannel QuantumChannel::from_superop(Matrix s) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(s.rows()))));
  return from_superop(std::move(s), d, d);
}

QuantumChannel QuantumChannel::unitary(const Matrix& u) { return from_kraus({u}); }

QuantumChannel QuantumChannel::identity(Eigen::Index dim) {
  return from_kraus({Matrix::Identity(dim, dim)});
}

const std::vector<Matrix>& QuantumChannel::kraus() const {
  if (rep_ != Representation::kraus) throw std::logic_error("channel is not in Kraus form");
  return kraus_;
}

const Matrix& QuantumChannel::chi() const {
  if (rep_ != Representation::chi) throw std::logic_error("channel is not in chi form");
  return chi_;
}

const std::vector<Matrix>& QuantumChannel::basis() const {
  if (rep_ != Representation::chi) throw std::logic_error("channel is not in chi form");
  return basis_;
}

const Matrix& QuantumChannel::superop() const {
  if (rep_ != Representation::superop) throw std::logic_error("channel is not in superoperator form");
  return superop_;
}

Matrix unitary_superop(const Matrix& u) { return kron(u.conjugate(), u); }

Matrix QuantumChannel::to_superop() const {
  switch (rep_) {
    case Representation::superop:
      return superop_;
    case Representation::kraus: {
      Matrix s = Matrix::Zero(dim_out_ * dim_out_, dim_in_ * dim_in_);
      for (const auto& k : kraus_) s += kron(k.conjugate(), k);
      return s;
    }
    case Representation::chi: {
      Matrix s = Matrix::Zero(dim_out_ * dim_out_, dim_in_ * dim_in_);
      for (std::size_t m = 0; m < basis_.size(); ++m)
        for (std::size_t n = 0; n < basis_.size(); ++n)
          if (chi_(m, n) != Complex(0.0)) s += chi_(m, n) * kron(basis_[n].conjugate(), basis_[m]);
      return s;
    }
  }
  throw std::logic_error("bad representation");
}

Matrix superop_to_choi(const Matrix& s, Eigen::Index din, Eigen::Index dout) {
  Matrix j(din * dout, din * dout);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index jj = 0; jj < din; ++jj)
      for (Eigen::Index a = 0; a < dout; ++a)
        for (Eigen::Index b = 0; b < dout; ++b)
          j(i * dout + a, jj * dout + b) = s(b * dout + a, jj * din + i);
  return j;
}

Matrix choi_to_superop(const Matrix& j, Eigen::Index din, Eigen::Index dout) {
  Matrix s(dout * dout, din * din);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index jj = 0; jj < din; ++jj)
      for (Eigen::Index a = 0; a < dout; ++a)
        for (Eigen::Index b = 0; b < dout; ++b)
          s(b * dout + a, jj * din + i) = j(i * dout + a, jj * dout + b);
  return s;
}

Matrix QuantumChannel::choi() const { return superop_to_choi(to_superop(), dim_in_, dim_out_); }

Matrix QuantumChannel::apply(const Matrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_) throw DimensionError("channel input dimension mismatch");
  switch (rep_) {
    case Representation::kraus: {
      Matrix out = Matrix::Zero(dim_out_, dim_out_);
      for (const auto& k : kraus_) out += k * rho * k.adjoint();
      return out;
    }
    case Representation::chi: {
      Matrix out = Matrix::Zero(dim_out_, dim_out_);
      for (std::size_t m = 0; m < basis_.size(); ++m) {
        const Matrix left = basis_[m] * rho;
        for (std::size_t n = 0; n < basis_.size(); ++n)
          if (chi_(m, n) != Complex(0.0)) out += chi_(m, n) * left * basis_[n].adjoint();
      }
      return out;
    }
    case Representation::superop:
      return unvec(superop_ * vec(rho), dim_out_, dim_out_);
  }
  throw std::logic_error("bad representation");
}

QuantumChannel QuantumChannel::then(const QuantumChannel& next) const {
  if (next.dim_in_ != dim_out_) throw DimensionError("channel composition dimension mismatch");
  return from_superop(next.to_superop() * to_superop(), dim_in_, next.dim_out_);
}

bool QuantumChannel::is_trace_preserving(double tol) const {
  // Tr E(X) = Tr X  <=>  vec(I)^dag S = vec(I)^dag
  const Matrix s = to_superop();
  const Vector id_out = vec(Matrix::Identity(dim_out_, dim_out_));
  const Vector id_in = vec(Matrix::Identity(dim_in_, dim_in_));
  return (s.adjoint() * id_out - id_in).cwiseAbs().maxCoeff() <= tol;
}

bool QuantumChannel::is_trace_nonincreasing(double tol) const {
  // sum K^dag K <= 1, read off the partial trace of the Choi matrix
  const Matrix j = choi();
  Matrix m = Matrix::Zero(dim_in_, dim_in_);
  for (Eigen::Index i = 0; i < dim_in_; ++i)
    for (Eigen::Index k = 0; k < dim_in_; ++k)
      for (Eigen::Index a = 0; a < dim_out_; ++a) m(k, i) += j(i * dim_out_ + a, k * dim_out_ + a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

double QuantumChannel::min_choi_eigenvalue() const {
  const Matrix j = choi();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() / double(dim_in_);
}

bool QuantumChannel::is_cp(double tol) const { return min_choi_eigenvalue() >= -tol; }

namespace {

std::vector<Matrix> default_chi_basis(Eigen::Index d) {
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  if ((Eigen::Index(1) << n) != d || n == 0)
    throw std::invalid_argument("chi conversion needs an explicit basis for non-qubit dimensions");
  return pauli_basis(n);
}

}  // namespace

QuantumChannel convert_channel(const QuantumChannel& ch, Representation target,
                               std::optional<std::vector<Matrix>> chi_basis) {
  const Eigen::Index din = ch.dim_in(), dout = ch.dim_out();
  if (ch.min_choi_eigenvalue() < -1e-8) throw NotCompletelyPositive("channel is not completely positive");

  switch (target) {
    case Representation::superop:
      return QuantumChannel::from_superop(ch.to_superop(), din, dout);
    case Representation::kraus: {
      const Matrix j = ch.choi();
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()));
      const double scale = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
      std::vector<Matrix> ops;
      for (Eigen::Index k = es.eigenvalues().size(); k-- > 0;) {
        const double lam = es.eigenvalues()(k);
        if (lam <= 1e-14 * scale) continue;
        ops.push_back(std::sqrt(lam) * unvec(es.eigenvectors().col(k), dout, din));
      }
      if (ops.empty()) ops.push_back(Matrix::Zero(dout, din));
      return QuantumChannel::from_kraus(std::move(ops));
    }
    case Representation::chi: {
      if (din != dout) throw DimensionError("chi form requires equal input and output dimensions");
      std::vector<Matrix> basis = chi_basis ? std::move(*chi_basis) : default_chi_basis(din);
      for (const auto& b : basis)
        if (b.rows() != dout || b.cols() != din) throw DimensionError("chi basis dimension mismatch");
      Matrix w(din * dout, Eigen::Index(basis.size()));
      for (std::size_t m = 0; m < basis.size(); ++m) w.col(Eigen::Index(m)) = vec(basis[m]);
      const Matrix j = ch.choi();
      const Matrix wp = w.completeOrthogonalDecomposition().pseudoInverse();
      Matrix chi = wp * j * wp.adjoint();
      chi = 0.5 * (chi + chi.adjoint()).eval();
      const double resid = (w * chi * w.adjoint() - j).cwiseAbs().maxCoeff();
      if (resid > 1e-9 * std::max(1.0, j.cwiseAbs().maxCoeff()))
        throw std::domain_error("channel is not representable in the requested chi basis");
      return QuantumChannel::from_chi(std::move(chi), std::move(basis));
    }
  }
  throw std::logic_error("bad representation");
}

double channel_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) throw DimensionError("channel dimension mismatch");
  return spectral_norm(a.to_superop() - b.to_superop());
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  const auto ka = convert_channel(a, Representation::kraus).kraus();
  const auto kb = convert_channel(b, Representation::kraus).kraus();
  std::vector<Matrix> ops;
  for (const auto& x : ka)
    for (const auto& y : kb) ops.push_back(kron(x, y));
  return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel pauli_twirl(const QuantumChannel& ch) {
  const auto basis = default_chi_basis(ch.dim_in());
  const Matrix s = ch.to_superop();
  Matrix out = Matrix::Zero(s.rows(), s.cols());
  for (const auto& p : basis) {
    const Matrix sp = unitary_superop(p);
    out += sp * s * sp;
  }
  out /= double(basis.size());
  return QuantumChannel::from_superop(std::move(out), ch.dim_in(), ch.dim_out());
}

}  // namespace sws
