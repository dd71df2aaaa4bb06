// fock.cpp - truncated product-space operator constructors

#include "qrtherm/fock.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qrtherm::fock {

using std::complex;

ProductBasis::ProductBasis(int n_max_) : n_max(n_max_) {
  if (n_max < 1) {
    throw std::invalid_argument("ProductBasis: n_max must be >= 1");
  }
}

Eigen::Index ProductBasis::index(int photon, Spin s) const {
  if (photon < 0 || photon > n_max) {
    throw std::invalid_argument("ProductBasis::index: photon number out of range");
  }
  return 2 * static_cast<Eigen::Index>(photon) + static_cast<Eigen::Index>(s);
}

OperatorMatrix identity(Eigen::Index dim) {
  if (dim < 1) {
    throw std::invalid_argument("identity: dimension must be positive");
  }
  return OperatorMatrix::Identity(dim, dim);
}

OperatorMatrix annihilation(int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument(
        "annihilation: n_max must be >= 1 (truncation too small)");
  }
  const Eigen::Index dim = n_max + 1;
  OperatorMatrix a = OperatorMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

OperatorMatrix creation(int n_max) { return annihilation(n_max).adjoint(); }

OperatorMatrix number_operator(int n_max) {
  const OperatorMatrix a = annihilation(n_max);
  return a.adjoint() * a;
}

OperatorMatrix pauli(PauliAxis axis) {
  OperatorMatrix s = OperatorMatrix::Zero(2, 2);
  switch (axis) {
    case PauliAxis::X:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case PauliAxis::Y:
      s(0, 1) = complex<double>(0.0, -1.0);
      s(1, 0) = complex<double>(0.0, 1.0);
      break;
    case PauliAxis::Z:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli: invalid axis");
  }
  return s;
}

OperatorMatrix tensor(const OperatorMatrix& left, const OperatorMatrix& right) {
  if (left.rows() != left.cols() || right.rows() != right.cols()) {
    throw std::invalid_argument("tensor: operands must be square");
  }
  const Eigen::Index dl = left.rows();
  const Eigen::Index dr = right.rows();
  if (dl < 1 || dr < 1 || dl * dr > kMaxTensorDim) {
    throw std::invalid_argument("tensor: product dimension out of range");
  }
  OperatorMatrix out(dl * dr, dl * dr);
  for (Eigen::Index i = 0; i < dl; ++i) {
    for (Eigen::Index j = 0; j < dl; ++j) {
      out.block(i * dr, j * dr, dr, dr) = left(i, j) * right;
    }
  }
  return out;
}

OperatorMatrix displacement(int n_max, double amplitude) {
  if (std::abs(amplitude) > 5.0) {
    throw std::invalid_argument(
        "displacement: |amplitude| > 5 not representable at practical n_max");
  }
  const Eigen::Index dim = n_max + 1;
  if (amplitude == 0.0) {
    return OperatorMatrix::Identity(dim, dim);
  }
  // exp(A) with A = amplitude (a^dag - a) anti-Hermitian: eigendecompose the
  // Hermitian generator i A, then exp(A) = V exp(-i diag) V^dag.
  const OperatorMatrix a = annihilation(n_max);
  const OperatorMatrix gen =
      complex<double>(0.0, 1.0) * amplitude * (a.adjoint() - a);
  const HermitianEigen he = eigh(gen);
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    phases(k) = std::exp(complex<double>(0.0, -he.values(k)));
  }
  return he.vectors * phases.asDiagonal() * he.vectors.adjoint();
}

bool is_hermitian(const OperatorMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  const double dev = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
  return dev <= rel_tol * scale;
}

HermitianEigen eigh(const OperatorMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("eigh: matrix must be square and non-empty");
  }
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qrtherm::fock
