// fock.hpp - operator algebra on the truncated resonator (x) qubit product space
//
// Dense complex matrices throughout; system dimensions stay small enough
// (<= ~122 at n_max = 60) that sparse storage buys nothing.

#pragma once

#include <Eigen/Dense>

namespace qrtherm::fock {

using OperatorMatrix = Eigen::MatrixXcd;

// Tensor-product ordering is fixed repo-wide: resonator factor first, qubit
// factor second. All product-basis index arithmetic goes through ProductBasis.
inline constexpr const char* kTensorOrdering = "resonator (x) qubit";
inline constexpr Eigen::Index kMaxTensorDim = 4096;

enum class PauliAxis { X, Y, Z };

// Qubit basis {up, down} with sigma_z |up> = +|up>.
enum class Spin : int { Up = 0, Down = 1 };

// Index bookkeeping for the (n_max+1) x 2 product space.
struct ProductBasis {
  int n_max;

  explicit ProductBasis(int n_max);

  Eigen::Index dim() const { return 2 * (static_cast<Eigen::Index>(n_max) + 1); }
  Eigen::Index index(int photon, Spin s) const;
  int photon_of(Eigen::Index i) const { return static_cast<int>(i / 2); }
  Spin spin_of(Eigen::Index i) const { return static_cast<Spin>(i % 2); }
};

OperatorMatrix identity(Eigen::Index dim);

// Photon annihilation operator on the (n_max+1)-dimensional truncated ladder:
// entries sqrt(n) on the superdiagonal. n_max = 0 is rejected.
OperatorMatrix annihilation(int n_max);
OperatorMatrix creation(int n_max);
OperatorMatrix number_operator(int n_max);

OperatorMatrix pauli(PauliAxis axis);

// Kronecker product, left (x) right. Dimension capped at kMaxTensorDim.
OperatorMatrix tensor(const OperatorMatrix& left, const OperatorMatrix& right);

// Displacement operator D(amplitude) = exp(amplitude * (a^dag - a)) on the
// truncated ladder, so column 0 is the coherent state with entries
// exp(-amplitude^2/2) amplitude^n / sqrt(n!). Built from the eigh of the
// Hermitian generator i*(a^dag - a); accurate to ~1e-10 in max norm for
// |amplitude| <= 5 at adequate n_max.
OperatorMatrix displacement(int n_max, double amplitude);

// max|M - M^dag| <= rel_tol * max|M|
bool is_hermitian(const OperatorMatrix& m, double rel_tol = 1e-12);

// Eigendecomposition of a Hermitian matrix: ascending values, unitary columns.
struct HermitianEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};
HermitianEigen eigh(const OperatorMatrix& m);

}  // namespace qrtherm::fock
