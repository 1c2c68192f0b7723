#pragma once

// Dense complex linear algebra for small qubit registers (dimensions 2-16).
//
// Basis convention: index 0 is the excited state |e> (sigma^z = +1), index 1
// is the ground state |g>. Tensor products put the left factor on the slower
// index, so for control (x) battery the control qubit selects the 2x2 block.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "causalcell/tolerances.hpp"

namespace causalcell {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class Pauli { x, y, z };

Operator pauli(Pauli which);
Operator identity(Eigen::Index dim);

/// Computational basis ket |index> in dimension dim.
Ket basis_ket(Eigen::Index dim, Eigen::Index index);
Ket excited();  // |e> = |0>
Ket ground();   // |g> = |1>
Ket plus_ket();
Ket minus_ket();

/// |k><k| as an operator.
Operator projector(const Ket& k);

Operator dagger(const Operator& a);

/// max |a_ij - b_ij|; throws DimensionMismatch on shape mismatch.
double max_abs_diff(const Operator& a, const Operator& b);

bool is_hermitian(const Operator& a, double tol = kTolerances.hermitian);
bool is_unitary(const Operator& u, double tol = kTolerances.unitary);

/// Ascending eigenvalues of a Hermitian operator.
Eigen::VectorXd hermitian_eigenvalues(const Operator& h);

/// e^{-iHt} through the eigendecomposition of H. Throws NonHermitianInput.
Operator matexp_hermitian_generator(const Operator& h, double t);

/// Eigendecomposition of a Hermitian generator, reusable for many times t.
class HermitianPropagator {
 public:
  explicit HermitianPropagator(const Operator& h);

  /// e^{-iHt}
  Operator at(double t) const;

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }

 private:
  Eigen::VectorXd values_;
  Operator vectors_;
};

/// Kronecker product a (x) b.
Operator tensor(const Operator& a, const Operator& b);
Ket tensor(const Ket& a, const Ket& b);

/// Reduced operator on factor `keep` of a register with factor sizes `dims`.
/// Works on unnormalized operators too. Throws DimensionMismatch.
Operator partial_trace(const Operator& rho, std::size_t keep,
                       std::span<const Eigen::Index> dims);

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Validates hermiticity, trace and positivity; throws InvalidState.
  explicit DensityMatrix(Operator op, const Tolerances& tol = kTolerances);

  static DensityMatrix pure(const Ket& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
  /// rho / Tr(rho). Throws InvalidState if the trace is not positive.
  static DensityMatrix normalized(const Operator& rho,
                                  const Tolerances& tol = kTolerances);

  const Operator& op() const noexcept { return op_; }
  Eigen::Index dim() const noexcept { return op_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return op_(i, j); }

 private:
  Operator op_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep,
                            std::span<const Eigen::Index> dims);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace causalcell
