#include "causalcell/qops.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "causalcell/errors.hpp"

namespace causalcell {

namespace {

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionMismatch(std::string(what) + ": operator is not square");
  }
}

Operator sqrt_psd(const Operator& a) {
  Eigen::SelfAdjointEigenSolver<Operator> es(a);
  Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Operator pauli(Pauli which) {
  Operator m(2, 2);
  switch (which) {
    case Pauli::x:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Pauli::y:
      m << 0.0, -kI, kI, 0.0;
      break;
    case Pauli::z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return m;
}

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Ket basis_ket(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw DimensionMismatch("basis index out of range");
  }
  Ket k = Ket::Zero(dim);
  k(index) = 1.0;
  return k;
}

Ket excited() { return basis_ket(2, 0); }
Ket ground() { return basis_ket(2, 1); }

Ket plus_ket() {
  Ket k(2);
  k << M_SQRT1_2, M_SQRT1_2;
  return k;
}

Ket minus_ket() {
  Ket k(2);
  k << M_SQRT1_2, -M_SQRT1_2;
  return k;
}

Operator projector(const Ket& k) { return k * k.adjoint(); }

Operator dagger(const Operator& a) { return a.adjoint(); }

double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_unitary(const Operator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(u.adjoint() * u, identity(u.rows())) <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& h) {
  require_square(h, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Operator> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianPropagator::HermitianPropagator(const Operator& h) {
  require_square(h, "matexp_hermitian_generator");
  if (!is_hermitian(h)) {
    throw NonHermitianInput("matexp_hermitian_generator: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Operator HermitianPropagator::at(double t) const {
  Eigen::VectorXcd phases(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    phases(i) = std::exp(-kI * values_(i) * t);
  }
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Operator matexp_hermitian_generator(const Operator& h, double t) {
  return HermitianPropagator(h).at(t);
}

Operator tensor(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Operator partial_trace(const Operator& rho, std::size_t keep,
                       std::span<const Eigen::Index> dims) {
  require_square(rho, "partial_trace");
  if (keep >= dims.size()) {
    throw DimensionMismatch("partial_trace: kept subsystem index out of range");
  }
  const Eigen::Index total = std::accumulate(dims.begin(), dims.end(), Eigen::Index{1},
                                             std::multiplies<>());
  if (total != rho.rows()) {
    throw DimensionMismatch("partial_trace: factor dimensions do not multiply to " +
                            std::to_string(rho.rows()));
  }
  // Split the register as (left, kept, right) with left the slower index.
  Eigen::Index left = 1;
  for (std::size_t i = 0; i < keep; ++i) left *= dims[i];
  const Eigen::Index mid = dims[keep];
  const Eigen::Index right = total / (left * mid);

  Operator out = Operator::Zero(mid, mid);
  for (Eigen::Index a = 0; a < mid; ++a) {
    for (Eigen::Index b = 0; b < mid; ++b) {
      Complex acc = 0.0;
      for (Eigen::Index l = 0; l < left; ++l) {
        for (Eigen::Index r = 0; r < right; ++r) {
          acc += rho((l * mid + a) * right + r, (l * mid + b) * right + r);
        }
      }
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix::DensityMatrix(Operator op, const Tolerances& tol) : op_(std::move(op)) {
  if (op_.rows() != op_.cols() || op_.rows() == 0) {
    throw InvalidState("density matrix must be square and non-empty");
  }
  if (!is_hermitian(op_, tol.hermitian)) {
    throw InvalidState("density matrix is not Hermitian");
  }
  const double tr = op_.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw InvalidState("density matrix trace is " + std::to_string(tr));
  }
  const double smallest = hermitian_eigenvalues(op_)(0);
  if (smallest < -tol.psd) {
    throw InvalidState("density matrix has eigenvalue " + std::to_string(smallest));
  }
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidState("pure state from a zero vector");
  const Ket unit = psi / n;
  return DensityMatrix(projector(unit));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::normalized(const Operator& rho, const Tolerances& tol) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw InvalidState("cannot normalize an operator with trace <= 0");
  Operator scaled = rho / tr;
  // Symmetrize away rounding so the hermiticity check tests the input, not noise.
  scaled = 0.5 * (scaled + scaled.adjoint()).eval();
  return DensityMatrix(std::move(scaled), tol);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.op(), b.op()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep,
                            std::span<const Eigen::Index> dims) {
  return DensityMatrix(partial_trace(rho.op(), keep, dims));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("fidelity: states have different dimensions");
  }
  const Operator root = sqrt_psd(rho.op());
  Operator inner = root * sigma.op() * root;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const Eigen::VectorXd ev = hermitian_eigenvalues(inner).cwiseMax(0.0);
  const double s = ev.cwiseSqrt().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

}  // namespace causalcell
