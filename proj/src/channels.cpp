#include "causalcell/channels.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "causalcell/errors.hpp"

namespace causalcell {

KrausChannel::KrausChannel(std::vector<Operator> ops, double completeness_tol)
    : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionMismatch("Kraus channel needs at least one operator");
  dim_ = ops_.front().rows();
  for (const auto& k : ops_) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw DimensionMismatch("Kraus operators must all be " + std::to_string(dim_) +
                              "x" + std::to_string(dim_));
    }
  }
  const double err = completeness_error();
  if (!(err <= completeness_tol)) {
    throw InvalidState("Kraus set is not trace preserving (error " + std::to_string(err) +
                       ")");
  }
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
  return KrausChannel({causalcell::identity(dim)});
}

KrausChannel KrausChannel::unitary(const Operator& u) {
  if (!is_unitary(u)) throw NonUnitaryInput("unitary channel from a non-unitary matrix");
  return KrausChannel({u});
}

double KrausChannel::completeness_error() const {
  Operator sum = Operator::Zero(dim_, dim_);
  for (const auto& k : ops_) sum.noalias() += k.adjoint() * k;
  return max_abs_diff(sum, causalcell::identity(dim_));
}

Operator apply(const KrausChannel& ch, const Operator& rho) {
  if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) {
    throw DimensionMismatch("apply: state and channel dimensions differ");
  }
  Operator out = Operator::Zero(ch.dim(), ch.dim());
  for (const auto& k : ch.ops()) out.noalias() += k * rho * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  Operator out = apply(ch, rho.op());
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.dim() != first.dim()) throw DimensionMismatch("compose: dimensions differ");
  std::vector<Operator> ops;
  ops.reserve(second.size() * first.size());
  for (const auto& a : second.ops()) {
    for (const auto& b : first.ops()) ops.push_back(a * b);
  }
  return KrausChannel(std::move(ops));
}

KrausChannel kraus_from_dilation(const Operator& u, const DensityMatrix& env_state) {
  const Eigen::Index de = env_state.dim();
  if (u.rows() != u.cols() || u.rows() % de != 0) {
    throw DimensionMismatch("kraus_from_dilation: unitary is not system (x) environment");
  }
  if (!is_unitary(u)) throw NonUnitaryInput("kraus_from_dilation: U is not unitary");
  const Operator& env = env_state.op();
  for (Eigen::Index i = 0; i < de; ++i) {
    for (Eigen::Index j = 0; j < de; ++j) {
      if (i != j && std::abs(env(i, j)) > kTolerances.diagonal) {
        throw NonDiagonalEnvironment("kraus_from_dilation: environment state is not diagonal");
      }
    }
  }
  const Eigen::Index ds = u.rows() / de;
  std::vector<Operator> ops;
  ops.reserve(static_cast<std::size_t>(de * de));
  for (Eigen::Index i = 0; i < de; ++i) {
    for (Eigen::Index j = 0; j < de; ++j) {
      const double weight = std::sqrt(std::max(env(j, j).real(), 0.0));
      Operator k(ds, ds);
      for (Eigen::Index a = 0; a < ds; ++a) {
        for (Eigen::Index b = 0; b < ds; ++b) {
          k(a, b) = weight * u(a * de + i, b * de + j);
        }
      }
      ops.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(ops));
}

Operator choi(const KrausChannel& ch) {
  const Eigen::Index d = ch.dim();
  Operator c = Operator::Zero(d * d, d * d);
  for (const auto& k : ch.ops()) {
    Eigen::VectorXcd v(d * d);
    for (Eigen::Index i = 0; i < d; ++i) v.segment(i * d, d) = k.col(i);
    c.noalias() += v * v.adjoint();
  }
  return c;
}

KrausChannel kraus_from_choi(const Operator& c, double completeness_tol, double cutoff) {
  const auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(double(c.rows()))));
  if (c.rows() != c.cols() || d * d != c.rows()) {
    throw DimensionMismatch("kraus_from_choi: Choi matrix must be d^2 x d^2");
  }
  if (!is_hermitian(c, kTolerances.choi_psd)) throw NotPSD("Choi matrix is not Hermitian");
  const Operator sym = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(sym);
  if (es.eigenvalues()(0) < -kTolerances.choi_psd) {
    throw NotPSD("Choi matrix has eigenvalue " + std::to_string(es.eigenvalues()(0)));
  }
  std::vector<Operator> ops;
  for (Eigen::Index n = c.rows() - 1; n >= 0; --n) {
    const double lambda = es.eigenvalues()(n);
    if (lambda < cutoff) break;
    const Eigen::VectorXcd v = std::sqrt(lambda) * es.eigenvectors().col(n);
    Operator k(d, d);
    for (Eigen::Index i = 0; i < d; ++i) k.col(i) = v.segment(i * d, d);
    ops.push_back(std::move(k));
  }
  if (ops.empty()) throw NotPSD("Choi matrix has no eigenvalue above the cutoff");
  return KrausChannel(std::move(ops), completeness_tol);
}

void LindbladSpec::validate() const {
  if (hamiltonian.rows() != hamiltonian.cols() || jump.rows() != jump.cols() ||
      hamiltonian.rows() != jump.rows()) {
    throw DimensionMismatch("Lindblad generator and jump operator dimensions differ");
  }
  if (!is_hermitian(hamiltonian)) throw NonHermitianInput("Lindblad generator is not Hermitian");
  if (!(rate >= 0.0)) throw DomainError("Lindblad rate must be non-negative");
}

Operator lindblad_rhs(const LindbladSpec& spec, const Operator& rho) {
  const Operator& h = spec.hamiltonian;
  const Operator& n = spec.jump;
  Operator out = -kI * (h * rho - rho * h);
  out += spec.rate * (-(n * rho + rho * n) + 2.0 * n * rho * n);
  return out;
}

Operator lindblad_superoperator(const LindbladSpec& spec) {
  spec.validate();
  const Eigen::Index d = spec.hamiltonian.rows();
  const Operator id = identity(d);
  const Operator& h = spec.hamiltonian;
  const Operator& n = spec.jump;
  Operator l = -kI * (tensor(id, h) - tensor(h.transpose(), id));
  l += spec.rate * (-(tensor(id, n) + tensor(n.transpose(), id)) +
                    2.0 * tensor(n.transpose(), n));
  return l;
}

Operator lindblad_transfer_matrix(const LindbladSpec& spec, double t) {
  if (t < 0.0) throw NegativeTime("Lindblad propagator needs t >= 0");
  const Operator l = lindblad_superoperator(spec);
  return (l * Complex(t, 0.0)).exp();
}

Operator choi_from_transfer(const Operator& transfer) {
  const auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(double(transfer.rows()))));
  Operator c(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      // Column j*d+i of the transfer matrix is vec(Phi(|i><j|)).
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
          c(i * d + a, j * d + b) = transfer(b * d + a, j * d + i);
        }
      }
    }
  }
  return c;
}

KrausChannel lindblad_propagator(const LindbladSpec& spec, double t) {
  const Operator c = choi_from_transfer(lindblad_transfer_matrix(spec, t));
  return kraus_from_choi(c, kTolerances.lindblad_completeness);
}

std::vector<DensityMatrix> lindblad_integrate(const LindbladSpec& spec,
                                              const DensityMatrix& rho0,
                                              const std::vector<double>& t_grid,
                                              double max_step) {
  spec.validate();
  if (rho0.dim() != spec.hamiltonian.rows()) {
    throw DimensionMismatch("lindblad_integrate: state and generator dimensions differ");
  }
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw GridNotAscending("time grid must start at 0");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw GridNotAscending("time grid must be ascending");
  }
  Tolerances loose;
  loose.trace = 1e-8;
  loose.psd = 1e-8;
  loose.hermitian = 1e-8;

  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  out.push_back(rho0);
  Operator rho = rho0.op();
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double span = t_grid[i] - t_grid[i - 1];
    const auto steps = static_cast<long>(std::ceil(span / max_step - 1e-9));
    const double h = span / static_cast<double>(std::max(steps, 1L));
    for (long s = 0; s < std::max(steps, 1L); ++s) {
      const Operator k1 = lindblad_rhs(spec, rho);
      const Operator k2 = lindblad_rhs(spec, rho + 0.5 * h * k1);
      const Operator k3 = lindblad_rhs(spec, rho + 0.5 * h * k2);
      const Operator k4 = lindblad_rhs(spec, rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out.emplace_back(rho, loose);
  }
  return out;
}

}  // namespace causalcell
