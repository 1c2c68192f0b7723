#pragma once

// CPTP maps in Kraus form, plus the two ways this project obtains them:
// tracing out a diagonal environment of a dilation unitary, and exponentiating
// a Lindblad generator and reading the Kraus set off its Choi matrix.
//
// Vectorization is column stacking: vec(A X B) = (B^T (x) A) vec(X).

#include <vector>

#include "causalcell/qops.hpp"

namespace causalcell {

class KrausChannel {
 public:
  /// Throws DimensionMismatch for ragged operators, InvalidState when
  /// sum K^dagger K differs from the identity by more than `completeness_tol`.
  explicit KrausChannel(std::vector<Operator> ops,
                        double completeness_tol = kTolerances.completeness);

  static KrausChannel identity(Eigen::Index dim);
  static KrausChannel unitary(const Operator& u);

  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<Operator>& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

  /// max |sum K^dagger K - I|
  double completeness_error() const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<Operator> ops_;
};

/// sum_i K_i rho K_i^dagger on an arbitrary (possibly unnormalized) operator.
Operator apply(const KrausChannel& ch, const Operator& rho);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Sequential composition: `second` after `first`.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

/// K_ij = sqrt(P_j) <i|U|j> over environment indices, for U on system (x) env
/// and a diagonal environment state diag(P). All d_env^2 operators are
/// returned, zero ones included.
KrausChannel kraus_from_dilation(const Operator& u, const DensityMatrix& env_state);

/// sum_ij |i><j| (x) Phi(|i><j|): input copy first, output second.
Operator choi(const KrausChannel& ch);

/// Kraus set from the eigendecomposition of a Choi matrix in the layout of
/// `choi`. Eigenvalues below `cutoff` are discarded. Throws NotPSD.
KrausChannel kraus_from_choi(const Operator& c,
                             double completeness_tol = kTolerances.completeness,
                             double cutoff = kTolerances.kraus_cutoff);

/// Generator H and dissipator rate * (-{N, rho} + 2 N rho N).
struct LindbladSpec {
  Operator hamiltonian;
  Operator jump;
  double rate = 0.0;

  /// Throws NonHermitianInput, DimensionMismatch or DomainError.
  void validate() const;
};

/// d rho / dt for the spec above.
Operator lindblad_rhs(const LindbladSpec& spec, const Operator& rho);

/// d^2 x d^2 matrix of the generator acting on column-stacked vec(rho).
Operator lindblad_superoperator(const LindbladSpec& spec);

/// Transfer matrix exp(L t). Throws NegativeTime.
Operator lindblad_transfer_matrix(const LindbladSpec& spec, double t);

/// Choi matrix of a channel given by its transfer (superoperator) matrix.
Operator choi_from_transfer(const Operator& transfer);

/// Kraus set of exp(L t). Throws NegativeTime.
KrausChannel lindblad_propagator(const LindbladSpec& spec, double t);

/// Fixed-step RK4 trajectory sampled at `t_grid` (ascending, starting at 0).
/// Steps are at most `max_step`. Throws GridNotAscending.
std::vector<DensityMatrix> lindblad_integrate(const LindbladSpec& spec,
                                              const DensityMatrix& rho0,
                                              const std::vector<double>& t_grid,
                                              double max_step = 1e-4);

}  // namespace causalcell
