#pragma once

namespace causalcell {

/// Every numerical acceptance threshold used by the library checks.
struct Tolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double psd = 1e-10;
  double unitary = 1e-10;
  double completeness = 1e-9;
  double diagonal = 1e-12;
  double choi_psd = 1e-9;
  // Choi eigenvalues below this are dropped when extracting Kraus operators.
  double kraus_cutoff = 1e-12;
  // Branches with probability below this carry no normalized state.
  double branch_probability = 1e-12;
  // Cross-product threshold for parallel chargers.
  double parallel = 1e-12;
  // Completeness slack for channels built from exponentiated superoperators.
  double lindblad_completeness = 1e-8;
};

inline constexpr Tolerances kTolerances{};

}  // namespace causalcell
