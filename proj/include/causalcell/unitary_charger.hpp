#pragma once

// Static unitary charger pair: battery H_B = omega sigma^z, chargers
// V_i = x_i sigma^x + y_i sigma^y, process i evolves with
// U_i(t) = exp(-i (H_B + V_i) t). The two processes are switched with a |+>
// control and the battery is read in the |-> branch.

#include <optional>

#include "causalcell/quantum_switch.hpp"

namespace causalcell::unitary {

/// Each ordered process runs for the full switch duration t. The closed
/// forms below (sin(Omega_i t), t_min = pi / (2 omega)) are written for it.
inline constexpr double kBranchDurationRatio = 1.0;

struct ChargerSpec {
  double x = 0.0;
  double y = 0.0;

  double magnitude() const;
};

struct UnitaryProtocol {
  double omega = 1.0;
  ChargerSpec c1;
  ChargerSpec c2;

  /// Throws NonPositiveOmega.
  void validate() const;
  /// sqrt(omega^2 + x_i^2 + y_i^2), i in {1, 2}.
  double big_omega(int which) const;
  /// x1 y2 - x2 y1
  double cross() const;
  bool parallel() const;
  /// c1 = R c2 for parallel chargers; nullopt when not parallel or c2 = 0.
  std::optional<double> ratio() const;
  /// x2^2 + y2^2
  double m_squared() const;
};

/// H_B + V_i
Operator charger_hamiltonian(const UnitaryProtocol& proto, int which);
KrausChannel charger_channel(const UnitaryProtocol& proto, int which, double duration);

struct MinusPopulation {
  double rho11 = 0.0;  // excited
  double rho22 = 0.0;  // ground
};

/// Diagonal of the unnormalized minus-branch state from |g><g|, closed form.
MinusPopulation minus_branch_population(const UnitaryProtocol& proto, double t);

/// Switched evolution from `rho_b` (|g><g| by default) simulated through the
/// switch module.
SwitchBranches simulate(const UnitaryProtocol& proto, double t,
                        const std::optional<DensityMatrix>& rho_b = std::nullopt);

/// R = x1/x2 = y1/y2 != 1.
bool fully_charged_condition(const UnitaryProtocol& proto);

/// Parallel chargers along sigma^x with Omega_2 = (1 + 2k) Omega_1.
/// Omega_1 defaults to omega (charger 1 switched off), the setting in which
/// the |-> probability at t_min equals success_probability(k). Throws
/// DomainError for k < 1, InfeasibleTarget for omega1_target < omega.
UnitaryProtocol optimal_protocol(double omega, int k,
                                 std::optional<double> omega1_target = std::nullopt);

/// 1 - 1/(1+2k)^2
double success_probability(int k);

/// pi / (2 omega). Throws NonPositiveOmega.
double optimal_time(double omega);

/// Tr(rho omega sigma^z)
double battery_energy(const DensityMatrix& rho, double omega);

}  // namespace causalcell::unitary
