#pragma once

// Quantum switch over two channels on the same system. The control qubit is
// always the first tensor factor:
//
//   W_ij = |1><1| (x) A_i B_j + |0><0| (x) B_j A_i
//
// and the control is read out in the {|+>, |->} basis.

#include <functional>
#include <optional>
#include <utility>

#include "causalcell/channels.hpp"

namespace causalcell {

/// Pure control qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct ControlState {
  double theta = M_PI / 2.0;
  double phi = 0.0;

  static ControlState plus() { return {}; }
  static ControlState zero() { return {0.0, 0.0}; }
  static ControlState one() { return {M_PI, 0.0}; }

  Ket ket() const;
  DensityMatrix density() const;
};

enum class Outcome { plus, minus };

/// One measurement branch of the control readout.
struct SwitchOutcome {
  Outcome outcome = Outcome::plus;
  double probability = 0.0;
  /// Tr_c[|o><o| rho_cB |o><o|], before normalization.
  Operator unnormalized;
  /// Normalized conditional state; empty when probability < 1e-12.
  std::optional<DensityMatrix> state;

  bool defined() const noexcept { return state.has_value(); }
};

struct SwitchBranches {
  SwitchOutcome plus;
  SwitchOutcome minus;
};

/// Kraus set of the switch on control (x) system. Throws DimensionMismatch.
KrausChannel switch_kraus(const KrausChannel& ch_a, const KrausChannel& ch_b);

/// Phi_SW(rho_c (x) rho_B).
DensityMatrix switch_evolve(const KrausChannel& ch_a, const KrausChannel& ch_b,
                            const ControlState& control, const DensityMatrix& rho_b);

/// Both branches of a {|+>,|->} readout of the first (qubit) factor.
SwitchBranches measure_control(const DensityMatrix& rho_cb);

using ChannelFactory = std::function<KrausChannel(double duration)>;

/// Builds both channels at duration `ratio * t`, switches them and measures.
/// ratio = 1/2 runs each ordered process for t/2. Throws NegativeTime.
SwitchBranches switch_of_duration(const ChannelFactory& factory_a,
                                  const ChannelFactory& factory_b, double t,
                                  const ControlState& control, const DensityMatrix& rho_b,
                                  double ratio = 0.5);

/// Switch of two copies of the same process.
SwitchBranches switch_of_duration(const ChannelFactory& factory, double t,
                                  const ControlState& control, const DensityMatrix& rho_b,
                                  double ratio = 0.5);

/// Fast path for a |+> control: the branches are
///   rho^{+/-} = 1/4 sum_ij (A_i B_j +/- B_j A_i) rho (...)^dagger
/// which equals measure_control(switch_evolve(...)) without building the
/// joint register.
SwitchBranches switch_branches_plus_control(const KrausChannel& ch_a,
                                            const KrausChannel& ch_b,
                                            const DensityMatrix& rho_b);

}  // namespace causalcell
