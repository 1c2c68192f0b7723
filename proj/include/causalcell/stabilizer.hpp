#pragma once

// Switch-based rescue of a dissipating, fully charged battery. Each branch
// process is Lindblad evolution under hB + hA with dissipator
// rate (-{N, rho} + 2 N rho N); two identical copies are switched with a |+>
// control and the battery is read in the |+> branch.

#include <vector>

#include "causalcell/quantum_switch.hpp"

namespace causalcell::stabilizer {

enum class InitialState {
  hb_top_eigenvector,  // fully charged with respect to hB
  computational_zero,  // |0><0|
};

struct StabilizerSpec {
  Operator hb = 3.0 * pauli(Pauli::x) + pauli(Pauli::z);
  Operator ha = 12.0 * pauli(Pauli::x) + 5.0 * pauli(Pauli::y);
  double rate = 2.0 / 3.0;
  Operator jump = projector(excited());
  InitialState initial = InitialState::hb_top_eigenvector;
  /// Per-branch process duration as a fraction of t; 0.5 or 1.
  double duration_ratio = 0.5;

  /// Throws NonHermitianInput, DimensionMismatch or DomainError.
  void validate() const;
  LindbladSpec lindblad() const;
};

DensityMatrix initial_state(const StabilizerSpec& spec);

struct TrajectoryPoint {
  double t = 0.0;
  double population = 0.0;  // P = rho+_00
  double coherence = 0.0;   // C = |rho+_01|
  double prob_plus = 0.0;
  double fidelity = 0.0;  // with initial_state
};

/// Plus branch of the switched pair for switch duration t.
SwitchOutcome plus_branch(const StabilizerSpec& spec, double t);

/// Throws GridNotAscending.
std::vector<TrajectoryPoint> rescue_trajectory(const StabilizerSpec& spec,
                                               const std::vector<double>& t_grid);

struct RescueResult {
  double t = 0.0;
  double fidelity = 0.0;
  double prob_plus = 0.0;
  TrajectoryPoint point;
};

/// The fidelity starts at 1 and first has to drop below the threshold; the
/// rescue is the fidelity maximum of the first later excursion back above
/// it. Grid scan from 1e-4 with `scan_step`, refined by golden section.
/// Throws NoRescueFound (with the best fidelity after the first drop).
RescueResult find_rescue_time(const StabilizerSpec& spec, double t_max,
                              double threshold = 0.999, double scan_step = 1e-3);

enum class CycleMode {
  ideal_reset,  // every cycle starts from the fully charged state
  propagate,    // every cycle starts from the previous conditional state
};

struct RescueCycle {
  double fidelity = 0.0;
  double prob_plus = 0.0;
  double cumulative_probability = 0.0;
};

/// Repeats the rescue cycle at the rescue time. Throws NoRescueFound and
/// DomainError for cycles < 1.
std::vector<RescueCycle> repeated_rescue(const StabilizerSpec& spec, int cycles, double t_max = 1.0,
                                         double threshold = 0.999,
                                         CycleMode mode = CycleMode::ideal_reset);

}  // namespace causalcell::stabilizer
