#pragma once

// Thermal-mediator charging. Battery and charger share H = (omega/2) sigma^z
// and couple through H_I = K (s+ (x) s+ + s- (x) s-), battery first. The
// charger starts in diag(p, 1 - p); p is its excited population. Two
// identical charging processes, each run for t/2, are switched with a |+>
// control and the battery is read in the |-> branch.
//
// The closed forms f, the peak time and the global maximum describe a
// battery that starts in the same thermal state as the charger; that is the
// default BatteryStart.

#include <optional>

#include "causalcell/quantum_switch.hpp"

namespace causalcell::gibbs {

inline constexpr double kBranchDurationRatio = 0.5;

struct GibbsSpec {
  double omega = 1.0;
  double coupling = 1.0;
  double p = 0.0;
  /// Permits p > 1/2 (negative temperature).
  bool allow_inversion = false;

  /// p = e^{-beta omega/2} / (e^{-beta omega/2} + e^{beta omega/2}).
  static GibbsSpec from_beta(double omega, double coupling, double beta);

  /// Throws NonPositiveOmega or DomainError.
  void validate() const;
  /// sqrt(omega^2 + K^2)
  double rabi() const;
};

/// Scale of s+- = scale (sigma^x +- i sigma^y).
enum class SigmaConvention {
  unscaled,  // scale 1
  conventional,    // scale 1/2, s+ = |e><g|
};

/// The convention under which simulation reproduces the closed forms.
inline constexpr SigmaConvention kSelectedConvention = SigmaConvention::conventional;

double sigma_scale(SigmaConvention conv);
const char* to_string(SigmaConvention conv);

enum class BatteryStart { thermal, ground };

DensityMatrix thermal_state(double p);
DensityMatrix battery_initial_state(const GibbsSpec& spec, BatteryStart start);

Operator interaction_hamiltonian(const GibbsSpec& spec,
                                 SigmaConvention conv = kSelectedConvention);
/// H_B (x) I + I (x) H_C + H_I on battery (x) charger.
Operator total_hamiltonian(const GibbsSpec& spec, SigmaConvention conv = kSelectedConvention);

/// Battery channel of one charger coupled for time t. Throws NegativeTime.
KrausChannel single_charge_channel(const GibbsSpec& spec, double t,
                                   SigmaConvention conv = kSelectedConvention);

/// Reusable evaluator; diagonalizes the joint Hamiltonian once.
class GibbsCharger {
 public:
  explicit GibbsCharger(const GibbsSpec& spec, SigmaConvention conv = kSelectedConvention,
                        BatteryStart start = BatteryStart::thermal);

  KrausChannel channel(double t) const;
  /// Switched pair, each process run for t/2.
  SwitchBranches switched(double t) const;
  /// Two sequential passes of duration tau each, from the battery start.
  DensityMatrix sequential(double tau) const;

  const GibbsSpec& spec() const noexcept { return spec_; }
  const DensityMatrix& battery_start() const noexcept { return start_; }

 private:
  GibbsSpec spec_;
  HermitianPropagator propagator_;
  DensityMatrix env_;
  DensityMatrix start_;
};

SwitchBranches switched_charge(const GibbsSpec& spec, double t,
                               SigmaConvention conv = kSelectedConvention,
                               BatteryStart start = BatteryStart::thermal);

/// Polynomial coefficients of the peak-population closed form.
struct Coefficients {
  double a, b, c, d, e, f, g, h, i, j;
};
Coefficients coefficients(double p, double omega, double coupling);

/// Excited population of the |-> branch at the first peak of its probability.
/// Throws DomainError for p outside [0, 1].
double f_of_p(const GibbsSpec& spec);

/// First time at which Tr(rho^-) peaks.
double peak_probability_time(const GibbsSpec& spec);

/// Classical two-pass benchmark as printed:
/// [w^4 (1-p) + 2 w^2 K^2 (1-p) + K^4 p] / (w^2 + K^2)^2.
double g_of_p(const GibbsSpec& spec);

/// Best excited population over tau of two sequential passes from the
/// thermal start: the expression of g_of_p with omega and K exchanged.
double sequential_two_pass_best(const GibbsSpec& spec);

/// 1 - p
double h_of_p(double p);

/// omega >> K limit of f: 1 / (1 + p^2/(1-p)^2). Throws DomainError at p = 1.
double weak_coupling_f(double p);
/// The limit as printed, 1 / (1 + p/(1-p)^2); does not match f.
double weak_coupling_f_printed(double p);

/// sup_t of the |-> branch excited population: (1-p)^2 / (1 + 2p(p-1)).
double global_max_population(double p);
/// 2 pi / sqrt(omega^2 + K^2), where that supremum is approached.
double global_max_time(const GibbsSpec& spec);

enum class PeakChoice { first, global };

struct ProbabilityPeak {
  double t = 0.0;
  double probability = 0.0;
  double excited_population = 0.0;
};

/// Scan of Tr(rho^-) over one period 4 pi / sqrt(omega^2 + K^2) with step
/// 1e-4 * 2 pi / sqrt(omega^2 + K^2), refined by golden section to 1e-10.
ProbabilityPeak find_probability_peak(const GibbsCharger& charger,
                                      PeakChoice choice = PeakChoice::first);

struct PopulationMax {
  double t = 0.0;
  double population = 0.0;
};

/// Largest |-> branch excited population over the same scan; branches with
/// probability below 1e-12 are skipped.
PopulationMax find_max_population(const GibbsCharger& charger);

/// Best excited population of two sequential passes over tau in one period.
PopulationMax find_sequential_best(const GibbsCharger& charger);

}  // namespace causalcell::gibbs
