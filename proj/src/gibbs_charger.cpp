#include "causalcell/gibbs_charger.hpp"

#include <cmath>
#include <string>

#include "causalcell/errors.hpp"
#include "causalcell/scan.hpp"

namespace causalcell::gibbs {

namespace {

constexpr double kScanStepFraction = 1e-4;
constexpr double kRefineTol = 1e-10;

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

}  // namespace

GibbsSpec GibbsSpec::from_beta(double omega, double coupling, double beta) {
  if (!(beta >= 0.0)) throw DomainError("inverse temperature must be non-negative");
  GibbsSpec spec;
  spec.omega = omega;
  spec.coupling = coupling;
  // e^{-x}/(e^{-x}+e^{x}) = 1/(1+e^{2x}) with x = beta omega / 2.
  spec.p = 1.0 / (1.0 + std::exp(beta * omega));
  spec.validate();
  return spec;
}

void GibbsSpec::validate() const {
  if (!(omega > 0.0)) throw NonPositiveOmega("omega must be positive");
  if (!(coupling >= 0.0)) throw DomainError("coupling K must be non-negative");
  require_probability(p);
  if (p > 0.5 && !allow_inversion) {
    throw DomainError("p > 1/2 is a population inversion; enable it explicitly");
  }
}

double GibbsSpec::rabi() const { return std::hypot(omega, coupling); }

double sigma_scale(SigmaConvention conv) {
  return conv == SigmaConvention::unscaled ? 1.0 : 0.5;
}

const char* to_string(SigmaConvention conv) {
  return conv == SigmaConvention::unscaled ? "unscaled" : "conventional";
}

DensityMatrix thermal_state(double p) {
  require_probability(p);
  Operator rho = Operator::Zero(2, 2);
  rho(0, 0) = p;
  rho(1, 1) = 1.0 - p;
  return DensityMatrix(rho);
}

DensityMatrix battery_initial_state(const GibbsSpec& spec, BatteryStart start) {
  return start == BatteryStart::thermal ? thermal_state(spec.p)
                                        : DensityMatrix::pure(ground());
}

Operator interaction_hamiltonian(const GibbsSpec& spec, SigmaConvention conv) {
  const double s = sigma_scale(conv);
  const Operator raise = s * (pauli(Pauli::x) + kI * pauli(Pauli::y));
  const Operator lower = s * (pauli(Pauli::x) - kI * pauli(Pauli::y));
  return spec.coupling * (tensor(raise, raise) + tensor(lower, lower));
}

Operator total_hamiltonian(const GibbsSpec& spec, SigmaConvention conv) {
  const Operator local = 0.5 * spec.omega * pauli(Pauli::z);
  return tensor(local, identity(2)) + tensor(identity(2), local) +
         interaction_hamiltonian(spec, conv);
}

KrausChannel single_charge_channel(const GibbsSpec& spec, double t, SigmaConvention conv) {
  spec.validate();
  if (t < 0.0) throw NegativeTime("charging time must be non-negative");
  return kraus_from_dilation(matexp_hermitian_generator(total_hamiltonian(spec, conv), t),
                             thermal_state(spec.p));
}

GibbsCharger::GibbsCharger(const GibbsSpec& spec, SigmaConvention conv, BatteryStart start)
    : spec_((spec.validate(), spec)),
      propagator_(total_hamiltonian(spec, conv)),
      env_(thermal_state(spec.p)),
      start_(battery_initial_state(spec, start)) {}

KrausChannel GibbsCharger::channel(double t) const {
  if (t < 0.0) throw NegativeTime("charging time must be non-negative");
  return kraus_from_dilation(propagator_.at(t), env_);
}

SwitchBranches GibbsCharger::switched(double t) const {
  if (t < 0.0) throw NegativeTime("charging time must be non-negative");
  const KrausChannel ch = channel(kBranchDurationRatio * t);
  return switch_branches_plus_control(ch, ch, start_);
}

DensityMatrix GibbsCharger::sequential(double tau) const {
  const KrausChannel ch = channel(tau);
  return apply(ch, apply(ch, start_));
}

SwitchBranches switched_charge(const GibbsSpec& spec, double t, SigmaConvention conv,
                               BatteryStart start) {
  return GibbsCharger(spec, conv, start).switched(t);
}

Coefficients coefficients(double p, double omega, double coupling) {
  const double p2 = p * p;
  const double p3 = p2 * p;
  const double p4 = p3 * p;
  const double w2 = omega * omega;
  const double k2 = coupling * coupling;
  Coefficients c{};
  c.a = 6 * p4 - 24 * p3 + 39 * p2 - 23 * p + 5;
  c.b = 12 * p4 - 24 * p3 + 29 * p2 - 15 * p + 3;
  c.c = p2 + p - 1;
  c.d = 2 * p2 - 2 * p + 1;
  c.e = 4 * p2 - 4 * p + 3;
  c.f = w2 * w2 * (36 * p4 - 72 * p3 + 72 * p2 - 36 * p + 9) +
        w2 * k2 * (48 * p4 - 96 * p3 + 100 * p2 - 52 * p + 14) +
        k2 * k2 * (48 * p4 - 96 * p3 + 88 * p2 - 40 * p + 9);
  c.g = 1 - p;
  c.h = 3 * p2 - 3 * p + 1;
  c.i = 6 * p2 - 6 * p + 3;
  c.j = 12 * p2 - 12 * p + 5;
  return c;
}

double f_of_p(const GibbsSpec& spec) {
  require_probability(spec.p);
  if (!(spec.omega > 0.0)) throw NonPositiveOmega("omega must be positive");
  const Coefficients c = coefficients(spec.p, spec.omega, spec.coupling);
  const double w2 = spec.omega * spec.omega;
  const double k2 = spec.coupling * spec.coupling;
  const double root = std::sqrt(c.f);
  return (w2 * c.a + k2 * c.b - c.c * root) * c.g /
         ((5.0 * w2 * c.d + k2 * c.e + root) * c.h);
}

double peak_probability_time(const GibbsSpec& spec) {
  require_probability(spec.p);
  if (!(spec.omega > 0.0)) throw NonPositiveOmega("omega must be positive");
  if (!(spec.coupling > 0.0)) throw DomainError("peak time needs a nonzero coupling");
  const Coefficients c = coefficients(spec.p, spec.omega, spec.coupling);
  const double w2 = spec.omega * spec.omega;
  const double k2 = spec.coupling * spec.coupling;
  double radicand = (w2 * c.i + k2 * c.j - std::sqrt(c.f)) / (k2 * c.h);
  if (radicand < 0.0) {
    if (radicand < -1e-9) throw DomainError("peak time radicand is negative");
    radicand = 0.0;
  }
  double arg = std::sqrt(radicand) / (2.0 * std::sqrt(2.0));
  if (arg > 1.0) {
    if (arg > 1.0 + 1e-9) throw DomainError("peak time arccos argument exceeds 1");
    arg = 1.0;
  }
  return 4.0 / spec.rabi() * std::acos(arg);
}

double g_of_p(const GibbsSpec& spec) {
  const double w2 = spec.omega * spec.omega;
  const double k2 = spec.coupling * spec.coupling;
  const double p = spec.p;
  const double n = w2 + k2;
  return (w2 * w2 * (1 - p) + 2 * w2 * k2 * (1 - p) + k2 * k2 * p) / (n * n);
}

double sequential_two_pass_best(const GibbsSpec& spec) {
  GibbsSpec swapped = spec;
  std::swap(swapped.omega, swapped.coupling);
  return g_of_p(swapped);
}

double h_of_p(double p) { return 1.0 - p; }

double weak_coupling_f(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("weak-coupling limit needs p in [0, 1)");
  const double q = 1.0 - p;
  return 1.0 / (1.0 + p * p / (q * q));
}

double weak_coupling_f_printed(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("weak-coupling limit needs p in [0, 1)");
  const double q = 1.0 - p;
  return 1.0 / (1.0 + p / (q * q));
}

double global_max_population(double p) {
  require_probability(p);
  return (p - 1) * (p - 1) / (1 + 2 * p * (p - 1));
}

double global_max_time(const GibbsSpec& spec) { return 2.0 * M_PI / spec.rabi(); }

ProbabilityPeak find_probability_peak(const GibbsCharger& charger, PeakChoice choice) {
  const double w = charger.spec().rabi();
  const double step = kScanStepFraction * 2.0 * M_PI / w;
  const auto n = static_cast<std::size_t>(std::llround(4.0 * M_PI / w / step));
  auto prob = [&](double t) { return charger.switched(t).minus.probability; };

  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = prob(step * static_cast<double>(i));

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const bool local = values[i] > values[i - 1] && values[i] >= values[i + 1];
    if (!local) continue;
    if (choice == PeakChoice::first) {
      best = i;
      break;
    }
    if (best == 0 || values[i] > values[best]) best = i;
  }
  if (best == 0) throw NumericalFailure("no interior peak of the |-> probability");

  const auto [t, p] = golden_section_max(prob, step * static_cast<double>(best - 1),
                                         step * static_cast<double>(best + 1), kRefineTol);
  const SwitchBranches br = charger.switched(t);
  return {t, p, br.minus.state ? (*br.minus.state)(0, 0).real() : 0.0};
}

PopulationMax find_max_population(const GibbsCharger& charger) {
  const double w = charger.spec().rabi();
  const double step = kScanStepFraction * 2.0 * M_PI / w;
  const auto n = static_cast<std::size_t>(std::llround(4.0 * M_PI / w / step));
  auto pop = [&](double t) {
    const SwitchBranches br = charger.switched(t);
    return br.minus.state ? (*br.minus.state)(0, 0).real() : -1.0;
  };
  PopulationMax best{0.0, -1.0};
  std::size_t idx = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double t = step * static_cast<double>(i);
    const double v = pop(t);
    if (v > best.population) {
      best = {t, v};
      idx = i;
    }
  }
  if (best.population < 0.0) throw NumericalFailure("|-> branch never populated");
  // The supremum sits next to a zero-probability point, so refine only
  // to where the branch stays well resolved.
  const auto [t, v] = golden_section_max(pop, step * static_cast<double>(idx - 1),
                                         step * static_cast<double>(idx + 1), 1e-7);
  if (v > best.population) best = {t, v};
  return best;
}

PopulationMax find_sequential_best(const GibbsCharger& charger) {
  const double w = charger.spec().rabi();
  const double step = kScanStepFraction * 2.0 * M_PI / w;
  const auto n = static_cast<std::size_t>(std::llround(2.0 * M_PI / w / step));
  auto pop = [&](double tau) { return charger.sequential(tau)(0, 0).real(); };
  PopulationMax best{0.0, pop(0.0)};
  std::size_t idx = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double tau = step * static_cast<double>(i);
    const double v = pop(tau);
    if (v > best.population) {
      best = {tau, v};
      idx = i;
    }
  }
  if (idx > 0 && idx < n) {
    const auto [tau, v] = golden_section_max(pop, step * static_cast<double>(idx - 1),
                                             step * static_cast<double>(idx + 1), kRefineTol);
    if (v > best.population) best = {tau, v};
  }
  return best;
}

}  // namespace causalcell::gibbs
