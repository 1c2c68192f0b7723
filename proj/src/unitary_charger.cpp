#include "causalcell/unitary_charger.hpp"

#include <cmath>

#include "causalcell/errors.hpp"

namespace causalcell::unitary {

double ChargerSpec::magnitude() const { return std::hypot(x, y); }

void UnitaryProtocol::validate() const {
  if (!(omega > 0.0)) throw NonPositiveOmega("battery gap omega must be positive");
}

double UnitaryProtocol::big_omega(int which) const {
  const ChargerSpec& c = which == 1 ? c1 : c2;
  return std::sqrt(omega * omega + c.x * c.x + c.y * c.y);
}

double UnitaryProtocol::cross() const { return c1.x * c2.y - c2.x * c1.y; }

bool UnitaryProtocol::parallel() const {
  return std::abs(cross()) <= kTolerances.parallel;
}

std::optional<double> UnitaryProtocol::ratio() const {
  if (!parallel()) return std::nullopt;
  // Divide by the larger component of c2 to stay away from x2 = 0.
  if (std::abs(c2.x) >= std::abs(c2.y)) {
    if (c2.x == 0.0) return std::nullopt;
    return c1.x / c2.x;
  }
  return c1.y / c2.y;
}

double UnitaryProtocol::m_squared() const { return c2.x * c2.x + c2.y * c2.y; }

Operator charger_hamiltonian(const UnitaryProtocol& proto, int which) {
  const ChargerSpec& c = which == 1 ? proto.c1 : proto.c2;
  return proto.omega * pauli(Pauli::z) + c.x * pauli(Pauli::x) + c.y * pauli(Pauli::y);
}

KrausChannel charger_channel(const UnitaryProtocol& proto, int which, double duration) {
  if (duration < 0.0) throw NegativeTime("charger duration must be non-negative");
  return KrausChannel({matexp_hermitian_generator(charger_hamiltonian(proto, which), duration)});
}

MinusPopulation minus_branch_population(const UnitaryProtocol& proto, double t) {
  proto.validate();
  const double o1 = proto.big_omega(1);
  const double o2 = proto.big_omega(2);
  const double s1 = std::sin(o1 * t);
  const double s2 = std::sin(o2 * t);
  const double common = s1 * s1 * s2 * s2 / (o1 * o1 * o2 * o2);
  // (x1-x2)^2 + (y1-y2)^2 reduces to (1-R)^2 M^2 when c1 = R c2.
  const double dx = proto.c1.x - proto.c2.x;
  const double dy = proto.c1.y - proto.c2.y;
  const double w2 = proto.omega * proto.omega;
  return {w2 * (dx * dx + dy * dy) * common, proto.cross() * proto.cross() * common};
}

SwitchBranches simulate(const UnitaryProtocol& proto, double t,
                        const std::optional<DensityMatrix>& rho_b) {
  proto.validate();
  const DensityMatrix start = rho_b ? *rho_b : DensityMatrix::pure(ground());
  return switch_of_duration([&](double d) { return charger_channel(proto, 1, d); },
                            [&](double d) { return charger_channel(proto, 2, d); }, t,
                            ControlState::plus(), start, kBranchDurationRatio);
}

bool fully_charged_condition(const UnitaryProtocol& proto) {
  const auto r = proto.ratio();
  return r.has_value() && std::abs(*r - 1.0) > kTolerances.parallel;
}

UnitaryProtocol optimal_protocol(double omega, int k, std::optional<double> omega1_target) {
  if (!(omega > 0.0)) throw NonPositiveOmega("battery gap omega must be positive");
  if (k < 1) throw DomainError("k must be a positive integer");
  const double o1 = omega1_target.value_or(omega);
  if (!(o1 >= omega)) {
    throw InfeasibleTarget("Omega_1 must be at least omega (Omega_1^2 = omega^2 + |c1|^2)");
  }
  const double o2 = (1.0 + 2.0 * k) * o1;
  UnitaryProtocol proto;
  proto.omega = omega;
  proto.c1 = {std::sqrt(o1 * o1 - omega * omega), 0.0};
  proto.c2 = {std::sqrt(o2 * o2 - omega * omega), 0.0};
  return proto;
}

double success_probability(int k) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const double n = 1.0 + 2.0 * k;
  return 1.0 - 1.0 / (n * n);
}

double optimal_time(double omega) {
  if (!(omega > 0.0)) throw NonPositiveOmega("battery gap omega must be positive");
  return M_PI / (2.0 * omega);
}

double battery_energy(const DensityMatrix& rho, double omega) {
  if (rho.dim() != 2) throw DimensionMismatch("battery_energy expects a qubit state");
  return (rho.op() * pauli(Pauli::z)).trace().real() * omega;
}

}  // namespace causalcell::unitary
