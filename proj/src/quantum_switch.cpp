#include "causalcell/quantum_switch.hpp"

#include <array>
#include <cmath>

#include "causalcell/errors.hpp"

namespace causalcell {

namespace {

SwitchOutcome make_outcome(Outcome which, Operator unnormalized) {
  SwitchOutcome out;
  out.outcome = which;
  unnormalized = 0.5 * (unnormalized + unnormalized.adjoint()).eval();
  out.probability = std::clamp(unnormalized.trace().real(), 0.0, 1.0);
  if (out.probability >= kTolerances.branch_probability) {
    // Relative rounding grows as the branch weight shrinks.
    Tolerances tol;
    tol.psd = std::max(kTolerances.psd, 1e-13 / out.probability);
    tol.hermitian = tol.psd;
    out.state = DensityMatrix::normalized(unnormalized, tol);
  }
  out.unnormalized = std::move(unnormalized);
  return out;
}

}  // namespace

Ket ControlState::ket() const {
  Ket k(2);
  k << std::cos(theta / 2.0), std::exp(kI * phi) * std::sin(theta / 2.0);
  return k;
}

DensityMatrix ControlState::density() const { return DensityMatrix::pure(ket()); }

KrausChannel switch_kraus(const KrausChannel& ch_a, const KrausChannel& ch_b) {
  if (ch_a.dim() != ch_b.dim()) throw DimensionMismatch("switch_kraus: dimensions differ");
  const Operator p0 = projector(basis_ket(2, 0));
  const Operator p1 = projector(basis_ket(2, 1));
  std::vector<Operator> ops;
  ops.reserve(ch_a.size() * ch_b.size());
  for (const auto& a : ch_a.ops()) {
    for (const auto& b : ch_b.ops()) {
      ops.push_back(tensor(p1, a * b) + tensor(p0, b * a));
    }
  }
  return KrausChannel(std::move(ops));
}

DensityMatrix switch_evolve(const KrausChannel& ch_a, const KrausChannel& ch_b,
                            const ControlState& control, const DensityMatrix& rho_b) {
  if (rho_b.dim() != ch_a.dim()) throw DimensionMismatch("switch_evolve: state dimension");
  const KrausChannel w = switch_kraus(ch_a, ch_b);
  return apply(w, tensor(control.density(), rho_b));
}

SwitchBranches measure_control(const DensityMatrix& rho_cb) {
  const Eigen::Index d = rho_cb.dim() / 2;
  if (d * 2 != rho_cb.dim()) throw DimensionMismatch("measure_control: no qubit factor");
  const Operator& r = rho_cb.op();
  const Operator r00 = r.topLeftCorner(d, d);
  const Operator r01 = r.topRightCorner(d, d);
  const Operator r10 = r.bottomLeftCorner(d, d);
  const Operator r11 = r.bottomRightCorner(d, d);
  // <+/-| rho |+/-> on the control leaves (r00 + r11 +/- (r01 + r10)) / 2.
  return {make_outcome(Outcome::plus, 0.5 * (r00 + r11 + r01 + r10)),
          make_outcome(Outcome::minus, 0.5 * (r00 + r11 - r01 - r10))};
}

SwitchBranches switch_branches_plus_control(const KrausChannel& ch_a,
                                            const KrausChannel& ch_b,
                                            const DensityMatrix& rho_b) {
  if (ch_a.dim() != ch_b.dim() || rho_b.dim() != ch_a.dim()) {
    throw DimensionMismatch("switch_branches_plus_control: dimensions differ");
  }
  const Eigen::Index d = ch_a.dim();
  Operator plus = Operator::Zero(d, d);
  Operator minus = Operator::Zero(d, d);
  for (const auto& a : ch_a.ops()) {
    for (const auto& b : ch_b.ops()) {
      const Operator ab = a * b;
      const Operator ba = b * a;
      const Operator s = 0.5 * (ab + ba);
      const Operator c = 0.5 * (ab - ba);
      plus.noalias() += s * rho_b.op() * s.adjoint();
      minus.noalias() += c * rho_b.op() * c.adjoint();
    }
  }
  return {make_outcome(Outcome::plus, std::move(plus)),
          make_outcome(Outcome::minus, std::move(minus))};
}

SwitchBranches switch_of_duration(const ChannelFactory& factory_a,
                                  const ChannelFactory& factory_b, double t,
                                  const ControlState& control, const DensityMatrix& rho_b,
                                  double ratio) {
  if (t < 0.0) throw NegativeTime("switch duration must be non-negative");
  if (!(ratio > 0.0)) throw DomainError("branch duration ratio must be positive");
  const KrausChannel a = factory_a(ratio * t);
  const KrausChannel b = factory_b(ratio * t);
  return measure_control(switch_evolve(a, b, control, rho_b));
}

SwitchBranches switch_of_duration(const ChannelFactory& factory, double t,
                                  const ControlState& control, const DensityMatrix& rho_b,
                                  double ratio) {
  if (t < 0.0) throw NegativeTime("switch duration must be non-negative");
  if (!(ratio > 0.0)) throw DomainError("branch duration ratio must be positive");
  const KrausChannel ch = factory(ratio * t);
  return measure_control(switch_evolve(ch, ch, control, rho_b));
}

}  // namespace causalcell
