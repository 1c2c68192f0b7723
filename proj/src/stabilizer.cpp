#include "causalcell/stabilizer.hpp"

#include <cmath>

#include "causalcell/errors.hpp"
#include "causalcell/parallel.hpp"
#include "causalcell/scan.hpp"

namespace causalcell::stabilizer {

namespace {

constexpr double kScanStart = 1e-4;
constexpr double kRefineTol = 1e-9;

SwitchOutcome plus_from(const StabilizerSpec& spec, const DensityMatrix& rho, double t) {
  if (t < 0.0) throw NegativeTime("switch duration must be non-negative");
  const KrausChannel ch = lindblad_propagator(spec.lindblad(), spec.duration_ratio * t);
  return switch_branches_plus_control(ch, ch, rho).plus;
}

double fidelity_at(const StabilizerSpec& spec, const DensityMatrix& start, double t) {
  const SwitchOutcome out = plus_from(spec, start, t);
  return out.state ? fidelity(*out.state, start) : 0.0;
}

}  // namespace

void StabilizerSpec::validate() const {
  if (hb.rows() != 2 || hb.cols() != 2 || ha.rows() != 2 || ha.cols() != 2 ||
      jump.rows() != 2 || jump.cols() != 2) {
    throw DimensionMismatch("stabilizer operators must be 2x2");
  }
  if (!is_hermitian(hb)) throw NonHermitianInput("hB is not Hermitian");
  if (!is_hermitian(ha)) throw NonHermitianInput("hA is not Hermitian");
  if (!(rate >= 0.0)) throw DomainError("dissipation rate must be non-negative");
  if (!(duration_ratio > 0.0)) throw DomainError("branch duration ratio must be positive");
}

LindbladSpec StabilizerSpec::lindblad() const {
  validate();
  return {hb + ha, jump, rate};
}

DensityMatrix initial_state(const StabilizerSpec& spec) {
  if (spec.initial == InitialState::computational_zero) {
    return DensityMatrix::pure(basis_ket(2, 0));
  }
  if (!is_hermitian(spec.hb)) throw NonHermitianInput("hB is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> eig(spec.hb);
  const Ket top = eig.eigenvectors().col(eig.eigenvalues().size() - 1);
  return DensityMatrix::pure(top);
}

SwitchOutcome plus_branch(const StabilizerSpec& spec, double t) {
  return plus_from(spec, initial_state(spec), t);
}

std::vector<TrajectoryPoint> rescue_trajectory(const StabilizerSpec& spec,
                                               const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0) throw NegativeTime("trajectory times must be non-negative");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw GridNotAscending("trajectory grid must be strictly ascending");
    }
  }
  spec.validate();
  const DensityMatrix start = initial_state(spec);
  std::vector<TrajectoryPoint> out(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const SwitchOutcome br = plus_from(spec, start, t_grid[i]);
    TrajectoryPoint& pt = out[i];
    pt.t = t_grid[i];
    pt.prob_plus = br.probability;
    if (br.state) {
      pt.population = (*br.state)(0, 0).real();
      pt.coherence = std::abs((*br.state)(0, 1));
      pt.fidelity = fidelity(*br.state, start);
    }
  });
  return out;
}

RescueResult find_rescue_time(const StabilizerSpec& spec, double t_max, double threshold,
                              double scan_step) {
  if (!(t_max > kScanStart)) throw DomainError("t_max must exceed the scan start");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw DomainError("threshold must lie in (0, 1]");
  if (!(scan_step > 0.0)) throw DomainError("scan step must be positive");
  spec.validate();
  const DensityMatrix start = initial_state(spec);
  auto fid = [&](double t) { return fidelity_at(spec, start, t); };

  const auto n = static_cast<std::size_t>(std::floor((t_max - kScanStart) / scan_step));
  std::vector<double> ts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) ts[i] = kScanStart + scan_step * static_cast<double>(i);
  if (ts.back() < t_max) ts.push_back(t_max);

  // Best fidelity is only tracked once the curve turns upward after the
  // first drop, so the initial decay does not count as an excursion.
  bool dropped = fid(ts[0]) < threshold;
  bool rising = false;
  double best_t = 0.0;
  double best_f = -1.0;
  double prev = fid(ts[0]);
  std::size_t i = 0;
  for (i = 1; i < ts.size(); ++i) {
    const double v = fid(ts[i]);
    if (!dropped) {
      dropped = v < threshold;
    } else {
      rising = rising || v > prev;
      if (rising && v > best_f) {
        best_f = v;
        best_t = ts[i];
      }
      if (v >= threshold) break;
    }
    prev = v;
  }
  if (i >= ts.size()) throw NoRescueFound(best_t, best_f);

  // Walk to the top of this excursion, then refine around it.
  std::size_t j = i;
  double fj = fid(ts[j]);
  while (j + 1 < ts.size()) {
    const double next = fid(ts[j + 1]);
    if (next < fj) break;
    fj = next;
    ++j;
  }
  const double lo = ts[j - 1];
  const double hi = j + 1 < ts.size() ? ts[j + 1] : ts[j];
  auto [t, f] = golden_section_max(fid, lo, hi, kRefineTol);
  if (fj > f) {
    t = ts[j];
    f = fj;
  }

  const SwitchOutcome br = plus_from(spec, start, t);
  RescueResult res;
  res.t = t;
  res.fidelity = f;
  res.prob_plus = br.probability;
  res.point = {t, (*br.state)(0, 0).real(), std::abs((*br.state)(0, 1)), br.probability, f};
  return res;
}

std::vector<RescueCycle> repeated_rescue(const StabilizerSpec& spec, int cycles, double t_max,
                                         double threshold, CycleMode mode) {
  if (cycles < 1) throw DomainError("cycles must be a positive integer");
  const RescueResult rescue = find_rescue_time(spec, t_max, threshold);
  const DensityMatrix start = initial_state(spec);
  const KrausChannel ch = lindblad_propagator(spec.lindblad(), spec.duration_ratio * rescue.t);

  std::vector<RescueCycle> out;
  out.reserve(static_cast<std::size_t>(cycles));
  DensityMatrix current = start;
  double cumulative = 1.0;
  for (int c = 0; c < cycles; ++c) {
    const DensityMatrix& input = mode == CycleMode::ideal_reset ? start : current;
    const SwitchOutcome br = switch_branches_plus_control(ch, ch, input).plus;
    if (!br.state) throw NumericalFailure("plus branch vanished during repeated rescue");
    cumulative *= br.probability;
    out.push_back({fidelity(*br.state, start), br.probability, cumulative});
    current = *br.state;
  }
  return out;
}

}  // namespace causalcell::stabilizer
