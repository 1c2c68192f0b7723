#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "causalcell/cli.hpp"
#include "causalcell/errors.hpp"
#include "causalcell/gibbs_charger.hpp"
#include "causalcell/parallel.hpp"
#include "causalcell/stabilizer.hpp"
#include "causalcell/unitary_charger.hpp"

namespace causalcell::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr long kMaxSteps = 10'000'000;

class Params {
 public:
  explicit Params(const Parameters& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.count(key) > 0; }

  double real(const std::string& key, double fallback) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    const std::string& s = it->second;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw InvalidArgument("--" + key + ": not a finite number: '" + s + "'");
    }
    return v;
  }

  long integer(const std::string& key, long fallback, long lo, long hi) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    const std::string& s = it->second;
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw InvalidArgument("--" + key + ": not an integer: '" + s + "'");
    }
    if (v < lo || v > hi) {
      throw InvalidArgument("--" + key + " must lie in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }
    return v;
  }

  std::string choice(const std::string& key, const std::vector<std::string>& allowed) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) return allowed.front();
    for (const auto& a : allowed) {
      if (a == it->second) return a;
    }
    std::string msg = "--" + key + " must be one of";
    for (const auto& a : allowed) msg += " " + a;
    throw InvalidArgument(msg);
  }

 private:
  const Parameters& raw_;
};

double positive(double v, const std::string& key) {
  if (!(v > 0.0)) throw InvalidArgument("--" + key + " must be positive");
  return v;
}

std::vector<double> time_grid(const Params& p, double default_t_max, long default_steps) {
  const double t_max = positive(p.real("t-max", default_t_max), "t-max");
  const long steps = p.integer("steps", default_steps, 1, kMaxSteps);
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) {
    grid[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / static_cast<double>(steps);
  }
  return grid;
}

std::string render_rows(const std::vector<std::string>& header, std::size_t rows,
                        const std::function<std::vector<double>(std::size_t)>& row) {
  std::vector<std::string> lines(rows);
  parallel_for(rows, [&](std::size_t i) { lines[i] = csv_line(row(i)); });
  std::string out = csv_header(header);
  for (const auto& l : lines) out += l;
  return out;
}

std::string render_unitary(const Params& p) {
  unitary::UnitaryProtocol proto;
  proto.omega = p.real("omega", 1.0);
  proto.c1 = {p.real("x1", 0.0), p.real("y1", 0.0)};
  proto.c2 = {p.real("x2", 1.0), p.real("y2", 0.0)};
  proto.validate();
  const double ratio =
      p.choice("branch-duration", {"full", "half"}) == "full" ? 1.0 : 0.5;
  const auto grid = time_grid(p, M_PI / proto.omega, 200);
  const DensityMatrix start = DensityMatrix::pure(ground());
  return render_rows(
      {"t", "prob_minus", "rho11", "rho22", "coherence_abs", "energy"}, grid.size(),
      [&](std::size_t i) -> std::vector<double> {
        const SwitchBranches br = switch_of_duration(
            [&](double d) { return unitary::charger_channel(proto, 1, d); },
            [&](double d) { return unitary::charger_channel(proto, 2, d); }, grid[i],
            ControlState::plus(), start, ratio);
        const SwitchOutcome& m = br.minus;
        const double coh = m.state ? std::abs((*m.state)(0, 1)) : kNaN;
        const double energy = m.state ? unitary::battery_energy(*m.state, proto.omega) : kNaN;
        return {grid[i], m.probability, m.unnormalized(0, 0).real(), m.unnormalized(1, 1).real(),
                coh, energy};
      });
}

std::string render_unitary_optimal(const Params& p) {
  const double omega = p.real("omega", 1.0);
  const long k = p.integer("k", 1, 1, 1'000'000);
  std::optional<double> omega1;
  if (p.has("omega1")) omega1 = p.real("omega1", omega);
  const auto proto = unitary::optimal_protocol(omega, static_cast<int>(k), omega1);
  const double t_min = unitary::optimal_time(omega);
  const SwitchBranches br = unitary::simulate(proto, t_min);
  const double fid =
      br.minus.state ? fidelity(*br.minus.state, DensityMatrix::pure(excited())) : kNaN;
  std::string out = csv_header({"omega", "k", "omega1", "omega2", "x1", "y1", "x2", "y2",
                                "t_min", "probability", "probability_simulated",
                                "fidelity_excited"});
  out += csv_line({omega, static_cast<double>(k), proto.big_omega(1), proto.big_omega(2),
                   proto.c1.x, proto.c1.y, proto.c2.x, proto.c2.y, t_min,
                   unitary::success_probability(static_cast<int>(k)), br.minus.probability, fid});
  return out;
}

gibbs::GibbsSpec gibbs_spec(const Params& p) {
  const double omega = p.real("omega", 1.0);
  const double coupling = p.real("coupling", 1.0);
  if (p.has("p") && p.has("beta")) throw InvalidArgument("give either --p or --beta, not both");
  if (p.has("beta")) return gibbs::GibbsSpec::from_beta(omega, coupling, p.real("beta", 0.0));
  gibbs::GibbsSpec spec;
  spec.omega = omega;
  spec.coupling = coupling;
  spec.p = p.real("p", 0.0);
  spec.validate();
  return spec;
}

std::string render_gibbs(const Params& p, std::ostream& diag) {
  const gibbs::GibbsSpec spec = gibbs_spec(p);
  const auto start = p.choice("battery-start", {"thermal", "ground"}) == "thermal"
                         ? gibbs::BatteryStart::thermal
                         : gibbs::BatteryStart::ground;
  // GibbsCharger::switched runs each process for half the switch duration.
  const double scale = p.choice("branch-duration", {"half", "full"}) == "half" ? 1.0 : 2.0;
  diag << "sigma convention: " << gibbs::to_string(gibbs::kSelectedConvention)
       << " (s+ = |e><g|)\n";
  const gibbs::GibbsCharger charger(spec, gibbs::kSelectedConvention, start);
  const auto grid = time_grid(p, 4.0 * M_PI / spec.rabi(), 400);
  return render_rows({"t", "prob_minus", "excited_pop", "coherence_abs"}, grid.size(),
                     [&](std::size_t i) -> std::vector<double> {
                       const SwitchOutcome m = charger.switched(scale * grid[i]).minus;
                       if (!m.state) return {grid[i], m.probability, kNaN, kNaN};
                       return {grid[i], m.probability, (*m.state)(0, 0).real(),
                               std::abs((*m.state)(0, 1))};
                     });
}

std::string render_gibbs_compare(const Params& p, std::ostream& diag) {
  const double omega = positive(p.real("omega", 1.0), "omega");
  const double coupling = p.real("coupling", 1.0);
  if (!(coupling >= 0.0)) throw InvalidArgument("--coupling must be non-negative");
  const long n = p.integer("p-steps", 501, 2, kMaxSteps);
  diag << "sigma convention: " << gibbs::to_string(gibbs::kSelectedConvention)
       << " (s+ = |e><g|)\n";
  return render_rows({"p", "f", "g", "h", "f_weak_approx"}, static_cast<std::size_t>(n),
                     [&](std::size_t i) -> std::vector<double> {
                       gibbs::GibbsSpec spec;
                       spec.omega = omega;
                       spec.coupling = coupling;
                       spec.p = 0.5 * static_cast<double>(i) / static_cast<double>(n - 1);
                       return {spec.p, gibbs::f_of_p(spec), gibbs::g_of_p(spec),
                               gibbs::h_of_p(spec.p), gibbs::weak_coupling_f(spec.p)};
                     });
}

stabilizer::StabilizerSpec stabilizer_spec(const Params& p) {
  stabilizer::StabilizerSpec spec;
  spec.ha = p.real("ha-x", 12.0) * pauli(Pauli::x) + p.real("ha-y", 5.0) * pauli(Pauli::y) +
            p.real("ha-z", 0.0) * pauli(Pauli::z);
  spec.rate = p.real("rate", 2.0 / 3.0);
  if (!(spec.rate >= 0.0)) throw InvalidArgument("--rate must be non-negative");
  spec.initial = p.choice("initial", {"hb-eigenvector", "zero"}) == "zero"
                     ? stabilizer::InitialState::computational_zero
                     : stabilizer::InitialState::hb_top_eigenvector;
  spec.duration_ratio = p.choice("branch-duration", {"half", "full"}) == "half" ? 0.5 : 1.0;
  spec.validate();
  return spec;
}

std::string render_stabilize(const Params& p) {
  const auto spec = stabilizer_spec(p);
  const auto grid = time_grid(p, 1.0, 1000);
  const auto traj = stabilizer::rescue_trajectory(spec, grid);
  std::string out = csv_header({"t", "P", "C", "prob_plus", "fidelity"});
  for (const auto& pt : traj) {
    out += csv_line({pt.t, pt.population, pt.coherence, pt.prob_plus, pt.fidelity});
  }
  return out;
}

std::string render_rescue_time(const Params& p) {
  const auto spec = stabilizer_spec(p);
  const double t_max = positive(p.real("t-max", 1.0), "t-max");
  const double threshold = p.real("threshold", 0.999);
  const auto res = stabilizer::find_rescue_time(spec, t_max, threshold);
  std::string out = csv_header({"t_rescue", "fidelity", "prob_plus", "P", "C"});
  out += csv_line({res.t, res.fidelity, res.prob_plus, res.point.population, res.point.coherence});
  return out;
}

}  // namespace

std::string render(const RunConfig& config, std::ostream& diagnostics) {
  const Params p(config.parameters);
  const std::string& c = config.command;
  if (c == "unitary") return render_unitary(p);
  if (c == "unitary-optimal") return render_unitary_optimal(p);
  if (c == "gibbs") return render_gibbs(p, diagnostics);
  if (c == "gibbs-compare") return render_gibbs_compare(p, diagnostics);
  if (c == "stabilize") return render_stabilize(p);
  if (c == "rescue-time") return render_rescue_time(p);
  throw InvalidArgument("unknown command '" + c + "'");
}

int run(const RunConfig& config, std::ostream& diagnostics) {
  try {
    const std::string csv = render(config, diagnostics);
    if (config.output_path.empty()) {
      std::cout << csv;
      std::cout.flush();
    } else {
      std::ofstream out(config.output_path, std::ios::binary);
      if (!out) throw InvalidArgument("cannot open " + config.output_path + " for writing");
      out << csv;
      if (!out) throw NumericalFailure("write to " + config.output_path + " failed");
    }
    return kExitOk;
  } catch (const NoRescueFound& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InvalidArgument& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int main_entry(int argc, const char* const* argv) {
  RunConfig config;
  try {
    if (!parse_args(argc, argv, config, std::cout)) return kExitOk;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return run(config, std::cerr);
}

}  // namespace causalcell::cli
