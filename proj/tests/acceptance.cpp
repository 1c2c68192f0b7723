// One line per acceptance criterion; exits non-zero if any fails.
// Usage: acceptance <path-to-causalcell-cli> <scratch-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "causalcell/gibbs_charger.hpp"
#include "causalcell/stabilizer.hpp"
#include "causalcell/unitary_charger.hpp"
#include "oracles.hpp"

using namespace causalcell;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& title, double time_limit_s,
               const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0.0 && elapsed > time_limit_s) {
    v.pass = false;
    v.detail += "; over time limit";
  }
  if (!v.pass) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", elapsed);
  std::cout << (v.pass ? "PASS" : "FAIL") << " [" << number << "] " << title << " | "
            << v.detail << " | " << timing << std::endl;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

gibbs::GibbsSpec gibbs_spec(double omega, double coupling, double p) {
  gibbs::GibbsSpec s;
  s.omega = omega;
  s.coupling = coupling;
  s.p = p;
  return s;
}

const double kGrid[] = {0.5, 1.0, 2.0};
const double kPGrid[] = {0.1, 0.25, 0.4};

Verdict optimal_probability() {
  double worst_p = 0.0;
  double worst_f = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const auto proto = unitary::optimal_protocol(1.0, k);
    const SwitchBranches br = unitary::simulate(proto, unitary::optimal_time(1.0));
    const double n = 1.0 + 2.0 * k;
    worst_p = std::max(worst_p, std::abs(br.minus.probability - (1.0 - 1.0 / (n * n))));
    worst_f = std::max(worst_f, 1.0 - fidelity(*br.minus.state, DensityMatrix::pure(excited())));
  }
  return {worst_p <= 1e-6 && worst_f <= 1e-9,
          "max |prob - (1 - 1/(1+2k)^2)| = " + fmt(worst_p) + " (tol 1e-6), max 1 - fidelity = " +
              fmt(worst_f) + " (tol 1e-9)"};
}

Verdict closed_form_grid() {
  const unitary::ChargerSpec pairs[5][2] = {{{0.3, 0.4}, {1.2, 1.6}},
                                            {{1.0, 0.0}, {0.0, 1.0}},
                                            {{2.0, -1.0}, {0.5, 0.7}},
                                            {{0.0, 0.0}, {2.8284271247461903, 0.0}},
                                            {{1.0, 1.0}, {1.0, 1.0}}};
  double worst = 0.0;
  int count = 0;
  for (double omega : kGrid) {
    for (const auto& pair : pairs) {
      unitary::UnitaryProtocol proto;
      proto.omega = omega;
      proto.c1 = pair[0];
      proto.c2 = pair[1];
      for (int i = 0; i < 50; ++i) {
        const double t = 2.0 * M_PI * i / 49.0;
        const auto closed = unitary::minus_branch_population(proto, t);
        const Operator sim = unitary::simulate(proto, t).minus.unnormalized;
        worst = std::max({worst, std::abs(closed.rho11 - sim(0, 0).real()),
                          std::abs(closed.rho22 - sim(1, 1).real())});
        ++count;
      }
    }
  }
  return {worst <= 1e-9 && count == 750,
          std::to_string(count) + " points, max deviation " + fmt(worst) + " (tol 1e-9)"};
}

Verdict static_baseline() {
  oracle::Rng rng(2024);
  std::uniform_real_distribution<double> amp(-3.0, 3.0);
  std::uniform_real_distribution<double> gap(0.2, 2.0);
  double best = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double omega = gap(rng);
    const double x = amp(rng);
    const double y = amp(rng);
    const Operator h = omega * pauli(Pauli::z) + x * pauli(Pauli::x) + y * pauli(Pauli::y);
    const HermitianPropagator prop(h);
    const double big = std::sqrt(omega * omega + x * x + y * y);
    const DensityMatrix g = DensityMatrix::pure(ground());
    for (int i = 0; i <= 4000; ++i) {
      const double t = 2.0 * M_PI / big * i / 4000.0;
      const Operator u = prop.at(t);
      best = std::max(best, (u * g.op() * u.adjoint())(0, 0).real());
    }
  }
  return {best < 1.0 - 1e-6,
          "100 static chargers, best excited population " + fmt(best) + " (must stay < 1 - 1e-6)"};
}

Verdict f_anchors_and_scan() {
  const double f0 = std::abs(gibbs::f_of_p(gibbs_spec(1, 1, 0.0)) - 1.0);
  const double fh = std::abs(gibbs::f_of_p(gibbs_spec(1, 1, 0.5)) - 0.5);
  double worst = 0.0;
  for (double omega : kGrid)
    for (double coupling : kGrid)
      for (double p : kPGrid) {
        const auto spec = gibbs_spec(omega, coupling, p);
        const auto peak = gibbs::find_probability_peak(gibbs::GibbsCharger(spec));
        worst = std::max(worst, std::abs(peak.excited_population - gibbs::f_of_p(spec)));
      }
  return {f0 <= 1e-12 && fh <= 1e-12 && worst <= 1e-6,
          "|f(0)-1| = " + fmt(f0) + ", |f(1/2)-1/2| = " + fmt(fh) +
              ", max |f - first-peak scan| over 27 specs = " + fmt(worst) + " (tol 1e-6)"};
}

Verdict global_maximum() {
  double worst_pop = 0.0;
  double worst_t = 0.0;
  for (double omega : kGrid)
    for (double coupling : kGrid)
      for (double p : kPGrid) {
        const auto spec = gibbs_spec(omega, coupling, p);
        const auto best = gibbs::find_max_population(gibbs::GibbsCharger(spec));
        worst_pop = std::max(worst_pop, std::abs(best.population - gibbs::global_max_population(p)));
        worst_t = std::max(worst_t, std::abs(best.t - gibbs::global_max_time(spec)));
      }
  return {worst_pop <= 1e-6 && worst_t <= 1e-3,
          "max population deviation " + fmt(worst_pop) + " (tol 1e-6), max time offset " +
              fmt(worst_t) + " (tol 1e-3)"};
}

Verdict ordering() {
  int violations = 0;
  int points = 0;
  const double grid[] = {0.5, 1.0, 2.0, 5.0};
  for (double omega : grid)
    for (double coupling : grid)
      for (int i = 0; i <= 500; ++i) {
        const auto spec = gibbs_spec(omega, coupling, 1e-3 * i);
        const double f = gibbs::f_of_p(spec);
        if (f < gibbs::g_of_p(spec) - 1e-9) ++violations;
        if (f < gibbs::h_of_p(spec.p) - 1e-9) ++violations;
        ++points;
      }
  return {violations == 0,
          std::to_string(points) + " points, " + std::to_string(violations) +
              " violations of f >= g or f >= 1-p (slack 1e-9)"};
}

Verdict weak_coupling() {
  double worst = 0.0;
  double worst_printed = 0.0;
  for (double p : {0.1, 0.2, 0.3, 0.4}) {
    const double f = gibbs::f_of_p(gibbs_spec(100, 1, p));
    worst = std::max(worst, std::abs(f - gibbs::weak_coupling_f(p)));
    worst_printed = std::max(worst_printed, std::abs(f - gibbs::weak_coupling_f_printed(p)));
  }
  return {worst <= 1e-3, "max |f(100,1,p) - 1/(1+p^2/(1-p)^2)| = " + fmt(worst) +
                             " (tol 1e-3); the form 1/(1+p/(1-p)^2) is off by " +
                             fmt(worst_printed) + " and gives 1/3 at p=1/2, contradicting f(1/2)=1/2"};
}

Verdict stabilizer_rescue() {
  stabilizer::StabilizerSpec half;
  const auto r = stabilizer::find_rescue_time(half, 1.0);
  stabilizer::StabilizerSpec full;
  full.duration_ratio = 1.0;
  std::string full_note;
  try {
    const auto rf = stabilizer::find_rescue_time(full, 1.0);
    full_note = "; full-duration branches rescue at t=" + fmt(rf.t);
  } catch (const std::exception&) {
    full_note = "; full-duration branches: no rescue";
  }
  return {r.t >= 0.188 && r.t <= 0.208 && r.fidelity >= 0.99,
          "half-duration branches: t_rescue = " + fmt(r.t) + ", fidelity " + fmt(r.fidelity) +
              ", prob_plus " + fmt(r.prob_plus) + full_note};
}

KrausChannel remix(const KrausChannel& ch, oracle::Rng& rng) {
  const auto n = static_cast<Eigen::Index>(ch.size());
  const Operator v = oracle::random_unitary(n, rng);
  std::vector<Operator> ops;
  for (Eigen::Index i = 0; i < n; ++i) {
    Operator k = Operator::Zero(ch.dim(), ch.dim());
    for (Eigen::Index j = 0; j < n; ++j) k += v(i, j) * ch.ops()[static_cast<std::size_t>(j)];
    ops.push_back(k);
  }
  return KrausChannel(ops);
}

Verdict property_suite() {
  oracle::Rng rng(99);
  double remix_dev = 0.0;
  double sum_dev = 0.0;
  double completeness = 0.0;
  double choi_min = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const KrausChannel a(oracle::random_kraus(2, 1 + trial % 4, rng));
    const KrausChannel b(oracle::random_kraus(2, 1 + (trial / 4) % 4, rng));
    const DensityMatrix rho(oracle::random_density(2, rng));
    const Operator out = switch_evolve(a, b, ControlState::plus(), rho).op();
    const Operator out2 = switch_evolve(remix(a, rng), remix(b, rng), ControlState::plus(), rho).op();
    remix_dev = std::max(remix_dev, max_abs_diff(out, out2));
    const SwitchBranches br = measure_control(DensityMatrix(out));
    sum_dev = std::max(sum_dev, std::abs(br.plus.probability + br.minus.probability - 1.0));
    const KrausChannel w = switch_kraus(a, b);
    completeness = std::max(completeness, w.completeness_error());
    choi_min = std::min(choi_min, hermitian_eigenvalues(choi(w)).minCoeff());
  }

  const LindbladSpec spec{3.0 * pauli(Pauli::x) + pauli(Pauli::z), projector(basis_ket(2, 0)),
                          2.0 / 3.0};
  double semigroup = 0.0;
  double lindblad_completeness = 0.0;
  for (double t1 : {0.1, 0.35, 0.8})
    for (double t2 : {0.05, 0.6}) {
      const KrausChannel direct = lindblad_propagator(spec, t1 + t2);
      semigroup = std::max(semigroup,
                           max_abs_diff(choi(compose(lindblad_propagator(spec, t2),
                                                     lindblad_propagator(spec, t1))),
                                        choi(direct)));
      lindblad_completeness = std::max(lindblad_completeness, direct.completeness_error());
    }
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.1 * i);
  double drift = 0.0;
  for (const auto& r : lindblad_integrate(spec, DensityMatrix(oracle::random_density(2, rng)), grid)) {
    drift = std::max(drift, std::abs(r.op().trace().real() - 1.0));
  }

  const bool ok = remix_dev <= 1e-10 && sum_dev <= 1e-10 && completeness <= 1e-9 &&
                  choi_min >= -1e-9 && semigroup <= 1e-7 && lindblad_completeness <= 1e-8 &&
                  drift <= 1e-8;
  return {ok, "remix " + fmt(remix_dev) + " (1e-10), branch sum " + fmt(sum_dev) +
                  " (1e-10), switch completeness " + fmt(completeness) + " (1e-9), min Choi eig " +
                  fmt(choi_min) + " (-1e-9), semigroup " + fmt(semigroup) +
                  " (1e-7), Lindblad completeness " + fmt(lindblad_completeness) +
                  " (1e-8), trace drift " + fmt(drift) + " (1e-8)"};
}

Verdict dilation_equivalence() {
  oracle::Rng rng(314);
  std::uniform_real_distribution<double> omega_d(0.3, 2.5);
  std::uniform_real_distribution<double> k_d(0.1, 2.5);
  std::uniform_real_distribution<double> p_d(0.0, 0.5);
  std::uniform_real_distribution<double> t_d(0.0, 8.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = gibbs_spec(omega_d(rng), k_d(rng), p_d(rng));
    const double t = t_d(rng);
    const auto start = trial % 2 ? gibbs::BatteryStart::ground : gibbs::BatteryStart::thermal;
    const gibbs::GibbsCharger charger(spec, gibbs::kSelectedConvention, start);
    const SwitchBranches br = charger.switched(t);
    const auto ref = oracle::switch_dilation(
        oracle::propagator(oracle::gibbs_hamiltonian(spec.omega, spec.coupling), t / 2),
        gibbs::battery_initial_state(spec, start).op(), gibbs::thermal_state(spec.p).op());
    worst = std::max({worst, max_abs_diff(br.minus.unnormalized, ref.minus),
                      max_abs_diff(br.plus.unnormalized, ref.plus)});
  }
  return {worst <= 1e-9, "20 random (omega, K, p, t), max deviation " + fmt(worst) + " (tol 1e-9)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Verdict cli_determinism(const std::string& cli, const std::filesystem::path& scratch) {
  struct Case {
    std::string command;
    std::string config;
  };
  const Case cases[] = {
      {"unitary", "omega = 1\nx1 = 0.5\ny1 = 0.2\nx2 = 2\ny2 = 0.8\nsteps = 200\n"},
      {"unitary-optimal", "omega = 1\nk = 2\n"},
      {"gibbs", "omega = 1\ncoupling = 1.5\np = 0.2\nsteps = 300\n"},
      {"gibbs-compare", "omega = 1\ncoupling = 1\np-steps = 501\n"},
      {"stabilize", "t-max = 1\nsteps = 500\n"},
      {"rescue-time", "t-max = 1\n"},
  };
  std::filesystem::create_directories(scratch);
  int mismatches = 0;
  int failures_run = 0;
  for (const auto& c : cases) {
    const auto cfg = scratch / (c.command + ".conf");
    std::ofstream(cfg) << c.config;
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const auto out = scratch / (c.command + "." + std::to_string(run) + ".csv");
      const std::string cmd = "\"" + cli + "\" " + c.command + " --config \"" + cfg.string() +
                              "\" --out \"" + out.string() + "\" 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) ++failures_run;
      outputs[run] = slurp(out);
    }
    if (outputs[0] != outputs[1] || outputs[0].empty()) ++mismatches;
  }
  return {mismatches == 0 && failures_run == 0,
          "6 commands run twice: " + std::to_string(mismatches) + " byte mismatches, " +
              std::to_string(failures_run) + " non-zero exits"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <causalcell-cli> <scratch-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path scratch = argv[2];

  criterion(1, "optimal unitary protocol reaches 1 - 1/(1+2k)^2 with the excited state", 1.0,
            optimal_probability);
  criterion(2, "closed-form minus-branch diagonal vs switch simulation", 5.0, closed_form_grid);
  criterion(3, "no static single charger fully charges from |g>", 5.0, static_baseline);
  criterion(4, "f(p) anchors and probability-peak scan", 30.0, f_anchors_and_scan);
  criterion(5, "global maximum (p-1)^2/(1+2p(p-1)) at 2 pi / sqrt(omega^2 + K^2)", 0.0,
            global_maximum);
  criterion(6, "f >= g and f >= 1 - p", 0.0, ordering);
  criterion(7, "weak-coupling limit of f", 0.0, weak_coupling);
  criterion(8, "stabilizer rescue time in [0.188, 0.208] with fidelity >= 0.99", 30.0,
            stabilizer_rescue);
  criterion(9, "switch, channel and Lindblad property suite", 0.0, property_suite);
  criterion(10, "switched Gibbs chargers vs 16-dimensional dilation", 0.0, dilation_equivalence);
  criterion(11, "CLI byte-identical output", 0.0,
            [&] { return cli_determinism(cli, scratch); });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
