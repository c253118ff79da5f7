// Acceptance suite. Prints one PASS/FAIL line per criterion and exits 1 if any
// fails. argv[1], when given, is the rgslab binary.

#include "rgs/experiment.hpp"
#include "rgs/probsg.hpp"
#include "rgs/randgen.hpp"
#include "rgs/rng.hpp"
#include "rgs/tomographic.hpp"
#include "rgs/twirling.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace rgs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

ConvolutionSemigroupSpec weyl_bit_flip(double rate = 1.0) {
  const Group g = Group::cyclic_product({2, 2});
  return {g, CompoundPoisson{rate, make_dirac(g, g.element({1, 0}))}};
}

// Every twirl built below is recorded here and checked by AC5.
std::vector<Superoperator>& built_twirls() {
  static std::vector<Superoperator> all;
  return all;
}

Superoperator record(Superoperator phi) {
  built_twirls().push_back(phi);
  return phi;
}

std::vector<double> grid5() {
  // Log-spaced in [0.01, 2].
  std::vector<double> t;
  for (int i = 0; i < 5; ++i) t.push_back(0.01 * std::pow(200.0, i / 4.0));
  return t;
}

Outcome ac1() {
  const auto start = Clock::now();
  std::vector<TimePair> pairs;
  for (double t : grid5())
    for (double s : grid5()) pairs.emplace_back(t, s);

  double worst = 0.0;
  bool pass = true;
  auto run = [&](const Representation& u, const ConvolutionSemigroupSpec& spec) {
    const Report r = check_semigroup_property(u, spec, pairs, {}, 1e-10);
    worst = std::max(worst, r.residual);
    pass = pass && r.pass && r.residual <= 1e-10;
  };
  const Group z3 = Group::cyclic(3);
  run(character_rep(Group::cyclic(2), {1}),
      {Group::cyclic(2), CompoundPoisson{1.0, make_dirac(Group::cyclic(2), Group::cyclic(2).element({1}))}});
  run(right_regular_rep(z3), {z3, CompoundPoisson{1.5, make_uniform(z3)}});
  run(adjoint_rep(weyl_system(2)), weyl_bit_flip());
  run(character_rep(Group::circle(), {2}), {Group::circle(), DiracFlow{{0.7}}});
  run(character_rep(Group::circle(), {-3}), {Group::circle(), DiracFlow{{1.1}}});
  const double secs = seconds_since(start);
  return {pass && secs < 1.0, "max residual " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome ac2() {
  const auto start = Clock::now();
  const ConvolutionSemigroupSpec spec(Group::special_unitary(2), BrownianMotion{1.0, 32}, 100000);
  const std::vector<TimePair> pairs{{0.1, 0.1}};
  const auto u = defining_su(2);
  int passed = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Report r = check_semigroup_property(u, spec, pairs, SampleOptions{100000, seed, 0, 4});
    if (r.residual <= r.bound) ++passed;
    worst_ratio = std::max(worst_ratio, r.residual / r.bound);
  }
  const double secs = seconds_since(start);
  return {passed >= 19 && secs < 30.0,
          std::to_string(passed) + "/20 within bound, max residual/bound " + fmt(worst_ratio) + ", " + fmt(secs) + " s"};
}

Outcome ac3() {
  const std::vector<double> times{0.1, 0.01, 0.001};
  double min_slack = 1e300;
  bool pass = true;
  auto run = [&](const Representation& u, const ConvolutionSemigroupSpec& spec) {
    const Report r = check_continuity_at_zero(u, spec, times);
    pass = pass && r.pass;
    for (const auto& row : r.details["times"]) min_slack = std::min(min_slack, row["slack"].get<double>());
  };
  const Group z2 = Group::cyclic(2);
  const Group z5 = Group::cyclic(5);
  run(character_rep(z2, {1}), {z2, CompoundPoisson{1.0, make_dirac(z2, z2.element({1}))}});
  run(right_regular_rep(z5), {z5, CompoundPoisson{3.0, make_uniform(z5)}});
  run(adjoint_rep(weyl_system(3)), {Group::cyclic_product({3, 3}), CompoundPoisson{2.0, make_uniform(Group::cyclic_product({3, 3}))}});
  run(defining_su(2), {Group::special_unitary(2),
                       CompoundPoisson{0.5, make_dirac(Group::special_unitary(2),
                                                       Group::special_unitary(2).exp_map(std::vector<double>{0.3, 1.0, -0.2}))}});
  pass = pass && min_slack >= -1e-12;
  return {pass, "min slack " + fmt(min_slack)};
}

Outcome ac4() {
  const auto theta = adjoint_rep(weyl_system(2));
  const Matrix x = pauli_x();
  bool pass = true;
  std::string detail;
  // Plain forward differences err by about 2λ²t0, so 1e-3 needs λ ≤ 2.2.
  for (double rate : {0.5, 1.0}) {
    const Matrix l = rate * (kron(x.conjugate(), x) - Matrix::Identity(4, 4));
    const auto spec = weyl_bit_flip(rate);
    const double plain = spectral_norm(estimate_generator(theta, spec, 1e-4).matrix - l);
    const double rich = spectral_norm(estimate_generator(theta, spec, 1e-4, {}, true).matrix - l);
    double expo = 0.0;
    for (double t : {0.1, 0.5, 2.0}) {
      const auto phi = record(twirl_superoperator(weyl_system(2), semigroup_measure_at(spec, t)));
      expo = std::max(expo, spectral_norm(phi.matrix - (t * l).exp()));
    }
    pass = pass && plain <= 1e-3 && rich <= 1e-6 && expo <= 1e-10;
    detail += "rate " + fmt(rate) + ": plain " + fmt(plain) + ", richardson " + fmt(rich) + ", exp " + fmt(expo) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome ac5() {
  RngStream rng(505);
  for (int d : {2, 3}) {
    const auto w = weyl_system(d);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> weights(w.group().order());
      double s = 0.0;
      for (double& v : weights) s += (v = rng.uniform());
      for (double& v : weights) v /= s;
      record(twirl_superoperator(w, make_finite(w.group(), weights)));
    }
  }
  const auto u = defining_su(2);
  const ConvolutionSemigroupSpec brown(u.group(), BrownianMotion{1.0, 32}, 20000);
  record(twirl_superoperator(u, semigroup_measure_at(brown, 0.3, SampleOptions{20000, 5, 0, 1})));

  double worst_tp = 0.0;
  double min_eig = 1e300;
  for (const auto& phi : built_twirls()) {
    worst_tp = std::max(worst_tp, trace_preservation_residual(phi));
    min_eig = std::min(min_eig, choi_eigenvalues(phi).minCoeff());
  }
  const Superoperator transpose{transpose_superoperator(2), Picture::schrodinger, 2};
  const double neg = choi_eigenvalues(transpose).minCoeff();
  const bool pass = worst_tp <= 1e-10 && min_eig >= -1e-10 && neg <= -0.5;
  return {pass, std::to_string(built_twirls().size()) + " twirls, max tp residual " + fmt(worst_tp) +
                    ", min choi eigenvalue " + fmt(min_eig) + ", transpose min eigenvalue " + fmt(neg)};
}

Outcome ac6() {
  RngStream rng(606);
  double worst = 0.0;
  for (int d : {2, 3}) {
    const auto w = weyl_system(d);
    const auto phi = record(twirl_superoperator(w, make_uniform(w.group())));
    for (int k = 0; k < 20; ++k) {
      const Matrix rho = random_density_matrix(d, rng);
      worst = std::max(worst, frobenius_norm(phi.apply(rho) - rho.trace() * Matrix::Identity(d, d) / double(d)));
    }
  }
  return {worst <= 1e-14, "max deviation " + fmt(worst)};
}

Outcome ac7() {
  RngStream rng(707);
  const Group su2 = Group::special_unitary(2);
  const auto u = defining_su(2);
  std::size_t most = 0;
  double drift = 0.0;
  double prob = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<WeightedPoint> atoms;
    for (std::size_t i = 0; i < 10; ++i) atoms.push_back({flatten_complex(u(su2.haar_sample(rng))), 0.1, i});
    const RealVector before = barycenter(atoms);
    const auto out = caratheodory_reduce(atoms);
    most = std::max(most, out.size());
    drift = std::max(drift, (barycenter(out) - before).norm());
    double s = 0.0;
    for (const auto& a : out) {
      s += a.weight;
      if (a.weight < 0.0) prob = std::max(prob, -a.weight);
    }
    prob = std::max(prob, std::abs(s - 1.0));
  }
  const bool pass = most <= 9 && drift <= 1e-10 && prob <= 1e-12;
  return {pass, "max atoms " + std::to_string(most) + ", drift " + fmt(drift) + ", weight defect " + fmt(prob)};
}

Outcome ac8() {
  RngStream rng(808);
  double iso = 0.0;
  double round = 0.0;
  for (int d : {2, 3, 5}) {
    const TomographicMap w(d);
    for (int k = 0; k < 100; ++k) {
      const Matrix s = random_ginibre(d, d, rng);
      const Tomogram f = w.apply(s);
      iso = std::max(iso, std::abs(f.norm() - frobenius_norm(s)));
      round = std::max(round, frobenius_norm(w.inverse(f) - s));
    }
  }
  return {iso <= 1e-12 && round <= 1e-12, "isometry " + fmt(iso) + ", round trip " + fmt(round)};
}

Outcome ac9() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 3}) {
    const Report r = check_intertwining_exhaustive(d);
    if (r.pass && r.residual <= 1e-10) {
      detail += "d=" + std::to_string(d) + " residual " + fmt(r.residual) + "; ";
    } else if (r.details.contains("phase_ratio_table") && r.details.contains("global_phase")) {
      detail += "d=" + std::to_string(d) + " diagnostic phase table produced; ";
    } else {
      pass = false;
      detail += "d=" + std::to_string(d) + " failed without diagnostics; ";
    }
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome ac10() {
  bool pass = true;
  double worst = 0.0;
  int cases = 0;
  for (const Group& g : {Group::cyclic(2), Group::cyclic(3), Group::cyclic_product({2, 2})}) {
    std::vector<DiscreteMeasure> measures;
    for (const auto& x : g.elements()) measures.push_back(make_dirac(g, x));
    measures.push_back(make_uniform(g));
    const ConvolutionSemigroupSpec spec(g, CompoundPoisson{1.0, make_dirac(g, g.elements().back())});
    measures.push_back(semigroup_measure_at(spec, 0.7));
    for (const auto& mu : measures) {
      const Report r = identify_as_randomly_generated(mu, 100, 1000 + static_cast<std::uint64_t>(cases), 1e-12);
      pass = pass && r.pass;
      for (const auto& part : r.details["parts"]) worst = std::max(worst, part["residual"].get<double>());
      ++cases;
    }
  }
  pass = pass && worst <= 1e-12;
  return {pass, std::to_string(cases) + " measures, max residual " + fmt(worst)};
}

Outcome ac11() {
  const auto w = weyl_system(2);
  const auto u = defining_su(2);
  const Group su2 = Group::special_unitary(2);
  const GroupElement rot = su2.exp_map(std::vector<double>{kPi, 0.0, 0.0});
  const ConvolutionSemigroupSpec via_su2(su2, CompoundPoisson{1.0, make_dirac(su2, rot)});
  double worst = 0.0;
  for (double t : {0.1, 0.5, 2.0}) {
    const auto a = record(twirl_superoperator(w, semigroup_measure_at(weyl_bit_flip(), t)));
    const auto b = record(twirl_superoperator(u, semigroup_measure_at(via_su2, t)));
    worst = std::max(worst, spectral_norm(a.matrix - b.matrix));
  }
  return {worst <= 1e-10, "max difference " + fmt(worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome ac12(const char* cli) {
  std::vector<ExperimentConfig> configs;
  {
    ExperimentConfig c;
    c.command = "semigroup-check";
    c.group = "SU2";
    c.representation = "defining";
    c.semigroup = "brownian:1.0:16";
    c.times = {0.1, 0.1};
    c.budget = 5000;
    c.seed = 12;
    configs.push_back(c);
    c.command = "twirl";
    c.group.clear();
    c.representation.clear();
    c.dim = 2;
    c.semigroup = "compound_poisson:1.0:weyl(1,0)";
    c.times = {0.5};
    c.check = "cptp";
    c.budget = 0;
    c.seed.reset();
    configs.push_back(c);
  }
  bool pass = true;
  for (auto c : configs) {
    const nlohmann::json a = run_experiment(c).document;
    pass = pass && a.dump(2) == run_experiment(c).document.dump(2);
    // Thread count is echoed in the config; everything else must not depend on it.
    c.threads = 3;
    nlohmann::json b = run_experiment(c).document;
    b["config"] = a["config"];
    pass = pass && a.dump(2) == b.dump(2);
  }
  std::string detail = pass ? "in-process reports identical" : "in-process reports differ";

  if (cli == nullptr) return {pass, detail + "; CLI not given"};
  const auto dir = std::filesystem::temp_directory_path() / "rgs_acceptance_ac12";
  std::filesystem::create_directories(dir);
  const std::string args =
      " semigroup-check --group SU2 --rep defining --semigroup brownian:1.0:16 --times 0.1,0.1 --budget 5000 --seed 12";
  bool same = true;
  for (const char* name : {"a.json", "b.json"}) {
    const std::string cmd = std::string("\"") + cli + "\"" + args + " --output \"" + (dir / name).string() + "\"";
    if (std::system(cmd.c_str()) != 0) same = false;
  }
  const std::string a = slurp(dir / "a.json");
  const std::string b = slurp(dir / "b.json");
  same = same && !a.empty() && a == b;
  std::filesystem::remove_all(dir);
  return {pass && same, detail + (same ? "; CLI reports byte-identical" : "; CLI reports differ")};
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 semigroup law, exact kinds", ac1},
      {"AC2 semigroup law, Monte Carlo", ac2},
      {"AC3 continuity at zero", ac3},
      {"AC4 generator oracle", ac4},
      {"AC5 CPTP", ac5},
      {"AC6 depolarization", ac6},
      {"AC7 Caratheodory reduction", ac7},
      {"AC8 tomographic isometry", ac8},
      {"AC9 intertwining", ac9},
      {"AC10 probability semigroup identification", ac10},
      {"AC11 generating pairs", ac11},
      {"AC12 reproducibility", [cli] { return ac12(cli); }},
  };
  // AC5 covers every twirl built by the other criteria, so it runs last.
  std::vector<Outcome> outcomes(criteria.size());
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < criteria.size(); ++i)
    if (i != 4) order.push_back(i);
  order.push_back(4);
  for (std::size_t i : order) {
    try {
      outcomes[i] = criteria[i].second();
    } catch (const std::exception& e) {
      outcomes[i] = {false, std::string("exception: ") + e.what()};
    }
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.pass) ++failures;
    std::printf("%s: %s (%s)\n", o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
