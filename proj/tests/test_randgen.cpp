#include "rgs/randgen.hpp"
#include "rgs/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace rgs;

namespace {

ConvolutionSemigroupSpec bit_flip(double rate = 1.0) {
  const Group z2 = Group::cyclic(2);
  return {z2, CompoundPoisson{rate, make_dirac(z2, z2.element({1}))}};
}

Complex scalar(const BoundedOperator& op) { return op.matrix(0, 0); }

}  // namespace

TEST_CASE("randomly generated operator of a Z2 character") {
  const auto chi = character_rep(Group::cyclic(2), {1});
  const auto spec = bit_flip();
  const auto mu = semigroup_measure_at(spec, 0.5);
  const auto r = randomly_generated_operator(chi, mu);
  CHECK(std::abs(scalar(r) - 0.36787944117144233) <= 1e-12);
  CHECK(std::abs(scalar(r) - std::exp(-1.0)) <= 1e-12);
  CHECK(r.norm() <= chi.bound());

  const auto d = dual_operator(chi, mu);
  CHECK(std::abs(scalar(d) - 0.36787944117144233) <= 1e-12);
  CHECK(std::abs(scalar(d).imag()) == 0.0);

  const auto s1 = semigroup_element(chi, spec, 1.0);
  CHECK(std::abs(scalar(s1.op) - 0.1353352832366127) <= 1e-12);
  CHECK(s1.exactness == Exactness::truncated);
  CHECK(s1.op.provenance.time == 1.0);
}

TEST_CASE("dirac and haar integrals") {
  const Group z3 = Group::cyclic(3);
  const auto chi = character_rep(z3, {1});
  CHECK(std::abs(scalar(randomly_generated_operator(chi, make_uniform(z3)))) <= 1e-15);

  const auto w = weyl_system(3);
  const GroupElement g = w.group().element({1, 2});
  CHECK(frobenius_norm(randomly_generated_operator(w, make_dirac(w.group(), g)).matrix - w(g)) == 0.0);
  CHECK(frobenius_norm(dual_operator(w, make_dirac(w.group(), g)).matrix - w(g).adjoint()) == 0.0);

  CHECK_THROWS_AS(randomly_generated_operator(chi, make_uniform(Group::cyclic(2))), std::domain_error);
}

TEST_CASE("dual operator is the adjoint") {
  RngStream rng(10);
  const auto u = defining_su(3);
  std::vector<Atom> atoms;
  for (int i = 0; i < 25; ++i) atoms.push_back({u.group().haar_sample(rng), 1.0 / 25});
  const DiscreteMeasure mu(u.group(), atoms, Exactness::empirical);
  const Matrix r = randomly_generated_operator(u, mu).matrix;
  const Matrix d = dual_operator(u, mu).matrix;
  CHECK(frobenius_norm(d - r.adjoint()) <= 1e-14);
  CHECK(spectral_norm(r) <= 1.0 + 1e-12);
  const Vector f = random_ginibre(3, 1, rng);
  const Vector g = random_ginibre(3, 1, rng);
  CHECK(std::abs(g.dot(r * f) - (d * g).dot(f)) <= 1e-14);
}

TEST_CASE("antirepresentation with the reversed measure gives the same operator") {
  RngStream rng(2);
  const auto w = weyl_system(3);
  const Group& g = w.group();
  std::vector<double> weights(g.order());
  double s = 0.0;
  for (double& x : weights) s += (x = rng.uniform());
  for (double& x : weights) x /= s;
  const auto mu = make_finite(g, weights);
  const Matrix a = randomly_generated_operator(w, mu).matrix;
  const Matrix b = randomly_generated_operator(antirep_from_inverse(w), reversed(mu)).matrix;
  CHECK(frobenius_norm(a - b) <= 1e-12);
}

TEST_CASE("semigroup element at time zero is the identity") {
  const auto theta = adjoint_rep(weyl_system(2));
  const Group& g = theta.group();
  const ConvolutionSemigroupSpec spec(g, CompoundPoisson{1.0, make_dirac(g, g.element({1, 0}))});
  CHECK(frobenius_norm(semigroup_element(theta, spec, 0.0).op.matrix - Matrix::Identity(4, 4)) <= 1e-12);
  CHECK_THROWS_AS(semigroup_element(theta, spec, -0.1), std::invalid_argument);

  const ConvolutionSemigroupSpec flow(Group::circle(), DiracFlow{{1.0}});
  const auto chi = character_rep(Group::circle(), {3});
  const auto st = semigroup_element(chi, flow, 0.4);
  CHECK(std::abs(scalar(st.op) - std::polar(1.0, 1.2)) <= 1e-15);
}

TEST_CASE("semigroup property for exact kinds") {
  const std::vector<TimePair> pairs{{0.3, 0.7}, {0.01, 2.0}, {1.5, 0.5}, {0.2, 0.0}};
  const auto theta = adjoint_rep(weyl_system(2));
  const Group& g = theta.group();
  const ConvolutionSemigroupSpec spec(g, CompoundPoisson{1.0, make_dirac(g, g.element({1, 0}))});
  const Report r = check_semigroup_property(theta, spec, pairs);
  CHECK(r.pass);
  CHECK(r.residual <= 1e-10);

  const ConvolutionSemigroupSpec flow(Group::circle(), DiracFlow{{0.9}});
  const Report rf = check_semigroup_property(character_rep(Group::circle(), {2}), flow, pairs);
  CHECK(rf.pass);
  CHECK(rf.residual <= 1e-14);
}

TEST_CASE("semigroup property for brownian motion is statistical") {
  const ConvolutionSemigroupSpec spec(Group::special_unitary(2), BrownianMotion{1.0, 32}, 20000);
  const std::vector<TimePair> pairs{{0.1, 0.1}};
  const Report r = check_semigroup_property(defining_su(2), spec, pairs, SampleOptions{20000, 1, 0, 1});
  CHECK(r.pass);
  CHECK(r.bound == doctest::Approx(3.0 * 3.0 / std::sqrt(20000.0) + (0.01 + 0.01 + 0.04) / 32.0));
  CHECK(!r.notes.empty());
  CHECK(statistical_bound(1.0, 100, 100, 100) == doctest::Approx(0.9));
}

TEST_CASE("continuity at zero") {
  const auto chi = character_rep(Group::cyclic(2), {1});
  const std::vector<double> times{0.1, 0.01, 0.001};
  const Report r = check_continuity_at_zero(chi, bit_flip(), times);
  CHECK(r.pass);
  // ‖S_t − I‖ = 1 − e^{−2t}, bound (1 + 1)(1 − e^{−t}).
  for (const auto& row : r.details["times"]) {
    const double t = row["t"];
    CHECK(std::abs(row["distance_to_identity"].get<double>() + std::expm1(-2.0 * t)) <= 1e-12);
    CHECK(row["slack"].get<double>() >= 0.0);
  }

  const ConvolutionSemigroupSpec flow(Group::circle(), DiracFlow{{1.0}});
  const std::vector<double> flow_times{0.5, 0.1, 0.01, 0.0};
  const Report rf = check_continuity_at_zero(character_rep(Group::circle(), {1}), flow, flow_times);
  CHECK(rf.pass);
  CHECK(rf.residual == 0.0);

  const std::vector<double> increasing{0.01, 0.1};
  CHECK_THROWS_AS(check_continuity_at_zero(chi, bit_flip(), increasing), std::invalid_argument);
}

TEST_CASE("generator estimates") {
  const auto chi = character_rep(Group::cyclic(2), {1});
  const auto plain = estimate_generator(chi, bit_flip(), 1e-4);
  CHECK(std::abs(scalar(plain) + 2.0) <= 1e-3);
  const auto rich = estimate_generator(chi, bit_flip(), 1e-4, {}, true);
  CHECK(std::abs(scalar(rich) + 2.0) <= 1e-6);
  CHECK(rich.truncation_error <= 1e-8);

  const ConvolutionSemigroupSpec flow(Group::circle(), DiracFlow{{1.0}});
  const auto ef = estimate_generator(character_rep(Group::circle(), {1}), flow, 1e-5);
  CHECK(std::abs(scalar(ef) - kI) <= 1e-4);

  CHECK_THROWS_AS(estimate_generator(chi, bit_flip(), 0.0), std::invalid_argument);
}

TEST_CASE("compound poisson generator closed form") {
  const auto theta = adjoint_rep(weyl_system(3));
  const Group& g = theta.group();
  const CompoundPoisson cp{2.5, make_uniform(g)};
  const ConvolutionSemigroupSpec spec(g, cp);
  const Matrix ref = compound_poisson_generator(theta, cp);
  for (double t0 : {1e-2, 1e-3}) {
    const auto est = estimate_generator(theta, spec, t0);
    // Forward difference error ≈ t0 ‖A‖²/2.
    CHECK(spectral_norm(est.matrix - ref) <= t0 * spectral_norm(ref * ref));
  }
}
