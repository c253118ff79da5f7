#include "rgs/randgen.hpp"
#include "rgs/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace rgs;

namespace {

RealVector pt(std::initializer_list<double> v) {
  RealVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x(i++) = c;
  return x;
}

double weight_sum(const std::vector<WeightedPoint>& atoms) {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

}  // namespace

TEST_CASE("three collinear points reduce to two") {
  std::vector<WeightedPoint> atoms{{pt({0.0}), 0.25, 0}, {pt({1.0}), 0.5, 1}, {pt({2.0}), 0.25, 2}};
  const auto out = caratheodory_reduce(atoms);
  CHECK(out.size() <= 2);
  CHECK(std::abs(barycenter(out)(0) - 1.0) <= 1e-12);
  CHECK(std::abs(weight_sum(out) - 1.0) <= 1e-12);
}

TEST_CASE("short lists are returned unchanged") {
  std::vector<WeightedPoint> atoms{{pt({0.0, 1.0}), 0.5, 0}, {pt({2.0, 0.0}), 0.5, 1}};
  const auto out = caratheodory_reduce(atoms);
  REQUIRE(out.size() == 2);
  CHECK(out[0].weight == 0.5);
  CHECK(out[1].source == 1);
}

TEST_CASE("invalid weights are rejected") {
  std::vector<WeightedPoint> bad{{pt({0.0}), 0.7, 0}, {pt({1.0}), 0.7, 1}};
  CHECK_THROWS_AS(caratheodory_reduce(bad), std::invalid_argument);
  std::vector<WeightedPoint> neg{{pt({0.0}), 1.5, 0}, {pt({1.0}), -0.5, 1}};
  CHECK_THROWS_AS(caratheodory_reduce(neg), std::invalid_argument);
  CHECK_THROWS_AS(caratheodory_reduce({}), std::invalid_argument);
}

TEST_CASE("ties drop the lowest index") {
  // Symmetric configuration: 0 and 2 hit zero together.
  std::vector<WeightedPoint> atoms{{pt({-1.0}), 1.0 / 3, 0}, {pt({0.0}), 1.0 / 3, 1}, {pt({1.0}), 1.0 / 3, 2}};
  const auto out = caratheodory_reduce(atoms);
  REQUIRE(out.size() == 2);
  CHECK(std::abs(barycenter(out)(0)) <= 1e-15);
  std::set<std::size_t> kept;
  for (const auto& a : out) kept.insert(a.source);
  CHECK(kept.count(0) == 0);
}

TEST_CASE("random point clouds") {
  RngStream rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 1 + trial % 5;
    const int m = dim + 2 + trial % 7;
    std::vector<WeightedPoint> atoms;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      RealVector x(dim);
      for (int k = 0; k < dim; ++k) x(k) = rng.normal();
      const double w = rng.uniform();
      s += w;
      atoms.push_back({x, w, static_cast<std::size_t>(i)});
    }
    for (auto& a : atoms) a.weight /= s;
    const RealVector before = barycenter(atoms);
    const auto out = caratheodory_reduce(atoms);
    CHECK(out.size() <= static_cast<std::size_t>(dim + 1));
    CHECK((barycenter(out) - before).norm() <= 1e-10);
    CHECK(std::abs(weight_sum(out) - 1.0) <= 1e-12);
    for (const auto& a : out) {
      CHECK(a.weight >= 0.0);
      CHECK((a.point - atoms[a.source].point).norm() == 0.0);
    }
  }
}

TEST_CASE("random unitary decomposition of a haar average on SU(2)") {
  RngStream rng(3);
  const auto u = defining_su(2);
  std::vector<Atom> atoms;
  for (int i = 0; i < 10; ++i) atoms.push_back({u.group().haar_sample(rng), 0.1});
  const DiscreteMeasure mu(u.group(), atoms, Exactness::empirical);
  const UnitaryMixture mix = random_unitary_decomposition(u, mu);
  CHECK(mix.unitaries.size() <= 9);
  Matrix r = Matrix::Zero(2, 2);
  for (std::size_t k = 0; k < mix.unitaries.size(); ++k) {
    r += mix.probabilities[k] * mix.unitaries[k];
    CHECK(unitarity_defect(mix.unitaries[k]) <= 1e-12);
  }
  CHECK(frobenius_norm(r - randomly_generated_operator(u, mu).matrix) <= 1e-10);
  CHECK(flatten_complex(Matrix::Identity(2, 2)).size() == 8);
}
