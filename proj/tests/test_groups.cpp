#include "rgs/groups.hpp"
#include "rgs/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace rgs;

TEST_CASE("cyclic multiplication and inversion") {
  const Group z4 = Group::cyclic(4);
  CHECK(z4.multiply(z4.element({1}), z4.element({3})).index_coords() == std::vector<int>{0});
  const Group z5 = Group::cyclic(5);
  CHECK(z5.inverse(z5.element({2})).index_coords() == std::vector<int>{3});
  CHECK(z4.name() == "Z4");
  CHECK(Group::cyclic_product({2, 2}).name() == "Z2xZ2");
  CHECK(z4.element({-1}).index_coords() == std::vector<int>{3});
}

TEST_CASE("circle addition reduces mod 2pi") {
  const Group t = Group::circle();
  const auto r = t.multiply(GroupElement::angle(kPi), GroupElement::angle(1.5 * kPi));
  CHECK(r.radians() == doctest::Approx(0.5 * kPi).epsilon(1e-15));
  CHECK(GroupElement::angle(-0.25).radians() == doctest::Approx(kTwoPi - 0.25));
  CHECK(GroupElement::angle(kTwoPi).radians() == 0.0);
}

TEST_CASE("euclidean inverse") {
  const Group r2 = Group::euclidean(2);
  CHECK(r2.inverse(GroupElement::point({1.5, -2.0})).point_coords() == std::vector<double>{-1.5, 2.0});
}

TEST_CASE("SU(2) inverse is the adjoint") {
  RngStream rng(3);
  const Group su2 = Group::special_unitary(2);
  for (int i = 0; i < 20; ++i) {
    const GroupElement g = su2.haar_sample(rng);
    CHECK(frobenius_norm(su2.inverse(g).matrix_value() - g.matrix_value().adjoint()) == 0.0);
    const GroupElement e = su2.multiply(g, su2.inverse(g));
    CHECK(frobenius_norm(e.matrix_value() - Matrix::Identity(2, 2)) <= 1e-12);
    CHECK(su2.contains(g));
  }
}

TEST_CASE("variant mismatch is a domain error") {
  const Group z2 = Group::cyclic(2);
  CHECK_THROWS_AS(z2.multiply(z2.element({1}), GroupElement::angle(1.0)), std::domain_error);
  CHECK_THROWS_AS(GroupElement::angle(1.0).index_coords(), std::domain_error);
  CHECK_THROWS_AS(Group::circle().inverse(GroupElement::point({1.0})), std::domain_error);
}

TEST_CASE("group axioms on random triples") {
  RngStream rng(11);
  SUBCASE("Z3xZ4") {
    const Group g = Group::cyclic_product({3, 4});
    for (int i = 0; i < 50; ++i) {
      const auto a = g.haar_sample(rng), b = g.haar_sample(rng), c = g.haar_sample(rng);
      CHECK(g.distance(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c))) == 0.0);
      CHECK(g.distance(g.multiply(a, g.identity()), a) == 0.0);
      CHECK(g.distance(g.multiply(a, g.inverse(a)), g.identity()) == 0.0);
    }
  }
  SUBCASE("SU(3)") {
    const Group g = Group::special_unitary(3);
    for (int i = 0; i < 20; ++i) {
      const auto a = g.haar_sample(rng), b = g.haar_sample(rng), c = g.haar_sample(rng);
      CHECK(g.contains(a));
      CHECK(g.distance(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c))) <= 1e-10);
      CHECK(g.distance(g.multiply(g.identity(), a), a) <= 1e-10);
    }
  }
}

TEST_CASE("modular function is exactly one") {
  RngStream rng(1);
  for (const Group& g : {Group::cyclic(3), Group::circle(), Group::euclidean(2), Group::special_unitary(2)}) {
    CHECK(g.is_unimodular());
    CHECK(g.modular_function(g.identity()) == 1.0);
  }
  const Group su2 = Group::special_unitary(2);
  CHECK(su2.modular_function(su2.haar_sample(rng)) == 1.0);
}

TEST_CASE("haar sampling on Z2 is uniform") {
  RngStream rng(2024);
  const Group z2 = Group::cyclic(2);
  const int n = 1000000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += z2.haar_sample(rng).index_coords()[0];
  const double freq = static_cast<double>(ones) / n;
  CHECK(std::abs(freq - 0.5) <= 3.0 * 0.5 / 1000.0);
}

TEST_CASE("haar sampling on SU(2) and T has vanishing first moments") {
  const int n = 100000;
  RngStream rng(7);
  const Group su2 = Group::special_unitary(2);
  Complex tr = 0.0;
  for (int i = 0; i < n; ++i) tr += su2.haar_sample(rng).matrix_value().trace();
  CHECK(std::abs(tr / double(n)) <= 3.0 / std::sqrt(double(n)) * std::sqrt(2.0));

  const Group t = Group::circle();
  Complex m = 0.0;
  for (int i = 0; i < n; ++i) m += std::polar(1.0, t.haar_sample(rng).radians());
  CHECK(std::abs(m / double(n)) <= 3.0 / std::sqrt(double(n)));
}

TEST_CASE("haar sampling is left invariant on SU(2)") {
  // E tr(g U)^2-type statistics: compare mean of Re tr over g*U with that over U.
  const int n = 100000;
  RngStream rng(8), rng2(9);
  const Group su2 = Group::special_unitary(2);
  const GroupElement g = su2.exp_map(std::vector<double>{0.3, -1.1, 0.7});
  double a = 0.0, b = 0.0, a2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = su2.multiply(g, su2.haar_sample(rng)).matrix_value().trace().real();
    const double y = su2.haar_sample(rng2).matrix_value().trace().real();
    a += x;
    b += y;
    a2 += x * x;
  }
  const double sd = std::sqrt(a2 / n);
  CHECK(std::abs(a / n - b / n) <= 3.0 * sd * std::sqrt(2.0 / n));
}

TEST_CASE("euclidean groups have no Haar probability measure") {
  RngStream rng(0);
  CHECK_THROWS_AS(Group::euclidean(2).haar_sample(rng), std::domain_error);
}

TEST_CASE("exponential map") {
  const Group t = Group::circle();
  CHECK(t.exp_map(std::vector<double>{0.0}).radians() == 0.0);

  const Group r2 = Group::euclidean(2);
  CHECK(r2.exp_map(std::vector<double>{0.25, -3.0}).point_coords() == std::vector<double>{0.25, -3.0});

  const Group su2 = Group::special_unitary(2);
  const Matrix u = su2.exp_map(std::vector<double>{0.0, 0.0, kPi}).matrix_value();
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = std::polar(1.0, kPi / 2);
  expected(1, 1) = std::polar(1.0, -kPi / 2);
  CHECK(frobenius_norm(u - expected) <= 1e-12);

  CHECK_THROWS_AS(Group::cyclic(3).exp_map(std::vector<double>{1.0}), std::domain_error);
  CHECK_THROWS_AS(su2.exp_map(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("exponential map is a one-parameter group") {
  for (int n : {2, 3}) {
    const Group g = Group::special_unitary(n);
    std::vector<double> x(static_cast<std::size_t>(g.lie_dimension()));
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = 0.3 * static_cast<double>(k + 1) - 0.8;
    auto scaled = [&x](double s) {
      std::vector<double> y = x;
      for (double& v : y) v *= s;
      return y;
    };
    const GroupElement a = g.exp_map(scaled(0.4));
    const GroupElement b = g.exp_map(scaled(1.1));
    CHECK(g.distance(g.multiply(a, b), g.exp_map(scaled(1.5))) <= 1e-10);
    CHECK(g.distance(g.exp_map(scaled(0.0)), g.identity()) <= 1e-15);
    CHECK(g.contains(a));
  }
}

TEST_CASE("Gell-Mann basis is orthonormal under tr(ab)/2") {
  for (int n : {2, 3, 4}) {
    const auto l = gell_mann_matrices(n);
    REQUIRE(l.size() == static_cast<std::size_t>(n * n - 1));
    for (std::size_t a = 0; a < l.size(); ++a) {
      CHECK(hermiticity_defect(l[a]) == 0.0);
      CHECK(std::abs(l[a].trace()) <= 1e-15);
      for (std::size_t b = 0; b < l.size(); ++b) {
        CHECK(std::abs((l[a] * l[b]).trace() - (a == b ? 2.0 : 0.0)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("finite group indexing is row-major") {
  const Group g = Group::cyclic_product({2, 3});
  CHECK(g.order() == 6);
  CHECK(g.index_of(g.element({1, 2})) == 5);
  CHECK(g.element_at(4).index_coords() == std::vector<int>{1, 1});
  for (std::size_t i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
}
