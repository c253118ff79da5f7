#pragma once

#include "rgs/linalg.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rgs {

class RngStream;

/// Coordinates of an element of Z_{n1} × ... × Z_{nk}.
struct FiniteIndex {
  std::vector<int> coords;
};

/// Point of the circle group, kept in [0, 2π).
struct Angle {
  double radians = 0.0;
};

struct EuclideanPoint {
  std::vector<double> coords;
};

struct UnitaryMatrix {
  Matrix value;
};

class GroupElement {
 public:
  using Value = std::variant<FiniteIndex, Angle, EuclideanPoint, UnitaryMatrix>;

  GroupElement() = default;
  explicit GroupElement(FiniteIndex v) : value_(std::move(v)) {}
  explicit GroupElement(Angle v);
  explicit GroupElement(EuclideanPoint v) : value_(std::move(v)) {}
  explicit GroupElement(UnitaryMatrix v) : value_(std::move(v)) {}

  static GroupElement indices(std::vector<int> coords) { return GroupElement(FiniteIndex{std::move(coords)}); }
  static GroupElement angle(double radians) { return GroupElement(Angle{radians}); }
  static GroupElement point(std::vector<double> coords) { return GroupElement(EuclideanPoint{std::move(coords)}); }
  static GroupElement matrix(Matrix m) { return GroupElement(UnitaryMatrix{std::move(m)}); }

  const Value& value() const { return value_; }

  // Accessors throw std::domain_error on variant mismatch.
  const std::vector<int>& index_coords() const;
  double radians() const;
  const std::vector<double>& point_coords() const;
  const Matrix& matrix_value() const;

  std::string to_string() const;

 private:
  Value value_{FiniteIndex{}};
};

/// Reduces an angle into [0, 2π).
double reduce_angle(double radians);

enum class GroupKind { finite_product, circle, euclidean, special_unitary };

std::string to_string(GroupKind kind);

/// A concrete l.c.s.c. group: finite products of cyclic groups, 𝕋, ℝⁿ, or SU(n).
/// All supported kinds are unimodular; the modular function is still exposed.
class Group {
 public:
  static Group cyclic_product(std::vector<int> orders);
  static Group cyclic(int order) { return cyclic_product({order}); }
  static Group circle();
  static Group euclidean(int dim);
  static Group special_unitary(int n);

  GroupKind kind() const { return kind_; }
  const std::vector<int>& orders() const { return orders_; }
  /// n for ℝⁿ and SU(n); 1 for 𝕋; number of factors for finite products.
  int dimension() const { return dim_; }
  /// Dimension of the tangent space accepted by exp_map.
  int lie_dimension() const;
  std::string name() const;

  bool is_finite() const { return kind_ == GroupKind::finite_product; }
  bool is_compact() const { return kind_ != GroupKind::euclidean; }
  bool is_abelian() const { return kind_ != GroupKind::special_unitary || dim_ < 2; }
  bool is_unimodular() const { return true; }
  double modular_function(const GroupElement& g) const;

  bool operator==(const Group& other) const {
    return kind_ == other.kind_ && orders_ == other.orders_ && dim_ == other.dim_;
  }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;

  /// Canonical representative (indices reduced mod order, angle mod 2π).
  GroupElement canonical(const GroupElement& g) const;
  GroupElement element(std::vector<int> coords) const;

  bool contains(const GroupElement& g, double tol = 1e-10) const;
  /// Distance used for approximate equality: |Δ| for indices/angles (on the circle),
  /// Euclidean distance, or Frobenius norm of the difference.
  double distance(const GroupElement& g, const GroupElement& h) const;
  bool approx_equal(const GroupElement& g, const GroupElement& h, double tol = 1e-12) const {
    return distance(g, h) <= tol;
  }

  /// Normalized Haar measure sample; throws for non-compact groups.
  GroupElement haar_sample(RngStream& rng) const;

  /// exp of a Lie-algebra element. For SU(n) the coordinates are on the basis
  /// i·λ_k/2 with λ_k the generalized Gell-Mann matrices (Pauli matrices at n = 2).
  GroupElement exp_map(std::span<const double> tangent) const;

  // Finite groups only: flat mixed-radix index, first coordinate most significant.
  std::size_t order() const;
  std::size_t index_of(const GroupElement& g) const;
  GroupElement element_at(std::size_t index) const;
  std::vector<GroupElement> elements() const;

 private:
  Group(GroupKind kind, std::vector<int> orders, int dim) : kind_(kind), orders_(std::move(orders)), dim_(dim) {}

  void require_member_variant(const GroupElement& g) const;

  GroupKind kind_;
  std::vector<int> orders_;
  int dim_;
};

/// Generalized Gell-Mann matrices for su(n): symmetric, antisymmetric, then diagonal.
/// Hermitian, traceless, tr(λ_a λ_b) = 2 δ_ab.
std::vector<Matrix> gell_mann_matrices(int n);

/// exp(i Σ c_k λ_k / 2) on SU(2), closed form.
Matrix su2_exp(double c1, double c2, double c3);
Eigen::Matrix2cd su2_exp_fixed(double c1, double c2, double c3);

}  // namespace rgs
