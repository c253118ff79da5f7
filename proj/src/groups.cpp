#include "rgs/groups.hpp"

#include "rgs/rng.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rgs {

namespace {

int mod(long long a, int n) {
  const long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

[[noreturn]] void mismatch(const char* op) {
  throw std::domain_error(std::string(op) + ": group element variant does not match the group");
}

}  // namespace

double reduce_angle(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

GroupElement::GroupElement(Angle v) : value_(Angle{reduce_angle(v.radians)}) {}

const std::vector<int>& GroupElement::index_coords() const {
  if (const auto* p = std::get_if<FiniteIndex>(&value_)) return p->coords;
  mismatch("index_coords");
}

double GroupElement::radians() const {
  if (const auto* p = std::get_if<Angle>(&value_)) return p->radians;
  mismatch("radians");
}

const std::vector<double>& GroupElement::point_coords() const {
  if (const auto* p = std::get_if<EuclideanPoint>(&value_)) return p->coords;
  mismatch("point_coords");
}

const Matrix& GroupElement::matrix_value() const {
  if (const auto* p = std::get_if<UnitaryMatrix>(&value_)) return p->value;
  mismatch("matrix_value");
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteIndex>) {
          os << '(';
          for (std::size_t i = 0; i < v.coords.size(); ++i) os << (i ? "," : "") << v.coords[i];
          os << ')';
        } else if constexpr (std::is_same_v<T, Angle>) {
          os << "angle(" << v.radians << ')';
        } else if constexpr (std::is_same_v<T, EuclideanPoint>) {
          os << '[';
          for (std::size_t i = 0; i < v.coords.size(); ++i) os << (i ? "," : "") << v.coords[i];
          os << ']';
        } else {
          os << "matrix" << v.value.rows() << 'x' << v.value.cols();
        }
      },
      value_);
  return os.str();
}

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::finite_product: return "finite_product";
    case GroupKind::circle: return "circle";
    case GroupKind::euclidean: return "euclidean";
    case GroupKind::special_unitary: return "special_unitary";
  }
  return "unknown";
}

Group Group::cyclic_product(std::vector<int> orders) {
  if (orders.empty()) throw std::invalid_argument("cyclic_product: at least one factor required");
  for (int n : orders) {
    if (n < 1) throw std::invalid_argument("cyclic_product: orders must be positive");
  }
  const int factors = static_cast<int>(orders.size());
  return Group(GroupKind::finite_product, std::move(orders), factors);
}

Group Group::circle() { return Group(GroupKind::circle, {}, 1); }

Group Group::euclidean(int dim) {
  if (dim < 1) throw std::invalid_argument("euclidean: dimension must be positive");
  return Group(GroupKind::euclidean, {}, dim);
}

Group Group::special_unitary(int n) {
  if (n < 2) throw std::invalid_argument("special_unitary: n must be at least 2");
  return Group(GroupKind::special_unitary, {}, n);
}

int Group::lie_dimension() const {
  switch (kind_) {
    case GroupKind::finite_product: return 0;
    case GroupKind::circle: return 1;
    case GroupKind::euclidean: return dim_;
    case GroupKind::special_unitary: return dim_ * dim_ - 1;
  }
  return 0;
}

std::string Group::name() const {
  switch (kind_) {
    case GroupKind::finite_product: {
      std::string s;
      for (std::size_t i = 0; i < orders_.size(); ++i) {
        s += (i ? "xZ" : "Z") + std::to_string(orders_[i]);
      }
      return s;
    }
    case GroupKind::circle: return "T";
    case GroupKind::euclidean: return "R" + std::to_string(dim_);
    case GroupKind::special_unitary: return "SU" + std::to_string(dim_);
  }
  return "?";
}

double Group::modular_function(const GroupElement& g) const {
  require_member_variant(g);
  return 1.0;
}

void Group::require_member_variant(const GroupElement& g) const {
  const auto& v = g.value();
  switch (kind_) {
    case GroupKind::finite_product: {
      const auto* p = std::get_if<FiniteIndex>(&v);
      if (!p || p->coords.size() != orders_.size()) mismatch(name().c_str());
      return;
    }
    case GroupKind::circle:
      if (!std::holds_alternative<Angle>(v)) mismatch(name().c_str());
      return;
    case GroupKind::euclidean: {
      const auto* p = std::get_if<EuclideanPoint>(&v);
      if (!p || static_cast<int>(p->coords.size()) != dim_) mismatch(name().c_str());
      return;
    }
    case GroupKind::special_unitary: {
      const auto* p = std::get_if<UnitaryMatrix>(&v);
      if (!p || p->value.rows() != dim_ || p->value.cols() != dim_) mismatch(name().c_str());
      return;
    }
  }
}

GroupElement Group::identity() const {
  switch (kind_) {
    case GroupKind::finite_product: return GroupElement::indices(std::vector<int>(orders_.size(), 0));
    case GroupKind::circle: return GroupElement::angle(0.0);
    case GroupKind::euclidean: return GroupElement::point(std::vector<double>(dim_, 0.0));
    case GroupKind::special_unitary: return GroupElement::matrix(Matrix::Identity(dim_, dim_));
  }
  return {};
}

GroupElement Group::multiply(const GroupElement& g, const GroupElement& h) const {
  require_member_variant(g);
  require_member_variant(h);
  switch (kind_) {
    case GroupKind::finite_product: {
      const auto& a = g.index_coords();
      const auto& b = h.index_coords();
      std::vector<int> c(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod(static_cast<long long>(a[i]) + b[i], orders_[i]);
      return GroupElement::indices(std::move(c));
    }
    case GroupKind::circle: return GroupElement::angle(g.radians() + h.radians());
    case GroupKind::euclidean: {
      auto c = g.point_coords();
      const auto& b = h.point_coords();
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
      return GroupElement::point(std::move(c));
    }
    case GroupKind::special_unitary: return GroupElement::matrix(g.matrix_value() * h.matrix_value());
  }
  return {};
}

GroupElement Group::inverse(const GroupElement& g) const {
  require_member_variant(g);
  switch (kind_) {
    case GroupKind::finite_product: {
      const auto& a = g.index_coords();
      std::vector<int> c(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod(-static_cast<long long>(a[i]), orders_[i]);
      return GroupElement::indices(std::move(c));
    }
    case GroupKind::circle: return GroupElement::angle(-g.radians());
    case GroupKind::euclidean: {
      auto c = g.point_coords();
      for (double& x : c) x = -x;
      return GroupElement::point(std::move(c));
    }
    case GroupKind::special_unitary: return GroupElement::matrix(g.matrix_value().adjoint());
  }
  return {};
}

GroupElement Group::canonical(const GroupElement& g) const {
  require_member_variant(g);
  if (kind_ == GroupKind::finite_product) {
    auto c = g.index_coords();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(c[i], orders_[i]);
    return GroupElement::indices(std::move(c));
  }
  return g;
}

GroupElement Group::element(std::vector<int> coords) const {
  if (kind_ != GroupKind::finite_product) throw std::domain_error("element: only finite groups are indexed");
  return canonical(GroupElement::indices(std::move(coords)));
}

bool Group::contains(const GroupElement& g, double tol) const {
  try {
    require_member_variant(g);
  } catch (const std::domain_error&) {
    return false;
  }
  switch (kind_) {
    case GroupKind::finite_product: {
      const auto& c = g.index_coords();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0 || c[i] >= orders_[i]) return false;
      }
      return true;
    }
    case GroupKind::circle: {
      const double r = g.radians();
      return r >= 0.0 && r < kTwoPi;
    }
    case GroupKind::euclidean: {
      for (double x : g.point_coords()) {
        if (!std::isfinite(x)) return false;
      }
      return true;
    }
    case GroupKind::special_unitary: {
      const Matrix& u = g.matrix_value();
      return unitarity_defect(u) <= tol && std::abs(u.determinant() - 1.0) <= tol;
    }
  }
  return false;
}

double Group::distance(const GroupElement& g, const GroupElement& h) const {
  require_member_variant(g);
  require_member_variant(h);
  switch (kind_) {
    case GroupKind::finite_product:
      return canonical(g).index_coords() == canonical(h).index_coords() ? 0.0 : 1.0;
    case GroupKind::circle: {
      const double d = std::abs(g.radians() - h.radians());
      return std::min(d, kTwoPi - d);
    }
    case GroupKind::euclidean: {
      double s = 0.0;
      const auto& a = g.point_coords();
      const auto& b = h.point_coords();
      for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(s);
    }
    case GroupKind::special_unitary: return (g.matrix_value() - h.matrix_value()).norm();
  }
  return 0.0;
}

GroupElement Group::haar_sample(RngStream& rng) const {
  switch (kind_) {
    case GroupKind::finite_product: return element_at(rng.uniform_index(order()));
    case GroupKind::circle: return GroupElement::angle(kTwoPi * rng.uniform());
    case GroupKind::euclidean:
      throw std::domain_error("haar_sample: " + name() + " carries no Haar probability measure");
    case GroupKind::special_unitary: {
      if (dim_ == 2) {
        // Unit quaternion from a normalized 4-dimensional Gaussian.
        double q[4];
        double norm2 = 0.0;
        do {
          norm2 = 0.0;
          for (double& x : q) {
            x = rng.normal();
            norm2 += x * x;
          }
        } while (norm2 == 0.0);
        const double s = 1.0 / std::sqrt(norm2);
        const Complex a(q[0] * s, q[1] * s);
        const Complex b(q[2] * s, q[3] * s);
        Matrix u(2, 2);
        u << a, b, -std::conj(b), std::conj(a);
        return GroupElement::matrix(std::move(u));
      }
      // QR of a Ginibre matrix with the phases of diag(R) moved into Q gives Haar on U(n);
      // dividing by a root of the determinant lands in SU(n) and keeps the law Haar.
      const Matrix z = random_ginibre(dim_, dim_, rng);
      Eigen::HouseholderQR<Matrix> qr(z);
      Matrix q = qr.householderQ() * Matrix::Identity(dim_, dim_);
      const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int j = 0; j < dim_; ++j) {
        const Complex rjj = r(j, j);
        const double m = std::abs(rjj);
        if (m > 0.0) q.col(j) *= rjj / m;
      }
      const Complex det = q.determinant();
      q *= std::polar(1.0, -std::arg(det) / dim_);
      return GroupElement::matrix(std::move(q));
    }
  }
  return {};
}

GroupElement Group::exp_map(std::span<const double> tangent) const {
  if (kind_ == GroupKind::finite_product) {
    throw std::domain_error("exp_map: finite groups have no exponential map");
  }
  if (static_cast<int>(tangent.size()) != lie_dimension()) {
    throw std::invalid_argument("exp_map: tangent has dimension " + std::to_string(tangent.size()) +
                                ", expected " + std::to_string(lie_dimension()));
  }
  switch (kind_) {
    case GroupKind::circle: return GroupElement::angle(tangent[0]);
    case GroupKind::euclidean: return GroupElement::point({tangent.begin(), tangent.end()});
    case GroupKind::special_unitary: {
      if (dim_ == 2) return GroupElement::matrix(su2_exp(tangent[0], tangent[1], tangent[2]));
      const auto basis = gell_mann_matrices(dim_);
      Matrix h = Matrix::Zero(dim_, dim_);
      for (std::size_t k = 0; k < basis.size(); ++k) h += (0.5 * tangent[k]) * basis[k];
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      const Eigen::VectorXd lambda = es.eigenvalues();
      Vector phases(dim_);
      for (int j = 0; j < dim_; ++j) phases(j) = std::polar(1.0, lambda(j));
      return GroupElement::matrix(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
    }
    default: break;
  }
  return {};
}

std::size_t Group::order() const {
  if (kind_ != GroupKind::finite_product) throw std::domain_error("order: " + name() + " is not finite");
  std::size_t n = 1;
  for (int o : orders_) n *= static_cast<std::size_t>(o);
  return n;
}

std::size_t Group::index_of(const GroupElement& g) const {
  if (kind_ != GroupKind::finite_product) throw std::domain_error("index_of: " + name() + " is not finite");
  require_member_variant(g);
  const auto& c = g.index_coords();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(mod(c[i], orders_[i]));
  }
  return idx;
}

GroupElement Group::element_at(std::size_t index) const {
  const std::size_t n = order();
  if (index >= n) throw std::out_of_range("element_at: index out of range");
  std::vector<int> c(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    c[i] = static_cast<int>(index % static_cast<std::size_t>(orders_[i]));
    index /= static_cast<std::size_t>(orders_[i]);
  }
  return GroupElement::indices(std::move(c));
}

std::vector<GroupElement> Group::elements() const {
  const std::size_t n = order();
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<Matrix> gell_mann_matrices(int n) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n * n - 1));
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      out.push_back(std::move(m));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = -kI;
      m(k, j) = kI;
      out.push_back(std::move(m));
    }
  }
  for (int l = 1; l < n; ++l) {
    Matrix m = Matrix::Zero(n, n);
    const double s = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) m(j, j) = s;
    m(l, l) = -l * s;
    out.push_back(std::move(m));
  }
  return out;
}

Eigen::Matrix2cd su2_exp_fixed(double c1, double c2, double c3) {
  // exp(iθ n·σ/2) = cos(θ/2) I + i sin(θ/2) n·σ with θ = |c|.
  const double theta = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
  const double half = 0.5 * theta;
  const double c = std::cos(half);
  // sin(θ/2)/θ, written to stay accurate near θ = 0.
  const double s_over = theta > 1e-8 ? std::sin(half) / theta : 0.5 - theta * theta / 48.0;
  const double x = s_over * c1;
  const double y = s_over * c2;
  const double z = s_over * c3;
  Eigen::Matrix2cd u;
  u << Complex(c, z), Complex(y, x), Complex(-y, x), Complex(c, -z);
  return u;
}

Matrix su2_exp(double c1, double c2, double c3) { return su2_exp_fixed(c1, c2, c3); }

}  // namespace rgs
