#include "rgs/representations.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace rgs {

std::string to_string(Variance v) {
  return v == Variance::representation ? "representation" : "antirepresentation";
}

namespace {

/// e^{2πi k/d}, exact at multiples of a quarter turn.
Complex root_of_unity(long long k, int d) {
  long long r = k % d;
  if (r < 0) r += d;
  if ((4 * r) % d == 0) {
    switch ((4 * r) / d) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / d);
}

Variance flipped(Variance v) {
  return v == Variance::representation ? Variance::antirepresentation : Variance::representation;
}

}  // namespace

Multiplier Multiplier::trivial() {
  return Multiplier("trivial", [](const GroupElement&, const GroupElement&) { return Complex(1.0, 0.0); }, true);
}

Multiplier Multiplier::finite_weyl(int d) {
  if (d < 2) throw std::invalid_argument("finite_weyl: d must be at least 2");
  return Multiplier(
      "finite_weyl(" + std::to_string(d) + ")",
      [d](const GroupElement& g, const GroupElement& h) {
        const auto& a = g.index_coords();
        const auto& b = h.index_coords();
        return root_of_unity(-static_cast<long long>(a[1]) * b[0], d);
      },
      false);
}

Multiplier Multiplier::table(const Group& group, Matrix values) {
  const auto n = static_cast<Eigen::Index>(group.order());
  if (values.rows() != n || values.cols() != n) {
    throw std::invalid_argument("Multiplier::table: expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                " table");
  }
  auto shared = std::make_shared<const Matrix>(std::move(values));
  return Multiplier(
      "table(" + group.name() + ")",
      [group, shared](const GroupElement& g, const GroupElement& h) {
        return (*shared)(static_cast<Eigen::Index>(group.index_of(g)), static_cast<Eigen::Index>(group.index_of(h)));
      },
      false);
}

Multiplier Multiplier::custom(std::string name, Function fn) { return Multiplier(std::move(name), std::move(fn), false); }

Complex Multiplier::operator()(const GroupElement& g, const GroupElement& h) const { return fn_(g, h); }

Representation::Representation(std::string id, Group group, Eigen::Index dim, Variance variance, Multiplier multiplier,
                               Evaluator evaluator, double bound, bool unitary)
    : id_(std::move(id)),
      group_(std::move(group)),
      dim_(dim),
      variance_(variance),
      multiplier_(std::move(multiplier)),
      evaluator_(std::move(evaluator)),
      bound_(bound),
      unitary_(unitary) {
  const Matrix at_e = evaluator_(group_.identity());
  if (at_e.rows() != dim_ || at_e.cols() != dim_) {
    throw std::invalid_argument("Representation " + id_ + ": evaluator returns the wrong shape");
  }
  if ((at_e - Matrix::Identity(dim_, dim_)).norm() > 1e-12) {
    throw std::invalid_argument("Representation " + id_ + ": T(e) is not the identity");
  }
}

Representation character_rep(const Group& group, std::vector<int> frequencies) {
  if (group.kind() == GroupKind::finite_product) {
    if (frequencies.size() != group.orders().size()) {
      throw std::invalid_argument("character_rep: one frequency per cyclic factor required");
    }
    const auto orders = group.orders();
    // Common denominator keeps the phase an exact rational multiple of 2π.
    long long lcm = 1;
    for (int n : orders) lcm = std::lcm(lcm, static_cast<long long>(n));
    std::string id = "character(" + group.name() + ";";
    for (std::size_t i = 0; i < frequencies.size(); ++i) id += (i ? "," : "") + std::to_string(frequencies[i]);
    id += ")";
    return Representation(
        id, group, 1, Variance::representation, Multiplier::trivial(),
        [orders, frequencies, lcm](const GroupElement& g) {
          const auto& c = g.index_coords();
          long long num = 0;
          for (std::size_t i = 0; i < c.size(); ++i) {
            num += static_cast<long long>(frequencies[i]) * c[i] * (lcm / orders[i]);
            num %= lcm;
          }
          Matrix m(1, 1);
          m(0, 0) = root_of_unity(num, static_cast<int>(lcm));
          return m;
        },
        1.0, true);
  }
  if (group.kind() == GroupKind::circle) {
    if (frequencies.size() != 1) throw std::invalid_argument("character_rep: the circle takes one frequency");
    const int k = frequencies[0];
    return Representation(
        "character(T;" + std::to_string(k) + ")", group, 1, Variance::representation, Multiplier::trivial(),
        [k](const GroupElement& g) {
          Matrix m(1, 1);
          m(0, 0) = std::polar(1.0, k * g.radians());
          return m;
        },
        1.0, true);
  }
  throw std::domain_error("character_rep: " + group.name() + " is not a finite cyclic product or the circle");
}

Representation defining_su(int n) {
  if (n < 2) throw std::invalid_argument("defining_su: n must be at least 2");
  return Representation("defining(SU" + std::to_string(n) + ")", Group::special_unitary(n), n,
                        Variance::representation, Multiplier::trivial(),
                        [](const GroupElement& g) { return g.matrix_value(); }, 1.0, true);
}

Representation weyl_system(int d) {
  if (d < 2) throw std::invalid_argument("weyl_system: d must be at least 2");
  return Representation(
      "weyl(" + std::to_string(d) + ")", Group::cyclic_product({d, d}), d, Variance::representation,
      Multiplier::finite_weyl(d),
      [d](const GroupElement& g) {
        const auto& c = g.index_coords();
        const int p = c[0];
        const int q = c[1];
        Matrix w = Matrix::Zero(d, d);
        for (int j = 0; j < d; ++j) w((j + p) % d, j) = root_of_unity(static_cast<long long>(q) * j, d);
        return w;
      },
      1.0, true);
}

Representation adjoint_rep(const Representation& u) {
  if (!u.is_unitary()) throw std::invalid_argument("adjoint_rep: " + u.id() + " is not unitary");
  return Representation(
      "adjoint(" + u.id() + ")", u.group(), u.dim() * u.dim(), u.variance(), Multiplier::trivial(),
      [u](const GroupElement& g) { return conjugation_superoperator(u(g)); }, 1.0, true);
}

Complex two_sided_phase(const Group& group, const Multiplier& m, const GroupElement& g, const GroupElement& h) {
  const GroupElement ginv_h = group.multiply(group.inverse(g), h);
  return std::conj(m(g, ginv_h)) * m(ginv_h, g);
}

Representation two_sided_rep(const Group& group, const Multiplier& m) {
  if (!group.is_finite()) throw std::domain_error("two_sided_rep: " + group.name() + " is not finite");
  const auto elements = group.elements();
  for (const auto& g : elements) {
    for (const auto& h : elements) {
      if (std::abs(std::abs(m(g, h)) - 1.0) > 1e-12) {
        throw std::invalid_argument("two_sided_rep: multiplier is not circle-valued at (" + g.to_string() + ", " +
                                    h.to_string() + ")");
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(elements.size());
  auto table = std::make_shared<std::vector<Matrix>>();
  table->reserve(elements.size());
  for (const auto& g : elements) {
    const GroupElement ginv = group.inverse(g);
    const double delta_sqrt = std::sqrt(group.modular_function(g));
    Matrix w = Matrix::Zero(n, n);
    for (Eigen::Index row = 0; row < n; ++row) {
      const GroupElement& h = elements[static_cast<std::size_t>(row)];
      const auto col = static_cast<Eigen::Index>(group.index_of(group.multiply(group.multiply(ginv, h), g)));
      w(row, col) = delta_sqrt * two_sided_phase(group, m, g, h);
    }
    table->push_back(std::move(w));
  }
  return Representation(
      "two_sided(" + group.name() + ";" + m.name() + ")", group, n, Variance::representation, Multiplier::trivial(),
      [group, table](const GroupElement& g) { return (*table)[group.index_of(g)]; }, 1.0, true);
}

Representation right_regular_rep(const Group& group) {
  if (!group.is_finite()) throw std::domain_error("right_regular_rep: " + group.name() + " is not finite");
  const auto n = static_cast<Eigen::Index>(group.order());
  return Representation(
      "right_regular(" + group.name() + ")", group, n, Variance::representation, Multiplier::trivial(),
      [group, n](const GroupElement& h) {
        Matrix r = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const GroupElement gh = group.multiply(group.element_at(static_cast<std::size_t>(i)), h);
          r(i, static_cast<Eigen::Index>(group.index_of(gh))) = 1.0;
        }
        return r;
      },
      1.0, true);
}

Representation antirep_from_inverse(const Representation& u) {
  const Group group = u.group();
  const Multiplier m = u.multiplier();
  Multiplier swapped = m.is_trivial() ? Multiplier::trivial()
                                      : Multiplier::custom("inverse_swap(" + m.name() + ")",
                                                           [group, m](const GroupElement& g, const GroupElement& h) {
                                                             return m(group.inverse(h), group.inverse(g));
                                                           });
  return Representation(
      "inverse(" + u.id() + ")", group, u.dim(), flipped(u.variance()), std::move(swapped),
      [u, group](const GroupElement& g) { return u(group.inverse(g)); }, u.bound(), u.is_unitary());
}

Representation antirep_from_adjoint(const Representation& u) {
  const Multiplier m = u.multiplier();
  Multiplier conj = m.is_trivial() ? Multiplier::trivial()
                                   : Multiplier::custom("conj(" + m.name() + ")",
                                                        [m](const GroupElement& g, const GroupElement& h) {
                                                          return std::conj(m(g, h));
                                                        });
  return Representation(
      "adjoint_of(" + u.id() + ")", u.group(), u.dim(), flipped(u.variance()), std::move(conj),
      [u](const GroupElement& g) { return Matrix(u(g).adjoint()); }, u.bound(), u.is_unitary());
}

Representation with_multiplier(const Representation& u, Multiplier m, std::string id) {
  return Representation(std::move(id), u.group(), u.dim(), u.variance(), std::move(m),
                        [u](const GroupElement& g) { return u(g); }, u.bound(), u.is_unitary());
}

std::vector<ElementPair> all_pairs(const Group& group) {
  const auto elements = group.elements();
  std::vector<ElementPair> out;
  out.reserve(elements.size() * elements.size());
  for (const auto& g : elements) {
    for (const auto& h : elements) out.emplace_back(g, h);
  }
  return out;
}

Report verify_projective_property(const Representation& u, std::span<const ElementPair> pairs, double tol) {
  Report report;
  report.check = "projective_property";
  report.identity = u.variance() == Variance::representation ? "U(gh) = m(g,h) U(g) U(h)" : "U(gh) = m(g,h) U(h) U(g)";
  report.inputs["representation"] = u.id();
  report.inputs["multiplier"] = u.multiplier().name();
  report.inputs["pairs"] = pairs.size();
  report.inputs["tol"] = tol;
  report.bound = tol;
  const Group& group = u.group();
  double worst = 0.0;
  std::size_t worst_index = 0;
  double multiplier_defect = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [g, h] = pairs[i];
    const Complex mgh = u.multiplier()(g, h);
    multiplier_defect = std::max(multiplier_defect, std::abs(std::abs(mgh) - 1.0));
    const Matrix lhs = u(group.multiply(g, h));
    const Matrix rhs = u.variance() == Variance::representation ? Matrix(mgh * u(g) * u(h)) : Matrix(mgh * u(h) * u(g));
    const double r = (lhs - rhs).norm();
    if (r > worst) {
      worst = r;
      worst_index = i;
    }
  }
  report.residual = worst;
  report.pass = worst <= tol && multiplier_defect <= 1e-12;
  report.details["multiplier_circle_defect"] = multiplier_defect;
  if (!pairs.empty()) {
    report.details["worst_pair"] = {pairs[worst_index].first.to_string(), pairs[worst_index].second.to_string()};
  }
  if (!report.pass && !pairs.empty()) {
    report.details["offending_pair"] = report.details["worst_pair"];
  }
  return report;
}

double sampled_bound(const Representation& u, std::span<const GroupElement> elements) {
  double b = 0.0;
  for (const auto& g : elements) b = std::max(b, spectral_norm(u(g)));
  return b;
}

}  // namespace rgs
