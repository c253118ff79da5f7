#include "rgs/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <regex>
#include <stdexcept>

namespace rgs {

Group group_from_name(const std::string& name) {
  static const std::regex finite(R"(Z\d+(xZ\d+)*)");
  static const std::regex euclid(R"(R(\d+))");
  static const std::regex su(R"(SU(\d+))");
  std::smatch m;
  if (name == "T") return Group::circle();
  if (std::regex_match(name, m, euclid)) return Group::euclidean(std::stoi(m[1]));
  if (std::regex_match(name, m, su)) return Group::special_unitary(std::stoi(m[1]));
  if (std::regex_match(name, finite)) {
    std::vector<int> orders;
    static const std::regex factor(R"(Z(\d+))");
    for (auto it = std::sregex_iterator(name.begin(), name.end(), factor); it != std::sregex_iterator(); ++it) {
      orders.push_back(std::stoi((*it)[1]));
    }
    return Group::cyclic_product(orders);
  }
  throw std::invalid_argument("unknown group '" + name + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw std::invalid_argument("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

nlohmann::json element_to_json(const GroupElement& g) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteIndex>) {
          return v.coords;
        } else if constexpr (std::is_same_v<T, Angle>) {
          return v.radians;
        } else if constexpr (std::is_same_v<T, EuclideanPoint>) {
          return v.coords;
        } else {
          return matrix_to_json(v.value);
        }
      },
      g.value());
}

GroupElement element_from_json(const Group& group, const nlohmann::json& j) {
  GroupElement g;
  switch (group.kind()) {
    case GroupKind::finite_product:
      g = group.element(j.get<std::vector<int>>());
      break;
    case GroupKind::circle:
      g = GroupElement::angle(j.get<double>());
      break;
    case GroupKind::euclidean:
      g = GroupElement::point(j.get<std::vector<double>>());
      break;
    case GroupKind::special_unitary:
      g = GroupElement::matrix(matrix_from_json(j));
      break;
  }
  if (!group.contains(g)) throw std::invalid_argument("element " + g.to_string() + " is not in " + group.name());
  return g;
}

nlohmann::json measure_to_json(const DiscreteMeasure& mu) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : mu.atoms()) {
    atoms.push_back({{"element", element_to_json(a.element)}, {"weight", format_double(a.weight)}});
  }
  return {{"group", mu.group().name()},
          {"exactness", to_string(mu.exactness())},
          {"tail_bound", format_double(mu.tail_bound())},
          {"atoms", atoms}};
}

namespace {

double parse_decimal(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad decimal '" + s + "'");
  return x;
}

Exactness exactness_from_string(const std::string& s) {
  if (s == "exact") return Exactness::exact;
  if (s == "truncated") return Exactness::truncated;
  if (s == "empirical") return Exactness::empirical;
  throw std::invalid_argument("unknown exactness '" + s + "'");
}

}  // namespace

DiscreteMeasure measure_from_json(const nlohmann::json& j) {
  const Group group = group_from_name(j.at("group").get<std::string>());
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back({element_from_json(group, a.at("element")), parse_decimal(a.at("weight"))});
  const Exactness e = j.contains("exactness") ? exactness_from_string(j["exactness"]) : Exactness::exact;
  const double tail = j.contains("tail_bound") ? parse_decimal(j["tail_bound"]) : 0.0;
  return DiscreteMeasure(group, std::move(atoms), e, tail);
}

Multiplier multiplier_from_json(const Group& group, const nlohmann::json& j) {
  if (!group.is_finite()) throw std::domain_error("multiplier tables need a finite group");
  const auto n = static_cast<Eigen::Index>(group.order());
  const Matrix table = matrix_from_json(j);
  if (table.rows() != n || table.cols() != n) {
    throw std::invalid_argument("multiplier table must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  return Multiplier::table(group, table);
}

nlohmann::json tomogram_to_json(const Tomogram& f) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < f.values.size(); ++i) out.push_back(complex_to_json(f.values(i)));
  return out;
}

Tomogram tomogram_from_json(int d, const nlohmann::json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != d * d) throw std::invalid_argument("tomogram length is not d²");
  Tomogram f{d, Vector(d * d)};
  for (int i = 0; i < d * d; ++i) f.values(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
  return f;
}

nlohmann::json channel_to_json(const Superoperator& phi, const std::optional<Report>& checks) {
  nlohmann::json j = {{"dim", phi.dim}, {"picture", to_string(phi.picture)}, {"matrix", matrix_to_json(phi.matrix)}};
  if (phi.picture == Picture::schrodinger) {
    const RealVector eig = choi_eigenvalues(phi);
    j["choi_eigenvalues"] = std::vector<double>(eig.data(), eig.data() + eig.size());
    j["trace_preservation_residual"] = trace_preservation_residual(phi);
  }
  if (checks) j["checks"] = to_json(*checks);
  return j;
}

}  // namespace rgs
