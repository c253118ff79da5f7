#include "rgs/probsg.hpp"

#include "rgs/randgen.hpp"
#include "rgs/representations.hpp"
#include "rgs/rng.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rgs {

namespace {

void require_finite(const Group& g, const char* op) {
  if (!g.is_finite()) throw std::domain_error(std::string(op) + ": " + g.name() + " is not finite");
}

RealVector random_function(Eigen::Index n, RngStream& rng) {
  RealVector f(n);
  for (Eigen::Index i = 0; i < n; ++i) f(i) = rng.normal();
  return f;
}

std::string csv_label(const GroupElement& g) {
  std::string out;
  for (int c : g.index_coords()) out += (out.empty() ? "" : ";") + std::to_string(c);
  return out;
}

}  // namespace

RealMatrix transition_matrix(const DiscreteMeasure& mu) {
  const Group& g = mu.group();
  require_finite(g, "transition_matrix");
  const auto n = static_cast<Eigen::Index>(g.order());
  RealMatrix m = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const GroupElement x = g.element_at(static_cast<std::size_t>(i));
    for (const auto& a : mu.atoms()) {
      m(i, static_cast<Eigen::Index>(g.index_of(g.multiply(x, a.element)))) += a.weight;
    }
  }
  return m;
}

double sup_operator_norm(const RealMatrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

Report prob_semigroup_check(const ConvolutionSemigroupSpec& spec, std::span<const std::pair<double, double>> pairs,
                            double tol, std::uint64_t seed, int samples) {
  require_finite(spec.group(), "prob_semigroup_check");
  RngStream rng(seed, 0x9b5);
  Report report;
  report.check = "probability_semigroup";
  report.identity = "P_t P_s = P_{t+s} on functions, with P_t positive, sup-contractive, P_t 1 = 1";
  report.inputs["semigroup"] = spec.describe();
  report.inputs["tol"] = tol;
  report.inputs["seed"] = seed;
  report.pass = true;
  nlohmann::json rows = nlohmann::json::array();
  double worst = -1.0;
  for (const auto& [t, s] : pairs) {
    const DiscreteMeasure mt = semigroup_measure_at(spec, t);
    const DiscreteMeasure ms = semigroup_measure_at(spec, s);
    const DiscreteMeasure mts = semigroup_measure_at(spec, t + s);
    const RealMatrix a = transition_matrix(mt);
    const RealMatrix b = transition_matrix(ms);
    const RealMatrix c = transition_matrix(mts);
    const double tails = mt.tail_bound() + ms.tail_bound() + mts.tail_bound();
    const double residual = sup_operator_norm(a * b - c);
    const double bound = tol + tails;

    double contraction_excess = 0.0;
    bool positive = true;
    for (int k = 0; k < samples; ++k) {
      const RealVector f = random_function(a.cols(), rng);
      const double ratio = (a * f).cwiseAbs().maxCoeff() - f.cwiseAbs().maxCoeff();
      contraction_excess = std::max(contraction_excess, ratio);
      const RealVector fp = f.cwiseAbs();
      if ((a * fp).minCoeff() < 0.0) positive = false;
    }
    const double constants = (a * RealVector::Ones(a.cols()) - RealVector::Ones(a.rows())).cwiseAbs().maxCoeff();
    const bool contractive = contraction_excess <= kMassTolerance;
    const bool ok = residual <= bound && contractive && positive && constants <= tol + mt.tail_bound();
    rows.push_back({{"t", t},
                    {"s", s},
                    {"residual", residual},
                    {"bound", bound},
                    {"sup_norm_excess", contraction_excess},
                    {"positivity", positive},
                    {"constant_residual", constants},
                    {"pass", ok}});
    report.pass = report.pass && ok;
    const double r = residual / bound;
    if (r > worst) {
      worst = r;
      report.residual = residual;
      report.bound = bound;
    }
  }
  report.details["pairs"] = rows;
  return report;
}

Report identify_as_randomly_generated(const DiscreteMeasure& mu, int pairing_samples, std::uint64_t seed,
                                      double tol) {
  const Group& g = mu.group();
  require_finite(g, "identify_as_randomly_generated");
  const Representation r = right_regular_rep(g);
  const auto pairs = all_pairs(g);
  Report rep_check = verify_projective_property(r, pairs, tol);

  const RealMatrix m = transition_matrix(mu);
  const Matrix rg = randomly_generated_operator(r, mu).matrix;
  Report equality;
  equality.check = "transition_matrix_equality";
  equality.identity = "M_mu = sum_h mu(h) R(h)";
  equality.residual = (m.cast<Complex>() - rg).cwiseAbs().maxCoeff();
  equality.bound = tol;
  equality.pass = equality.residual <= tol;

  // ⟨P* ν, f⟩ = ⟨ν, P f⟩ for signed measures ν and functions f.
  RngStream rng(seed, 0xad7);
  const auto n = m.rows();
  double pairing = 0.0;
  for (int k = 0; k < pairing_samples; ++k) {
    const RealVector nu = random_function(n, rng);
    const RealVector f = random_function(n, rng);
    pairing = std::max(pairing, std::abs((m.transpose() * nu).dot(f) - nu.dot(m * f)));
  }
  Report adjoint;
  adjoint.check = "adjoint_pairing";
  adjoint.identity = "<P* nu, f> = <nu, P f>";
  adjoint.residual = pairing;
  adjoint.bound = tol;
  adjoint.pass = pairing <= tol;

  // P* δ_x = Σ_h μ(h) δ_{xh}, assembled directly.
  double point_mass = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    RealVector delta = RealVector::Zero(n);
    delta(i) = 1.0;
    RealVector expected = RealVector::Zero(n);
    const GroupElement x = g.element_at(static_cast<std::size_t>(i));
    for (const auto& a : mu.atoms()) expected(static_cast<Eigen::Index>(g.index_of(g.multiply(x, a.element)))) += a.weight;
    point_mass = std::max(point_mass, (m.transpose() * delta - expected).cwiseAbs().maxCoeff());
  }
  Report point;
  point.check = "adjoint_on_point_masses";
  point.identity = "P* delta_g = sum_h mu(h) delta_{gh}";
  point.residual = point_mass;
  point.bound = tol;
  point.pass = point_mass <= tol;

  Report report = combine_reports("randomly_generated_identification",
                                  "P_t = integral of the right-regular representation against mu_t",
                                  {rep_check, equality, adjoint, point});
  report.inputs["group"] = g.name();
  report.inputs["pairing_samples"] = pairing_samples;
  report.inputs["seed"] = seed;
  report.details["right_action"] = "R(h1 h2) = R(h1) R(h2): the right action is a representation";
  report.notes.push_back("adjoint taken with respect to the pairing of signed measures with functions");
  return report;
}

Report identify_as_randomly_generated(const ConvolutionSemigroupSpec& spec, double t, int pairing_samples,
                                      std::uint64_t seed, double tol) {
  const DiscreteMeasure mu = semigroup_measure_at(spec, t);
  Report report = identify_as_randomly_generated(mu, pairing_samples, seed, tol + mu.tail_bound());
  report.inputs["semigroup"] = spec.describe();
  report.inputs["t"] = t;
  return report;
}

std::string transition_matrix_csv(const Group& group, const RealMatrix& m) {
  require_finite(group, "transition_matrix_csv");
  std::ostringstream os;
  os << "from";
  for (std::size_t j = 0; j < group.order(); ++j) os << ',' << csv_label(group.element_at(j));
  os << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << csv_label(group.element_at(static_cast<std::size_t>(i)));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace rgs
