#include "rgs/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rgs {

namespace {

std::string describe_measure(const DiscreteMeasure& mu) {
  std::ostringstream os;
  os << to_string(mu.exactness()) << " measure on " << mu.group().name() << " (" << mu.size() << " atoms)";
  return os.str();
}

void require_same_group(const Representation& u, const DiscreteMeasure& mu, const char* op) {
  if (!(u.group() == mu.group())) {
    throw std::domain_error(std::string(op) + ": measure on " + mu.group().name() + " but " + u.id() + " acts on " +
                            u.group().name());
  }
}

SampleOptions with_stream(const SampleOptions& options, std::uint64_t stream) {
  SampleOptions o = options;
  o.stream = stream;
  return o;
}

double empirical_term(const DiscreteMeasure& mu) {
  return mu.exactness() == Exactness::empirical ? 1.0 / std::sqrt(static_cast<double>(mu.size())) : 0.0;
}

}  // namespace

BoundedOperator randomly_generated_operator(const Representation& u, const DiscreteMeasure& mu) {
  require_same_group(u, mu, "randomly_generated_operator");
  Matrix r = Matrix::Zero(u.dim(), u.dim());
  for (const auto& a : mu.atoms()) r += a.weight * u(a.element);
  return {std::move(r), {u.id(), describe_measure(mu), std::nullopt}};
}

BoundedOperator dual_operator(const Representation& u, const DiscreteMeasure& mu) {
  require_same_group(u, mu, "dual_operator");
  Matrix r = Matrix::Zero(u.dim(), u.dim());
  for (const auto& a : mu.atoms()) r += a.weight * u(a.element).adjoint();
  return {std::move(r), {"dual(" + u.id() + ")", describe_measure(mu), std::nullopt}};
}

SemigroupElement semigroup_element(const Representation& u, const ConvolutionSemigroupSpec& spec, double t,
                                   const SampleOptions& options) {
  if (!(t >= 0.0)) throw std::invalid_argument("semigroup_element: time must be >= 0");
  const DiscreteMeasure mu = semigroup_measure_at(spec, t, options);
  SemigroupElement out;
  out.op = randomly_generated_operator(u, mu);
  out.op.provenance.time = t;
  out.time = t;
  out.semigroup = spec.describe();
  out.exactness = mu.exactness();
  out.tail_bound = mu.tail_bound();
  out.atoms = mu.size();
  return out;
}

SemigroupElement dual_semigroup_element(const Representation& u, const ConvolutionSemigroupSpec& spec, double t,
                                        const SampleOptions& options) {
  if (!(t >= 0.0)) throw std::invalid_argument("dual_semigroup_element: time must be >= 0");
  const DiscreteMeasure mu = semigroup_measure_at(spec, t, options);
  SemigroupElement out;
  out.op = dual_operator(u, mu);
  out.op.provenance.time = t;
  out.time = t;
  out.semigroup = spec.describe();
  out.exactness = mu.exactness();
  out.tail_bound = mu.tail_bound();
  out.atoms = mu.size();
  return out;
}

double statistical_bound(double operator_bound, std::size_t n_t, std::size_t n_s, std::size_t n_ts) {
  auto term = [](std::size_t n) { return n ? 1.0 / std::sqrt(static_cast<double>(n)) : 0.0; };
  return 3.0 * operator_bound * operator_bound * (term(n_t) + term(n_s) + term(n_ts));
}

double brownian_discretization_allowance(const BrownianMotion& b, double t, double s) {
  const double c2 = b.diffusion * b.diffusion;
  return c2 * (t * t + s * s + (t + s) * (t + s)) / b.steps;
}

Report check_semigroup_property(const Representation& u, const ConvolutionSemigroupSpec& spec,
                                std::span<const TimePair> pairs, const SampleOptions& options, double tol) {
  Report report;
  report.check = "semigroup_property";
  report.identity = "S_t S_s = S_{t+s}";
  report.inputs["representation"] = u.id();
  report.inputs["semigroup"] = spec.describe();
  report.inputs["tol"] = tol;
  if (spec.is_empirical()) {
    report.inputs["budget"] = options.budget ? options.budget : spec.default_budget();
    report.inputs["seed"] = options.seed;
    report.notes.push_back("statistical bound 3*B^2*sum(1/sqrt(N)) is a 3-sigma heuristic, not a certified bound");
  }
  const double b = u.bound();
  nlohmann::json rows = nlohmann::json::array();
  report.pass = true;
  double worst = -1.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [t, s] = pairs[i];
    if (t < 0.0 || s < 0.0) throw std::invalid_argument("check_semigroup_property: times must be >= 0");
    const std::uint64_t base = options.stream + 3 * static_cast<std::uint64_t>(i);
    const DiscreteMeasure mt = semigroup_measure_at(spec, t, with_stream(options, base));
    const DiscreteMeasure ms = semigroup_measure_at(spec, s, with_stream(options, base + 1));
    const DiscreteMeasure mts = semigroup_measure_at(spec, t + s, with_stream(options, base + 2));
    const Matrix st = randomly_generated_operator(u, mt).matrix;
    const Matrix ss = randomly_generated_operator(u, ms).matrix;
    const Matrix sts = randomly_generated_operator(u, mts).matrix;
    const double residual = spectral_norm(st * ss - sts);
    double bound = tol + std::max(b, b * b) * (mt.tail_bound() + ms.tail_bound() + mts.tail_bound());
    nlohmann::json row = {{"t", t}, {"s", s}, {"residual", residual}};
    if (spec.is_empirical()) {
      const double stat = 3.0 * b * b * (empirical_term(mt) + empirical_term(ms) + empirical_term(mts));
      double allowance = 0.0;
      if (const auto* bm = std::get_if<BrownianMotion>(&spec.kind())) {
        allowance = brownian_discretization_allowance(*bm, t, s);
      }
      bound = stat + allowance;
      row["statistical_bound"] = stat;
      row["discretization_allowance"] = allowance;
    }
    const bool ok = residual <= bound;
    row["bound"] = bound;
    row["pass"] = ok;
    rows.push_back(row);
    report.pass = report.pass && ok;
    const double ratio = bound > 0.0 ? residual / bound : residual;
    if (ratio > worst) {
      worst = ratio;
      report.residual = residual;
      report.bound = bound;
    }
  }
  report.details["pairs"] = rows;
  return report;
}

Report check_continuity_at_zero(const Representation& u, const ConvolutionSemigroupSpec& spec,
                                std::span<const double> times, const SampleOptions& options, double final_tol) {
  Report report;
  report.check = "continuity_at_zero";
  report.identity = "lim_{t->0} S_t = I";
  report.inputs["representation"] = u.id();
  report.inputs["semigroup"] = spec.describe();
  report.inputs["times"] = std::vector<double>(times.begin(), times.end());
  report.inputs["final_tol"] = final_tol;
  report.bound = final_tol;
  const auto* cp = std::get_if<CompoundPoisson>(&spec.kind());
  const double b = u.bound();
  nlohmann::json rows = nlohmann::json::array();
  bool monotone = true;
  bool bound_ok = true;
  double previous = std::numeric_limits<double>::infinity();
  double previous_t = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t < 0.0) throw std::invalid_argument("check_continuity_at_zero: times must be >= 0");
    if (!(t < previous_t)) throw std::invalid_argument("check_continuity_at_zero: times must decrease");
    previous_t = t;
    const SemigroupElement st = semigroup_element(u, spec, t, with_stream(options, options.stream + i));
    const double dist = spectral_norm(st.op.matrix - Matrix::Identity(u.dim(), u.dim()));
    nlohmann::json row = {{"t", t}, {"distance_to_identity", dist}};
    double slack_allow = 0.0;
    if (st.exactness == Exactness::empirical) slack_allow = 3.0 * b / std::sqrt(static_cast<double>(st.atoms));
    if (dist > previous + slack_allow) monotone = false;
    if (cp) {
      const double poisson_bound = (1.0 + b) * -std::expm1(-cp->rate * t);
      const double slack = poisson_bound - dist;
      row["poisson_bound"] = poisson_bound;
      row["slack"] = slack;
      if (slack < -1e-12) bound_ok = false;
    }
    rows.push_back(row);
    previous = dist;
    last = dist;
  }
  report.residual = last;
  report.pass = monotone && bound_ok && last <= final_tol;
  report.details["times"] = rows;
  report.details["monotone"] = monotone;
  if (cp) report.details["poisson_bound_holds"] = bound_ok;
  return report;
}

BoundedOperator estimate_generator(const Representation& u, const ConvolutionSemigroupSpec& spec, double t0,
                                   const SampleOptions& options, bool richardson) {
  if (!(t0 > 0.0)) throw std::invalid_argument("estimate_generator: t0 must be > 0");
  const Matrix id = Matrix::Identity(u.dim(), u.dim());
  const SemigroupElement st = semigroup_element(u, spec, t0, options);
  const Matrix full = st.op.matrix - id;
  Matrix a;
  double truncation = u.bound() * st.tail_bound / t0;
  if (richardson) {
    const SemigroupElement half = semigroup_element(u, spec, 0.5 * t0, with_stream(options, options.stream + 1));
    a = (4.0 * (half.op.matrix - id) - full) / t0;
    truncation += 4.0 * u.bound() * half.tail_bound / t0;
  } else {
    a = full / t0;
  }
  std::ostringstream os;
  os << (richardson ? "richardson" : "forward") << " difference at t0=" << t0 << " of " << spec.describe();
  return {std::move(a), {u.id(), os.str(), t0}, truncation};
}

Matrix compound_poisson_generator(const Representation& u, const CompoundPoisson& cp) {
  const Matrix r = randomly_generated_operator(u, cp.jumps).matrix;
  return cp.rate * (r - Matrix::Identity(u.dim(), u.dim()));
}

RealVector barycenter(std::span<const WeightedPoint> atoms) {
  if (atoms.empty()) return {};
  RealVector c = RealVector::Zero(atoms.front().point.size());
  for (const auto& a : atoms) c += a.weight * a.point;
  return c;
}

std::vector<WeightedPoint> caratheodory_reduce(std::vector<WeightedPoint> atoms) {
  if (atoms.empty()) throw std::invalid_argument("caratheodory_reduce: empty atom list");
  const Eigen::Index dim = atoms.front().point.size();
  std::vector<double> weights;
  for (const auto& a : atoms) {
    if (a.point.size() != dim) throw std::invalid_argument("caratheodory_reduce: points of different dimensions");
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("caratheodory_reduce: weights must be non-negative");
    }
    weights.push_back(a.weight);
  }
  if (std::abs(compensated_sum(weights) - 1.0) > 1e-12) {
    throw std::invalid_argument("caratheodory_reduce: weights do not sum to 1");
  }
  const std::size_t limit = static_cast<std::size_t>(dim) + 1;
  if (atoms.size() <= limit) return atoms;
  std::erase_if(atoms, [](const WeightedPoint& a) { return a.weight == 0.0; });

  while (atoms.size() > limit) {
    // Any D + 2 points are affinely dependent: find c ≠ 0 with Σ c_i x_i = 0, Σ c_i = 0.
    const auto m = static_cast<Eigen::Index>(limit + 1);
    RealMatrix a(dim + 1, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      a.col(j).head(dim) = atoms[static_cast<std::size_t>(j)].point;
      a(dim, j) = 1.0;
    }
    Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
    RealVector c = svd.matrixV().col(m - 1);
    if (c.maxCoeff() <= 0.0) c = -c;

    // Shift weights along -c until the first weight reaches zero. Ratios equal
    // up to rounding count as ties, and ties drop the lowest index.
    double alpha = std::numeric_limits<double>::infinity();
    Eigen::Index drop = -1;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (c(j) > 0.0) {
        const double ratio = atoms[static_cast<std::size_t>(j)].weight / c(j);
        if (ratio < alpha * (1.0 - 1e-12)) {
          alpha = ratio;
          drop = j;
        }
      }
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      auto& w = atoms[static_cast<std::size_t>(j)].weight;
      w = j == drop ? 0.0 : std::max(0.0, w - alpha * c(j));
    }
    atoms.erase(atoms.begin() + drop);
  }
  return atoms;
}

RealVector flatten_complex(const Matrix& m) {
  RealVector out(2 * m.size());
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    out(k) = m.data()[k].real();
    out(m.size() + k) = m.data()[k].imag();
  }
  return out;
}

UnitaryMixture random_unitary_decomposition(const Representation& u, const DiscreteMeasure& mu) {
  require_same_group(u, mu, "random_unitary_decomposition");
  if (!u.is_unitary()) throw std::invalid_argument("random_unitary_decomposition: " + u.id() + " is not unitary");
  std::vector<WeightedPoint> atoms;
  std::vector<Matrix> unitaries;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    unitaries.push_back(u(mu.atoms()[i].element));
    atoms.push_back({flatten_complex(unitaries.back()), mu.atoms()[i].weight, i});
  }
  UnitaryMixture out;
  for (const auto& a : caratheodory_reduce(std::move(atoms))) {
    out.unitaries.push_back(unitaries[a.source]);
    out.probabilities.push_back(a.weight);
  }
  return out;
}

}  // namespace rgs
