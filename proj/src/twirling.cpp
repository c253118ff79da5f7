#include "rgs/twirling.hpp"

#include "rgs/rng.hpp"

#include <stdexcept>

namespace rgs {

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw std::invalid_argument("DensityMatrix: not square");
  if (hermiticity_defect(rho_) > 1e-12) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0)) > 1e-12) throw std::invalid_argument("DensityMatrix: trace is not 1");
  const Matrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

std::string to_string(Picture p) {
  switch (p) {
    case Picture::schrodinger:
      return "schrodinger";
    case Picture::heisenberg:
      return "heisenberg";
    case Picture::hilbert_schmidt:
      return "hilbert_schmidt";
  }
  return "unknown";
}

Matrix Superoperator::apply(const Matrix& x) const {
  if (x.rows() != dim || x.cols() != dim) throw std::invalid_argument("Superoperator::apply: dimension mismatch");
  return unvec(matrix * vec(x), dim);
}

Superoperator identity_superoperator(Eigen::Index dim, Picture picture) {
  return {Matrix::Identity(dim * dim, dim * dim), picture, dim};
}

namespace {

void require_unitary(const Representation& u, const char* op) {
  if (!u.is_unitary()) throw std::invalid_argument(std::string(op) + ": " + u.id() + " is not unitary");
}

}  // namespace

Superoperator twirl_superoperator(const Representation& u, const DiscreteMeasure& mu) {
  require_unitary(u, "twirl_superoperator");
  return {randomly_generated_operator(adjoint_rep(u), mu).matrix, Picture::schrodinger, u.dim()};
}

Superoperator dual_twirl_superoperator(const Representation& u, const DiscreteMeasure& mu) {
  require_unitary(u, "dual_twirl_superoperator");
  if (!(u.group() == mu.group())) throw std::domain_error("dual_twirl_superoperator: group mismatch");
  const Eigen::Index n = u.dim() * u.dim();
  Matrix r = Matrix::Zero(n, n);
  for (const auto& a : mu.atoms()) {
    const Matrix ug = u(a.element);
    r += a.weight * kron(ug.transpose(), ug.adjoint());
  }
  return {std::move(r), Picture::heisenberg, u.dim()};
}

Superoperator hs_twirl_superoperator(const Representation& u, const DiscreteMeasure& mu) {
  Superoperator s = twirl_superoperator(u, mu);
  s.picture = Picture::hilbert_schmidt;
  return s;
}

namespace {

Picture dual_picture(Picture p) {
  switch (p) {
    case Picture::schrodinger:
      return Picture::heisenberg;
    case Picture::heisenberg:
      return Picture::schrodinger;
    case Picture::hilbert_schmidt:
      return Picture::hilbert_schmidt;
  }
  return p;
}

}  // namespace

Superoperator bilinear_dual(const Superoperator& phi) {
  const Matrix t = transpose_superoperator(phi.dim);
  return {t * phi.matrix.transpose() * t, dual_picture(phi.picture), phi.dim};
}

Superoperator hs_dual(const Superoperator& phi) { return {phi.matrix.adjoint(), dual_picture(phi.picture), phi.dim}; }

Matrix choi_matrix(const Superoperator& phi) {
  if (phi.picture != Picture::schrodinger) {
    throw std::invalid_argument("choi_matrix: expected a schrodinger-picture map, got " + to_string(phi.picture));
  }
  const Eigen::Index d = phi.dim;
  Matrix c = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      c += kron(phi.apply(e), e);
    }
  }
  return c;
}

RealVector choi_eigenvalues(const Superoperator& phi) {
  const Matrix c = choi_matrix(phi);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

double trace_preservation_residual(const Superoperator& phi) {
  const Eigen::RowVectorXcd tr = trace_functional(phi.dim);
  return (tr * phi.matrix - tr).norm();
}

double unitality_residual(const Superoperator& phi) {
  const Matrix id = Matrix::Identity(phi.dim, phi.dim);
  return frobenius_norm(phi.apply(id) - id);
}

Matrix commutator_superoperator(const Matrix& h) {
  const Matrix id = Matrix::Identity(h.rows(), h.cols());
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

namespace {

Report threshold_report(std::string check, std::string identity, double residual, double bound) {
  Report r;
  r.check = std::move(check);
  r.identity = std::move(identity);
  r.residual = residual;
  r.bound = bound;
  r.pass = residual <= bound;
  return r;
}

}  // namespace

Report verify_qds(const Representation& u, const ConvolutionSemigroupSpec& spec, std::span<const double> times,
                  const QdsOptions& options) {
  require_unitary(u, "verify_qds");
  std::vector<Report> parts;
  nlohmann::json channels = nlohmann::json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    SampleOptions so = options.sampling;
    so.stream += 1000 + i;
    const DiscreteMeasure mu = semigroup_measure_at(spec, t, so);
    const Superoperator phi = twirl_superoperator(u, mu);
    const Superoperator dual = dual_twirl_superoperator(u, mu);
    const RealVector eig = choi_eigenvalues(phi);
    const double tp = trace_preservation_residual(phi);
    const double unital = unitality_residual(dual);
    const double min_eig = eig.minCoeff();
    parts.push_back(threshold_report("trace_preservation", "tr(T_t rho) = tr(rho)", tp, options.tp_tol));
    Report cp = threshold_report("complete_positivity", "Choi(T_t) >= 0", std::max(0.0, -min_eig), -options.choi_floor);
    cp.details["min_eigenvalue"] = min_eig;
    parts.push_back(cp);
    parts.push_back(threshold_report("dual_unitality", "T_t*(I) = I", unital, options.unital_tol));
    channels.push_back({{"t", t},
                        {"exactness", to_string(mu.exactness())},
                        {"atoms", mu.size()},
                        {"trace_preservation_residual", tp},
                        {"choi_eigenvalues", std::vector<double>(eig.data(), eig.data() + eig.size())},
                        {"dual_unitality_residual", unital}});
  }
  std::vector<TimePair> pairs;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = i; j < times.size(); ++j) pairs.emplace_back(times[i], times[j]);
  }
  parts.push_back(check_semigroup_property(adjoint_rep(u), spec, pairs, options.sampling, options.semigroup_tol));

  Report report = combine_reports("quantum_dynamical_semigroup", "T_t is CPTP, T_t* unital, T_t T_s = T_{t+s}", parts);
  report.inputs["representation"] = u.id();
  report.inputs["semigroup"] = spec.describe();
  report.inputs["times"] = std::vector<double>(times.begin(), times.end());
  report.details["channels"] = channels;
  report.details["choi_floor"] = options.choi_floor;
  return report;
}

Report lindblad_residual(const Superoperator& l, const LindbladOptions& options) {
  const Eigen::Index d = l.dim;
  std::vector<Report> parts;
  const Eigen::RowVectorXcd tr = trace_functional(d);
  // allowance bounds ‖L − L_exact‖; the trace functional has norm √d.
  const double trace_bound = options.tol + std::sqrt(static_cast<double>(d)) * options.allowance;
  parts.push_back(threshold_report("trace_annihilation", "tr(L(rho)) = 0", (tr * l.matrix).norm(), trace_bound));

  RngStream rng(options.seed, 0x1b1ad);
  double herm = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    Matrix x = random_ginibre(d, d, rng);
    x /= frobenius_norm(x);
    herm = std::max(herm, frobenius_norm(l.apply(x.adjoint()) - l.apply(x).adjoint()));
  }
  parts.push_back(threshold_report("hermiticity_preservation", "L(X*) = L(X)*", herm,
                                   options.tol + 2.0 * options.allowance));

  if (options.expected) {
    if (options.expected->rows() != l.matrix.rows() || options.expected->cols() != l.matrix.cols()) {
      throw std::invalid_argument("lindblad_residual: expected generator has the wrong shape");
    }
    parts.push_back(threshold_report("generator_match", "L = L_expected", spectral_norm(l.matrix - *options.expected),
                                     options.expected_tol));
  }
  Report report = combine_reports("lindblad_structure", "generator of a trace-preserving semigroup", parts);
  report.inputs["samples"] = options.samples;
  report.inputs["seed"] = options.seed;
  report.inputs["allowance"] = options.allowance;
  return report;
}

}  // namespace rgs
