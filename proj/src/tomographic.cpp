#include "rgs/tomographic.hpp"

#include "rgs/randgen.hpp"
#include "rgs/twirling.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace rgs {

double Tomogram::hermitian_phase_defect() const {
  const int d = dim;
  double worst = 0.0;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const Complex phase = std::polar(1.0, -kTwoPi * ((p * q) % d) / d);
      const Complex mirrored = (*this)((d - p) % d, (d - q) % d);
      worst = std::max(worst, std::abs(std::conj((*this)(p, q)) - phase * mirrored));
    }
  }
  return worst;
}

TomographicMap::TomographicMap(int d) : d_(d), weyl_(weyl_system(d)) {
  const Group& g = weyl_.group();
  for (std::size_t i = 0; i < g.order(); ++i) ops_.push_back(weyl_(g.element_at(i)));
}

Tomogram TomographicMap::apply(const Matrix& s) const {
  if (s.rows() != d_ || s.cols() != d_) throw std::invalid_argument("wigner_map: matrix is not d×d");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d_));
  Tomogram f{d_, Vector(d_ * d_)};
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    f.values(static_cast<Eigen::Index>(i)) = scale * (ops_[i].adjoint() * s).trace();
  }
  return f;
}

Matrix TomographicMap::inverse(const Tomogram& f) const {
  if (f.dim != d_ || f.values.size() != d_ * d_) throw std::invalid_argument("inverse_wigner: length is not d²");
  Matrix s = Matrix::Zero(d_, d_);
  for (std::size_t i = 0; i < ops_.size(); ++i) s += f.values(static_cast<Eigen::Index>(i)) * ops_[i];
  return s / std::sqrt(static_cast<double>(d_));
}

Tomogram wigner_map(int d, const Matrix& s) { return TomographicMap(d).apply(s); }

Matrix inverse_wigner(int d, const Tomogram& f) { return TomographicMap(d).inverse(f); }

Matrix tomographic_operator(int d, const DiscreteMeasure& mu) {
  const Group g = Group::cyclic_product({d, d});
  if (!(mu.group() == g)) throw std::domain_error("tomographic_operator: measure is not on " + g.name());
  return randomly_generated_operator(two_sided_rep(g, Multiplier::finite_weyl(d)), mu).matrix;
}

Tomogram tomographic_semigroup_apply(int d, const DiscreteMeasure& mu, const Tomogram& f) {
  if (f.dim != d || f.values.size() != d * d) throw std::invalid_argument("tomographic_semigroup_apply: bad tomogram");
  return {d, tomographic_operator(d, mu) * f.values};
}

namespace {

nlohmann::json ratio_table(const Vector& lhs, const Vector& rhs, int d, bool& global) {
  nlohmann::json rows = nlohmann::json::array();
  std::optional<Complex> first;
  global = true;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const Complex l = lhs(p * d + q);
      const Complex r = rhs(p * d + q);
      nlohmann::json row = {{"p", p}, {"q", q}};
      if (std::abs(r) > 1e-12 && std::abs(l) > 1e-12) {
        const Complex ratio = l / r;
        row["ratio"] = {ratio.real(), ratio.imag()};
        if (!first) first = ratio;
        if (std::abs(ratio - *first) > 1e-9) global = false;
      } else {
        row["ratio"] = nullptr;
        if (std::abs(l - r) > 1e-12) global = false;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace

Report check_intertwining(int d, const DiscreteMeasure& mu, std::span<const Matrix> samples, double tol) {
  const TomographicMap w(d);
  const Superoperator hs = hs_twirl_superoperator(w.weyl(), mu);
  const Matrix sigma = tomographic_operator(d, mu);
  Report report;
  report.check = "intertwining";
  report.identity = "W T^HS = Sigma W";
  report.inputs["dim"] = d;
  report.inputs["measure_atoms"] = mu.size();
  report.inputs["samples"] = samples.size();
  report.bound = tol;
  std::size_t worst = 0;
  Vector worst_lhs, worst_rhs;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector lhs = w.apply(hs.apply(samples[i])).values;
    const Vector rhs = sigma * w.apply(samples[i]).values;
    const double r = (lhs - rhs).norm();
    if (i == 0 || r > report.residual) {
      report.residual = r;
      worst = i;
      worst_lhs = lhs;
      worst_rhs = rhs;
    }
  }
  report.pass = report.residual <= tol;
  report.details["worst_sample"] = worst;
  if (!report.pass && worst_lhs.size() > 0) {
    bool global = false;
    report.details["phase_ratio_table"] = ratio_table(worst_lhs, worst_rhs, d, global);
    report.details["global_phase"] = global;
    report.notes.push_back(global ? "discrepancy is a single global phase" : "discrepancy is not a global phase");
  }
  return report;
}

Report check_intertwining_exhaustive(int d, double tol) {
  const Group g = Group::cyclic_product({d, d});
  std::vector<Matrix> basis;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      basis.push_back(e);
    }
  }
  std::vector<Report> parts;
  for (const auto& x : g.elements()) {
    Report r = check_intertwining(d, make_dirac(g, x), basis, tol);
    r.inputs["element"] = x.to_string();
    parts.push_back(std::move(r));
  }
  Report report = combine_reports("intertwining_exhaustive", "W T^HS = Sigma W for every point mass", parts);
  report.inputs["dim"] = d;
  return report;
}

}  // namespace rgs
