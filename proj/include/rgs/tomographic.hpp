#pragma once

#include "rgs/measures.hpp"
#include "rgs/report.hpp"
#include "rgs/representations.hpp"

#include <span>
#include <vector>

namespace rgs {

/// Function on Z_d × Z_d, entry p·d + q holding f(p, q).
struct Tomogram {
  int dim = 0;
  Vector values;

  Complex operator()(int p, int q) const { return values(p * dim + q); }
  double norm() const { return values.norm(); }
  /// max_{p,q} |conj f(p,q) − ω^{−pq} f(−p,−q)|; zero for tomograms of Hermitian operators.
  double hermitian_phase_defect() const;
};

/// S ↦ (tr(W(p,q)* S)/√d)_{p,q} for the finite Weyl system on ℂ^d.
class TomographicMap {
 public:
  explicit TomographicMap(int d);

  int dim() const { return d_; }
  const Representation& weyl() const { return weyl_; }
  const Matrix& weyl_operator(int p, int q) const { return ops_[static_cast<std::size_t>(p * d_ + q)]; }

  Tomogram apply(const Matrix& s) const;
  Matrix inverse(const Tomogram& f) const;

 private:
  int d_;
  Representation weyl_;
  std::vector<Matrix> ops_;
};

Tomogram wigner_map(int d, const Matrix& s);
/// (1/√d) Σ f(p,q) W(p,q).
Matrix inverse_wigner(int d, const Tomogram& f);

/// Σ_i w_i W̃(g_i) f with W̃ the two-sided representation of the Weyl multiplier.
Tomogram tomographic_semigroup_apply(int d, const DiscreteMeasure& mu, const Tomogram& f);
/// Matrix of f ↦ Σ_i w_i W̃(g_i) f on ℂ^{d²}.
Matrix tomographic_operator(int d, const DiscreteMeasure& mu);

/// max over samples of ‖𝒲(T^HS S) − Σ(𝒲 S)‖. On failure the report carries the
/// per-(p,q) ratio table of the worst sample and whether it is a global phase.
Report check_intertwining(int d, const DiscreteMeasure& mu, std::span<const Matrix> samples, double tol = 1e-10);

/// check_intertwining for δ_g at every g ∈ Z_d × Z_d over the matrix-unit basis.
Report check_intertwining_exhaustive(int d, double tol = 1e-10);

}  // namespace rgs
