#pragma once

#include "rgs/measures.hpp"
#include "rgs/randgen.hpp"
#include "rgs/report.hpp"
#include "rgs/representations.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rgs {

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho);

  const Matrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

 private:
  Matrix rho_;
};

enum class Picture { schrodinger, heisenberg, hilbert_schmidt };

std::string to_string(Picture p);

/// Linear map on d×d matrices stored as a d²×d² matrix on column-major vec.
struct Superoperator {
  Matrix matrix;
  Picture picture = Picture::schrodinger;
  Eigen::Index dim = 0;

  Matrix apply(const Matrix& x) const;
};

Superoperator identity_superoperator(Eigen::Index dim, Picture picture = Picture::schrodinger);

/// ρ ↦ Σ_i w_i U(g_i) ρ U(g_i)*.
Superoperator twirl_superoperator(const Representation& u, const DiscreteMeasure& mu);
/// B ↦ Σ_i w_i U(g_i)* B U(g_i), i.e. Σ_i w_i U(g_i)ᵀ ⊗ U(g_i)*.
Superoperator dual_twirl_superoperator(const Representation& u, const DiscreteMeasure& mu);
/// Same matrix as twirl_superoperator, acting on Hilbert–Schmidt space.
Superoperator hs_twirl_superoperator(const Representation& u, const DiscreteMeasure& mu);

/// Dual under the bilinear pairing (B, A) ↦ tr(BA): T Φᵀ T with T the transpose map.
Superoperator bilinear_dual(const Superoperator& phi);
/// Dual under ⟨B, A⟩ = tr(B* A): the conjugate transpose Φ†.
Superoperator hs_dual(const Superoperator& phi);

/// Σ_ij Φ(E_ij) ⊗ E_ij. Requires the Schrödinger picture.
Matrix choi_matrix(const Superoperator& phi);
/// Ascending eigenvalues of the Hermitian part of the Choi matrix.
RealVector choi_eigenvalues(const Superoperator& phi);

/// ‖tr∘Φ − tr‖ as a row functional.
double trace_preservation_residual(const Superoperator& phi);
/// ‖Φ(I) − I‖_F.
double unitality_residual(const Superoperator& phi);

/// Matrix of X ↦ −i[H, X].
Matrix commutator_superoperator(const Matrix& h);

struct QdsOptions {
  SampleOptions sampling;
  double tp_tol = 1e-10;
  double choi_floor = -1e-10;
  double unital_tol = 1e-10;
  double semigroup_tol = 1e-10;
};

/// For each t: trace preservation, Choi positivity, unitality of the dual, and
/// the semigroup law of the adjoint representation over all pairs of times.
Report verify_qds(const Representation& u, const ConvolutionSemigroupSpec& spec, std::span<const double> times,
                  const QdsOptions& options = {});

struct LindbladOptions {
  std::optional<Matrix> expected;
  double expected_tol = 1e-3;
  double tol = 1e-10;
  /// Known error in the estimate (e.g. Poisson truncation divided by t0).
  double allowance = 0.0;
  int samples = 20;
  std::uint64_t seed = 0;
};

/// Trace annihilation, Hermiticity preservation on random inputs, and optionally
/// agreement with an expected generator.
Report lindblad_residual(const Superoperator& l, const LindbladOptions& options = {});

}  // namespace rgs
