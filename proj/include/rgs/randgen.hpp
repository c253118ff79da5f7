#pragma once

#include "rgs/measures.hpp"
#include "rgs/report.hpp"
#include "rgs/representations.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rgs {

struct Provenance {
  std::string representation;
  std::string measure;
  std::optional<double> time;
};

/// A bounded operator on the carrier space, with a record of how it was built.
struct BoundedOperator {
  Matrix matrix;
  Provenance provenance;
  /// Upper bound on the norm error from truncated (not renormalized) measures.
  double truncation_error = 0.0;

  double norm() const { return spectral_norm(matrix); }
};

struct SemigroupElement {
  BoundedOperator op;
  double time = 0.0;
  std::string semigroup;
  Exactness exactness = Exactness::exact;
  double tail_bound = 0.0;
  std::size_t atoms = 0;
};

/// R = ∫ T(g) dμ(g), realized as Σ_i w_i T(g_i) in atom order.
BoundedOperator randomly_generated_operator(const Representation& u, const DiscreteMeasure& mu);

/// R* = ∫ T(g)* dμ(g); the adjoint of randomly_generated_operator(u, mu).
BoundedOperator dual_operator(const Representation& u, const DiscreteMeasure& mu);

SemigroupElement semigroup_element(const Representation& u, const ConvolutionSemigroupSpec& spec, double t,
                                   const SampleOptions& options = {});

/// Dual semigroup element S_t* = ∫ T(g)* dμ_t(g).
SemigroupElement dual_semigroup_element(const Representation& u, const ConvolutionSemigroupSpec& spec, double t,
                                        const SampleOptions& options = {});

using TimePair = std::pair<double, double>;

/// Per pair ‖S_t S_s − S_{t+s}‖ (spectral norm). Exact kinds pass at tol plus the
/// recorded tail bounds; empirical kinds pass at the statistical bound
/// 3·B²·(1/√N_t + 1/√N_s + 1/√N_{t+s}) plus a discretization allowance.
Report check_semigroup_property(const Representation& u, const ConvolutionSemigroupSpec& spec,
                                std::span<const TimePair> pairs, const SampleOptions& options = {},
                                double tol = 1e-10);

/// Statistical bound used for empirical kinds.
double statistical_bound(double operator_bound, std::size_t n_t, std::size_t n_s, std::size_t n_ts);
/// Bias allowance of the K-step Brownian sampler: c²(t² + s² + (t+s)²)/K.
double brownian_discretization_allowance(const BrownianMotion& b, double t, double s);

/// ‖S_t − I‖ along a decreasing sequence of times. For compound Poisson kinds also
/// checks ‖S_t − I‖ ≤ (1 + B)(1 − e^{−λt}).
Report check_continuity_at_zero(const Representation& u, const ConvolutionSemigroupSpec& spec,
                                std::span<const double> times, const SampleOptions& options = {},
                                double final_tol = 0.05);

/// (S_{t0} − I)/t0, or the Richardson combination (4(S_{t0/2} − I) − (S_{t0} − I))/t0.
BoundedOperator estimate_generator(const Representation& u, const ConvolutionSemigroupSpec& spec, double t0,
                                   const SampleOptions& options = {}, bool richardson = false);

/// λ(∫ T(h) dν(h) − I), the generator of a compound Poisson semigroup.
Matrix compound_poisson_generator(const Representation& u, const CompoundPoisson& cp);

// Carathéodory reduction of finite convex combinations.

struct WeightedPoint {
  RealVector point;
  double weight = 0.0;
  std::size_t source = 0;  // index in the original list
};

/// Rewrites a barycenter of m points of ℝ^D using at most D + 1 of them.
/// Output atoms are a subset of the input; ties in the elimination step drop the
/// lowest index.
std::vector<WeightedPoint> caratheodory_reduce(std::vector<WeightedPoint> atoms);

RealVector barycenter(std::span<const WeightedPoint> atoms);

/// Real coordinates of a complex matrix (real parts then imaginary parts, column-major).
RealVector flatten_complex(const Matrix& m);

struct UnitaryMixture {
  std::vector<Matrix> unitaries;
  std::vector<double> probabilities;
};

/// Writes ∫ U(g) dμ(g) as Σ_k p_k U_k with at most 2d² + 1 terms.
UnitaryMixture random_unitary_decomposition(const Representation& u, const DiscreteMeasure& mu);

}  // namespace rgs
