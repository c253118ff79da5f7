#pragma once

#include "rgs/measures.hpp"
#include "rgs/report.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>

namespace rgs {

/// M[g, g'] = μ(g⁻¹g'), so that (M f)(g) = Σ_h μ(h) f(gh). Finite groups only.
RealMatrix transition_matrix(const DiscreteMeasure& mu);

/// Max absolute row sum.
double sup_operator_norm(const RealMatrix& m);

/// Semigroup law ‖M_t M_s − M_{t+s}‖_∞ ≤ tol + tails, sup-norm contraction and
/// positivity on random functions, and preservation of constants.
Report prob_semigroup_check(const ConvolutionSemigroupSpec& spec, std::span<const std::pair<double, double>> pairs,
                            double tol = 1e-10, std::uint64_t seed = 0, int samples = 20);

/// Shows that f ↦ ∫ f(·h) dμ(h) is the randomly generated operator of the
/// right-regular representation R(h)f = f(·h): checks that R is a representation,
/// that M equals Σ μ(h) R(h), and that the adjoint acts on signed measures as Mᵀ,
/// sending δ_g to Σ_h μ(h) δ_{gh}.
Report identify_as_randomly_generated(const DiscreteMeasure& mu, int pairing_samples = 100, std::uint64_t seed = 0,
                                      double tol = 1e-12);
Report identify_as_randomly_generated(const ConvolutionSemigroupSpec& spec, double t, int pairing_samples = 100,
                                      std::uint64_t seed = 0, double tol = 1e-12);

/// CSV with a header row of element labels; first column labels the source element.
std::string transition_matrix_csv(const Group& group, const RealMatrix& m);

}  // namespace rgs
