#pragma once

#include "rgs/groups.hpp"
#include "rgs/report.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rgs {

/// Ordered from weakest to strongest so that min() gives the exactness of a combination.
enum class Exactness { empirical = 0, truncated = 1, exact = 2 };

std::string to_string(Exactness e);

struct Atom {
  GroupElement element;
  double weight = 0.0;
};

/// Finitely supported probability measure on a group.
///
/// Weights are non-negative and sum to one within 1e-12; a truncated measure may
/// miss at most `tail_bound` of mass, which is recorded rather than renormalized.
/// Atoms on finite groups are merged by element and ordered by flat index.
class DiscreteMeasure {
 public:
  DiscreteMeasure(Group group, std::vector<Atom> atoms, Exactness exactness = Exactness::exact,
                  double tail_bound = 0.0);

  const Group& group() const { return group_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  Exactness exactness() const { return exactness_; }
  double tail_bound() const { return tail_bound_; }
  double total_mass() const;

  /// Finite groups: weight of every element by flat index.
  std::vector<double> dense_weights() const;

 private:
  Group group_;
  std::vector<Atom> atoms_;
  Exactness exactness_;
  double tail_bound_;
};

inline constexpr double kMassTolerance = 1e-12;

DiscreteMeasure make_dirac(const Group& group, const GroupElement& g);
/// Normalized counting measure on a finite group.
DiscreteMeasure make_uniform(const Group& group);
/// Measure from dense per-element weights on a finite group.
DiscreteMeasure make_finite(const Group& group, std::span<const double> weights,
                            Exactness exactness = Exactness::exact, double tail_bound = 0.0);

/// μ ∗ ν, with ∫ f d(μ∗ν) = ∫∫ f(gh) dμ(g) dν(h).
DiscreteMeasure convolve(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// μ̌(A) = μ(A⁻¹).
DiscreteMeasure reversed(const DiscreteMeasure& mu);

/// Merges atoms lying within `tol` of each other (finite groups are always merged exactly).
DiscreteMeasure merged(const DiscreteMeasure& mu, double tol = 1e-10);

/// Total-variation distance; atoms are matched up to `element_tol` on non-finite groups.
double total_variation(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double element_tol = 1e-10);

// Convolution semigroup families t ↦ μ_t.

struct DiracFlow {
  std::vector<double> tangent;
};

struct CompoundPoisson {
  double rate = 1.0;
  DiscreteMeasure jumps;
};

/// Heat kernel on 𝕋 (wrapped normal) or ℝⁿ: variance diffusion·t per coordinate.
struct GaussianDiffusion {
  double diffusion = 1.0;
};

/// Brownian motion on SU(n) approximated by `steps` left-multiplied exponentials of
/// Lie-algebra Gaussians with variance diffusion·t/steps per coordinate.
struct BrownianMotion {
  double diffusion = 1.0;
  int steps = 32;
};

using SemigroupKind = std::variant<DiracFlow, CompoundPoisson, GaussianDiffusion, BrownianMotion>;

class ConvolutionSemigroupSpec {
 public:
  ConvolutionSemigroupSpec(Group group, SemigroupKind kind, std::size_t default_budget = 10000);

  const Group& group() const { return group_; }
  const SemigroupKind& kind() const { return kind_; }
  std::size_t default_budget() const { return default_budget_; }
  bool is_empirical() const;
  std::string kind_name() const;
  std::string describe() const;

 private:
  Group group_;
  SemigroupKind kind_;
  std::size_t default_budget_;
};

/// Sampling controls for empirical kinds. budget == 0 selects the semigroup default_budget().
struct SampleOptions {
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  unsigned threads = 1;
};

inline constexpr std::size_t kSampleChunk = 4096;

/// Poisson(mean) probabilities 0..max_jumps with the remaining tail mass.
struct PoissonTruncation {
  std::vector<double> probabilities;
  double tail = 0.0;
};

PoissonTruncation truncate_poisson(double mean, double tail_tolerance = 1e-12);

inline constexpr double kPoissonTail = 1e-12;

DiscreteMeasure semigroup_measure_at(const ConvolutionSemigroupSpec& spec, double t,
                                     const SampleOptions& options = {});

/// Checks μ_t ∗ μ_s = μ_{t+s} in total variation for exact/truncated kinds.
/// Empirical kinds are reported as deferred to the operator-level check.
Report check_convolution_semigroup(const ConvolutionSemigroupSpec& spec,
                                   std::span<const std::pair<double, double>> pairs,
                                   const SampleOptions& options = {}, double tol = 1e-10);

}  // namespace rgs
