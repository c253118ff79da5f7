#pragma once

#include "rgs/groups.hpp"
#include "rgs/report.hpp"

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rgs {

enum class Variance { representation, antirepresentation };

std::string to_string(Variance v);

/// Circle-valued two-cocycle m with U(gh) = m(g,h) U(g) U(h)
/// (U(gh) = m(g,h) U(h) U(g) for an antirepresentation).
class Multiplier {
 public:
  using Function = std::function<Complex(const GroupElement&, const GroupElement&)>;

  static Multiplier trivial();
  /// m((p,q),(p',q')) = ω^{-q p'} on Z_d × Z_d, ω = e^{2πi/d}.
  static Multiplier finite_weyl(int d);
  /// |G|×|G| table indexed by flat element indices of a finite group.
  static Multiplier table(const Group& group, Matrix values);
  static Multiplier custom(std::string name, Function fn);

  Complex operator()(const GroupElement& g, const GroupElement& h) const;
  bool is_trivial() const { return trivial_; }
  const std::string& name() const { return name_; }

 private:
  Multiplier(std::string name, Function fn, bool trivial) : name_(std::move(name)), fn_(std::move(fn)), trivial_(trivial) {}

  std::string name_;
  Function fn_;
  bool trivial_;
};

/// Uniformly bounded (projective) representation or antirepresentation g ↦ T(g),
/// evaluated as complex matrices on a finite-dimensional carrier.
class Representation {
 public:
  using Evaluator = std::function<Matrix(const GroupElement&)>;

  Representation(std::string id, Group group, Eigen::Index dim, Variance variance, Multiplier multiplier,
                 Evaluator evaluator, double bound, bool unitary);

  Matrix operator()(const GroupElement& g) const { return evaluator_(g); }

  const std::string& id() const { return id_; }
  const Group& group() const { return group_; }
  Eigen::Index dim() const { return dim_; }
  Variance variance() const { return variance_; }
  const Multiplier& multiplier() const { return multiplier_; }
  /// sup_g ‖T(g)‖: exact for unitary families, a sampled estimate otherwise.
  double bound() const { return bound_; }
  bool is_unitary() const { return unitary_; }

 private:
  std::string id_;
  Group group_;
  Eigen::Index dim_;
  Variance variance_;
  Multiplier multiplier_;
  Evaluator evaluator_;
  double bound_;
  bool unitary_;
};

/// 1×1 unitary character g ↦ e^{i⟨k, g⟩} of a finite cyclic product or 𝕋.
Representation character_rep(const Group& group, std::vector<int> frequencies);

/// Identity map on SU(n).
Representation defining_su(int n);

/// W(p,q) = X^p Z^q on ℂ^d with X|j⟩ = |j+1⟩, Z|j⟩ = ω^j|j⟩; projective
/// representation of Z_d × Z_d with the finite_weyl multiplier.
Representation weyl_system(int d);

/// Θ(g) S = U(g) S U(g)* on vectorized d×d matrices. A genuine representation with
/// trivial multiplier even when U is projective.
Representation adjoint_rep(const Representation& u);

/// (W̃(g) f)(h) = Δ(g)^{1/2} m̃(g,h) f(g⁻¹hg) on functions over a finite group,
/// with m̃(g,h) = m(g, g⁻¹h)* m(g⁻¹h, g).
Representation two_sided_rep(const Group& group, const Multiplier& m);
Complex two_sided_phase(const Group& group, const Multiplier& m, const GroupElement& g, const GroupElement& h);

/// (R(h) f)(g) = f(gh) on functions over a finite group.
Representation right_regular_rep(const Group& group);

/// g ↦ U(g⁻¹).
Representation antirep_from_inverse(const Representation& u);
/// g ↦ U(g)*.
Representation antirep_from_adjoint(const Representation& u);

/// Wraps a representation with a different multiplier, for negative controls.
Representation with_multiplier(const Representation& u, Multiplier m, std::string id);

using ElementPair = std::pair<GroupElement, GroupElement>;

/// All |G|² ordered pairs of a finite group.
std::vector<ElementPair> all_pairs(const Group& group);

/// max over pairs of ‖U(gh) − m(g,h) U(g) U(h)‖_F (factors swapped for antirepresentations).
Report verify_projective_property(const Representation& u, std::span<const ElementPair> pairs, double tol = 1e-10);

/// max ‖T(g)‖ over the given elements.
double sampled_bound(const Representation& u, std::span<const GroupElement> elements);

}  // namespace rgs
