#pragma once

#include "tensorlift/fields.hpp"

namespace tensorlift {

/// Describes a mixed lift: `complete_count` applications of the complete lift
/// combined with `vertical_count` vertical inclusions. A base field lifted
/// with spec (a, b) lands on the order-(a+b) chart.
struct LiftSpec {
  int complete_count = 0;
  int vertical_count = 0;

  LiftSpec(int a, int b) : complete_count(a), vertical_count(b) {
    if (a < 0 || b < 0) throw Error("lift counts must be >= 0");
  }
  static LiftSpec complete(int k) { return LiftSpec(k, 0); }
  static LiftSpec vertical(int k) { return LiftSpec(0, k); }
  int target_order() const { return complete_count + vertical_count; }
};

/// f^{c^a v^b}: the iterated total derivative T^a(f) regarded on the
/// order-(a+b) chart. The vertical inclusion leaves the expression unchanged,
/// so the pure vertical lift is f itself on the bigger chart and the pure
/// complete lift of order k is T^k(f).
ScalarField lift_scalar(const ScalarField& f, LiftSpec spec);

/// X^{c^a v^b}: components T^s(X^i) placed at level s+b for s = 0..a, scaled
/// by binomial(s+b, b)/binomial(a+b, b), zero elsewhere. Pure lifts carry no
/// scaling: X^{v^k} places X^i at level k, X^{c^k} places T^s(X^i) at every
/// level s. The mixed scaling is forced by the module law
/// (fX)^{c^r} = sum_j C(r,j) f^{c^{r-j}v^j} X^{c^j v^{r-j}}.
VectorField lift_vector(const VectorField& x, LiftSpec spec);

/// alpha^{c^a v^b}: components C(a,s) T^{a-s}(alpha_i) at level s for
/// s = 0..a, zero above. Pure vertical keeps alpha_i at level 0; the binomial
/// weights make <alpha^{c^k}, X^{c^k}> = (alpha(X))^{c^k}.
OneForm lift_oneform(const OneForm& alpha, LiftSpec spec);

/// F^{c^k}: F^{c^k}(d/dx^(b)j) = sum_{s=b..k} C(s,b) T^{s-b}(F^i_j) d/dx^(s)i.
/// Satisfies F^{c^k}(X^{c^k}) = (FX)^{c^k} for every base X, and I^{c^k} = I.
Endo11 lift_endo_complete(const Endo11& f, int k);

/// F^{v^k}: maps d/dx^(0)j to F^i_j d/dx^(k)i and kills every frame field of
/// level >= 1. Satisfies F^{v^k}(X^{c^k}) = (FX)^{v^k}.
Endo11 lift_endo_vertical(const Endo11& f, int k);

/// S^{c^k} for a (1,2)-tensor: component at (s,i) on the frame pair
/// ((q,j),(u,l)) is C(s,q) C(s-q,u) T^{s-q-u}(S^i_jl) for q+u <= s, matching
/// S^{c^k}(X^{c^k}, Y^{c^k}) = (S(X,Y))^{c^k}.
Tensor12 lift_tensor12_complete(const Tensor12& s, int k);

}  // namespace tensorlift
