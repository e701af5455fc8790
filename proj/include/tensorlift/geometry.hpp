#pragma once

#include "tensorlift/fields.hpp"

namespace tensorlift {

/// The canonical complex structure of an extended chart with complex pairing
/// m: d/dx^(r)a -> d/dx^(r)(a+m) and d/dx^(r)(a+m) -> -d/dx^(r)a for a <= m,
/// at every level r. Squares to -identity.
/// Throws Error("chart has no complex pairing") when the pairing is missing.
Endo11 canonical_structure(const ExtendedChart& chart);

/// Composition (FG)X = F(GX): matrix product in the frame basis.
Endo11 compose_endo(const Endo11& f, const Endo11& g);

/// Evaluation of a (1,1)-tensor on a vector field: (FX)^(r,a) =
/// sum F^(r,a)_(s,b) X^(s,b).
VectorField apply_endo(const Endo11& f, const VectorField& x);

/// Rank-one endomorphism (U (x) w)^(r,a)_(s,b) = U^(r,a) * w_(s,b).
Endo11 tensor_product(const VectorField& u, const OneForm& omega);

/// Composition of a one-form with an endomorphism: (alpha F)_(s,b) =
/// sum alpha_(r,a) F^(r,a)_(s,b).
OneForm oneform_after_endo(const OneForm& alpha, const Endo11& f);

ScalarField trace(const Endo11& f);

/// Component matrix of an endomorphism in the Wirtinger frame
/// {d/dz^(r)a, d/dzbar^(r)a}, laid out per level as the m holomorphic slots
/// followed by the m antiholomorphic slots. Purely a view: from_wirtinger
/// inverts it exactly.
struct WirtingerView {
  ExtendedChart chart;
  std::vector<std::vector<Expr>> m;
};

WirtingerView to_wirtinger(const Endo11& f);
Endo11 from_wirtinger(const WirtingerView& w);
WirtingerView compose_views(const WirtingerView& a, const WirtingerView& b);

}  // namespace tensorlift
