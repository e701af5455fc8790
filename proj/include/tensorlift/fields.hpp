#pragma once

#include <vector>

#include "tensorlift/chart.hpp"
#include "tensorlift/expr.hpp"

namespace tensorlift {

/// A function on the chart: one expression whose variables stay within the
/// chart's order and dimension.
struct ScalarField {
  ExtendedChart chart;
  Expr value;

  ScalarField(ExtendedChart c, Expr v);
};

/// Components indexed by frame slot: component (r,a) multiplies d/dx^(r)a.
struct VectorField {
  ExtendedChart chart;
  std::vector<Expr> components;  // frame_dim() entries, flat layout

  VectorField(ExtendedChart c, std::vector<Expr> comps);
  static VectorField zero(const ExtendedChart& c);
  /// The frame field d/dx^(level)index.
  static VectorField frame(const ExtendedChart& c, FrameIndex f);

  const Expr& at(FrameIndex f) const { return components[chart.flat(f)]; }
  Expr& at(FrameIndex f) { return components[chart.flat(f)]; }
};

/// Components indexed by frame slot: component (r,a) multiplies dx^(r)a.
struct OneForm {
  ExtendedChart chart;
  std::vector<Expr> components;

  OneForm(ExtendedChart c, std::vector<Expr> comps);
  static OneForm zero(const ExtendedChart& c);
  static OneForm coordinate(const ExtendedChart& c, FrameIndex f);  // dx^(r)a

  const Expr& at(FrameIndex f) const { return components[chart.flat(f)]; }
  Expr& at(FrameIndex f) { return components[chart.flat(f)]; }
};

/// A (1,1)-tensor as a component matrix: column (s,b) holds the image of the
/// frame field d/dx^(s)b, i.e. F(d/dx^(s)b) = sum_(r,a) m[r,a][s,b] d/dx^(r)a.
struct Endo11 {
  ExtendedChart chart;
  std::vector<std::vector<Expr>> m;  // m[row][col]

  Endo11(ExtendedChart c, std::vector<std::vector<Expr>> mat);
  static Endo11 zero(const ExtendedChart& c);
  static Endo11 identity(const ExtendedChart& c);

  const Expr& at(FrameIndex row, FrameIndex col) const {
    return m[chart.flat(row)][chart.flat(col)];
  }
  Expr& at(FrameIndex row, FrameIndex col) { return m[chart.flat(row)][chart.flat(col)]; }
};

/// A (1,2)-tensor: component [row][col1][col2] is the d/dx^row coefficient of
/// the value on the frame pair (col1, col2). Antisymmetric in (col1, col2)
/// after normalization when produced by the Nijenhuis construction.
struct Tensor12 {
  ExtendedChart chart;
  std::vector<std::vector<std::vector<Expr>>> n;

  Tensor12(ExtendedChart c, std::vector<std::vector<std::vector<Expr>>> comps);
  static Tensor12 zero(const ExtendedChart& c);
};

// Arithmetic. All binary operations require matching charts.

ScalarField add(const ScalarField& a, const ScalarField& b);
ScalarField sub(const ScalarField& a, const ScalarField& b);
ScalarField scale(const Expr& s, const ScalarField& f);

VectorField add(const VectorField& a, const VectorField& b);
VectorField sub(const VectorField& a, const VectorField& b);
VectorField scale(const Expr& s, const VectorField& x);
VectorField negate(const VectorField& x);

OneForm add(const OneForm& a, const OneForm& b);
OneForm sub(const OneForm& a, const OneForm& b);
OneForm scale(const Expr& s, const OneForm& a);

Endo11 add(const Endo11& a, const Endo11& b);
Endo11 sub(const Endo11& a, const Endo11& b);
Endo11 scale(const Expr& s, const Endo11& f);

Tensor12 sub(const Tensor12& a, const Tensor12& b);

/// <alpha, X> = sum over slots of alpha_(r,a) * X^(r,a).
ScalarField pairing(const OneForm& alpha, const VectorField& x);

void require_same_chart(const ExtendedChart& a, const ExtendedChart& b, const char* op);

}  // namespace tensorlift
