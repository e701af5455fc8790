#pragma once

#include "tensorlift/geometry.hpp"
#include "tensorlift/lifts.hpp"
#include "tensorlift/verify.hpp"

namespace tensorlift {

/// [X,Y]^(r,a) = sum X^(s,b) dY^(r,a)/dx^(s)b - Y^(s,b) dX^(r,a)/dx^(s)b.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Directional derivative X(f).
ScalarField lie_derivative(const VectorField& x, const ScalarField& f);
/// [X, Y].
VectorField lie_derivative(const VectorField& x, const VectorField& y);
/// (L_X alpha)(Y) = X(alpha(Y)) - alpha([X,Y]), realized componentwise.
OneForm lie_derivative(const VectorField& x, const OneForm& alpha);
/// (L_X F)(Y) = [X, FY] - F[X,Y], realized componentwise.
Endo11 lie_derivative(const VectorField& x, const Endo11& f);

/// The Nijenhuis tensor N_F(X,Y) = [FX,FY] + F^2[X,Y] - F[FX,Y] - F[X,FY],
/// evaluated on all frame-field pairs. Antisymmetric in its two lower slots
/// after normalization; identically zero iff F is integrable.
Tensor12 nijenhuis(const Endo11& f);

/// Outcome of one structure check: `holds` is true iff every residual
/// component normalizes to zero (or passes numeric fallback when primitives
/// survive). Diagnostics are sorted by condition name.
struct Diagnostic {
  std::string name;
  bool holds = true;
  std::string detail;
};

struct StructureVerdict {
  bool holds = true;
  Expr residual;  // worst offending component; zero when holds
  std::vector<Diagnostic> diagnostics;
};

/// F^2 + I = 0, componentwise.
StructureVerdict is_almost_complex(const Endo11& f, const SampleConfig& cfg = {});

/// An almost contact structure (F, U, omega) on a base chart:
/// F^2 = -I + U(x)omega, FU = 0, omega o F = 0, with the pairing convention
/// omega(U) = 1.
struct AlmostContactTriple {
  Endo11 f;
  VectorField u;
  OneForm omega;

  AlmostContactTriple(Endo11 f_, VectorField u_, OneForm omega_);
};

StructureVerdict check_almost_contact(const AlmostContactTriple& t, const SampleConfig& cfg = {});

/// The extended structure F^{c^k} + U^{v^k} (x) omega^{v^k}
///                                - U^{c^k} (x) omega^{c^k}
/// assembled from the lifted pieces. Requires the triple to pass
/// check_almost_contact; makes no claim that the square is -I (that is a
/// check, and genuinely acquires a residual for k >= 2).
Endo11 build_extended_structure(const AlmostContactTriple& t, int k,
                                const SampleConfig& cfg = {});

/// Two-sided verdict: (i) base conditions L_X F = 0, L_X U = 0,
/// L_X omega = 0; (ii) L over X^{v^k} of the extended structure vanishes.
/// Diagnostics report each side and whether they agree.
StructureVerdict almost_analytic_vertical(const VectorField& x, const AlmostContactTriple& t,
                                          int k, const SampleConfig& cfg = {});

/// Two-sided verdict for the complete lift: base conditions L_X F = 0,
/// L_X U = C U, L_X omega = -C omega (C a non-zero constant), against
/// L over X^{c^k} of the extended structure.
StructureVerdict almost_analytic_complete(const VectorField& x, const AlmostContactTriple& t,
                                          int k, const GaussianRational& c,
                                          const SampleConfig& cfg = {});

}  // namespace tensorlift
