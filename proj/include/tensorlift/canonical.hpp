#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tensorlift/expr.hpp"

namespace tensorlift {

struct CanonicalForm;

namespace poly {

/// An indeterminate of the canonical polynomial ring: either a coordinate
/// variable or an opaque primitive application keyed by the canonical form of
/// its argument (so sin(x+x) and sin(2*x) intern to the same atom).
class Atom {
 public:
  static Atom variable(VarRef v);
  static Atom primitive(Primitive p, std::shared_ptr<const CanonicalForm> argument);

  bool is_variable() const;
  VarRef var() const;
  bool is_primitive() const;
  Primitive prim() const;
  const CanonicalForm& argument() const;

  /// Display form: "x2@1" or "sin(...)".
  const std::string& str() const;

  /// Total order: coordinate variables first, sorted by (level, index);
  /// primitive atoms after, sorted by display form.
  std::strong_ordering operator<=>(const Atom& o) const;
  bool operator==(const Atom& o) const { return (*this <=> o) == std::strong_ordering::equal; }

 private:
  struct Data;
  explicit Atom(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// A power product of atoms; exponents are >= 1, factors sorted by atom order.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::pair<Atom, int>> factors);

  const std::vector<std::pair<Atom, int>>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  int degree() const;
  int degree_in(const Atom& a) const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Requires this->divides bottom == false ... quotient o / this.
  Monomial divide_into(const Monomial& o) const;

  bool operator==(const Monomial& o) const;
  /// Graded order: total degree first, then lexicographic with the earliest
  /// atom (smallest (level, index)) most significant.
  std::strong_ordering operator<=>(const Monomial& o) const;

  std::string str() const;

 private:
  std::vector<std::pair<Atom, int>> factors_;
};

/// Canonical multivariate polynomial over GaussianRational, terms kept in
/// descending monomial order.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(GaussianRational c);
  static Polynomial one() { return constant(GaussianRational(1)); }
  static Polynomial atom(Atom a);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term of a constant polynomial (0 when zero).
  GaussianRational constant_value() const;

  std::size_t term_count() const { return terms_.size(); }
  int total_degree() const;
  const Monomial& leading_monomial() const;
  const GaussianRational& leading_coefficient() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const GaussianRational& c) const;
  Polynomial pow(long e) const;  // e >= 0

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  std::strong_ordering operator<=>(const Polynomial& o) const;

  bool contains_primitive_atom() const;
  std::optional<Atom> max_atom() const;
  int degree_in(const Atom& a) const;

  /// View as univariate in x with polynomial coefficients (degree -> coeff).
  std::map<int, Polynomial> univariate_in(const Atom& x) const;
  static Polynomial from_univariate(const Atom& x, const std::map<int, Polynomial>& coeffs);

  void add_term(Monomial m, GaussianRational c);

  std::string str() const;

  using TermMap = std::map<Monomial, GaussianRational, std::greater<Monomial>>;
  const TermMap& terms() const { return terms_; }

 private:
  TermMap terms_;
};

/// Exact division; returns nullopt when b does not divide a.
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);
/// Exact division; throws EngineBug when not exact.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Polynomial gcd over the Gaussian rationals (primitive PRS). The result is
/// normalized to leading coefficient 1; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace poly

/// Canonical form of a rational expression: numerator and denominator as
/// canonical polynomials with gcd(num, den) = 1 and a monic denominator.
/// Primitive applications survive as opaque atoms; `residual` is set iff any
/// such atom remains, in which case identity of forms is only a sufficient
/// (not necessary) condition for equality as functions.
struct CanonicalForm {
  poly::Polynomial num;
  poly::Polynomial den = poly::Polynomial::one();
  bool residual = false;

  bool is_zero() const { return num.is_zero(); }
  bool operator==(const CanonicalForm& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};

/// Normalizes an expression to its canonical form. Throws Error
/// ("zero denominator") when a denominator is identically zero.
CanonicalForm normalize(const Expr& e);

/// True when e normalizes to the zero form with no surviving primitives.
bool is_identically_zero(const Expr& e);

}  // namespace tensorlift
