#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tensorlift/gaussian.hpp"

namespace tensorlift {

/// Identifies the coordinate x^(level)index on an extended chart.
/// Level 0 holds the base coordinates; level r holds the r-th order
/// extension ("dotted") coordinates. Indices are 1-based.
struct VarRef {
  int level = 0;
  int index = 1;
  auto operator<=>(const VarRef&) const = default;
  std::string str() const {
    return "x" + std::to_string(index) + "@" + std::to_string(level);
  }
};

enum class Primitive { Sin, Cos, Exp };

const char* primitive_name(Primitive p);

/// Immutable symbolic expression tree over leveled coordinate variables with
/// exact Gaussian-rational constants.
///
/// Construction applies local simplifications only (0+e -> e, 1*e -> e,
/// constant folding, flattening of directly nested sums/products); there is
/// no hidden canonicalization, so structurally different spellings of the
/// same function stay distinct until normalize() is applied.
class Expr {
 public:
  enum class Kind { Constant, Var, Sum, Product, Power, Quotient, Call };

  /// Default-constructs the constant 0.
  Expr();

  static Expr constant(GaussianRational c);
  static Expr integer(long n) { return constant(GaussianRational(n)); }
  static Expr rational(long num, long den) { return constant(GaussianRational::rational(num, den)); }
  static Expr imaginary() { return constant(GaussianRational::imaginary()); }
  static Expr variable(VarRef v);
  static Expr variable(int index, int level = 0) { return variable(VarRef{level, index}); }
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(const Expr& base, long exponent);
  static Expr quotient(const Expr& num, const Expr& den);
  static Expr call(Primitive p, const Expr& argument);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  const GaussianRational& constant_value() const;  // Constant
  VarRef var() const;                              // Var
  const std::vector<Expr>& operands() const;       // Sum, Product, Quotient, Call
  long exponent() const;                           // Power
  const Expr& base() const;                        // Power
  Primitive primitive() const;                     // Call

  /// Structural equality.
  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }

  /// Largest variable level occurring in the tree; -1 when constant.
  int max_level() const;
  void collect_vars(std::set<VarRef>& out) const;
  std::set<VarRef> vars() const;

  std::size_t hash() const;

  /// Deterministic infix rendering, parseable back by the expression grammar.
  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, product({integer(-1), b})}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
  friend Expr operator-(const Expr& a) { return product({integer(-1), a}); }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Point assignment for numeric evaluation.
using PointMap = std::map<VarRef, std::complex<double>>;

/// Thrown by guarded evaluation when a denominator magnitude falls below the
/// sampling guard; callers redraw the point.
struct DegeneratePoint {};

/// Partial derivative with respect to one coordinate. Variables with a
/// different (level, index) pair are independent.
Expr differentiate(const Expr& e, VarRef v);

/// The total-derivative operator T(e) = sum over (r,a) of
/// x^(r+1)a * de/dx^(r)a. For a non-constant e the result's maximum level is
/// max_level(e) + 1. T is linear and satisfies the Leibniz rule.
Expr total_derivative(const Expr& e);
Expr total_derivative(const Expr& e, int times);

/// IEEE double-precision complex evaluation; deterministic for a fixed point.
/// Throws EvalError on unassigned variables or division by zero.
std::complex<double> eval_numeric(const Expr& e, const PointMap& point);

/// As eval_numeric, but throws DegeneratePoint when any denominator magnitude
/// drops below denom_guard (used by the numeric sampler to avoid poles).
std::complex<double> eval_guarded(const Expr& e, const PointMap& point, double denom_guard);

namespace derivative_log {
/// When enabled, every public differentiate() call is recorded (deduplicated
/// structurally) so a suite can finite-difference-check each derivative it
/// relied on. Disabled by default; enabling clears previous records.
void enable();
void disable();
bool enabled();
std::vector<std::pair<Expr, VarRef>> snapshot();
}  // namespace derivative_log

}  // namespace tensorlift
