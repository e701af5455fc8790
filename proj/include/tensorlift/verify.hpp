#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tensorlift/canonical.hpp"
#include "tensorlift/fields.hpp"

namespace tensorlift {

// ---------------------------------------------------------------------------
// Symbolic zero-proofs

enum class SymbolicStatus { ProvenZero, Refuted, Inconclusive };

struct SymbolicResult {
  SymbolicStatus status;
  /// Refuted: a nonzero monomial witnessing. Inconclusive: the residual form.
  std::string witness;

  std::string str() const;
};

/// Decides whether an expression is identically zero: proven-zero when the
/// canonical form vanishes with no surviving primitives, refuted when it is a
/// nonzero primitive-free rational function, inconclusive when opaque
/// primitive atoms remain (numeric sampling decides those).
SymbolicResult prove_zero(const Expr& e);

// ---------------------------------------------------------------------------
// Deterministic seeded sampling

/// Deterministic 64-bit generator (splitmix64); identical across platforms so
/// reports are byte-stable.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  /// Uniform double in [lo, hi].
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi);
};

std::uint64_t derive_seed(std::uint64_t suite_seed, std::string_view name);

struct SampleConfig {
  int samples = 100;
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
};

struct NumericResult {
  bool pass = true;
  double max_abs_err = 0.0;
  std::string witness;  // first offending point, when failing
};

/// Evaluates every expression at `samples` points with coordinates drawn
/// uniformly from [-2,2] x [-2,2] (real and imaginary parts), redrawing any
/// point where a denominator magnitude falls below 1e-6 (at most 100 redraws
/// per point before "degenerate sampling region" is raised). Pass iff the
/// max absolute value over all expressions and points is <= tolerance.
NumericResult sample_zero(std::span<const Expr> exprs, const ExtendedChart& chart,
                          const SampleConfig& cfg);

using FieldValue = std::variant<ScalarField, VectorField, OneForm, Endo11, Tensor12>;

/// Componentwise numeric comparison of two fields of the same kind and chart.
NumericResult sample_check(const FieldValue& lhs, const FieldValue& rhs, int samples,
                           double tolerance, std::uint64_t seed);

/// Componentwise difference; throws on kind or chart mismatch.
std::vector<Expr> field_difference(const FieldValue& lhs, const FieldValue& rhs);
const ExtendedChart& field_chart(const FieldValue& v);

/// Compares differentiate(e, v) against central finite differences with step
/// 1e-5 on the real part, at seeded sample points. Pass iff the relative
/// error is <= tolerance (absolute when the derivative magnitude is < 1).
NumericResult fd_check(const Expr& e, VarRef v, int samples, double tolerance,
                       std::uint64_t seed);

// ---------------------------------------------------------------------------
// Seeded random fields (degree <= max_degree, integer coefficients)

Expr random_polynomial(SplitMix64& rng, int dim, int max_degree, long coeff_bound);
ScalarField random_scalar(SplitMix64& rng, const ExtendedChart& base, int max_degree,
                          long coeff_bound);
VectorField random_vector(SplitMix64& rng, const ExtendedChart& base, int max_degree,
                          long coeff_bound);
OneForm random_oneform(SplitMix64& rng, const ExtendedChart& base, int max_degree,
                       long coeff_bound);
Endo11 random_endo(SplitMix64& rng, const ExtendedChart& base, int max_degree, long coeff_bound);

// ---------------------------------------------------------------------------
// Check suites

enum class CheckMode { Symbolic, Numeric, Both };

struct CheckContext {
  std::uint64_t seed = 42;
  int samples = 100;
  double tolerance = 1e-9;
};

struct CheckOutcome {
  std::string symbolic = "skipped";
  std::optional<double> numeric_max_err;
  bool pass = false;
  std::string note;
};

/// One identity check. Either an lhs/rhs field pair proved symbolically with
/// numeric fallback/cross-check, or a custom body producing its own outcome
/// (used for structure verdicts and informational probes).
struct Check {
  std::string name;
  std::optional<std::pair<FieldValue, FieldValue>> pair;
  CheckMode mode = CheckMode::Both;
  int samples = 0;          // 0 = inherit from suite options
  double tolerance = 0;     // 0 = inherit
  std::uint64_t seed = 0;   // 0 = inherit
  /// Informational checks report their outcome but never fail a suite.
  bool informational = false;
  std::string note;
  std::function<CheckOutcome(const CheckContext&)> custom;

  static Check identity(std::string name, FieldValue lhs, FieldValue rhs);
};

/// Symbolic-first evaluation of lhs = rhs under the given mode; used by the
/// standard pair checks and reusable from custom check bodies.
CheckOutcome evaluate_identity(const FieldValue& lhs, const FieldValue& rhs, CheckMode mode,
                               const CheckContext& ctx);

struct CheckReport {
  std::string name;
  std::string symbolic;
  std::optional<double> numeric_max_err;
  bool pass = false;
  bool informational = false;
  std::string note;
  double elapsed_ms = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  int samples = 100;
  double tolerance = 1e-9;
  /// When set, every derivative taken while the suite ran is spot-checked by
  /// fd_check and the result appended as a synthetic "derivative_fd_guard"
  /// report.
  bool fd_guard = false;
};

/// Runs all checks: symbolic first, numeric as fallback (inconclusive) or
/// cross-check (per mode). Duplicate names get stable "#k" suffixes; each
/// check owns a generator derived from (suite seed, check name); reports come
/// back sorted by name. Individual check errors are captured in that check's
/// report and never abort the suite. A symbolic proven-zero that fails
/// numerically at 1e-9 raises EngineBug.
std::vector<CheckReport> run_suite(const std::vector<Check>& checks, const SuiteOptions& opts);

bool suite_passed(const std::vector<CheckReport>& reports);

/// Machine format: one JSON object per line, keys sorted, newline-terminated;
/// the header line records engine version, seed, tolerance and sample count.
/// Byte-identical for identical inputs and seed.
std::string reports_to_json(const std::vector<CheckReport>& reports, const SuiteOptions& opts);
std::string reports_to_text(const std::vector<CheckReport>& reports, const SuiteOptions& opts);

}  // namespace tensorlift
