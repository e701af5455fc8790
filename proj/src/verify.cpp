#include "tensorlift/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tensorlift/version.hpp"

namespace tensorlift {

// ---------------------------------------------------------------------------
// prove_zero

std::string SymbolicResult::str() const {
  switch (status) {
    case SymbolicStatus::ProvenZero: return "proven-zero";
    case SymbolicStatus::Refuted: return "refuted(" + witness + ")";
    case SymbolicStatus::Inconclusive: return "inconclusive(residual primitives)";
  }
  return "?";
}

SymbolicResult prove_zero(const Expr& e) {
  CanonicalForm f = normalize(e);
  if (f.is_zero() && !f.residual) return {SymbolicStatus::ProvenZero, ""};
  if (!f.residual) {
    const auto& lead = *f.num.terms().begin();
    std::string w = lead.first.empty() ? lead.second.str() : lead.first.str();
    return {SymbolicStatus::Refuted, w};
  }
  return {SymbolicStatus::Inconclusive, f.str()};
}

// ---------------------------------------------------------------------------
// Deterministic rng

std::uint64_t SplitMix64::next() {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
  double u = static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + u * (hi - lo);
}

long SplitMix64::uniform_int(long lo, long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(next() % span);
}

std::uint64_t derive_seed(std::uint64_t suite_seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  SplitMix64 mix(suite_seed ^ h);
  return mix.next();
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

constexpr double kDenomGuard = 1e-6;
constexpr int kMaxRedraws = 100;
constexpr double kSampleLo = -2.0;
constexpr double kSampleHi = 2.0;

PointMap draw_point(SplitMix64& rng, const std::vector<VarRef>& vars) {
  PointMap pt;
  for (VarRef v : vars) {
    double re = rng.uniform(kSampleLo, kSampleHi);
    double im = rng.uniform(kSampleLo, kSampleHi);
    pt[v] = {re, im};
  }
  return pt;
}

std::string point_str(const PointMap& pt) {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [v, z] : pt) {
    if (!first) os << ", ";
    os << v.str() << "=(" << z.real() << "," << z.imag() << ")";
    first = false;
  }
  return os.str();
}

std::vector<VarRef> chart_vars(const ExtendedChart& chart) {
  std::vector<VarRef> vars;
  for (int r = 0; r <= chart.order; ++r) {
    for (int a = 1; a <= chart.base_dim; ++a) vars.push_back(VarRef{r, a});
  }
  return vars;
}

}  // namespace

NumericResult sample_zero(std::span<const Expr> exprs, const ExtendedChart& chart,
                          const SampleConfig& cfg) {
  std::vector<VarRef> vars = chart_vars(chart);
  SplitMix64 rng(cfg.seed);
  NumericResult out;
  for (int p = 0; p < cfg.samples; ++p) {
    int attempts = 0;
    while (true) {
      PointMap pt = draw_point(rng, vars);
      try {
        double worst = 0.0;
        for (const Expr& e : exprs) {
          worst = std::max(worst, std::abs(eval_guarded(e, pt, kDenomGuard)));
        }
        if (worst > out.max_abs_err) {
          out.max_abs_err = worst;
          if (worst > cfg.tolerance && out.witness.empty()) out.witness = point_str(pt);
        }
        break;
      } catch (const DegeneratePoint&) {
        if (++attempts >= kMaxRedraws) throw Error("degenerate sampling region");
      }
    }
  }
  out.pass = out.max_abs_err <= cfg.tolerance;
  if (out.pass) out.witness.clear();
  return out;
}

const ExtendedChart& field_chart(const FieldValue& v) {
  return std::visit([](const auto& f) -> const ExtendedChart& { return f.chart; }, v);
}

namespace {
// structurally equal components subtract to an exact zero
Expr component_diff(const Expr& a, const Expr& b) {
  if (a == b) return Expr::integer(0);
  return a - b;
}
}  // namespace

std::vector<Expr> field_difference(const FieldValue& lhs, const FieldValue& rhs) {
  if (lhs.index() != rhs.index()) throw Error("field kind mismatch in check");
  require_same_chart(field_chart(lhs), field_chart(rhs), "check");
  std::vector<Expr> diff;
  if (std::holds_alternative<ScalarField>(lhs)) {
    diff.push_back(component_diff(std::get<ScalarField>(lhs).value, std::get<ScalarField>(rhs).value));
  } else if (std::holds_alternative<VectorField>(lhs)) {
    const auto& a = std::get<VectorField>(lhs);
    const auto& b = std::get<VectorField>(rhs);
    for (std::size_t i = 0; i < a.components.size(); ++i) {
      diff.push_back(component_diff(a.components[i], b.components[i]));
    }
  } else if (std::holds_alternative<OneForm>(lhs)) {
    const auto& a = std::get<OneForm>(lhs);
    const auto& b = std::get<OneForm>(rhs);
    for (std::size_t i = 0; i < a.components.size(); ++i) {
      diff.push_back(component_diff(a.components[i], b.components[i]));
    }
  } else if (std::holds_alternative<Endo11>(lhs)) {
    const auto& a = std::get<Endo11>(lhs);
    const auto& b = std::get<Endo11>(rhs);
    for (std::size_t i = 0; i < a.m.size(); ++i) {
      for (std::size_t j = 0; j < a.m.size(); ++j) diff.push_back(component_diff(a.m[i][j], b.m[i][j]));
    }
  } else {
    const auto& a = std::get<Tensor12>(lhs);
    const auto& b = std::get<Tensor12>(rhs);
    std::size_t d = a.n.size();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) diff.push_back(component_diff(a.n[i][j][k], b.n[i][j][k]));
      }
    }
  }
  return diff;
}

NumericResult sample_check(const FieldValue& lhs, const FieldValue& rhs, int samples,
                           double tolerance, std::uint64_t seed) {
  std::vector<Expr> diff = field_difference(lhs, rhs);
  return sample_zero(diff, field_chart(lhs), SampleConfig{samples, tolerance, seed});
}

NumericResult fd_check(const Expr& e, VarRef v, int samples, double tolerance,
                       std::uint64_t seed) {
  const double h = 1e-5;
  Expr de = differentiate(e, v);
  std::set<VarRef> vs = e.vars();
  vs.insert(v);
  std::vector<VarRef> vars(vs.begin(), vs.end());

  SplitMix64 rng(seed);
  NumericResult out;
  for (int p = 0; p < samples; ++p) {
    int attempts = 0;
    while (true) {
      PointMap pt = draw_point(rng, vars);
      try {
        std::complex<double> exact = eval_guarded(de, pt, kDenomGuard);
        PointMap hi = pt, lo = pt;
        hi[v] += h;
        lo[v] -= h;
        std::complex<double> fd =
            (eval_guarded(e, hi, kDenomGuard) - eval_guarded(e, lo, kDenomGuard)) / (2.0 * h);
        double err = std::abs(exact - fd);
        if (std::abs(exact) >= 1.0) err /= std::abs(exact);
        if (err > out.max_abs_err) {
          out.max_abs_err = err;
          if (err > tolerance && out.witness.empty()) out.witness = point_str(pt);
        }
        break;
      } catch (const DegeneratePoint&) {
        if (++attempts >= kMaxRedraws) throw Error("degenerate sampling region");
      }
    }
  }
  out.pass = out.max_abs_err <= tolerance;
  if (out.pass) out.witness.clear();
  return out;
}

// ---------------------------------------------------------------------------
// Random fields

Expr random_polynomial(SplitMix64& rng, int dim, int max_degree, long coeff_bound) {
  // integer coefficients over all monomials of total degree <= max_degree
  std::vector<std::vector<int>> monos;  // exponent vectors
  std::vector<int> cur(dim, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == dim) {
      monos.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[pos] = e;
      rec(pos + 1, remaining - e);
    }
    cur[pos] = 0;
  };
  rec(0, max_degree);

  std::vector<Expr> terms;
  for (const auto& mono : monos) {
    long c = rng.uniform_int(-coeff_bound, coeff_bound);
    if (c == 0) continue;
    std::vector<Expr> factors{Expr::integer(c)};
    for (int i = 0; i < dim; ++i) {
      if (mono[i] > 0) factors.push_back(Expr::power(Expr::variable(i + 1, 0), mono[i]));
    }
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

ScalarField random_scalar(SplitMix64& rng, const ExtendedChart& base, int max_degree,
                          long coeff_bound) {
  return ScalarField(base, random_polynomial(rng, base.base_dim, max_degree, coeff_bound));
}

VectorField random_vector(SplitMix64& rng, const ExtendedChart& base, int max_degree,
                          long coeff_bound) {
  VectorField x = VectorField::zero(base);
  for (Expr& e : x.components) e = random_polynomial(rng, base.base_dim, max_degree, coeff_bound);
  return x;
}

OneForm random_oneform(SplitMix64& rng, const ExtendedChart& base, int max_degree,
                       long coeff_bound) {
  OneForm a = OneForm::zero(base);
  for (Expr& e : a.components) e = random_polynomial(rng, base.base_dim, max_degree, coeff_bound);
  return a;
}

Endo11 random_endo(SplitMix64& rng, const ExtendedChart& base, int max_degree, long coeff_bound) {
  Endo11 f = Endo11::zero(base);
  for (auto& row : f.m) {
    for (Expr& e : row) e = random_polynomial(rng, base.base_dim, max_degree, coeff_bound);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Suites

Check Check::identity(std::string name, FieldValue lhs, FieldValue rhs) {
  Check c;
  c.name = std::move(name);
  c.pair = std::make_pair(std::move(lhs), std::move(rhs));
  return c;
}

CheckOutcome evaluate_identity(const FieldValue& lhs, const FieldValue& rhs, CheckMode mode,
                               const CheckContext& ctx) {
  CheckOutcome out;
  std::vector<Expr> diff = field_difference(lhs, rhs);

  bool symbolic_zero = false;
  bool symbolic_refuted = false;
  bool inconclusive = false;
  if (mode != CheckMode::Numeric) {
    SymbolicResult worst{SymbolicStatus::ProvenZero, ""};
    for (const Expr& e : diff) {
      SymbolicResult r = prove_zero(e);
      if (r.status == SymbolicStatus::Refuted) {
        worst = r;
        break;
      }
      if (r.status == SymbolicStatus::Inconclusive) worst = r;
    }
    out.symbolic = worst.str();
    symbolic_zero = worst.status == SymbolicStatus::ProvenZero;
    symbolic_refuted = worst.status == SymbolicStatus::Refuted;
    inconclusive = worst.status == SymbolicStatus::Inconclusive;
  }

  if (mode != CheckMode::Symbolic) {
    NumericResult num =
        sample_zero(diff, field_chart(lhs), SampleConfig{ctx.samples, ctx.tolerance, ctx.seed});
    out.numeric_max_err = num.max_abs_err;
    if (mode == CheckMode::Numeric) {
      out.pass = num.pass;
      if (!num.pass) out.note = "witness: " + num.witness;
      return out;
    }
    // soundness coupling: a proven zero must never fail numerically
    if (symbolic_zero && num.max_abs_err > std::max(ctx.tolerance, 1e-9)) {
      throw EngineBug("symbolic proven-zero failed numerically in check; max err " +
                      std::to_string(num.max_abs_err));
    }
    if (inconclusive) {
      out.pass = num.pass;
      if (!num.pass && !num.witness.empty()) out.note = "witness: " + num.witness;
      return out;
    }
    out.pass = symbolic_zero;
    if (symbolic_refuted && !num.witness.empty()) out.note = "witness: " + num.witness;
    return out;
  }

  out.pass = symbolic_zero;
  return out;
}

namespace {

CheckOutcome run_pair_check(const Check& c, const CheckContext& ctx) {
  CheckOutcome out = evaluate_identity(c.pair->first, c.pair->second, c.mode, ctx);
  if (!c.note.empty()) out.note = out.note.empty() ? c.note : c.note + "; " + out.note;
  return out;
}

std::string format_double(double v) {
  nlohmann::json j = v;
  return j.dump();
}

}  // namespace

std::vector<CheckReport> run_suite(const std::vector<Check>& checks, const SuiteOptions& opts) {
  // keep records accumulated since an earlier enable() (e.g. while the caller
  // was building lifted fields for the checks)
  if (opts.fd_guard && !derivative_log::enabled()) derivative_log::enable();

  // stable disambiguation of duplicate names
  std::map<std::string, int> counts;
  for (const Check& c : checks) counts[c.name]++;
  std::map<std::string, int> seen;
  std::vector<CheckReport> reports;

  for (const Check& c : checks) {
    std::string name = c.name;
    if (counts[c.name] > 1) {
      int k = ++seen[c.name];
      if (k > 1) name += "#" + std::to_string(k);
    }
    CheckContext ctx;
    ctx.seed = derive_seed(c.seed != 0 ? c.seed : opts.seed, name);
    ctx.samples = c.samples > 0 ? c.samples : opts.samples;
    ctx.tolerance = c.tolerance > 0 ? c.tolerance : opts.tolerance;

    CheckReport rep;
    rep.name = name;
    rep.informational = c.informational;
    auto t0 = std::chrono::steady_clock::now();
    try {
      CheckOutcome out;
      if (c.custom) {
        out = c.custom(ctx);
      } else if (c.pair) {
        out = run_pair_check(c, ctx);
      } else {
        throw Error("check has no body");
      }
      rep.symbolic = out.symbolic;
      rep.numeric_max_err = out.numeric_max_err;
      rep.pass = out.pass;
      rep.note = out.note.empty() ? c.note : out.note;
    } catch (const EngineBug&) {
      throw;  // soundness violations abort loudly
    } catch (const std::exception& ex) {
      rep.symbolic = "error";
      rep.pass = false;
      rep.note = std::string("error: ") + ex.what();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    reports.push_back(std::move(rep));
  }

  if (opts.fd_guard) {
    auto recorded = derivative_log::snapshot();
    derivative_log::disable();
    CheckReport rep;
    rep.name = "derivative_fd_guard";
    double worst = 0.0;
    bool pass = true;
    std::size_t checked = 0;
    try {
      for (const auto& [e, v] : recorded) {
        NumericResult r = fd_check(e, v, 50, 1e-6, derive_seed(opts.seed, e.str() + "|" + v.str()));
        worst = std::max(worst, r.max_abs_err);
        pass = pass && r.pass;
        ++checked;
      }
      rep.symbolic = "skipped";
      rep.numeric_max_err = worst;
      rep.pass = pass;
      rep.note = "finite-difference guard over " + std::to_string(checked) + " derivatives";
    } catch (const std::exception& ex) {
      rep.symbolic = "error";
      rep.pass = false;
      rep.note = std::string("error: ") + ex.what();
    }
    reports.push_back(std::move(rep));
  }

  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return reports;
}

bool suite_passed(const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    if (!r.informational && !r.pass) return false;
  }
  return true;
}

std::string reports_to_json(const std::vector<CheckReport>& reports, const SuiteOptions& opts) {
  std::ostringstream os;
  nlohmann::json header;
  header["engine"] = std::string(kEngineName) + " " + kVersion;
  header["samples"] = opts.samples;
  header["seed"] = opts.seed;
  header["tolerance"] = opts.tolerance;
  os << header.dump() << "\n";
  for (const CheckReport& r : reports) {
    nlohmann::json j;
    j["name"] = r.name;
    std::string note = r.note;
    if (r.informational) note = note.empty() ? "informational" : "informational: " + note;
    j["note"] = note;
    if (r.numeric_max_err) {
      j["numeric_max_err"] = *r.numeric_max_err;
    } else {
      j["numeric_max_err"] = nullptr;
    }
    j["pass"] = r.pass;
    j["symbolic"] = r.symbolic;
    os << j.dump() << "\n";
  }
  return os.str();
}

std::string reports_to_text(const std::vector<CheckReport>& reports, const SuiteOptions& opts) {
  std::ostringstream os;
  os << "# " << kEngineName << " " << kVersion << "  seed=" << opts.seed
     << " samples=" << opts.samples << " tol=" << format_double(opts.tolerance)
     << " box=[-2,2] denom-guard=1e-06\n";
  int passed = 0, informational = 0;
  for (const CheckReport& r : reports) {
    const char* tag = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
    if (r.informational) {
      ++informational;
    } else if (r.pass) {
      ++passed;
    }
    os << "[" << tag << "] " << r.name << "  symbolic=" << r.symbolic;
    if (r.numeric_max_err) os << " numeric_max_err=" << format_double(*r.numeric_max_err);
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << "\n";
  }
  int effective = static_cast<int>(reports.size()) - informational;
  os << "# " << passed << "/" << effective << " passed";
  if (informational > 0) os << " (+" << informational << " informational)";
  os << "\n";
  return os.str();
}

}  // namespace tensorlift
