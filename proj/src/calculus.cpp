#include "tensorlift/calculus.hpp"

#include <algorithm>

namespace tensorlift {

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart, y.chart, "Lie bracket");
  const ExtendedChart& chart = x.chart;
  int d = chart.frame_dim();
  VectorField out = VectorField::zero(chart);
  for (int i = 0; i < d; ++i) {
    std::vector<Expr> terms;
    for (int j = 0; j < d; ++j) {
      VarRef v = chart.unflat(j).var();
      if (!x.components[j].is_zero()) {
        Expr dy = differentiate(y.components[i], v);
        if (!dy.is_zero()) terms.push_back(x.components[j] * dy);
      }
      if (!y.components[j].is_zero()) {
        Expr dx = differentiate(x.components[i], v);
        if (!dx.is_zero()) terms.push_back(-(y.components[j] * dx));
      }
    }
    out.components[i] = Expr::sum(std::move(terms));
  }
  return out;
}

ScalarField lie_derivative(const VectorField& x, const ScalarField& f) {
  require_same_chart(x.chart, f.chart, "Lie derivative");
  const ExtendedChart& chart = x.chart;
  std::vector<Expr> terms;
  for (int j = 0; j < chart.frame_dim(); ++j) {
    if (x.components[j].is_zero()) continue;
    Expr df = differentiate(f.value, chart.unflat(j).var());
    if (!df.is_zero()) terms.push_back(x.components[j] * df);
  }
  return ScalarField(chart, Expr::sum(std::move(terms)));
}

VectorField lie_derivative(const VectorField& x, const VectorField& y) {
  return lie_bracket(x, y);
}

OneForm lie_derivative(const VectorField& x, const OneForm& alpha) {
  require_same_chart(x.chart, alpha.chart, "Lie derivative");
  const ExtendedChart& chart = x.chart;
  int d = chart.frame_dim();
  OneForm out = OneForm::zero(chart);
  for (int b = 0; b < d; ++b) {
    VarRef vb = chart.unflat(b).var();
    std::vector<Expr> terms;
    for (int j = 0; j < d; ++j) {
      if (!x.components[j].is_zero()) {
        Expr da = differentiate(alpha.components[b], chart.unflat(j).var());
        if (!da.is_zero()) terms.push_back(x.components[j] * da);
      }
      if (!alpha.components[j].is_zero()) {
        Expr dx = differentiate(x.components[j], vb);
        if (!dx.is_zero()) terms.push_back(alpha.components[j] * dx);
      }
    }
    out.components[b] = Expr::sum(std::move(terms));
  }
  return out;
}

Endo11 lie_derivative(const VectorField& x, const Endo11& f) {
  require_same_chart(x.chart, f.chart, "Lie derivative");
  const ExtendedChart& chart = x.chart;
  int d = chart.frame_dim();
  Endo11 out = Endo11::zero(chart);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      VarRef vb = chart.unflat(b).var();
      std::vector<Expr> terms;
      for (int j = 0; j < d; ++j) {
        VarRef vj = chart.unflat(j).var();
        if (!x.components[j].is_zero()) {
          Expr df = differentiate(f.m[a][b], vj);
          if (!df.is_zero()) terms.push_back(x.components[j] * df);
        }
        if (!f.m[j][b].is_zero()) {
          Expr dxa = differentiate(x.components[a], vj);
          if (!dxa.is_zero()) terms.push_back(-(f.m[j][b] * dxa));
        }
        if (!f.m[a][j].is_zero()) {
          Expr dxj = differentiate(x.components[j], vb);
          if (!dxj.is_zero()) terms.push_back(f.m[a][j] * dxj);
        }
      }
      out.m[a][b] = Expr::sum(std::move(terms));
    }
  }
  return out;
}

Tensor12 nijenhuis(const Endo11& f) {
  const ExtendedChart& chart = f.chart;
  int d = chart.frame_dim();
  Tensor12 out = Tensor12::zero(chart);
  std::vector<VectorField> columns;  // F applied to each frame field
  columns.reserve(d);
  for (int j = 0; j < d; ++j) {
    VectorField col = VectorField::zero(chart);
    for (int i = 0; i < d; ++i) col.components[i] = f.m[i][j];
    columns.push_back(std::move(col));
  }
  for (int b = 0; b < d; ++b) {
    for (int c = 0; c < d; ++c) {
      VectorField eb = VectorField::frame(chart, chart.unflat(b));
      VectorField ec = VectorField::frame(chart, chart.unflat(c));
      VectorField n = lie_bracket(columns[b], columns[c]);
      n = add(n, apply_endo(f, apply_endo(f, lie_bracket(eb, ec))));
      n = sub(n, apply_endo(f, lie_bracket(columns[b], ec)));
      n = sub(n, apply_endo(f, lie_bracket(eb, columns[c])));
      for (int i = 0; i < d; ++i) out.n[i][b][c] = n.components[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure checks

namespace {

struct Condition {
  std::string name;
  std::vector<Expr> residuals;
  ExtendedChart chart;
  std::string note;
};

// A condition holds when every residual proves zero symbolically, falling
// back to numeric sampling for residual-primitive components.
StructureVerdict assemble(std::vector<Condition> conditions, const SampleConfig& cfg) {
  StructureVerdict verdict;
  verdict.residual = Expr::integer(0);
  std::size_t worst_terms = 0;
  bool have_residual = false;
  for (Condition& cond : conditions) {
    bool holds = true;
    std::string detail = cond.note;
    for (const Expr& r : cond.residuals) {
      SymbolicResult s = prove_zero(r);
      if (s.status == SymbolicStatus::ProvenZero) continue;
      if (s.status == SymbolicStatus::Inconclusive) {
        NumericResult num = sample_zero(std::span<const Expr>(&r, 1), cond.chart, cfg);
        if (num.pass) continue;
      }
      holds = false;
      std::size_t terms = normalize(r).num.term_count();
      if (!have_residual || terms > worst_terms) {
        have_residual = true;
        worst_terms = terms;
        verdict.residual = r;
      }
      if (detail.empty()) detail = "residual: " + s.witness;
    }
    verdict.holds = verdict.holds && holds;
    verdict.diagnostics.push_back(Diagnostic{cond.name, holds, detail});
  }
  std::sort(verdict.diagnostics.begin(), verdict.diagnostics.end(),
            [](const Diagnostic& a, const Diagnostic& b) { return a.name < b.name; });
  return verdict;
}

std::vector<Expr> endo_residuals(const Endo11& e) {
  std::vector<Expr> out;
  for (const auto& row : e.m) {
    for (const Expr& x : row) out.push_back(x);
  }
  return out;
}

}  // namespace

StructureVerdict is_almost_complex(const Endo11& f, const SampleConfig& cfg) {
  Endo11 sq = add(compose_endo(f, f), Endo11::identity(f.chart));
  return assemble({Condition{"square_plus_identity", endo_residuals(sq), f.chart, ""}}, cfg);
}

AlmostContactTriple::AlmostContactTriple(Endo11 f_, VectorField u_, OneForm omega_)
    : f(std::move(f_)), u(std::move(u_)), omega(std::move(omega_)) {
  require_same_chart(f.chart, u.chart, "almost contact triple");
  require_same_chart(f.chart, omega.chart, "almost contact triple");
}

StructureVerdict check_almost_contact(const AlmostContactTriple& t, const SampleConfig& cfg) {
  const ExtendedChart& chart = t.f.chart;
  Endo11 want = sub(tensor_product(t.u, t.omega), Endo11::identity(chart));
  Endo11 sq_res = sub(compose_endo(t.f, t.f), want);

  std::vector<Condition> conds;
  conds.push_back({"square_rank_one", endo_residuals(sq_res), chart, ""});
  conds.push_back({"f_annihilates_u", apply_endo(t.f, t.u).components, chart, ""});
  conds.push_back({"omega_annihilates_f", oneform_after_endo(t.omega, t.f).components, chart, ""});
  Expr pairing_res = pairing(t.omega, t.u).value - Expr::integer(1);
  Condition pairing_cond{"pairing_normalized", {pairing_res}, chart, ""};
  // Convention note: the unit pairing w(U) = 1 is required here. The variant
  // convention w(U) = 0 appears in some sources but admits no solutions (the
  // rank-one term could never cancel -I on U), so it is treated as an erratum.
  bool pairing_ok = is_identically_zero(pairing_res);
  if (!pairing_ok) pairing_cond.note = "pairing w(U) != 1";
  conds.push_back(std::move(pairing_cond));

  StructureVerdict v = assemble(std::move(conds), cfg);
  v.diagnostics.insert(
      v.diagnostics.begin(),
      Diagnostic{"convention", true,
                 "unit pairing w(U) = 1 required; the w(U) = 0 variant is unsatisfiable "
                 "and treated as an erratum"});
  std::sort(v.diagnostics.begin(), v.diagnostics.end(),
            [](const Diagnostic& a, const Diagnostic& b) { return a.name < b.name; });
  return v;
}

Endo11 build_extended_structure(const AlmostContactTriple& t, int k, const SampleConfig& cfg) {
  StructureVerdict contact = check_almost_contact(t, cfg);
  if (!contact.holds) {
    std::string failing;
    for (const Diagnostic& d : contact.diagnostics) {
      if (!d.holds) {
        failing = d.name + (d.detail.empty() ? "" : " (" + d.detail + ")");
        break;
      }
    }
    throw Error("almost contact check failed: " + failing);
  }
  Endo11 fc = lift_endo_complete(t.f, k);
  VectorField uv = lift_vector(t.u, LiftSpec::vertical(k));
  VectorField uc = lift_vector(t.u, LiftSpec::complete(k));
  OneForm wv = lift_oneform(t.omega, LiftSpec::vertical(k));
  OneForm wc = lift_oneform(t.omega, LiftSpec::complete(k));
  return sub(add(fc, tensor_product(uv, wv)), tensor_product(uc, wc));
}

namespace {

StructureVerdict analytic_two_sided(const VectorField& lifted_x, const AlmostContactTriple& t,
                                    int k, std::vector<Condition> base_conds,
                                    const SampleConfig& cfg) {
  Endo11 jk = build_extended_structure(t, k, cfg);
  Endo11 lie_jk = lie_derivative(lifted_x, jk);
  base_conds.push_back(
      Condition{"lifted_structure", endo_residuals(lie_jk), jk.chart, ""});

  StructureVerdict v = assemble(std::move(base_conds), cfg);
  bool base_holds = true;
  bool lifted_holds = true;
  for (const Diagnostic& d : v.diagnostics) {
    if (d.name == "lifted_structure") {
      lifted_holds = d.holds;
    } else {
      base_holds = base_holds && d.holds;
    }
  }
  v.diagnostics.push_back(Diagnostic{
      "agreement", base_holds == lifted_holds,
      base_holds == lifted_holds ? "base and lifted sides agree" : "base and lifted sides disagree"});
  std::sort(v.diagnostics.begin(), v.diagnostics.end(),
            [](const Diagnostic& a, const Diagnostic& b) { return a.name < b.name; });
  v.holds = base_holds && lifted_holds;
  return v;
}

}  // namespace

StructureVerdict almost_analytic_vertical(const VectorField& x, const AlmostContactTriple& t,
                                          int k, const SampleConfig& cfg) {
  require_same_chart(x.chart, t.f.chart, "almost analytic check");
  const ExtendedChart& chart = t.f.chart;
  std::vector<Condition> conds;
  conds.push_back({"base_lie_f", endo_residuals(lie_derivative(x, t.f)), chart, ""});
  conds.push_back({"base_lie_u", lie_bracket(x, t.u).components, chart, ""});
  conds.push_back({"base_lie_omega", lie_derivative(x, t.omega).components, chart, ""});
  VectorField xv = lift_vector(x, LiftSpec::vertical(k));
  return analytic_two_sided(xv, t, k, std::move(conds), cfg);
}

StructureVerdict almost_analytic_complete(const VectorField& x, const AlmostContactTriple& t,
                                          int k, const GaussianRational& c,
                                          const SampleConfig& cfg) {
  if (c.is_zero()) throw Error("C must be non-zero");
  require_same_chart(x.chart, t.f.chart, "almost analytic check");
  const ExtendedChart& chart = t.f.chart;
  Expr ce = Expr::constant(c);
  std::vector<Condition> conds;
  conds.push_back({"base_lie_f", endo_residuals(lie_derivative(x, t.f)), chart, ""});
  conds.push_back(
      {"base_lie_u", sub(lie_bracket(x, t.u), scale(ce, t.u)).components, chart, ""});
  conds.push_back({"base_lie_omega",
                   add(lie_derivative(x, t.omega), scale(ce, t.omega)).components, chart, ""});
  VectorField xc = lift_vector(x, LiftSpec::complete(k));
  return analytic_two_sided(xc, t, k, std::move(conds), cfg);
}

}  // namespace tensorlift
