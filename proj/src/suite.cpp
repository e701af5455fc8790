#include "tensorlift/suite.hpp"

namespace tensorlift {

namespace {

constexpr int kDeg = 2;
constexpr long kCoeffBound = 3;

struct Builder {
  const ModelSet& model;
  const SuiteOptions& opts;
  std::vector<Check> checks;

  SplitMix64 rng_for(const std::string& name) {
    return SplitMix64(derive_seed(opts.seed, name));
  }

  void pair(std::string name, FieldValue lhs, FieldValue rhs, CheckMode mode = CheckMode::Both) {
    Check c = Check::identity(std::move(name), std::move(lhs), std::move(rhs));
    c.mode = mode;
    checks.push_back(std::move(c));
  }

  void info_pair(std::string name, FieldValue lhs, FieldValue rhs, std::string note) {
    Check c = Check::identity(std::move(name), std::move(lhs), std::move(rhs));
    c.informational = true;
    c.note = std::move(note);
    checks.push_back(std::move(c));
  }

  // ---- lift algebra on seeded random polynomial fields -------------------

  ScalarField mixed_scalar(const ScalarField& f, int a, int b) {
    return lift_scalar(f, LiftSpec(a, b));
  }

  ScalarField leibniz_rhs(const ScalarField& f, const ScalarField& g, int r) {
    ExtendedChart target = f.chart.at_order(r);
    std::vector<Expr> terms;
    for (int j = 0; j <= r; ++j) {
      Expr c = Expr::constant(binomial(r, j));
      terms.push_back(c * mixed_scalar(f, r - j, j).value * mixed_scalar(g, j, r - j).value);
    }
    return ScalarField(target, Expr::sum(std::move(terms)));
  }

  void scalar_laws() {
    const ExtendedChart& base = model.base;
    for (int r = 1; r <= 3; ++r) {
      for (int i = 1; i <= 2; ++i) {
        std::string name = "lift_scalar_leibniz_r" + std::to_string(r) + "_i" + std::to_string(i);
        SplitMix64 rng = rng_for(name);
        ScalarField f = random_scalar(rng, base, kDeg, kCoeffBound);
        ScalarField g = random_scalar(rng, base, kDeg, kCoeffBound);
        ScalarField fg(base, f.value * g.value);
        pair(name, lift_scalar(fg, LiftSpec::complete(r)), leibniz_rhs(f, g, r));
      }
    }
    {
      std::string name = "lift_scalar_additivity_r2";
      SplitMix64 rng = rng_for(name);
      ScalarField f = random_scalar(rng, base, kDeg, kCoeffBound);
      ScalarField g = random_scalar(rng, base, kDeg, kCoeffBound);
      ScalarField sum(base, f.value + g.value);
      pair(name, lift_scalar(sum, LiftSpec::complete(2)),
           add(lift_scalar(f, LiftSpec::complete(2)), lift_scalar(g, LiftSpec::complete(2))));
    }
  }

  void vector_module_laws() {
    const ExtendedChart& base = model.base;
    for (int r = 1; r <= 2; ++r) {
      for (int i = 1; i <= 2; ++i) {
        std::string name =
            "lift_vector_module_law_r" + std::to_string(r) + "_i" + std::to_string(i);
        SplitMix64 rng = rng_for(name);
        ScalarField f = random_scalar(rng, base, kDeg, kCoeffBound);
        VectorField x = random_vector(rng, base, kDeg, kCoeffBound);
        VectorField fx = scale(f.value, x);
        VectorField rhs = VectorField::zero(base.at_order(r));
        for (int j = 0; j <= r; ++j) {
          Expr c = Expr::constant(binomial(r, j));
          Expr fl = mixed_scalar(f, r - j, j).value;
          rhs = add(rhs, scale(c * fl, lift_vector(x, LiftSpec(j, r - j))));
        }
        pair(name, lift_vector(fx, LiftSpec::complete(r)), rhs);
      }
    }
    {
      std::string name = "lift_vector_additivity_r2";
      SplitMix64 rng = rng_for(name);
      VectorField x = random_vector(rng, base, kDeg, kCoeffBound);
      VectorField y = random_vector(rng, base, kDeg, kCoeffBound);
      pair(name, lift_vector(add(x, y), LiftSpec::complete(2)),
           add(lift_vector(x, LiftSpec::complete(2)), lift_vector(y, LiftSpec::complete(2))));
    }
  }

  void oneform_module_laws() {
    const ExtendedChart& base = model.base;
    for (int r = 1; r <= 2; ++r) {
      for (int i = 1; i <= 2; ++i) {
        std::string name =
            "lift_oneform_module_law_r" + std::to_string(r) + "_i" + std::to_string(i);
        SplitMix64 rng = rng_for(name);
        ScalarField f = random_scalar(rng, base, kDeg, kCoeffBound);
        OneForm a = random_oneform(rng, base, kDeg, kCoeffBound);
        OneForm fa = scale(f.value, a);
        OneForm rhs = OneForm::zero(base.at_order(r));
        for (int j = 0; j <= r; ++j) {
          Expr c = Expr::constant(binomial(r, j));
          Expr fl = mixed_scalar(f, r - j, j).value;
          rhs = add(rhs, scale(c * fl, lift_oneform(a, LiftSpec(j, r - j))));
        }
        pair(name, lift_oneform(fa, LiftSpec::complete(r)), rhs);
      }
    }
    for (int r = 1; r <= 2; ++r) {
      std::string name = "lift_oneform_pairing_cc_r" + std::to_string(r);
      SplitMix64 rng = rng_for(name);
      OneForm a = random_oneform(rng, base, kDeg, kCoeffBound);
      VectorField x = random_vector(rng, base, kDeg, kCoeffBound);
      pair(name,
           pairing(lift_oneform(a, LiftSpec::complete(r)), lift_vector(x, LiftSpec::complete(r))),
           lift_scalar(pairing(a, x), LiftSpec::complete(r)));

      std::string vname = "lift_oneform_pairing_vc_r" + std::to_string(r);
      SplitMix64 vrng = rng_for(vname);
      OneForm av = random_oneform(vrng, base, kDeg, kCoeffBound);
      VectorField xv = random_vector(vrng, base, kDeg, kCoeffBound);
      pair(vname,
           pairing(lift_oneform(av, LiftSpec::vertical(r)), lift_vector(xv, LiftSpec::complete(r))),
           lift_scalar(pairing(av, xv), LiftSpec::vertical(r)));
    }
  }

  void evaluation_laws() {
    const ExtendedChart& base = model.base;
    struct Case {
      const char* tag;
      bool x_complete;
      bool f_complete;
    };
    for (const Case& cs : {Case{"vv", false, false}, Case{"vc", false, true},
                           Case{"cv", true, false}, Case{"cc", true, true}}) {
      for (int r = 1; r <= 2; ++r) {
        std::string name =
            std::string("lie_lift_scalar_") + cs.tag + "_r" + std::to_string(r);
        SplitMix64 rng = rng_for(name);
        VectorField x = random_vector(rng, base, kDeg, kCoeffBound);
        ScalarField f = random_scalar(rng, base, kDeg, kCoeffBound);
        VectorField xl =
            lift_vector(x, cs.x_complete ? LiftSpec::complete(r) : LiftSpec::vertical(r));
        ScalarField fl =
            lift_scalar(f, cs.f_complete ? LiftSpec::complete(r) : LiftSpec::vertical(r));
        ScalarField lhs = lie_derivative(xl, fl);
        ScalarField xf = lie_derivative(x, f);
        ScalarField rhs = (cs.x_complete && cs.f_complete)
                              ? lift_scalar(xf, LiftSpec::complete(r))
                          : (!cs.x_complete && !cs.f_complete)
                              ? ScalarField(base.at_order(r), Expr::integer(0))
                              : lift_scalar(xf, LiftSpec::vertical(r));
        pair(name, lhs, rhs);
      }
    }
  }

  void bracket_laws() {
    const ExtendedChart& base = model.base;
    struct Case {
      const char* tag;
      bool x_complete;
      bool y_complete;
    };
    for (const Case& cs : {Case{"vv", false, false}, Case{"vc", false, true},
                           Case{"cv", true, false}, Case{"cc", true, true}}) {
      for (int r = 1; r <= 2; ++r) {
        std::string name =
            std::string("lie_lift_vector_") + cs.tag + "_r" + std::to_string(r);
        SplitMix64 rng = rng_for(name);
        VectorField x = random_vector(rng, base, kDeg, kCoeffBound);
        VectorField y = random_vector(rng, base, kDeg, kCoeffBound);
        VectorField xl =
            lift_vector(x, cs.x_complete ? LiftSpec::complete(r) : LiftSpec::vertical(r));
        VectorField yl =
            lift_vector(y, cs.y_complete ? LiftSpec::complete(r) : LiftSpec::vertical(r));
        VectorField lhs = lie_bracket(xl, yl);
        VectorField xy = lie_bracket(x, y);
        VectorField rhs = (cs.x_complete && cs.y_complete)
                              ? lift_vector(xy, LiftSpec::complete(r))
                          : (!cs.x_complete && !cs.y_complete)
                              ? VectorField::zero(base.at_order(r))
                              : lift_vector(xy, LiftSpec::vertical(r));
        pair(name, lhs, rhs);
      }
    }
  }

  // ---- per-endomorphism laws ---------------------------------------------

  void identity_lift() {
    for (int k = 1; k <= 2; ++k) {
      std::string name = "lift_identity_k" + std::to_string(k);
      Endo11 id = Endo11::identity(model.base);
      pair(name, lift_endo_complete(id, k), Endo11::identity(model.base.at_order(k)));
    }
  }

  void endo_laws(const std::string& ename, const Endo11& e) {
    for (int k = 1; k <= 2; ++k) {
      std::string suffix = "_" + ename + "_k" + std::to_string(k);
      {
        std::string name = "lift_composition" + suffix;
        SplitMix64 rng = rng_for(name);
        Endo11 g = random_endo(rng, model.base, kDeg, kCoeffBound);
        pair(name, lift_endo_complete(compose_endo(e, g), k),
             compose_endo(lift_endo_complete(e, k), lift_endo_complete(g, k)));
      }
      {
        std::string name = "lift_endo_action_complete" + suffix;
        SplitMix64 rng = rng_for(name);
        VectorField x = random_vector(rng, model.base, kDeg, kCoeffBound);
        pair(name, apply_endo(lift_endo_complete(e, k), lift_vector(x, LiftSpec::complete(k))),
             lift_vector(apply_endo(e, x), LiftSpec::complete(k)));
      }
      {
        std::string name = "lift_endo_action_vertical" + suffix;
        SplitMix64 rng = rng_for(name);
        VectorField x = random_vector(rng, model.base, kDeg, kCoeffBound);
        pair(name, apply_endo(lift_endo_vertical(e, k), lift_vector(x, LiftSpec::complete(k))),
             lift_vector(apply_endo(e, x), LiftSpec::vertical(k)));
      }
      {
        Endo11 ev = lift_endo_vertical(e, k);
        pair("lift_endo_vertical_nilpotent" + suffix, compose_endo(ev, ev),
             Endo11::zero(model.base.at_order(k)));
      }
    }
    pair("nijenhuis_lift_commutes_" + ename + "_k1", nijenhuis(lift_endo_complete(e, 1)),
         lift_tensor12_complete(nijenhuis(e), 1));
    pair("nijenhuis_lift_commutes_" + ename + "_k2", nijenhuis(lift_endo_complete(e, 2)),
         lift_tensor12_complete(nijenhuis(e), 2), CheckMode::Numeric);

    if (is_almost_complex(e).holds) {
      for (int k = 1; k <= 2; ++k) {
        Endo11 ec = lift_endo_complete(e, k);
        pair("almost_complex_lift_" + ename + "_k" + std::to_string(k), compose_endo(ec, ec),
             scale(Expr::integer(-1), Endo11::identity(ec.chart)));
      }
    }

    {
      // integrability transfers: N_E vanishes iff the lifted Nijenhuis does
      std::string name = "nijenhuis_zero_preserved_" + ename;
      Endo11 base_e = e;
      Check c;
      c.name = name;
      c.custom = [base_e](const CheckContext& ctx) {
        SampleConfig cfg{ctx.samples, ctx.tolerance, ctx.seed};
        auto vanishes = [&cfg](const Tensor12& t) {
          std::vector<Expr> comps;
          for (const auto& plane : t.n) {
            for (const auto& row : plane) {
              for (const Expr& x : row) comps.push_back(x);
            }
          }
          bool inconclusive = false;
          for (const Expr& x : comps) {
            SymbolicResult r = prove_zero(x);
            if (r.status == SymbolicStatus::Refuted) return false;
            if (r.status == SymbolicStatus::Inconclusive) inconclusive = true;
          }
          if (!inconclusive) return true;
          return sample_zero(comps, t.chart, cfg).pass;
        };
        bool base_zero = vanishes(nijenhuis(base_e));
        bool lift_zero = vanishes(nijenhuis(lift_endo_complete(base_e, 1)));
        CheckOutcome out;
        out.symbolic = base_zero == lift_zero ? "holds" : "fails(transfer)";
        out.pass = base_zero == lift_zero;
        out.note = std::string("base ") + (base_zero ? "integrable" : "non-integrable") +
                   ", lifted " + (lift_zero ? "integrable" : "non-integrable");
        return out;
      };
      checks.push_back(std::move(c));
    }
  }

  // ---- per-triple laws -----------------------------------------------------

  ScalarField omega_of(const AlmostContactTriple& t, const VectorField& x) {
    return pairing(t.omega, x);
  }

  void triple_laws(const std::string& tname, const AlmostContactTriple& t) {
    const ExtendedChart& base = model.base;
    {
      Check c;
      c.name = "contact_conditions_" + tname;
      AlmostContactTriple copy = t;
      c.custom = [copy](const CheckContext& ctx) {
        StructureVerdict v =
            check_almost_contact(copy, SampleConfig{ctx.samples, ctx.tolerance, ctx.seed});
        CheckOutcome out;
        out.pass = v.holds;
        out.symbolic = v.holds ? "holds" : "fails";
        std::string s;
        for (const Diagnostic& d : v.diagnostics) {
          if (d.name == "convention") continue;
          if (!s.empty()) s += ", ";
          s += d.name + "=" + (d.holds ? "ok" : "FAIL");
        }
        out.note = s;
        return out;
      };
      checks.push_back(std::move(c));
    }

    Endo11 j1 = build_extended_structure(t, 1);
    pair("extended_structure_square_" + tname + "_k1", compose_endo(j1, j1),
         scale(Expr::integer(-1), Endo11::identity(j1.chart)));

    {
      Endo11 j2 = build_extended_structure(t, 2);
      info_pair("extended_structure_square_" + tname + "_k2", compose_endo(j2, j2),
                scale(Expr::integer(-1), Endo11::identity(j2.chart)),
                "square acquires a residual for order >= 2");
    }
    {
      // order-2 expansion probe: the two-term rank-one expansion of the
      // lifted square misses the mixed middle term; the residual is reported.
      Endo11 fc2 = lift_endo_complete(t.f, 2);
      ExtendedChart c2 = base.at_order(2);
      Endo11 rhs = add(scale(Expr::integer(-1), Endo11::identity(c2)),
                       add(tensor_product(lift_vector(t.u, LiftSpec::vertical(2)),
                                          lift_oneform(t.omega, LiftSpec::complete(2))),
                           tensor_product(lift_vector(t.u, LiftSpec::complete(2)),
                                          lift_oneform(t.omega, LiftSpec::vertical(2)))));
      info_pair("contact_square_lift_expansion_" + tname + "_k2", compose_endo(fc2, fc2), rhs,
                "two-term expansion residual (expected nonzero)");
    }

    VectorField uv = lift_vector(t.u, LiftSpec::vertical(1));
    VectorField uc = lift_vector(t.u, LiftSpec::complete(1));

    for (int i = 1; i <= 2; ++i) {
      std::string name = "extended_action_vertical_" + tname + "_i" + std::to_string(i);
      SplitMix64 rng = rng_for(name);
      VectorField x = random_vector(rng, base, kDeg, kCoeffBound);
      Expr wx_v = lift_scalar(omega_of(t, x), LiftSpec::vertical(1)).value;
      VectorField rhs = sub(lift_vector(apply_endo(t.f, x), LiftSpec::vertical(1)),
                            scale(wx_v, uc));
      pair(name, apply_endo(j1, lift_vector(x, LiftSpec::vertical(1))), rhs);

      std::string cname = "extended_action_complete_" + tname + "_i" + std::to_string(i);
      SplitMix64 crng = rng_for(cname);
      VectorField xc = random_vector(crng, base, kDeg, kCoeffBound);
      Expr wx_v2 = lift_scalar(omega_of(t, xc), LiftSpec::vertical(1)).value;
      Expr wx_c2 = lift_scalar(omega_of(t, xc), LiftSpec::complete(1)).value;
      VectorField rhc = add(lift_vector(apply_endo(t.f, xc), LiftSpec::complete(1)),
                            sub(scale(wx_v2, uv), scale(wx_c2, uc)));
      pair(cname, apply_endo(j1, lift_vector(xc, LiftSpec::complete(1))), rhc);
    }

    pair("extended_action_contact_vector_" + tname + "_uv", apply_endo(j1, uv), negate(uc));
    pair("extended_action_contact_vector_" + tname + "_uc", apply_endo(j1, uc), uv);

    lie_extended_laws(tname, t, j1);
    lie_extended_contact_laws(tname, t, j1);

    for (const auto& [xname, x] : model.vectors) {
      std::string name = "analytic_vertical_agreement_" + tname + "_" + xname;
      AlmostContactTriple copy = t;
      VectorField xc = x;
      Check c;
      c.name = name;
      c.custom = [copy, xc](const CheckContext& ctx) {
        StructureVerdict v = almost_analytic_vertical(
            xc, copy, 1, SampleConfig{ctx.samples, ctx.tolerance, ctx.seed});
        bool agreement = false;
        for (const Diagnostic& d : v.diagnostics) {
          if (d.name == "agreement") agreement = d.holds;
        }
        CheckOutcome out;
        out.pass = agreement;
        out.symbolic = agreement ? "holds" : "fails(agreement)";
        out.note = std::string("analytic=") + (v.holds ? "yes" : "no");
        return out;
      };
      checks.push_back(std::move(c));
    }
  }

  // Lie derivative of the extended structure against vertical/complete lifts
  // of X, evaluated on lifts of Y with omega(Y) = 0.
  void lie_extended_laws(const std::string& tname, const AlmostContactTriple& t,
                         const Endo11& j1) {
    const ExtendedChart& base = model.base;
    for (int i = 1; i <= 2; ++i) {
      std::string group = "lie_extended_" + tname + "_i" + std::to_string(i);
      SplitMix64 rng = rng_for(group);
      VectorField x = random_vector(rng, base, kDeg, kCoeffBound);
      VectorField y0 = random_vector(rng, base, kDeg, kCoeffBound);
      // project omega off: Y := Y0 - omega(Y0) U has omega(Y) = 0
      VectorField y = sub(y0, scale(omega_of(t, y0).value, t.u));

      VectorField xv = lift_vector(x, LiftSpec::vertical(1));
      VectorField xc = lift_vector(x, LiftSpec::complete(1));
      VectorField yv = lift_vector(y, LiftSpec::vertical(1));
      VectorField yc = lift_vector(y, LiftSpec::complete(1));
      Endo11 lie_v = lie_derivative(xv, j1);
      Endo11 lie_c = lie_derivative(xc, j1);

      Endo11 lie_f = lie_derivative(x, t.f);
      OneForm lie_w = lie_derivative(x, t.omega);
      VectorField fy = apply_endo(lie_f, y);
      Expr wy_v = lift_scalar(ScalarField(base, pairing(lie_w, y).value), LiftSpec::vertical(1)).value;
      Expr wy_c = lift_scalar(ScalarField(base, pairing(lie_w, y).value), LiftSpec::complete(1)).value;
      VectorField uc = lift_vector(t.u, LiftSpec::complete(1));
      VectorField uv = lift_vector(t.u, LiftSpec::vertical(1));

      pair("lie_extended_vv_" + tname + "_i" + std::to_string(i), apply_endo(lie_v, yv),
           VectorField::zero(j1.chart));
      VectorField rhs_mixed =
          sub(lift_vector(fy, LiftSpec::vertical(1)), scale(wy_v, uc));
      pair("lie_extended_vc_" + tname + "_i" + std::to_string(i), apply_endo(lie_v, yc), rhs_mixed);
      pair("lie_extended_cv_" + tname + "_i" + std::to_string(i), apply_endo(lie_c, yv), rhs_mixed);
      VectorField rhs_cc = add(lift_vector(fy, LiftSpec::complete(1)),
                               sub(scale(wy_v, uv), scale(wy_c, uc)));
      pair("lie_extended_cc_" + tname + "_i" + std::to_string(i), apply_endo(lie_c, yc), rhs_cc);
    }
  }

  // Same Lie derivative identities evaluated on lifts of the contact vector
  // itself (pairing omega(U) = 1 feeds extra bracket terms).
  void lie_extended_contact_laws(const std::string& tname, const AlmostContactTriple& t,
                                 const Endo11& j1) {
    const ExtendedChart& base = model.base;
    std::string group = "lie_extended_contact_" + tname;
    SplitMix64 rng = rng_for(group);
    VectorField x = random_vector(rng, base, kDeg, kCoeffBound);

    VectorField xv = lift_vector(x, LiftSpec::vertical(1));
    VectorField xc = lift_vector(x, LiftSpec::complete(1));
    Endo11 lie_v = lie_derivative(xv, j1);
    Endo11 lie_c = lie_derivative(xc, j1);

    VectorField uv = lift_vector(t.u, LiftSpec::vertical(1));
    VectorField uc = lift_vector(t.u, LiftSpec::complete(1));
    VectorField xu = lie_bracket(x, t.u);
    Endo11 lie_f = lie_derivative(x, t.f);
    OneForm lie_w = lie_derivative(x, t.omega);
    VectorField fu = apply_endo(lie_f, t.u);
    Expr wu_v = lift_scalar(ScalarField(base, pairing(lie_w, t.u).value), LiftSpec::vertical(1)).value;
    Expr wu_c = lift_scalar(ScalarField(base, pairing(lie_w, t.u).value), LiftSpec::complete(1)).value;

    pair("lie_extended_contact_vv_" + tname, apply_endo(lie_v, uv),
         negate(lift_vector(xu, LiftSpec::vertical(1))));
    pair("lie_extended_contact_vc_" + tname, apply_endo(lie_v, uc),
         sub(lift_vector(fu, LiftSpec::vertical(1)), scale(wu_v, uc)));
    pair("lie_extended_contact_cv_" + tname, apply_endo(lie_c, uv),
         sub(sub(lift_vector(fu, LiftSpec::vertical(1)), lift_vector(xu, LiftSpec::complete(1))),
             scale(wu_v, uc)));
    pair("lie_extended_contact_cc_" + tname, apply_endo(lie_c, uc),
         add(add(lift_vector(fu, LiftSpec::complete(1)), lift_vector(xu, LiftSpec::vertical(1))),
             sub(scale(wu_v, uv), scale(wu_c, uc))));
  }

  void canonical_structure_laws() {
    if (!model.base.complex_pairing) return;
    for (int k = 0; k <= 2; ++k) {
      ExtendedChart c = model.base.at_order(k);
      Endo11 jk = canonical_structure(c);
      pair("canonical_structure_square_k" + std::to_string(k), compose_endo(jk, jk),
           scale(Expr::integer(-1), Endo11::identity(c)));
    }
  }

  void build() {
    scalar_laws();
    vector_module_laws();
    oneform_module_laws();
    evaluation_laws();
    bracket_laws();
    identity_lift();
    canonical_structure_laws();
    for (const auto& [name, e] : model.endos) endo_laws(name, e);
    for (const auto& [name, decl] : model.contacts) {
      try {
        triple_laws(name, model.triple(decl));
      } catch (const std::exception& ex) {
        Check c;
        c.name = "extended_structure_build_" + name;
        std::string msg = ex.what();
        c.custom = [msg](const CheckContext&) {
          CheckOutcome out;
          out.symbolic = "error";
          out.pass = false;
          out.note = "error: " + msg;
          return out;
        };
        checks.push_back(std::move(c));
      }
    }
  }
};

}  // namespace

std::vector<Check> build_theorem_suite(const ModelSet& model, const SuiteOptions& opts) {
  Builder b{model, opts, {}};
  b.build();
  return std::move(b.checks);
}

}  // namespace tensorlift
