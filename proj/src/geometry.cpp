#include "tensorlift/geometry.hpp"

namespace tensorlift {

Endo11 canonical_structure(const ExtendedChart& chart) {
  if (!chart.complex_pairing) throw Error("chart has no complex pairing");
  int m = *chart.complex_pairing;
  Endo11 j = Endo11::zero(chart);
  for (int r = 0; r <= chart.order; ++r) {
    for (int a = 1; a <= m; ++a) {
      j.at(FrameIndex{r, a + m}, FrameIndex{r, a}) = Expr::integer(1);
      j.at(FrameIndex{r, a}, FrameIndex{r, a + m}) = Expr::integer(-1);
    }
  }
  return j;
}

Endo11 compose_endo(const Endo11& f, const Endo11& g) {
  require_same_chart(f.chart, g.chart, "endomorphism composition");
  int d = f.chart.frame_dim();
  Endo11 r = Endo11::zero(f.chart);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::vector<Expr> terms;
      for (int k = 0; k < d; ++k) {
        if (f.m[i][k].is_zero() || g.m[k][j].is_zero()) continue;
        terms.push_back(f.m[i][k] * g.m[k][j]);
      }
      r.m[i][j] = Expr::sum(std::move(terms));
    }
  }
  return r;
}

VectorField apply_endo(const Endo11& f, const VectorField& x) {
  require_same_chart(f.chart, x.chart, "endomorphism application");
  int d = f.chart.frame_dim();
  VectorField r = VectorField::zero(f.chart);
  for (int i = 0; i < d; ++i) {
    std::vector<Expr> terms;
    for (int j = 0; j < d; ++j) {
      if (f.m[i][j].is_zero() || x.components[j].is_zero()) continue;
      terms.push_back(f.m[i][j] * x.components[j]);
    }
    r.components[i] = Expr::sum(std::move(terms));
  }
  return r;
}

Endo11 tensor_product(const VectorField& u, const OneForm& omega) {
  require_same_chart(u.chart, omega.chart, "tensor product");
  int d = u.chart.frame_dim();
  Endo11 r = Endo11::zero(u.chart);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      r.m[i][j] = u.components[i] * omega.components[j];
    }
  }
  return r;
}

OneForm oneform_after_endo(const OneForm& alpha, const Endo11& f) {
  require_same_chart(alpha.chart, f.chart, "one-form composition");
  int d = f.chart.frame_dim();
  OneForm r = OneForm::zero(alpha.chart);
  for (int j = 0; j < d; ++j) {
    std::vector<Expr> terms;
    for (int i = 0; i < d; ++i) {
      if (alpha.components[i].is_zero() || f.m[i][j].is_zero()) continue;
      terms.push_back(alpha.components[i] * f.m[i][j]);
    }
    r.components[j] = Expr::sum(std::move(terms));
  }
  return r;
}

ScalarField trace(const Endo11& f) {
  std::vector<Expr> terms;
  for (int i = 0; i < f.chart.frame_dim(); ++i) terms.push_back(f.m[i][i]);
  return ScalarField(f.chart, Expr::sum(std::move(terms)));
}

namespace {

// Frame change P: column (r, a <= m) holds d/dz^(r)a = (d/dx - i d/dy)/2,
// column (r, a > m) holds d/dzbar^(r)(a-m) = (d/dx + i d/dy)/2.
// Its exact inverse Pinv has d/dx = d/dz + d/dzbar, d/dy = i(d/dz - d/dzbar).
struct FrameChange {
  std::vector<std::vector<Expr>> p;
  std::vector<std::vector<Expr>> pinv;
};

FrameChange frame_change(const ExtendedChart& chart) {
  if (!chart.complex_pairing) throw Error("chart has no complex pairing");
  int m = *chart.complex_pairing;
  int d = chart.frame_dim();
  Expr half = Expr::rational(1, 2);
  Expr i_unit = Expr::imaginary();
  FrameChange fc;
  fc.p.assign(d, std::vector<Expr>(d, Expr::integer(0)));
  fc.pinv.assign(d, std::vector<Expr>(d, Expr::integer(0)));
  for (int r = 0; r <= chart.order; ++r) {
    for (int a = 1; a <= m; ++a) {
      int x = chart.flat(FrameIndex{r, a});
      int y = chart.flat(FrameIndex{r, a + m});
      fc.p[x][x] = half;
      fc.p[y][x] = -(half * i_unit);
      fc.p[x][y] = half;
      fc.p[y][y] = half * i_unit;
      fc.pinv[x][x] = Expr::integer(1);
      fc.pinv[x][y] = i_unit;
      fc.pinv[y][x] = Expr::integer(1);
      fc.pinv[y][y] = -i_unit;
    }
  }
  return fc;
}

std::vector<std::vector<Expr>> mat_mul(const std::vector<std::vector<Expr>>& a,
                                       const std::vector<std::vector<Expr>>& b) {
  std::size_t d = a.size();
  std::vector<std::vector<Expr>> r(d, std::vector<Expr>(d, Expr::integer(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < d; ++k) {
        if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
        terms.push_back(a[i][k] * b[k][j]);
      }
      r[i][j] = Expr::sum(std::move(terms));
    }
  }
  return r;
}

}  // namespace

WirtingerView to_wirtinger(const Endo11& f) {
  FrameChange fc = frame_change(f.chart);
  return WirtingerView{f.chart, mat_mul(fc.pinv, mat_mul(f.m, fc.p))};
}

Endo11 from_wirtinger(const WirtingerView& w) {
  FrameChange fc = frame_change(w.chart);
  return Endo11(w.chart, mat_mul(fc.p, mat_mul(w.m, fc.pinv)));
}

WirtingerView compose_views(const WirtingerView& a, const WirtingerView& b) {
  require_same_chart(a.chart, b.chart, "view composition");
  return WirtingerView{a.chart, mat_mul(a.m, b.m)};
}

}  // namespace tensorlift
