#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "tensorlift/geometry.hpp"
#include "tensorlift/verify.hpp"

using namespace tensorlift;

namespace {

bool endo_is(const Endo11& f, const Endo11& g) {
  for (std::size_t i = 0; i < f.m.size(); ++i) {
    for (std::size_t j = 0; j < f.m.size(); ++j) {
      if (!is_identically_zero(f.m[i][j] - g.m[i][j])) return false;
    }
  }
  return true;
}

PointMap random_point(SplitMix64& rng, const ExtendedChart& chart) {
  PointMap pt;
  for (int r = 0; r <= chart.order; ++r) {
    for (int a = 1; a <= chart.base_dim; ++a) {
      pt[VarRef{r, a}] = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    }
  }
  return pt;
}

}  // namespace

TEST_CASE("canonical structure swaps paired frame fields") {
  ExtendedChart c = ExtendedChart::base(2, 1);
  Endo11 j = canonical_structure(c);
  VectorField dx = VectorField::frame(c, {0, 1});
  VectorField dy = VectorField::frame(c, {0, 2});
  VectorField jx = apply_endo(j, dx);
  VectorField jy = apply_endo(j, dy);
  CHECK(is_identically_zero(jx.components[0] - dy.components[0]));
  CHECK(is_identically_zero(jx.components[1] - dy.components[1]));
  CHECK(is_identically_zero(jy.components[0] + dx.components[0]));
  CHECK(is_identically_zero(jy.components[1] + dx.components[1]));
}

TEST_CASE("canonical structure squares to minus the identity on the whole grid") {
  for (int m = 1; m <= 2; ++m) {
    for (int k = 0; k <= 2; ++k) {
      ExtendedChart c = ExtendedChart::base(2 * m, m).at_order(k);
      Endo11 j = canonical_structure(c);
      Endo11 sq = compose_endo(j, j);
      Endo11 minus_id = scale(Expr::integer(-1), Endo11::identity(c));
      CHECK(endo_is(sq, minus_id));
    }
  }
}

TEST_CASE("missing complex pairing is an error") {
  ExtendedChart c = ExtendedChart::base(2);
  CHECK_THROWS_WITH_AS(canonical_structure(c), "chart has no complex pairing", Error);
  CHECK_THROWS_AS(to_wirtinger(Endo11::identity(c)), Error);
}

TEST_CASE("composition: identity law and chart mismatch") {
  ExtendedChart c = ExtendedChart::base(3);
  SplitMix64 rng(5);
  Endo11 f = random_endo(rng, c, 2, 3);
  CHECK(endo_is(compose_endo(f, Endo11::identity(c)), f));
  CHECK(endo_is(compose_endo(Endo11::identity(c), f), f));

  ExtendedChart other = ExtendedChart::base(2);
  CHECK_THROWS_AS(compose_endo(f, Endo11::identity(other)), Error);
  CHECK_THROWS_AS(apply_endo(f, VectorField::zero(other)), Error);
}

TEST_CASE("composition matches the dense matrix product numerically") {
  ExtendedChart c = ExtendedChart::base(3);
  SplitMix64 rng(7);
  Endo11 f = random_endo(rng, c, 0, 3);  // constant matrices
  Endo11 g = random_endo(rng, c, 0, 3);
  Endo11 fg = compose_endo(f, g);

  PointMap pt = random_point(rng, c);
  int d = c.frame_dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::complex<double> direct(0.0, 0.0);
      for (int k = 0; k < d; ++k) {
        direct += eval_numeric(f.m[i][k], pt) * eval_numeric(g.m[k][j], pt);
      }
      CHECK(std::abs(direct - eval_numeric(fg.m[i][j], pt)) <= 1e-12);
    }
  }
}

TEST_CASE("apply is compatible with compose") {
  ExtendedChart c = ExtendedChart::base(2);
  SplitMix64 rng(11);
  for (int i = 0; i < 4; ++i) {
    Endo11 f = random_endo(rng, c, 2, 2);
    Endo11 g = random_endo(rng, c, 2, 2);
    VectorField x = random_vector(rng, c, 2, 2);
    VectorField lhs = apply_endo(compose_endo(f, g), x);
    VectorField rhs = apply_endo(f, apply_endo(g, x));
    for (int j = 0; j < c.frame_dim(); ++j) {
      CHECK(is_identically_zero(lhs.components[j] - rhs.components[j]));
    }
  }
}

TEST_CASE("apply identity is the identity") {
  ExtendedChart c = ExtendedChart::base(3);
  SplitMix64 rng(13);
  VectorField x = random_vector(rng, c, 2, 3);
  VectorField ix = apply_endo(Endo11::identity(c), x);
  for (int j = 0; j < c.frame_dim(); ++j) {
    CHECK(ix.components[j] == x.components[j]);
  }
}

TEST_CASE("tensor product: projection, trace, rank-one algebra") {
  ExtendedChart c = ExtendedChart::base(2);
  VectorField d1 = VectorField::frame(c, {0, 1});
  OneForm dx1 = OneForm::coordinate(c, {0, 1});
  Endo11 proj = tensor_product(d1, dx1);
  // projection onto span(d/dx1)
  CHECK(is_identically_zero(proj.m[0][0] - Expr::integer(1)));
  CHECK(is_identically_zero(proj.m[0][1]));
  CHECK(is_identically_zero(proj.m[1][0]));
  CHECK(is_identically_zero(proj.m[1][1]));

  // trace(U (x) w) = w(U)
  SplitMix64 rng(17);
  VectorField u = random_vector(rng, c, 2, 3);
  OneForm w = random_oneform(rng, c, 2, 3);
  CHECK(is_identically_zero(trace(tensor_product(u, w)).value - pairing(w, u).value));

  // (U (x) w)^2 = w(U) * (U (x) w), numerically at a random point
  Endo11 t = tensor_product(u, w);
  Endo11 t2 = compose_endo(t, t);
  Endo11 scaled = scale(pairing(w, u).value, t);
  PointMap pt = random_point(rng, c);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(eval_numeric(t2.m[i][j], pt) - eval_numeric(scaled.m[i][j], pt)) <= 1e-9);
    }
  }

  // apply(U (x) w, X) = w(X) * U
  VectorField x = random_vector(rng, c, 2, 3);
  VectorField lhs = apply_endo(t, x);
  VectorField rhs = scale(pairing(w, x).value, u);
  for (int j = 0; j < 2; ++j) CHECK(is_identically_zero(lhs.components[j] - rhs.components[j]));
}

TEST_CASE("wirtinger view diagonalizes the canonical structure") {
  for (int m = 1; m <= 2; ++m) {
    ExtendedChart c = ExtendedChart::base(2 * m, m);
    WirtingerView v = to_wirtinger(canonical_structure(c));
    Expr i_unit = Expr::imaginary();
    for (int a = 0; a < m; ++a) {
      CHECK(is_identically_zero(v.m[a][a] - i_unit));
      CHECK(is_identically_zero(v.m[m + a][m + a] + i_unit));
    }
    for (int i = 0; i < 2 * m; ++i) {
      for (int j = 0; j < 2 * m; ++j) {
        if (i != j) CHECK(is_identically_zero(v.m[i][j]));
      }
    }
  }
}

TEST_CASE("wirtinger view of the identity is the identity") {
  ExtendedChart c = ExtendedChart::base(2, 1);
  WirtingerView v = to_wirtinger(Endo11::identity(c));
  CHECK(is_identically_zero(v.m[0][0] - Expr::integer(1)));
  CHECK(is_identically_zero(v.m[1][1] - Expr::integer(1)));
  CHECK(is_identically_zero(v.m[0][1]));
  CHECK(is_identically_zero(v.m[1][0]));
}

TEST_CASE("wirtinger round-trip is exact") {
  SplitMix64 rng(19);
  for (int m = 1; m <= 2; ++m) {
    ExtendedChart c = ExtendedChart::base(2 * m, m).at_order(1);
    Endo11 g = Endo11::zero(c);
    for (auto& row : g.m) {
      for (Expr& e : row) e = random_polynomial(rng, c.base_dim, 1, 2);
    }
    Endo11 back = from_wirtinger(to_wirtinger(g));
    for (std::size_t i = 0; i < g.m.size(); ++i) {
      for (std::size_t j = 0; j < g.m.size(); ++j) {
        CHECK(is_identically_zero(back.m[i][j] - g.m[i][j]));
      }
    }
  }
}

TEST_CASE("wirtinger view preserves composition numerically") {
  ExtendedChart c = ExtendedChart::base(4, 2);
  SplitMix64 rng(23);
  Endo11 f = random_endo(rng, c, 1, 2);
  Endo11 g = random_endo(rng, c, 1, 2);
  WirtingerView lhs = to_wirtinger(compose_endo(f, g));
  WirtingerView rhs = compose_views(to_wirtinger(f), to_wirtinger(g));
  PointMap pt = random_point(rng, c);
  for (int i = 0; i < c.frame_dim(); ++i) {
    for (int j = 0; j < c.frame_dim(); ++j) {
      CHECK(std::abs(eval_numeric(lhs.m[i][j], pt) - eval_numeric(rhs.m[i][j], pt)) <= 1e-9);
    }
  }
}

TEST_CASE("field validation catches dimension and level errors") {
  ExtendedChart c = ExtendedChart::base(2);
  CHECK_THROWS_AS(VectorField(c, std::vector<Expr>(3, Expr::integer(0))), Error);
  CHECK_THROWS_AS(ScalarField(c, Expr::variable(1, 1)), Error);   // level beyond order
  CHECK_THROWS_AS(ScalarField(c, Expr::variable(3, 0)), Error);   // index beyond dim
  CHECK_THROWS_AS(ExtendedChart::base(3, 1), Error);              // pairing needs 2m = n
}
