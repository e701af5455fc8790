#include "tensorlift/lifts.hpp"

namespace tensorlift {

namespace {

void require_base(const ExtendedChart& chart, int max_level, const char* what) {
  if (chart.order != 0 || max_level > 0) {
    throw Error(std::string("not a base field: ") + what +
                " must live on an order-0 chart with level-0 components");
  }
}

Expr binom_expr(int n, int k) {
  return Expr::constant(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
}

}  // namespace

ScalarField lift_scalar(const ScalarField& f, LiftSpec spec) {
  require_base(f.chart, f.value.max_level(), "scalar");
  ExtendedChart target = f.chart.at_order(spec.target_order());
  return ScalarField(target, total_derivative(f.value, spec.complete_count));
}

VectorField lift_vector(const VectorField& x, LiftSpec spec) {
  int lvl = -1;
  for (const Expr& e : x.components) lvl = std::max(lvl, e.max_level());
  require_base(x.chart, lvl, "vector field");

  int a = spec.complete_count, b = spec.vertical_count;
  ExtendedChart target = x.chart.at_order(spec.target_order());
  VectorField out = VectorField::zero(target);
  GaussianRational denom = binomial(static_cast<unsigned long>(a + b), static_cast<unsigned long>(b));
  for (int s = 0; s <= a; ++s) {
    GaussianRational coeff =
        binomial(static_cast<unsigned long>(s + b), static_cast<unsigned long>(b)) / denom;
    Expr c = Expr::constant(coeff);
    for (int i = 1; i <= x.chart.base_dim; ++i) {
      Expr comp = total_derivative(x.components[x.chart.flat(FrameIndex{0, i})], s);
      out.at(FrameIndex{s + b, i}) = c * comp;
    }
  }
  return out;
}

OneForm lift_oneform(const OneForm& alpha, LiftSpec spec) {
  int lvl = -1;
  for (const Expr& e : alpha.components) lvl = std::max(lvl, e.max_level());
  require_base(alpha.chart, lvl, "one-form");

  int a = spec.complete_count;
  ExtendedChart target = alpha.chart.at_order(spec.target_order());
  OneForm out = OneForm::zero(target);
  for (int s = 0; s <= a; ++s) {
    Expr c = binom_expr(a, s);
    for (int i = 1; i <= alpha.chart.base_dim; ++i) {
      Expr comp = total_derivative(alpha.components[alpha.chart.flat(FrameIndex{0, i})], a - s);
      out.at(FrameIndex{s, i}) = c * comp;
    }
  }
  return out;
}

Endo11 lift_endo_complete(const Endo11& f, int k) {
  int lvl = -1;
  for (const auto& row : f.m) {
    for (const Expr& e : row) lvl = std::max(lvl, e.max_level());
  }
  require_base(f.chart, lvl, "endomorphism");
  if (k < 0) throw Error("lift order must be >= 0");

  int n = f.chart.base_dim;
  ExtendedChart target = f.chart.at_order(k);
  Endo11 out = Endo11::zero(target);
  // cache T^d of every base component
  std::vector<std::vector<std::vector<Expr>>> tpow(
      static_cast<std::size_t>(k) + 1,
      std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tpow[0][i][j] = f.m[i][j];
      for (int d = 1; d <= k; ++d) tpow[d][i][j] = total_derivative(tpow[d - 1][i][j]);
    }
  }
  for (int b = 0; b <= k; ++b) {
    for (int s = b; s <= k; ++s) {
      Expr c = binom_expr(s, b);
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          out.at(FrameIndex{s, i}, FrameIndex{b, j}) = c * tpow[s - b][i - 1][j - 1];
        }
      }
    }
  }
  return out;
}

Endo11 lift_endo_vertical(const Endo11& f, int k) {
  int lvl = -1;
  for (const auto& row : f.m) {
    for (const Expr& e : row) lvl = std::max(lvl, e.max_level());
  }
  require_base(f.chart, lvl, "endomorphism");
  if (k < 0) throw Error("lift order must be >= 0");

  int n = f.chart.base_dim;
  ExtendedChart target = f.chart.at_order(k);
  Endo11 out = Endo11::zero(target);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      out.at(FrameIndex{k, i}, FrameIndex{0, j}) = f.m[i - 1][j - 1];
    }
  }
  return out;
}

Tensor12 lift_tensor12_complete(const Tensor12& s, int k) {
  int lvl = -1;
  for (const auto& plane : s.n) {
    for (const auto& row : plane) {
      for (const Expr& e : row) lvl = std::max(lvl, e.max_level());
    }
  }
  require_base(s.chart, lvl, "(1,2)-tensor");
  if (k < 0) throw Error("lift order must be >= 0");

  int n = s.chart.base_dim;
  ExtendedChart target = s.chart.at_order(k);
  Tensor12 out = Tensor12::zero(target);
  // cache T^d of every base component
  std::vector<std::vector<std::vector<std::vector<Expr>>>> tpow(
      static_cast<std::size_t>(k) + 1,
      std::vector<std::vector<std::vector<Expr>>>(
          n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n))));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        tpow[0][i][j][l] = s.n[i][j][l];
        for (int d = 1; d <= k; ++d) tpow[d][i][j][l] = total_derivative(tpow[d - 1][i][j][l]);
      }
    }
  }
  for (int sv = 0; sv <= k; ++sv) {
    for (int q = 0; q <= sv; ++q) {
      for (int u = 0; u + q <= sv; ++u) {
        Expr c = binom_expr(sv, q) * binom_expr(sv - q, u);
        for (int i = 1; i <= n; ++i) {
          for (int j = 1; j <= n; ++j) {
            for (int l = 1; l <= n; ++l) {
              out.n[target.flat(FrameIndex{sv, i})][target.flat(FrameIndex{q, j})]
                   [target.flat(FrameIndex{u, l})] = c * tpow[sv - q - u][i - 1][j - 1][l - 1];
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace tensorlift
