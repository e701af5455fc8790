#include "tensorlift/fields.hpp"

namespace tensorlift {

namespace {

void check_levels(const ExtendedChart& chart, const Expr& e, const char* what) {
  if (e.max_level() > chart.order) {
    throw Error(std::string(what) + " uses level " + std::to_string(e.max_level()) +
                " beyond chart order " + std::to_string(chart.order));
  }
  for (VarRef v : e.vars()) {
    if (v.index > chart.base_dim) {
      throw Error(std::string(what) + " uses coordinate " + v.str() + " beyond chart dimension " +
                  std::to_string(chart.base_dim));
    }
  }
}

}  // namespace

void require_same_chart(const ExtendedChart& a, const ExtendedChart& b, const char* op) {
  if (!(a == b)) {
    throw Error(std::string("chart mismatch in ") + op + ": " + a.str() + " vs " + b.str());
  }
}

ScalarField::ScalarField(ExtendedChart c, Expr v) : chart(c), value(std::move(v)) {
  chart.validate();
  check_levels(chart, value, "scalar field");
}

VectorField::VectorField(ExtendedChart c, std::vector<Expr> comps)
    : chart(c), components(std::move(comps)) {
  chart.validate();
  if (static_cast<int>(components.size()) != chart.frame_dim()) {
    throw Error("vector field has " + std::to_string(components.size()) + " components, chart needs " +
                std::to_string(chart.frame_dim()));
  }
  for (const Expr& e : components) check_levels(chart, e, "vector field");
}

VectorField VectorField::zero(const ExtendedChart& c) {
  return VectorField(c, std::vector<Expr>(c.frame_dim(), Expr::integer(0)));
}

VectorField VectorField::frame(const ExtendedChart& c, FrameIndex f) {
  VectorField x = zero(c);
  x.at(f) = Expr::integer(1);
  return x;
}

OneForm::OneForm(ExtendedChart c, std::vector<Expr> comps)
    : chart(c), components(std::move(comps)) {
  chart.validate();
  if (static_cast<int>(components.size()) != chart.frame_dim()) {
    throw Error("one-form has " + std::to_string(components.size()) + " components, chart needs " +
                std::to_string(chart.frame_dim()));
  }
  for (const Expr& e : components) check_levels(chart, e, "one-form");
}

OneForm OneForm::zero(const ExtendedChart& c) {
  return OneForm(c, std::vector<Expr>(c.frame_dim(), Expr::integer(0)));
}

OneForm OneForm::coordinate(const ExtendedChart& c, FrameIndex f) {
  OneForm a = zero(c);
  a.at(f) = Expr::integer(1);
  return a;
}

Endo11::Endo11(ExtendedChart c, std::vector<std::vector<Expr>> mat) : chart(c), m(std::move(mat)) {
  chart.validate();
  std::size_t d = static_cast<std::size_t>(chart.frame_dim());
  if (m.size() != d) {
    throw Error("endomorphism has " + std::to_string(m.size()) + " rows, chart needs " +
                std::to_string(d));
  }
  for (const auto& row : m) {
    if (row.size() != d) throw Error("endomorphism matrix is not square");
    for (const Expr& e : row) check_levels(chart, e, "endomorphism");
  }
}

Endo11 Endo11::zero(const ExtendedChart& c) {
  std::size_t d = static_cast<std::size_t>(c.frame_dim());
  return Endo11(c, std::vector<std::vector<Expr>>(d, std::vector<Expr>(d, Expr::integer(0))));
}

Endo11 Endo11::identity(const ExtendedChart& c) {
  Endo11 f = zero(c);
  for (int i = 0; i < c.frame_dim(); ++i) f.m[i][i] = Expr::integer(1);
  return f;
}

Tensor12::Tensor12(ExtendedChart c, std::vector<std::vector<std::vector<Expr>>> comps)
    : chart(c), n(std::move(comps)) {
  chart.validate();
  std::size_t d = static_cast<std::size_t>(chart.frame_dim());
  if (n.size() != d) throw Error("(1,2)-tensor has wrong dimension");
  for (const auto& plane : n) {
    if (plane.size() != d) throw Error("(1,2)-tensor has wrong dimension");
    for (const auto& row : plane) {
      if (row.size() != d) throw Error("(1,2)-tensor has wrong dimension");
    }
  }
}

Tensor12 Tensor12::zero(const ExtendedChart& c) {
  std::size_t d = static_cast<std::size_t>(c.frame_dim());
  return Tensor12(c, std::vector<std::vector<std::vector<Expr>>>(
                         d, std::vector<std::vector<Expr>>(d, std::vector<Expr>(d, Expr::integer(0)))));
}

ScalarField add(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart, b.chart, "scalar addition");
  return ScalarField(a.chart, a.value + b.value);
}

ScalarField sub(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart, b.chart, "scalar subtraction");
  return ScalarField(a.chart, a.value - b.value);
}

ScalarField scale(const Expr& s, const ScalarField& f) {
  return ScalarField(f.chart, s * f.value);
}

namespace {
template <typename F>
F combine(const F& a, const F& b, const char* op, bool subtract) {
  require_same_chart(a.chart, b.chart, op);
  F r = a;
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    r.components[i] = subtract ? a.components[i] - b.components[i]
                               : a.components[i] + b.components[i];
  }
  return r;
}
}  // namespace

VectorField add(const VectorField& a, const VectorField& b) { return combine(a, b, "vector addition", false); }
VectorField sub(const VectorField& a, const VectorField& b) { return combine(a, b, "vector subtraction", true); }

VectorField scale(const Expr& s, const VectorField& x) {
  VectorField r = x;
  for (Expr& e : r.components) e = s * e;
  return r;
}

VectorField negate(const VectorField& x) { return scale(Expr::integer(-1), x); }

OneForm add(const OneForm& a, const OneForm& b) { return combine(a, b, "one-form addition", false); }
OneForm sub(const OneForm& a, const OneForm& b) { return combine(a, b, "one-form subtraction", true); }

OneForm scale(const Expr& s, const OneForm& a) {
  OneForm r = a;
  for (Expr& e : r.components) e = s * e;
  return r;
}

Endo11 add(const Endo11& a, const Endo11& b) {
  require_same_chart(a.chart, b.chart, "endomorphism addition");
  Endo11 r = a;
  for (std::size_t i = 0; i < r.m.size(); ++i) {
    for (std::size_t j = 0; j < r.m.size(); ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  }
  return r;
}

Endo11 sub(const Endo11& a, const Endo11& b) {
  require_same_chart(a.chart, b.chart, "endomorphism subtraction");
  Endo11 r = a;
  for (std::size_t i = 0; i < r.m.size(); ++i) {
    for (std::size_t j = 0; j < r.m.size(); ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  }
  return r;
}

Endo11 scale(const Expr& s, const Endo11& f) {
  Endo11 r = f;
  for (auto& row : r.m) {
    for (Expr& e : row) e = s * e;
  }
  return r;
}

Tensor12 sub(const Tensor12& a, const Tensor12& b) {
  require_same_chart(a.chart, b.chart, "(1,2)-tensor subtraction");
  Tensor12 r = a;
  std::size_t d = r.n.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) r.n[i][j][k] = a.n[i][j][k] - b.n[i][j][k];
    }
  }
  return r;
}

ScalarField pairing(const OneForm& alpha, const VectorField& x) {
  require_same_chart(alpha.chart, x.chart, "pairing");
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < alpha.components.size(); ++i) {
    terms.push_back(alpha.components[i] * x.components[i]);
  }
  return ScalarField(alpha.chart, Expr::sum(std::move(terms)));
}

}  // namespace tensorlift
