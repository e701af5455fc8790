#include "tensorlift/canonical.hpp"

#include <algorithm>
#include <sstream>

#include "tensorlift/error.hpp"

namespace tensorlift {
namespace poly {

// ---------------------------------------------------------------------------
// Atom

struct Atom::Data {
  bool is_prim = false;
  VarRef var{0, 1};
  Primitive prim = Primitive::Sin;
  std::shared_ptr<const CanonicalForm> arg;
  std::string display;
};

Atom Atom::variable(VarRef v) {
  auto d = std::make_shared<Data>();
  d->is_prim = false;
  d->var = v;
  d->display = Expr::variable(v).str();
  return Atom(std::move(d));
}

Atom Atom::primitive(Primitive p, std::shared_ptr<const CanonicalForm> argument) {
  auto d = std::make_shared<Data>();
  d->is_prim = true;
  d->prim = p;
  d->display = std::string(primitive_name(p)) + "(" + argument->str() + ")";
  d->arg = std::move(argument);
  return Atom(std::move(d));
}

bool Atom::is_variable() const { return !data_->is_prim; }
VarRef Atom::var() const { return data_->var; }
bool Atom::is_primitive() const { return data_->is_prim; }
Primitive Atom::prim() const { return data_->prim; }
const CanonicalForm& Atom::argument() const { return *data_->arg; }
const std::string& Atom::str() const { return data_->display; }

std::strong_ordering Atom::operator<=>(const Atom& o) const {
  if (data_ == o.data_) return std::strong_ordering::equal;
  if (data_->is_prim != o.data_->is_prim) {
    return data_->is_prim ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (!data_->is_prim) return data_->var <=> o.data_->var;
  int c = data_->display.compare(o.data_->display);
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::pair<Atom, int>> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // merge equal atoms, drop zero exponents
  std::vector<std::pair<Atom, int>> merged;
  for (auto& f : factors_) {
    if (!merged.empty() && merged.back().first == f.first) {
      merged.back().second += f.second;
    } else {
      merged.push_back(f);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& f) { return f.second == 0; }),
               merged.end());
  factors_ = std::move(merged);
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

int Monomial::degree_in(const Atom& a) const {
  for (const auto& f : factors_) {
    if (f.first == a) return f.second;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<std::pair<Atom, int>> all = factors_;
  all.insert(all.end(), o.factors_.begin(), o.factors_.end());
  return Monomial(std::move(all));
}

bool Monomial::divides(const Monomial& o) const {
  for (const auto& f : factors_) {
    if (o.degree_in(f.first) < f.second) return false;
  }
  return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
  std::vector<std::pair<Atom, int>> q;
  for (const auto& f : o.factors_) {
    int e = f.second - degree_in(f.first);
    if (e > 0) q.emplace_back(f.first, e);
  }
  return Monomial(std::move(q));
}

bool Monomial::operator==(const Monomial& o) const {
  if (factors_.size() != o.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].second != o.factors_[i].second) return false;
    if (!(factors_[i].first == o.factors_[i].first)) return false;
  }
  return true;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
  // Same total degree: lexicographic, earliest atom most significant.
  std::size_t i = 0, j = 0;
  while (i < factors_.size() && j < o.factors_.size()) {
    auto ao = factors_[i].first <=> o.factors_[j].first;
    if (ao == std::strong_ordering::less) {
      // this has a power of an earlier atom that o lacks -> this is greater
      return std::strong_ordering::greater;
    }
    if (ao == std::strong_ordering::greater) return std::strong_ordering::less;
    if (factors_[i].second != o.factors_[j].second) {
      return factors_[i].second > o.factors_[j].second ? std::strong_ordering::greater
                                                       : std::strong_ordering::less;
    }
    ++i;
    ++j;
  }
  if (i < factors_.size()) return std::strong_ordering::greater;
  if (j < o.factors_.size()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& f : factors_) {
    if (!first) os << "*";
    os << f.first.str();
    if (f.second != 1) os << "^" << f.second;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(GaussianRational c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.emplace(Monomial(), std::move(c));
  return p;
}

Polynomial Polynomial::atom(Atom a) {
  Polynomial p;
  p.terms_.emplace(Monomial({{std::move(a), 1}}), GaussianRational(1));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussianRational Polynomial::constant_value() const {
  if (terms_.empty()) return GaussianRational(0);
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

const Monomial& Polynomial::leading_monomial() const { return terms_.begin()->first; }
const GaussianRational& Polynomial::leading_coefficient() const { return terms_.begin()->second; }

void Polynomial::add_term(Monomial m, GaussianRational c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return {};
  Polynomial r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::pow(long e) const {
  Polynomial acc = one();
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::strong_ordering Polynomial::operator<=>(const Polynomial& o) const {
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    auto mo = a->first <=> b->first;
    if (mo != std::strong_ordering::equal) return mo;
    auto co = a->second <=> b->second;
    if (co != std::strong_ordering::equal) return co;
  }
  if (a != terms_.end()) return std::strong_ordering::greater;
  if (b != o.terms_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

bool Polynomial::contains_primitive_atom() const {
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) {
      if (f.first.is_primitive()) return true;
    }
  }
  return false;
}

std::optional<Atom> Polynomial::max_atom() const {
  std::optional<Atom> best;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) {
      if (!best || *best < f.first) best = f.first;
    }
  }
  return best;
}

int Polynomial::degree_in(const Atom& a) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(a));
  return d;
}

std::map<int, Polynomial> Polynomial::univariate_in(const Atom& x) const {
  std::map<int, Polynomial> out;
  for (const auto& [m, c] : terms_) {
    int d = m.degree_in(x);
    std::vector<std::pair<Atom, int>> rest;
    for (const auto& f : m.factors()) {
      if (!(f.first == x)) rest.push_back(f);
    }
    out[d].add_term(Monomial(std::move(rest)), c);
  }
  return out;
}

Polynomial Polynomial::from_univariate(const Atom& x, const std::map<int, Polynomial>& coeffs) {
  Polynomial r;
  for (const auto& [d, c] : coeffs) {
    Polynomial xd;
    if (d == 0) {
      xd = one();
    } else {
      xd = Polynomial::atom(x).pow(d);
    }
    r = r + c * xd;
  }
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) {
        os << "-";
        cs = cs.substr(1);
      }
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    if (m.empty()) {
      os << cs;
    } else if (cs == "1") {
      os << m.str();
    } else {
      os << cs << "*" << m.str();
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return std::nullopt;
  if (b.is_constant()) return a.scaled(b.constant_value().inverse());
  Polynomial q;
  Polynomial r = a;
  const Monomial& lmb = b.leading_monomial();
  const GaussianRational& lcb = b.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lmr = r.leading_monomial();
    if (!lmb.divides(lmr)) return std::nullopt;
    Monomial qm = lmb.divide_into(lmr);
    GaussianRational qc = r.leading_coefficient() / lcb;
    Polynomial t;
    t.add_term(qm, qc);
    q = q + t;
    r = r - t * b;
  }
  return q;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto q = try_divide(a, b);
  if (!q) throw EngineBug("inexact polynomial division");
  return *q;
}

namespace {

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.leading_coefficient().inverse());
}

// gcd of the coefficients of a univariate view (a polynomial in fewer atoms)
Polynomial coefficient_gcd(const std::map<int, Polynomial>& coeffs) {
  Polynomial g;
  for (const auto& [d, c] : coeffs) {
    g = gcd(g, c);
    if (!g.is_zero() && g.is_constant()) return Polynomial::one();
  }
  return g;
}

// pseudo-remainder of univariate views (maps degree -> coefficient poly)
std::map<int, Polynomial> pseudo_rem(std::map<int, Polynomial> p,
                                     const std::map<int, Polynomial>& q) {
  auto deg = [](const std::map<int, Polynomial>& u) {
    return u.empty() ? -1 : u.rbegin()->first;
  };
  int dq = deg(q);
  const Polynomial& lq = q.rbegin()->second;
  while (deg(p) >= dq) {
    int dp = deg(p);
    Polynomial lp = p.rbegin()->second;
    // p := lq * p - lp * x^(dp-dq) * q
    std::map<int, Polynomial> next;
    for (const auto& [d, c] : p) {
      Polynomial v = c * lq;
      if (!v.is_zero()) next[d] = std::move(v);
    }
    for (const auto& [d, c] : q) {
      int dd = d + dp - dq;
      Polynomial v = c * lp;
      auto it = next.find(dd);
      if (it == next.end()) {
        if (!v.is_zero()) next[dd] = -v;
      } else {
        it->second = it->second - v;
        if (it->second.is_zero()) next.erase(it);
      }
    }
    p = std::move(next);
  }
  return p;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Polynomial::one();

  Atom x = std::max(*a.max_atom(), *b.max_atom());
  int da = a.degree_in(x), db = b.degree_in(x);
  if (da == 0 || db == 0) {
    // x is absent from one side: gcd(a, b) = gcd(content_x(a), b)
    const Polynomial& with = da > 0 ? a : b;
    const Polynomial& without = da > 0 ? b : a;
    return gcd(coefficient_gcd(with.univariate_in(x)), without);
  }

  auto ua = a.univariate_in(x);
  auto ub = b.univariate_in(x);
  Polynomial ca = coefficient_gcd(ua);
  Polynomial cb = coefficient_gcd(ub);
  Polynomial cont = gcd(ca, cb);

  auto primitive = [&x](const Polynomial& p, const Polynomial& content) {
    return divide_exact(p, content);
  };
  Polynomial A = primitive(a, ca);
  Polynomial B = primitive(b, cb);
  if (A.degree_in(x) < B.degree_in(x)) std::swap(A, B);

  // primitive pseudo-remainder sequence
  while (true) {
    auto r = pseudo_rem(A.univariate_in(x), B.univariate_in(x));
    Polynomial R = Polynomial::from_univariate(x, r);
    if (R.is_zero()) break;
    if (R.degree_in(x) == 0) {
      // coprime in x
      return monic(cont);
    }
    Polynomial cr = coefficient_gcd(R.univariate_in(x));
    R = divide_exact(R, cr);
    A = std::move(B);
    B = std::move(R);
  }
  return monic(cont * B);
}

}  // namespace poly

// ---------------------------------------------------------------------------
// normalize

namespace {

using poly::Polynomial;

struct RatForm {
  Polynomial num;
  Polynomial den = Polynomial::one();
};

void reduce(RatForm& f) {
  if (f.num.is_zero()) {
    f.den = Polynomial::one();
    return;
  }
  if (!f.den.is_constant()) {
    Polynomial g = poly::gcd(f.num, f.den);
    if (!g.is_constant()) {
      f.num = poly::divide_exact(f.num, g);
      f.den = poly::divide_exact(f.den, g);
    }
  }
  GaussianRational lc = f.den.leading_coefficient();
  if (!lc.is_one()) {
    GaussianRational inv = lc.inverse();
    f.num = f.num.scaled(inv);
    f.den = f.den.scaled(inv);
  }
}

RatForm norm_rec(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return {Polynomial::constant(e.constant_value()), Polynomial::one()};
    case Expr::Kind::Var:
      return {Polynomial::atom(poly::Atom::variable(e.var())), Polynomial::one()};
    case Expr::Kind::Sum: {
      RatForm acc;
      for (const Expr& t : e.operands()) {
        RatForm f = norm_rec(t);
        if (acc.den == f.den) {
          acc.num = acc.num + f.num;
        } else {
          acc.num = acc.num * f.den + f.num * acc.den;
          acc.den = acc.den * f.den;
          reduce(acc);
        }
      }
      reduce(acc);
      return acc;
    }
    case Expr::Kind::Product: {
      RatForm acc{Polynomial::one(), Polynomial::one()};
      for (const Expr& t : e.operands()) {
        RatForm f = norm_rec(t);
        acc.num = acc.num * f.num;
        acc.den = acc.den * f.den;
        if (acc.num.is_zero()) return {Polynomial(), Polynomial::one()};
      }
      reduce(acc);
      return acc;
    }
    case Expr::Kind::Power: {
      RatForm f = norm_rec(e.base());
      long ex = e.exponent();
      if (ex < 0) {
        if (f.num.is_zero()) throw Error("zero denominator");
        std::swap(f.num, f.den);
        ex = -ex;
      }
      // input is reduced and coprime; powers stay coprime
      f.num = f.num.pow(ex);
      f.den = f.den.pow(ex);
      reduce(f);  // re-normalize leading coefficient
      return f;
    }
    case Expr::Kind::Quotient: {
      RatForm n = norm_rec(e.operands()[0]);
      RatForm d = norm_rec(e.operands()[1]);
      if (d.num.is_zero()) throw Error("zero denominator");
      RatForm f;
      f.num = n.num * d.den;
      f.den = n.den * d.num;
      reduce(f);
      return f;
    }
    case Expr::Kind::Call: {
      RatForm a = norm_rec(e.operands()[0]);
      auto form = std::make_shared<CanonicalForm>();
      form->num = std::move(a.num);
      form->den = std::move(a.den);
      form->residual =
          form->num.contains_primitive_atom() || form->den.contains_primitive_atom();
      return {Polynomial::atom(poly::Atom::primitive(e.primitive(), std::move(form))),
              Polynomial::one()};
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace

std::string CanonicalForm::str() const {
  if (den.is_constant() && den.constant_value().is_one()) return num.str();
  return "(" + num.str() + ")/(" + den.str() + ")";
}

CanonicalForm normalize(const Expr& e) {
  RatForm f = norm_rec(e);
  CanonicalForm out;
  out.num = std::move(f.num);
  out.den = std::move(f.den);
  out.residual = out.num.contains_primitive_atom() || out.den.contains_primitive_atom();
  return out;
}

bool is_identically_zero(const Expr& e) {
  CanonicalForm f = normalize(e);
  return f.is_zero() && !f.residual;
}

}  // namespace tensorlift
