#include "tensorlift/expr.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "tensorlift/error.hpp"

namespace tensorlift {

const char* primitive_name(Primitive p) {
  switch (p) {
    case Primitive::Sin: return "sin";
    case Primitive::Cos: return "cos";
    case Primitive::Exp: return "exp";
  }
  return "?";
}

struct Expr::Node {
  Kind kind;
  GaussianRational value;    // Constant
  VarRef var{0, 1};          // Var
  std::vector<Expr> kids;    // Sum, Product, Quotient (2), Call (1), Power (1)
  long exponent = 0;         // Power
  Primitive prim = Primitive::Sin;
  int max_level = -1;
  std::size_t hash = 0;
};

namespace {

std::size_t hash_mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_gr(const GaussianRational& g) {
  std::hash<std::string> hs;
  return hs(g.re().get_str()) * 31 + hs(g.im().get_str());
}

std::shared_ptr<const Expr::Node> make_node(Expr::Node n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL;
  switch (n.kind) {
    case Expr::Kind::Constant:
      h = hash_mix(h, hash_gr(n.value));
      n.max_level = -1;
      break;
    case Expr::Kind::Var:
      h = hash_mix(h, (static_cast<std::size_t>(n.var.level) << 20) ^
                          static_cast<std::size_t>(n.var.index));
      n.max_level = n.var.level;
      break;
    default: {
      int lvl = -1;
      for (const Expr& k : n.kids) {
        h = hash_mix(h, k.hash());
        lvl = std::max(lvl, k.max_level());
      }
      if (n.kind == Expr::Kind::Power) h = hash_mix(h, static_cast<std::size_t>(n.exponent));
      if (n.kind == Expr::Kind::Call) h = hash_mix(h, static_cast<std::size_t>(n.prim));
      n.max_level = lvl;
      break;
    }
  }
  n.hash = h;
  return std::make_shared<const Expr::Node>(std::move(n));
}

const Expr& zero_expr() {
  static const Expr z = Expr::constant(GaussianRational(0));
  return z;
}
const Expr& one_expr() {
  static const Expr o = Expr::constant(GaussianRational(1));
  return o;
}

}  // namespace

Expr::Expr() : node_(nullptr) { *this = zero_expr(); }

Expr Expr::constant(GaussianRational c) {
  Node n;
  n.kind = Kind::Constant;
  n.value = std::move(c);
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(VarRef v) {
  if (v.index < 1 || v.level < 0) throw Error("invalid variable " + v.str());
  Node n;
  n.kind = Kind::Var;
  n.var = v;
  return Expr(make_node(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> kids;
  GaussianRational c(0);
  for (Expr& t : terms) {
    if (t.kind() == Kind::Constant) {
      c += t.constant_value();
    } else if (t.kind() == Kind::Sum) {
      for (const Expr& k : t.operands()) {
        if (k.kind() == Kind::Constant) {
          c += k.constant_value();
        } else {
          kids.push_back(k);
        }
      }
    } else {
      kids.push_back(std::move(t));
    }
  }
  if (!c.is_zero()) kids.push_back(constant(c));
  if (kids.empty()) return zero_expr();
  if (kids.size() == 1) return kids.front();
  Node n;
  n.kind = Kind::Sum;
  n.kids = std::move(kids);
  return Expr(make_node(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> kids;
  GaussianRational c(1);
  for (Expr& f : factors) {
    if (f.kind() == Kind::Constant) {
      c *= f.constant_value();
    } else if (f.kind() == Kind::Product) {
      for (const Expr& k : f.operands()) {
        if (k.kind() == Kind::Constant) {
          c *= k.constant_value();
        } else {
          kids.push_back(k);
        }
      }
    } else {
      kids.push_back(std::move(f));
    }
  }
  if (c.is_zero()) return zero_expr();
  if (kids.empty()) return constant(c);
  if (!c.is_one()) kids.insert(kids.begin(), constant(c));
  if (kids.size() == 1) return kids.front();
  Node n;
  n.kind = Kind::Product;
  n.kids = std::move(kids);
  return Expr(make_node(std::move(n)));
}

Expr Expr::power(const Expr& base, long exponent) {
  if (exponent == 0) return one_expr();
  if (exponent == 1) return base;
  if (base.kind() == Kind::Constant) {
    if (base.constant_value().is_zero() && exponent < 0) throw Error("division by zero");
    return constant(base.constant_value().pow(exponent));
  }
  Node n;
  n.kind = Kind::Power;
  n.kids = {base};
  n.exponent = exponent;
  return Expr(make_node(std::move(n)));
}

Expr Expr::quotient(const Expr& num, const Expr& den) {
  if (den.kind() == Kind::Constant) {
    if (den.constant_value().is_zero()) throw Error("division by zero");
    return product({constant(den.constant_value().inverse()), num});
  }
  if (num.is_zero()) return zero_expr();
  Node n;
  n.kind = Kind::Quotient;
  n.kids = {num, den};
  return Expr(make_node(std::move(n)));
}

Expr Expr::call(Primitive p, const Expr& argument) {
  if (argument.is_zero()) {
    switch (p) {
      case Primitive::Sin: return zero_expr();
      case Primitive::Cos: return one_expr();
      case Primitive::Exp: return one_expr();
    }
  }
  Node n;
  n.kind = Kind::Call;
  n.prim = p;
  n.kids = {argument};
  return Expr(make_node(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return is_constant() && node_->value.is_zero(); }
bool Expr::is_one() const { return is_constant() && node_->value.is_one(); }
const GaussianRational& Expr::constant_value() const { return node_->value; }
VarRef Expr::var() const { return node_->var; }
const std::vector<Expr>& Expr::operands() const { return node_->kids; }
long Expr::exponent() const { return node_->exponent; }
const Expr& Expr::base() const { return node_->kids.front(); }
Primitive Expr::primitive() const { return node_->prim; }
int Expr::max_level() const { return node_->max_level; }
std::size_t Expr::hash() const { return node_->hash; }

bool Expr::operator==(const Expr& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash || node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Constant: return node_->value == o.node_->value;
    case Kind::Var: return node_->var == o.node_->var;
    case Kind::Power:
      if (node_->exponent != o.node_->exponent) return false;
      break;
    case Kind::Call:
      if (node_->prim != o.node_->prim) return false;
      break;
    default: break;
  }
  if (node_->kids.size() != o.node_->kids.size()) return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i) {
    if (!(node_->kids[i] == o.node_->kids[i])) return false;
  }
  return true;
}

void Expr::collect_vars(std::set<VarRef>& out) const {
  switch (kind()) {
    case Kind::Constant: return;
    case Kind::Var: out.insert(node_->var); return;
    default:
      for (const Expr& k : node_->kids) k.collect_vars(out);
  }
}

std::set<VarRef> Expr::vars() const {
  std::set<VarRef> s;
  collect_vars(s);
  return s;
}

// ---------------------------------------------------------------------------
// Printing. Precedence levels: sum 1, product/quotient 2, power 3, atom 4.

namespace {

int precedence_of(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Sum: return 1;
    case Expr::Kind::Product:
    case Expr::Kind::Quotient: return 2;
    case Expr::Kind::Power: return 3;
    case Expr::Kind::Constant: {
      const GaussianRational& c = e.constant_value();
      if (c.is_integer() && !(c.re() < 0)) return 4;
      if (!c.is_real() && !(c.re() == 0)) return 4;  // renders with own parens
      return 2;                                      // "3/2", "-1", "2*i"
    }
    default: return 4;
  }
}

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec);

void print_wrapped(std::ostringstream& os, const Expr& e, int parent_prec) {
  if (precedence_of(e) < parent_prec) {
    os << "(";
    print_expr(os, e, 0);
    os << ")";
  } else {
    print_expr(os, e, parent_prec);
  }
}

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      os << e.constant_value().str();
      break;
    case Expr::Kind::Var: {
      VarRef v = e.var();
      os << "x" << v.index;
      if (v.level != 0) os << "@" << v.level;
      break;
    }
    case Expr::Kind::Sum: {
      bool first = true;
      for (const Expr& t : e.operands()) {
        // Fold a leading -1 or negative constant factor into the separator.
        Expr term = t;
        bool neg = false;
        if (t.kind() == Expr::Kind::Product && t.operands().front().is_constant()) {
          GaussianRational c = t.operands().front().constant_value();
          if (c.is_real() && c.re() < 0) {
            neg = true;
            std::vector<Expr> rest(t.operands().begin() + 1, t.operands().end());
            rest.insert(rest.begin(), Expr::constant(-c));
            term = Expr::product(std::move(rest));
          }
        } else if (t.is_constant() && t.constant_value().is_real() && t.constant_value().re() < 0) {
          neg = true;
          term = Expr::constant(-t.constant_value());
        }
        if (first) {
          if (neg) os << "-";
          first = false;
        } else {
          os << (neg ? " - " : " + ");
        }
        print_wrapped(os, term, 2);
      }
      break;
    }
    case Expr::Kind::Product: {
      const auto& ops = e.operands();
      bool printed_any = false;
      for (std::size_t idx = 0; idx < ops.size(); ++idx) {
        const Expr& f = ops[idx];
        if (idx == 0 && f.is_constant()) {
          const GaussianRational& c = f.constant_value();
          if (c.is_real() && c.re() == -1) {
            os << "-";  // sign only, no separator
            continue;
          }
        }
        if (printed_any) os << "*";
        print_wrapped(os, f, printed_any ? 3 : 2);
        printed_any = true;
      }
      break;
    }
    case Expr::Kind::Quotient: {
      print_wrapped(os, e.operands()[0], 2);
      os << "/";
      print_wrapped(os, e.operands()[1], 3);
      break;
    }
    case Expr::Kind::Power: {
      print_wrapped(os, e.base(), 4);
      os << "^" << e.exponent();
      break;
    }
    case Expr::Kind::Call: {
      os << primitive_name(e.primitive()) << "(";
      print_expr(os, e.operands()[0], 0);
      os << ")";
      break;
    }
  }
  (void)parent_prec;
}

}  // namespace

std::string Expr::str() const {
  std::ostringstream os;
  print_expr(os, *this, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Differentiation.

namespace {

Expr diff_impl(const Expr& e, VarRef v) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return Expr::integer(0);
    case Expr::Kind::Var:
      return e.var() == v ? Expr::integer(1) : Expr::integer(0);
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      terms.reserve(e.operands().size());
      for (const Expr& t : e.operands()) terms.push_back(diff_impl(t, v));
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      const auto& fs = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Expr d = diff_impl(fs[i], v);
        if (d.is_zero()) continue;
        std::vector<Expr> factors = fs;
        factors[i] = d;
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
      Expr db = diff_impl(e.base(), v);
      if (db.is_zero()) return Expr::integer(0);
      return Expr::product(
          {Expr::integer(e.exponent()), Expr::power(e.base(), e.exponent() - 1), db});
    }
    case Expr::Kind::Quotient: {
      const Expr& n = e.operands()[0];
      const Expr& d = e.operands()[1];
      Expr dn = diff_impl(n, v);
      Expr dd = diff_impl(d, v);
      if (dd.is_zero()) return Expr::quotient(dn, d);
      return Expr::quotient(dn * d - n * dd, Expr::power(d, 2));
    }
    case Expr::Kind::Call: {
      const Expr& a = e.operands()[0];
      Expr da = diff_impl(a, v);
      if (da.is_zero()) return Expr::integer(0);
      Expr outer;
      switch (e.primitive()) {
        case Primitive::Sin: outer = Expr::call(Primitive::Cos, a); break;
        case Primitive::Cos: outer = -Expr::call(Primitive::Sin, a); break;
        case Primitive::Exp: outer = Expr::call(Primitive::Exp, a); break;
      }
      return outer * da;
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace

namespace derivative_log {
namespace {
struct Log {
  std::mutex mu;
  bool on = false;
  std::unordered_set<std::string> seen;
  std::vector<std::pair<Expr, VarRef>> records;
};
Log& log() {
  static Log l;
  return l;
}
}  // namespace

void enable() {
  Log& l = log();
  std::lock_guard<std::mutex> g(l.mu);
  l.on = true;
  l.seen.clear();
  l.records.clear();
}

void disable() {
  Log& l = log();
  std::lock_guard<std::mutex> g(l.mu);
  l.on = false;
}

bool enabled() {
  Log& l = log();
  std::lock_guard<std::mutex> g(l.mu);
  return l.on;
}

std::vector<std::pair<Expr, VarRef>> snapshot() {
  Log& l = log();
  std::lock_guard<std::mutex> g(l.mu);
  return l.records;
}

namespace {
void record(const Expr& e, VarRef v) {
  Log& l = log();
  std::lock_guard<std::mutex> g(l.mu);
  if (!l.on) return;
  std::string key = e.str() + "|" + v.str();
  if (l.seen.insert(std::move(key)).second) l.records.emplace_back(e, v);
}
}  // namespace
}  // namespace derivative_log

Expr differentiate(const Expr& e, VarRef v) {
  if (derivative_log::enabled() && !e.is_constant()) derivative_log::record(e, v);
  return diff_impl(e, v);
}

Expr total_derivative(const Expr& e) {
  std::vector<Expr> terms;
  for (VarRef v : e.vars()) {
    Expr d = differentiate(e, v);
    if (d.is_zero()) continue;
    terms.push_back(Expr::variable(VarRef{v.level + 1, v.index}) * d);
  }
  return Expr::sum(std::move(terms));
}

Expr total_derivative(const Expr& e, int times) {
  Expr r = e;
  for (int i = 0; i < times; ++i) r = total_derivative(r);
  return r;
}

// ---------------------------------------------------------------------------
// Numeric evaluation.

namespace {

std::complex<double> cpow_int(std::complex<double> b, long e, double guard,
                              const Expr& where) {
  if (e < 0) {
    if (std::abs(b) <= guard) {
      if (guard > 0) throw DegeneratePoint{};
      throw EvalError("numeric division by zero in " + where.str());
    }
    b = 1.0 / b;
    e = -e;
  }
  std::complex<double> acc(1.0, 0.0);
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

std::complex<double> eval_impl(const Expr& e, const PointMap& pt, double guard) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return e.constant_value().to_complex();
    case Expr::Kind::Var: {
      auto it = pt.find(e.var());
      if (it == pt.end()) throw EvalError("unassigned variable " + e.var().str());
      return it->second;
    }
    case Expr::Kind::Sum: {
      std::complex<double> s(0.0, 0.0);
      for (const Expr& t : e.operands()) s += eval_impl(t, pt, guard);
      return s;
    }
    case Expr::Kind::Product: {
      std::complex<double> p(1.0, 0.0);
      for (const Expr& f : e.operands()) p *= eval_impl(f, pt, guard);
      return p;
    }
    case Expr::Kind::Power:
      return cpow_int(eval_impl(e.base(), pt, guard), e.exponent(), guard, e);
    case Expr::Kind::Quotient: {
      std::complex<double> d = eval_impl(e.operands()[1], pt, guard);
      if (std::abs(d) <= guard) {
        if (guard > 0) throw DegeneratePoint{};
        throw EvalError("numeric division by zero in " + e.str());
      }
      return eval_impl(e.operands()[0], pt, guard) / d;
    }
    case Expr::Kind::Call: {
      std::complex<double> a = eval_impl(e.operands()[0], pt, guard);
      switch (e.primitive()) {
        case Primitive::Sin: return std::sin(a);
        case Primitive::Cos: return std::cos(a);
        case Primitive::Exp: return std::exp(a);
      }
      break;
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace

std::complex<double> eval_numeric(const Expr& e, const PointMap& point) {
  return eval_impl(e, point, 0.0);
}

std::complex<double> eval_guarded(const Expr& e, const PointMap& point, double denom_guard) {
  return eval_impl(e, point, denom_guard);
}

}  // namespace tensorlift
