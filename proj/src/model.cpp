#include "tensorlift/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tensorlift/parser.hpp"
#include "tensorlift/suite.hpp"

namespace tensorlift {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

// parses ["a", "b", "c"]
std::vector<std::string> parse_string_list(const std::string& value, int line) {
  std::string v = trim(value);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    throw ParseError(line, 1, "expected a [\"...\", ...] list");
  }
  std::vector<std::string> out;
  std::size_t i = 1;
  std::size_t end = v.size() - 1;
  while (i < end) {
    while (i < end && (std::isspace(static_cast<unsigned char>(v[i])) || v[i] == ',')) ++i;
    if (i >= end) break;
    if (v[i] != '"') throw ParseError(line, static_cast<int>(i) + 1, "expected '\"'");
    std::size_t close = v.find('"', i + 1);
    if (close == std::string::npos || close > end) {
      throw ParseError(line, static_cast<int>(i) + 1, "unterminated string");
    }
    out.push_back(v.substr(i + 1, close - i - 1));
    i = close + 1;
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

Expr parse_field_expr(const std::string& text, int line, const std::string& what) {
  try {
    Expr e = parse_expression(text);
    if (e.max_level() > 0) {
      throw ParseError(line, 1, what + " uses level " + std::to_string(e.max_level()) +
                                    "; definition fields live on the base chart");
    }
    return e;
  } catch (const ParseError& pe) {
    throw ParseError(line, pe.column, what + ": " + pe.what());
  }
}

struct Section {
  std::string type;  // "manifold", "scalar", ...
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, std::string>> entries;  // key -> value
  std::vector<int> entry_lines;
};

long parse_int_value(const std::string& v, int line, const std::string& key) {
  std::string t = trim(v);
  try {
    std::size_t used = 0;
    long r = std::stol(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing");
    return r;
  } catch (const std::exception&) {
    throw ParseError(line, 1, "invalid integer for " + key + ": '" + t + "'");
  }
}

}  // namespace

const ScalarField* ModelSet::find_scalar(const std::string& name) const {
  for (const auto& [n, f] : scalars) {
    if (n == name) return &f;
  }
  return nullptr;
}
const VectorField* ModelSet::find_vector(const std::string& name) const {
  for (const auto& [n, f] : vectors) {
    if (n == name) return &f;
  }
  return nullptr;
}
const OneForm* ModelSet::find_oneform(const std::string& name) const {
  for (const auto& [n, f] : oneforms) {
    if (n == name) return &f;
  }
  return nullptr;
}
const Endo11* ModelSet::find_endo(const std::string& name) const {
  for (const auto& [n, f] : endos) {
    if (n == name) return &f;
  }
  return nullptr;
}
const ContactDecl* ModelSet::find_contact(const std::string& name) const {
  for (const auto& [n, c] : contacts) {
    if (n == name) return &c;
  }
  return nullptr;
}

AlmostContactTriple ModelSet::triple(const ContactDecl& decl) const {
  const Endo11* f = find_endo(decl.f);
  const VectorField* u = find_vector(decl.u);
  const OneForm* w = find_oneform(decl.omega);
  if (!f || !u || !w) throw Error("contact triple references a missing field");
  return AlmostContactTriple(*f, *u, *w);
}

ModelSet parse_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open definition file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_definition_text(buf.str(), path);
}

ModelSet parse_definition_text(const std::string& text, const std::string& origin) {
  // 1. split into sections
  std::vector<Section> sections;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, static_cast<int>(line.size()), "expected ']'");
      std::vector<std::string> head = split_ws(line.substr(1, line.size() - 2));
      if (head.empty() || head.size() > 2) {
        throw ParseError(lineno, 1, "section header must be [type] or [type name]");
      }
      Section s;
      s.type = head[0];
      if (head.size() == 2) s.name = head[1];
      s.line = lineno;
      sections.push_back(std::move(s));
      continue;
    }
    if (sections.empty()) throw ParseError(lineno, 1, "content before any [section]");
    Section& sec = sections.back();
    if (sec.type == "contact") {
      // allow several key = value pairs on one line; values are bare names
      std::string norm;
      for (char c : line) norm += (c == '=') ? std::string(" = ") : std::string(1, c);
      std::vector<std::string> toks = split_ws(norm);
      std::size_t i = 0;
      while (i < toks.size()) {
        if (i + 2 >= toks.size() || toks[i + 1] != "=") {
          throw ParseError(lineno, 1, "expected key = value pairs in [contact] section");
        }
        sec.entries.emplace_back(toks[i], toks[i + 2]);
        sec.entry_lines.push_back(lineno);
        i += 3;
      }
    } else {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, 1, "expected key = value");
      sec.entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
      sec.entry_lines.push_back(lineno);
    }
  }

  // 2. the manifold section fixes the chart
  ModelSet model;
  bool have_manifold = false;
  for (const Section& sec : sections) {
    if (sec.type != "manifold") continue;
    if (have_manifold) throw ParseError(sec.line, 1, "duplicate [manifold] section");
    have_manifold = true;
    long dim = -1, order = -1;
    std::optional<int> pairing;
    for (std::size_t i = 0; i < sec.entries.size(); ++i) {
      const auto& [k, v] = sec.entries[i];
      int ln = sec.entry_lines[i];
      if (k == "dim") {
        dim = parse_int_value(v, ln, "dim");
      } else if (k == "order") {
        order = parse_int_value(v, ln, "order");
      } else if (k == "complex_pairs") {
        pairing = static_cast<int>(parse_int_value(v, ln, "complex_pairs"));
      } else {
        throw ParseError(ln, 1, "unknown manifold key '" + k + "'");
      }
    }
    if (dim < 1) throw ParseError(sec.line, 1, "dim must be >= 1");
    if (order < 0) throw ParseError(sec.line, 1, "order must be >= 0");
    try {
      model.base = ExtendedChart::base(static_cast<int>(dim), pairing);
    } catch (const Error& e) {
      throw ParseError(sec.line, 1, e.what());
    }
    model.order = static_cast<int>(order);
  }
  if (!have_manifold) throw ParseError(1, 1, "missing [manifold] section");

  // 3. fields and checks
  auto expect_name = [](const Section& sec) {
    if (sec.name.empty()) {
      throw ParseError(sec.line, 1, "[" + sec.type + "] section needs a name");
    }
  };
  auto single_value = [](const Section& sec, const std::string& key) -> std::pair<std::string, int> {
    for (std::size_t i = 0; i < sec.entries.size(); ++i) {
      if (sec.entries[i].first == key) return {sec.entries[i].second, sec.entry_lines[i]};
    }
    throw ParseError(sec.line, 1, "[" + sec.type + " " + sec.name + "] is missing '" + key + "'");
  };
  auto check_unique = [&model](const std::string& category, const std::string& name, int line) {
    bool dup = (category == "scalar" && model.find_scalar(name)) ||
               (category == "vector" && model.find_vector(name)) ||
               (category == "oneform" && model.find_oneform(name)) ||
               (category == "endomorphism" && model.find_endo(name)) ||
               (category == "contact" && model.find_contact(name));
    if (dup) throw ParseError(line, 1, "duplicate " + category + " name " + name);
  };

  int n = model.base.base_dim;
  for (const Section& sec : sections) {
    if (sec.type == "manifold") continue;
    if (sec.type == "scalar") {
      expect_name(sec);
      check_unique("scalar", sec.name, sec.line);
      auto [v, ln] = single_value(sec, "expr");
      model.scalars.emplace_back(
          sec.name, ScalarField(model.base, parse_field_expr(v, ln, "scalar " + sec.name)));
    } else if (sec.type == "vector" || sec.type == "oneform") {
      expect_name(sec);
      check_unique(sec.type, sec.name, sec.line);
      auto [v, ln] = single_value(sec, "components");
      std::vector<std::string> entries = parse_string_list(v, ln);
      if (static_cast<int>(entries.size()) != n) {
        throw ParseError(ln, 1,
                         sec.type + " " + sec.name + ".components has " +
                             std::to_string(entries.size()) + " entries, chart needs " +
                             std::to_string(n));
      }
      std::vector<Expr> comps;
      for (const std::string& s : entries) {
        comps.push_back(parse_field_expr(s, ln, sec.type + " " + sec.name));
      }
      if (sec.type == "vector") {
        model.vectors.emplace_back(sec.name, VectorField(model.base, std::move(comps)));
      } else {
        model.oneforms.emplace_back(sec.name, OneForm(model.base, std::move(comps)));
      }
    } else if (sec.type == "endomorphism") {
      expect_name(sec);
      check_unique("endomorphism", sec.name, sec.line);
      auto [v, ln] = single_value(sec, "matrix");
      std::vector<std::string> rows = parse_string_list(v, ln);
      if (static_cast<int>(rows.size()) != n) {
        throw ParseError(ln, 1,
                         "endomorphism " + sec.name + ".matrix has " + std::to_string(rows.size()) +
                             " rows, chart needs " + std::to_string(n));
      }
      std::vector<std::vector<Expr>> m;
      for (const std::string& row : rows) {
        std::vector<std::string> cells = split_commas(row);
        if (static_cast<int>(cells.size()) != n) {
          throw ParseError(ln, 1,
                           "endomorphism " + sec.name + ".matrix row has " +
                               std::to_string(cells.size()) + " entries, chart needs " +
                               std::to_string(n));
        }
        std::vector<Expr> r;
        for (const std::string& cell : cells) {
          r.push_back(parse_field_expr(cell, ln, "endomorphism " + sec.name));
        }
        m.push_back(std::move(r));
      }
      model.endos.emplace_back(sec.name, Endo11(model.base, std::move(m)));
    } else if (sec.type == "contact") {
      expect_name(sec);
      check_unique("contact", sec.name, sec.line);
      ContactDecl decl;
      for (std::size_t i = 0; i < sec.entries.size(); ++i) {
        const auto& [k, v] = sec.entries[i];
        if (k == "F") {
          decl.f = v;
        } else if (k == "U") {
          decl.u = v;
        } else if (k == "omega") {
          decl.omega = v;
        } else {
          throw ParseError(sec.entry_lines[i], 1, "unknown contact key '" + k + "'");
        }
      }
      if (decl.f.empty() || decl.u.empty() || decl.omega.empty()) {
        throw ParseError(sec.line, 1, "[contact " + sec.name + "] needs F, U and omega");
      }
      for (const auto& [ref, found] :
           std::vector<std::pair<std::string, bool>>{{decl.f, model.find_endo(decl.f) != nullptr},
                                                     {decl.u, model.find_vector(decl.u) != nullptr},
                                                     {decl.omega, model.find_oneform(decl.omega) != nullptr}}) {
        if (!found) {
          throw ParseError(sec.line, 1, "unresolved reference " + ref + " in contact " + sec.name);
        }
      }
      model.contacts.emplace_back(sec.name, std::move(decl));
    } else if (sec.type == "check") {
      expect_name(sec);
      for (const CheckDecl& c : model.checks) {
        if (c.name == sec.name) throw ParseError(sec.line, 1, "duplicate check name " + sec.name);
      }
      CheckDecl decl;
      decl.name = sec.name;
      for (std::size_t i = 0; i < sec.entries.size(); ++i) {
        const auto& [k, v] = sec.entries[i];
        int ln = sec.entry_lines[i];
        if (k == "kind") {
          decl.kind = trim(v);
        } else if (k == "args") {
          decl.args = split_ws(v);
        } else if (k == "c") {
          try {
            Expr e = parse_expression(v);
            if (!e.is_constant()) throw Error("not constant");
            decl.constant = e.constant_value();
            decl.has_constant = true;
          } catch (const std::exception&) {
            throw ParseError(ln, 1, "check constant c must be a constant expression");
          }
        } else {
          throw ParseError(ln, 1, "unknown check key '" + k + "'");
        }
      }
      if (decl.kind.empty()) throw ParseError(sec.line, 1, "check " + sec.name + " is missing 'kind'");
      model.checks.push_back(std::move(decl));
    } else {
      throw ParseError(sec.line, 1, "unknown section type '" + sec.type + "'");
    }
  }

  // 4. resolve check references
  static const std::vector<std::string> kinds = {
      "almost_contact", "identity",          "almost_complex",   "nijenhuis_zero",
      "extended_structure", "analytic_vertical", "analytic_complete"};
  for (const CheckDecl& c : model.checks) {
    if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) {
      throw Error("unknown check kind '" + c.kind + "' in check " + c.name);
    }
    auto need_args = [&c](std::size_t want) {
      if (c.args.size() != want) {
        throw Error("check " + c.name + " (" + c.kind + ") needs " + std::to_string(want) +
                    " argument(s), got " + std::to_string(c.args.size()));
      }
    };
    auto resolve = [&model, &c](const std::string& name, bool any_field) {
      bool found = model.find_contact(name) || model.find_endo(name) ||
                   model.find_vector(name) || model.find_oneform(name) ||
                   model.find_scalar(name);
      if (!any_field) found = model.find_contact(name) != nullptr;
      if (!found) throw Error("unresolved reference " + name + " in check " + c.name);
    };
    if (c.kind == "almost_contact" || c.kind == "extended_structure") {
      need_args(1);
      resolve(c.args[0], false);
    } else if (c.kind == "almost_complex" || c.kind == "nijenhuis_zero") {
      need_args(1);
      if (!model.find_endo(c.args[0])) {
        throw Error("unresolved reference " + c.args[0] + " in check " + c.name);
      }
    } else if (c.kind == "identity") {
      need_args(2);
      resolve(c.args[0], true);
      resolve(c.args[1], true);
    } else {  // analytic_vertical / analytic_complete
      need_args(2);
      resolve(c.args[0], false);
      if (!model.find_vector(c.args[1])) {
        throw Error("unresolved reference " + c.args[1] + " in check " + c.name);
      }
    }
  }
  (void)origin;
  return model;
}

// ---------------------------------------------------------------------------
// serialize

namespace {

std::string quote_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + items[i] + "\"";
  }
  return out + "]";
}

}  // namespace

std::string serialize(const ModelSet& model) {
  std::ostringstream os;
  os << "[manifold]\n";
  os << "dim = " << model.base.base_dim << "\n";
  os << "order = " << model.order << "\n";
  if (model.base.complex_pairing) os << "complex_pairs = " << *model.base.complex_pairing << "\n";
  for (const auto& [name, f] : model.scalars) {
    os << "\n[scalar " << name << "]\n";
    os << "expr = " << f.value.str() << "\n";
  }
  for (const auto& [name, f] : model.vectors) {
    std::vector<std::string> comps;
    for (const Expr& e : f.components) comps.push_back(e.str());
    os << "\n[vector " << name << "]\n";
    os << "components = " << quote_list(comps) << "\n";
  }
  for (const auto& [name, f] : model.oneforms) {
    std::vector<std::string> comps;
    for (const Expr& e : f.components) comps.push_back(e.str());
    os << "\n[oneform " << name << "]\n";
    os << "components = " << quote_list(comps) << "\n";
  }
  for (const auto& [name, f] : model.endos) {
    std::vector<std::string> rows;
    for (const auto& row : f.m) {
      std::string r;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) r += ",";
        r += row[j].str();
      }
      rows.push_back(std::move(r));
    }
    os << "\n[endomorphism " << name << "]\n";
    os << "matrix = " << quote_list(rows) << "\n";
  }
  for (const auto& [name, c] : model.contacts) {
    os << "\n[contact " << name << "]\n";
    os << "F = " << c.f << "\n";
    os << "U = " << c.u << "\n";
    os << "omega = " << c.omega << "\n";
  }
  for (const CheckDecl& c : model.checks) {
    os << "\n[check " << c.name << "]\n";
    os << "kind = " << c.kind << "\n";
    if (!c.args.empty()) {
      os << "args =";
      for (const std::string& a : c.args) os << " " << a;
      os << "\n";
    }
    if (c.has_constant) os << "c = " << c.constant.str() << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// run_checks

namespace {

std::string verdict_summary(const StructureVerdict& v) {
  std::string s;
  for (const Diagnostic& d : v.diagnostics) {
    if (!s.empty()) s += ", ";
    s += d.name + "=" + (d.holds ? "ok" : "FAIL");
  }
  return s;
}

CheckOutcome verdict_outcome(const StructureVerdict& v) {
  CheckOutcome out;
  out.pass = v.holds;
  std::string failing;
  for (const Diagnostic& d : v.diagnostics) {
    if (!d.holds && failing.empty()) failing = d.name;
  }
  out.symbolic = v.holds ? "holds" : "fails(" + failing + ")";
  out.note = verdict_summary(v);
  return out;
}

}  // namespace

RunResult run_checks(const ModelSet& model, const RunOptions& opts) {
  // start recording derivatives before any lifted field is built so the
  // fd guard sees everything the checks relied on
  if (opts.suite.fd_guard) derivative_log::enable();

  std::vector<Check> checks;
  const int k = model.order;

  for (const CheckDecl& decl : model.checks) {
    Check c;
    c.name = decl.name;
    if (decl.kind == "identity") {
      auto as_value = [&model](const std::string& name) -> FieldValue {
        if (const Endo11* f = model.find_endo(name)) return *f;
        if (const VectorField* f = model.find_vector(name)) return *f;
        if (const OneForm* f = model.find_oneform(name)) return *f;
        if (const ScalarField* f = model.find_scalar(name)) return *f;
        throw Error("unresolved reference " + name);
      };
      c.pair = std::make_pair(as_value(decl.args[0]), as_value(decl.args[1]));
    } else if (decl.kind == "almost_complex") {
      const Endo11& f = *model.find_endo(decl.args[0]);
      c.pair = std::make_pair(FieldValue(compose_endo(f, f)),
                              FieldValue(scale(Expr::integer(-1), Endo11::identity(f.chart))));
    } else if (decl.kind == "nijenhuis_zero") {
      const Endo11& f = *model.find_endo(decl.args[0]);
      c.pair = std::make_pair(FieldValue(nijenhuis(f)), FieldValue(Tensor12::zero(f.chart)));
    } else if (decl.kind == "almost_contact") {
      ContactDecl contact = *model.find_contact(decl.args[0]);
      c.custom = [&model, contact](const CheckContext& ctx) {
        StructureVerdict v = check_almost_contact(
            model.triple(contact), SampleConfig{ctx.samples, ctx.tolerance, ctx.seed});
        return verdict_outcome(v);
      };
    } else if (decl.kind == "extended_structure") {
      ContactDecl contact = *model.find_contact(decl.args[0]);
      if (k >= 2) {
        c.informational = true;
        c.note = "square acquires a residual for order >= 2";
      }
      c.custom = [&model, contact, k](const CheckContext& ctx) {
        SampleConfig cfg{ctx.samples, ctx.tolerance, ctx.seed};
        Endo11 jk = build_extended_structure(model.triple(contact), k, cfg);
        Endo11 minus_id = scale(Expr::integer(-1), Endo11::identity(jk.chart));
        return evaluate_identity(compose_endo(jk, jk), minus_id, CheckMode::Both, ctx);
      };
    } else if (decl.kind == "analytic_vertical" || decl.kind == "analytic_complete") {
      ContactDecl contact = *model.find_contact(decl.args[0]);
      std::string xname = decl.args[1];
      bool complete = decl.kind == "analytic_complete";
      GaussianRational cc = decl.constant;
      c.custom = [&model, contact, xname, complete, cc, k](const CheckContext& ctx) {
        SampleConfig cfg{ctx.samples, ctx.tolerance, ctx.seed};
        const VectorField& x = *model.find_vector(xname);
        StructureVerdict v =
            complete ? almost_analytic_complete(x, model.triple(contact), k, cc, cfg)
                     : almost_analytic_vertical(x, model.triple(contact), k, cfg);
        return verdict_outcome(v);
      };
    }
    checks.push_back(std::move(c));
  }

  if (opts.builtin_suite) {
    std::vector<Check> theorem = build_theorem_suite(model, opts.suite);
    for (Check& c : theorem) checks.push_back(std::move(c));
  }

  RunResult result;
  result.reports = run_suite(checks, opts.suite);
  result.ok = suite_passed(result.reports);
  return result;
}

}  // namespace tensorlift
