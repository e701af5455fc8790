#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tensorlift/calculus.hpp"

namespace tensorlift {

/// A named almost-contact triple declared by field references.
struct ContactDecl {
  std::string f, u, omega;
};

/// One declared check. Kinds: almost_contact, identity, almost_complex,
/// nijenhuis_zero, extended_structure, analytic_vertical, analytic_complete.
struct CheckDecl {
  std::string name;
  std::string kind;
  std::vector<std::string> args;
  GaussianRational constant = GaussianRational(1);  // analytic_complete C
  bool has_constant = false;
};

/// Parsed content of one definition file: a base chart, named fields (always
/// level-0 expressions), named almost-contact triples, and named checks.
/// `order` is the target order used by lifted checks.
struct ModelSet {
  ExtendedChart base = ExtendedChart::base(1);
  int order = 0;
  std::vector<std::pair<std::string, ScalarField>> scalars;
  std::vector<std::pair<std::string, VectorField>> vectors;
  std::vector<std::pair<std::string, OneForm>> oneforms;
  std::vector<std::pair<std::string, Endo11>> endos;
  std::vector<std::pair<std::string, ContactDecl>> contacts;
  std::vector<CheckDecl> checks;

  const ScalarField* find_scalar(const std::string& name) const;
  const VectorField* find_vector(const std::string& name) const;
  const OneForm* find_oneform(const std::string& name) const;
  const Endo11* find_endo(const std::string& name) const;
  const ContactDecl* find_contact(const std::string& name) const;
  AlmostContactTriple triple(const ContactDecl& decl) const;
};

ModelSet parse_definition(const std::string& path);
ModelSet parse_definition_text(const std::string& text, const std::string& origin = "<text>");

/// Canonical rendering of a model back into the definition format;
/// parse o serialize o parse is a fixpoint on valid files.
std::string serialize(const ModelSet& model);

struct RunOptions {
  bool builtin_suite = false;
  SuiteOptions suite;
};

struct RunResult {
  std::vector<CheckReport> reports;
  bool ok = true;
};

/// Runs the file's declared checks (plus the builtin theorem suite when
/// requested) through the verification engine.
RunResult run_checks(const ModelSet& model, const RunOptions& opts);

}  // namespace tensorlift
