// Command-line front end: runs declared checks from a definition file, prints
// lifted objects, and reports Nijenhuis tensors with integrability verdicts.
//
// Exit codes: 0 all checks pass, 1 at least one check fails,
//             2 parse/validation error, 3 internal error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tensorlift/model.hpp"
#include "tensorlift/parser.hpp"
#include "tensorlift/suite.hpp"
#include "tensorlift/version.hpp"

namespace tl = tensorlift;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInternalError = 3;

std::string frame_label(const tl::ExtendedChart& chart, int flat) {
  tl::FrameIndex f = chart.unflat(flat);
  return "x" + std::to_string(f.index) + "@" + std::to_string(f.level);
}

int cmd_check(const std::string& path, int samples, double tol, std::uint64_t seed,
              const std::string& format, bool builtin) {
  tl::ModelSet model = tl::parse_definition(path);
  tl::RunOptions opts;
  opts.builtin_suite = builtin;
  opts.suite.samples = samples;
  opts.suite.tolerance = tol;
  opts.suite.seed = seed;
  opts.suite.fd_guard = true;
  tl::RunResult result = tl::run_checks(model, opts);
  if (format == "json") {
    std::cout << tl::reports_to_json(result.reports, opts.suite);
  } else {
    std::cout << tl::reports_to_text(result.reports, opts.suite);
  }
  return result.ok ? kExitPass : kExitCheckFailed;
}

int cmd_lift(const std::string& path, const std::string& object, int complete, int vertical) {
  tl::ModelSet model = tl::parse_definition(path);
  tl::LiftSpec spec(complete, vertical);

  int matches = (model.find_scalar(object) != nullptr) + (model.find_vector(object) != nullptr) +
                (model.find_oneform(object) != nullptr) + (model.find_endo(object) != nullptr);
  if (matches == 0) throw tl::Error("no object named '" + object + "' in " + path);
  if (matches > 1) throw tl::Error("object name '" + object + "' is ambiguous across categories");

  std::cout << "lift of " << object << " (complete=" << complete << ", vertical=" << vertical
            << ") to order " << spec.target_order() << ":\n";
  if (const tl::ScalarField* f = model.find_scalar(object)) {
    tl::ScalarField lifted = tl::lift_scalar(*f, spec);
    std::cout << "  " << lifted.value.str() << "\n";
  } else if (const tl::VectorField* x = model.find_vector(object)) {
    tl::VectorField lifted = tl::lift_vector(*x, spec);
    for (std::size_t i = 0; i < lifted.components.size(); ++i) {
      std::cout << "  d/d" << frame_label(lifted.chart, static_cast<int>(i)) << ": "
                << lifted.components[i].str() << "\n";
    }
  } else if (const tl::OneForm* a = model.find_oneform(object)) {
    tl::OneForm lifted = tl::lift_oneform(*a, spec);
    for (std::size_t i = 0; i < lifted.components.size(); ++i) {
      std::cout << "  d" << frame_label(lifted.chart, static_cast<int>(i)) << ": "
                << lifted.components[i].str() << "\n";
    }
  } else {
    const tl::Endo11* f = model.find_endo(object);
    tl::Endo11 lifted(f->chart, {});
    if (vertical == 0) {
      lifted = tl::lift_endo_complete(*f, complete);
    } else if (complete == 0) {
      lifted = tl::lift_endo_vertical(*f, vertical);
    } else {
      throw tl::Error("mixed lifts are not defined for endomorphisms; use --complete or --vertical");
    }
    for (std::size_t i = 0; i < lifted.m.size(); ++i) {
      for (std::size_t j = 0; j < lifted.m.size(); ++j) {
        if (lifted.m[i][j].is_zero()) continue;
        std::cout << "  [" << frame_label(lifted.chart, static_cast<int>(i)) << "]["
                  << frame_label(lifted.chart, static_cast<int>(j)) << "] = "
                  << lifted.m[i][j].str() << "\n";
      }
    }
  }
  return kExitPass;
}

int cmd_nijenhuis(const std::string& path, const std::string& tensor) {
  tl::ModelSet model = tl::parse_definition(path);
  const tl::Endo11* f = model.find_endo(tensor);
  if (!f) throw tl::Error("no endomorphism named '" + tensor + "' in " + path);

  tl::Tensor12 n = tl::nijenhuis(*f);
  const tl::ExtendedChart& chart = n.chart;
  int d = chart.frame_dim();

  bool any_nonzero = false;
  bool inconclusive = false;
  std::vector<tl::Expr> comps;
  std::cout << "nijenhuis tensor of " << tensor << ":\n";
  for (int i = 0; i < d; ++i) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        comps.push_back(n.n[i][b][c]);
        tl::CanonicalForm form = tl::normalize(n.n[i][b][c]);
        if (form.is_zero()) continue;
        std::cout << "  N[" << frame_label(chart, i) << "][" << frame_label(chart, b) << "]["
                  << frame_label(chart, c) << "] = " << form.str() << "\n";
        if (form.residual) {
          inconclusive = true;
        } else {
          any_nonzero = true;
        }
      }
    }
  }
  if (!any_nonzero && !inconclusive) {
    std::cout << "integrable: yes (all components vanish symbolically)\n";
  } else if (any_nonzero) {
    std::cout << "integrable: no (nonzero component found)\n";
  } else {
    tl::NumericResult num = tl::sample_zero(comps, chart, tl::SampleConfig{});
    if (num.pass) {
      std::cout << "integrable: numerically (symbolic residual with primitives, max err "
                << num.max_abs_err << ")\n";
    } else {
      std::cout << "integrable: no (numeric max err " << num.max_abs_err << ")\n";
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(tl::kEngineName) + " " + tl::kVersion +
               " - lifts of tensor fields to extended manifolds, with identity checking"};
  app.require_subcommand(1);

  std::string path, object, tensor;
  int samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::string format = "text";
  bool builtin = false;
  int complete = 0, vertical = 0;

  CLI::App* check = app.add_subcommand("check", "run all checks declared in a definition file");
  check->add_option("file", path, "definition file")->required();
  check->add_option("--samples", samples, "numeric sample count (default 100)");
  check->add_option("--tol", tol, "numeric tolerance (default 1e-9)");
  check->add_option("--seed", seed, "sampling seed (default 42)");
  check->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--builtin-suite", builtin, "also run the full built-in theorem suite");

  CLI::App* lift = app.add_subcommand("lift", "print the lifted components of a named object");
  lift->add_option("file", path, "definition file")->required();
  lift->add_option("--object", object, "object name")->required();
  lift->add_option("--complete", complete, "number of complete-lift applications");
  lift->add_option("--vertical", vertical, "number of vertical-lift applications");

  CLI::App* nij = app.add_subcommand("nijenhuis", "print a Nijenhuis tensor and its verdict");
  nij->add_option("file", path, "definition file")->required();
  nij->add_option("--tensor", tensor, "endomorphism name")->required();

  try {
    app.parse(argc, argv);
    if (check->parsed()) return cmd_check(path, samples, tol, seed, format, builtin);
    if (lift->parsed()) return cmd_lift(path, object, complete, vertical);
    if (nij->parsed()) return cmd_nijenhuis(path, tensor);
    return kExitInternalError;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitParseError;
  } catch (const tl::EngineBug& e) {
    std::cerr << "engine bug: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const tl::ParseError& e) {
    std::cerr << "error (line " << e.line << ", column " << e.column << "): " << e.what() << "\n";
    return kExitParseError;
  } catch (const tl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}
