// Copyright 2026 The lcel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcel/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcel/combinatorics.hpp"
#include "lcel/dynamics.hpp"
#include "lcel/equivalence.hpp"
#include "lcel/errors.hpp"
#include "lcel/model_file.hpp"
#include "lcel/normalize.hpp"

namespace lcel::cli {
namespace {

using Json = nlohmann::ordered_json;

Json witness_json(const Point& p, const LagrangianModel& model) {
  Json jets = Json::object();
  for (int i = 1; i <= p.dim(); ++i) {
    for (int s = 0; s <= p.max_jet(); ++s) jets[jet_label(model.coordinates, {i, s})] = p.jet(i, s);
  }
  Json out{{"jets", jets}};
  if (!p.parameters().empty()) {
    Json params = Json::object();
    for (const auto& [name, value] : p.parameters()) params[name] = value;
    out["parameters"] = params;
  }
  if (!p.sigma_values().empty()) {
    Json sigma = Json::object();
    for (const auto& [idx, value] : p.sigma_values()) sigma[to_string(sigma_symbol(idx), {})] = value;
    out["sigma"] = sigma;
  }
  return out;
}

Json check_json(const std::string& name, const EquivalenceResult& r, const LagrangianModel& model) {
  Json c{{"name", name}, {"passed", r.equivalent}, {"trials", r.trials_run}, {"max_error", r.max_error}};
  if (!r.equivalent) {
    if (r.witness) {
      c["witness"] = witness_json(*r.witness, model);
      c["lhs"] = r.lhs;
      c["rhs"] = r.rhs;
    }
    c["diagnostic"] = r.diagnostic;
  }
  return c;
}

Json exact_check(const std::string& name, bool passed, const std::string& diagnostic) {
  Json c{{"name", name}, {"passed", passed}};
  if (!passed) c["diagnostic"] = diagnostic;
  return c;
}

std::string coordinate(const LagrangianModel& model, int i) {
  return i <= static_cast<int>(model.coordinates.size()) ? model.coordinates[i - 1] : "q" + std::to_string(i);
}

Format parse_format(const std::string& s) { return s == "latex" ? Format::kLatex : Format::kText; }

EquationSet derive(const LagrangianModel& model, const std::string& form) {
  if (form == "classical") return classical_el(model);
  if (form == "compact") return lc_el_compact(model);
  return lc_el_expanded(model);
}

struct Globals {
  std::uint64_t seed = 1;
  std::string format = "text";
  double tolerance = 1e-8;
  int trials = 20;
};

int cmd_derive(const std::string& path, const std::string& form, const Globals& g, std::ostream& out) {
  const LagrangianModel model = build_model(read_model_file(path));
  const Format format = parse_format(g.format);
  const EquationSet eqs = derive(model, form);
  const int n = model.space.order();
  if (format == Format::kLatex) {
    out << "% " << form_name(eqs.form) << " equations, order " << n << "\n";
    if (eqs.form == EquationForm::kLcExpanded) {
      out << "\\mathcal{A}^{" << n << "}_i[L] = " << conformal_rhs_structure(n, format) << "\n";
    }
  } else {
    out << "# " << form_name(eqs.form) << " equations, order " << n << "\n";
    if (eqs.form == EquationForm::kLcExpanded) {
      out << "A^" << n << "_i[L] = " << conformal_rhs_structure(n, format) << "\n";
    }
  }
  out << format_equations(eqs, model.coordinates, format);
  return kSuccess;
}

int cmd_bell(int s, std::optional<int> m, const Globals& g, std::ostream& out) {
  if (s < 1 || s > kMaxBellOrder) {
    throw InvalidArgument("--s must lie in [1, " + std::to_string(kMaxBellOrder) + "]");
  }
  if (m && (*m < 1 || *m > s)) throw InvalidArgument("--m must lie in [1, s]");
  const Format format = parse_format(g.format);
  const bool latex = format == Format::kLatex;
  const int lo = m ? *m : 1;
  const int hi = m ? *m : s;
  for (int k = lo; k <= hi; ++k) {
    out << "B_{" << s << "," << k << "} = " << bell_index_form(s, k, format) << "\n";
  }
  for (int k = lo; k <= hi; ++k) {
    out << (latex ? "\\Phi_{" + std::to_string(k) + "}" : "Phi_" + std::to_string(k)) << " = "
        << phi_index_form(k, format) << "\n";
  }
  std::size_t terms = 0;
  for (int k = 1; k <= s; ++k) terms += bell_terms(s, k).size();
  out << (latex ? "\\mathcal{B}_{" + std::to_string(s) + "}" : "calB_" + std::to_string(s)) << " = "
      << calB_index_form(s, format) << "\n";
  out << (latex ? "% " : "# ") << terms << " Bell monomials in calB_" << s << "\n";
  return kSuccess;
}

int cmd_simulate(const std::string& path, std::optional<double> t0, std::optional<double> t1,
                 std::optional<double> dt, const std::string& init_text, const std::string& form,
                 const std::string& output, std::ostream& out, std::ostream& err) {
  const ModelFile file = read_model_file(path);
  const LagrangianModel model = build_model(file);
  SimulationBlock sim = file.simulation.value_or(SimulationBlock{});
  if (t0) sim.t0 = t0;
  if (t1) sim.t1 = t1;
  if (dt) sim.dt = dt;
  if (!init_text.empty()) sim.init = parse_assignments(init_text);
  if (!sim.t1 || !sim.dt) throw InvalidArgument("simulate needs t1 and dt (simulation block or --t1/--dt)");
  if (sim.init.empty()) throw InvalidArgument("simulate needs initial values (simulation block or --init)");
  const double start = sim.t0.value_or(0.0);

  const ExplicitODE ode = to_explicit_ode(derive(model, form == "classical" ? "classical" : "expanded"), model);
  const Trajectory tr = integrate(ode, ode.pack(resolve_jets(model, sim.init)), start, *sim.t1, *sim.dt);

  std::ostream* csv = &out;
  std::ofstream file_out;
  if (!output.empty()) {
    file_out.open(output, std::ios::binary);
    if (!file_out) throw InvalidArgument("cannot write " + output);
    csv = &file_out;
  }
  write_csv(*csv, ode, tr);
  std::ostream& summary = output.empty() ? err : out;
  summary << "steps=" << tr.times.size() - 1 << " t1=" << tr.times.back() << " max_residual=" << tr.max_residual
          << " min_abs_det=" << tr.min_abs_det << "\n";
  return kSuccess;
}

}  // namespace

VerifyReport verify_model(const LagrangianModel& model, const std::string& name, const VerifyOptions& options) {
  EquivalenceOptions eq;
  eq.trials = options.trials;
  eq.tolerance = options.tolerance;
  eq.seed = options.seed;
  eq.parameters = model.parameters;

  Json checks = Json::array();
  const EquationSet classical = classical_el(model);
  const std::vector<Expr> rhs = conformal_rhs(model);
  std::vector<Expr> expanded;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    expanded.push_back(normalize(options.inject_fault ? classical.residuals[i] + rhs[i]
                                                      : classical.residuals[i] - rhs[i]));
  }
  const EquationSet compact = lc_el_compact(model);
  const Expr weight = exp(model.sigma.sigma());
  for (int i = 1; i <= model.space.dim(); ++i) {
    const auto r = equivalent(weight * compact.residuals[i - 1], expanded[i - 1], model.space, eq);
    checks.push_back(check_json("compact_matches_expanded[" + coordinate(model, i) + "]", r, model));
  }
  const int top = std::min({model.space.order(), kMaxBellOrder, model.space.max_jet() - 1});
  for (int s = 1; s <= top; ++s) {
    const auto r = equivalent(calB(s, model.sigma, model.space), calB_oracle(s, model.sigma, model.space),
                              model.space, eq);
    checks.push_back(check_json("calB_matches_oracle[" + std::to_string(s) + "]", r, model));
  }
  bool no_exp = true;
  for (const Expr& e : expanded) no_exp = no_exp && !e.has_exp();
  checks.push_back(exact_check("expanded_free_of_exponentials", no_exp, "an exponential survived normalization"));

  LagrangianModel trivial = model;
  trivial.sigma = ConformalFactor::zero();
  bool collapse = lc_el_expanded(trivial).residuals == classical.residuals;
  for (const Expr& a : conformal_rhs(trivial)) collapse = collapse && a.is_zero();
  checks.push_back(exact_check("trivial_factor_collapse", collapse, "A^n does not vanish for sigma = 0"));

  bool rhs_zero = true;
  for (const Expr& a : rhs) rhs_zero = rhs_zero && a.is_zero();

  bool passed = true;
  for (const Json& c : checks) passed = passed && c["passed"].get<bool>();
  Json report{{"model", name},
              {"dim", model.space.dim()},
              {"order", model.space.order()},
              {"sigma", model.sigma.is_abstract() ? std::string("abstract")
                                                   : to_string(model.sigma.sigma(), model.coordinates)},
              {"seed", options.seed},
              {"trials", options.trials},
              {"tolerance", options.tolerance},
              {"fault_injected", options.inject_fault},
              {"conformal_rhs_zero", rhs_zero},
              {"checks", checks},
              {"passed", passed}};
  return {passed, report.dump(2) + "\n"};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally conformal higher-order Euler-Lagrange equations", "lcel"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for random equivalence trials");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "latex"}));
  app.add_option("--tol", g.tolerance, "Relative tolerance of equivalence checks")->check(CLI::PositiveNumber);
  app.add_option("--trials", g.trials, "Random points per equivalence check")->check(CLI::PositiveNumber);

  std::string model_path;
  std::string form = "expanded";
  auto* derive_cmd = app.add_subcommand("derive", "Print the equations of motion");
  derive_cmd->add_option("model", model_path, "Model file")->required();
  derive_cmd->add_option("--form", form)->check(CLI::IsMember({"classical", "expanded", "compact"}));

  bool inject_fault = false;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check the derivation and print a JSON report");
  verify_cmd->add_option("model", model_path, "Model file")->required();
  verify_cmd->add_flag("--inject-fault", inject_fault, "Flip the sign of A^n (negative control)");

  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<double> dt;
  std::string init_text;
  std::string output;
  std::string sim_form = "expanded";
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the equations and write a CSV trajectory");
  simulate_cmd->add_option("model", model_path, "Model file")->required();
  simulate_cmd->add_option("--t0", t0, "Start time (default: simulation block, else 0)");
  simulate_cmd->add_option("--t1", t1, "End time");
  simulate_cmd->add_option("--dt", dt, "Fixed RK4 step");
  simulate_cmd->add_option("--init", init_text, "Initial jets, e.g. \"x=1, x'=0\"");
  simulate_cmd->add_option("--form", sim_form)->check(CLI::IsMember({"classical", "expanded"}));
  simulate_cmd->add_option("-o,--output", output, "CSV path (default: stdout)");

  int s = 0;
  std::optional<int> m;
  auto* bell_cmd = app.add_subcommand("bell", "Print Bell polynomials, Phi_m and calB_s");
  bell_cmd->add_option("--s", s)->required();
  bell_cmd->add_option("--m", m);

  for (CLI::App* sub : {derive_cmd, verify_cmd, simulate_cmd, bell_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (derive_cmd->parsed()) return cmd_derive(model_path, form, g, out);
    if (bell_cmd->parsed()) return cmd_bell(s, m, g, out);
    if (simulate_cmd->parsed()) {
      return cmd_simulate(model_path, t0, t1, dt, init_text, sim_form, output, out, err);
    }
    const LagrangianModel model = build_model(read_model_file(model_path));
    const VerifyReport report = verify_model(model, model_path, {g.trials, g.tolerance, g.seed, inject_fault});
    out << report.json;
    return report.passed ? kSuccess : kVerificationFailed;
  } catch (const NumericalFailure& e) {
    err << "numerical failure at t=" << e.time() << ": " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DegenerateSystem& e) {
    err << "degenerate system: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace lcel::cli
