#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smalp/smalp.hpp"

namespace smalp::cli {

namespace {

struct Config {
  std::string program_path;
  std::string goal_text;
  std::string cases_path;
  std::string domains_path;
  std::vector<std::string> domains;
  std::string theta;
  bool trace = false;
  bool exact = false;
  std::size_t depth = 10000;
  unsigned jobs = 1;
  std::string output = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::ordered_json symbols_json(const std::vector<SymbolId>& syms) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& s : syms) out.push_back({{"name", s.name}, {"sort", sort_name(s.sort)}});
  return out;
}

std::string symbols_line(const std::vector<SymbolId>& syms) {
  if (syms.empty()) return "(no symbols)";
  std::string line;
  for (const auto& s : syms) {
    if (!line.empty()) line += ", ";
    line += s.name + ": " + std::string(sort_name(s.sort));
  }
  return line;
}

int cmd_check(const Config& cfg, std::ostream& out) {
  Registry reg = builtin_registry();
  Program prog = parse_program(read_file(cfg.program_path));
  validate(prog, reg);
  auto syms = sym_of(prog);
  if (cfg.output == "json") {
    nlohmann::ordered_json doc{{"rules", prog.rules.size()}, {"symbols", symbols_json(syms)}};
    out << doc.dump(2) << "\n";
  } else {
    out << symbols_line(syms) << "\n";
  }
  return kOk;
}

int cmd_solve(const Config& cfg, std::ostream& out) {
  Registry reg = builtin_registry();
  Program prog = parse_program(read_file(cfg.program_path));
  Expr goal = parse_goal(cfg.goal_text);
  if (!cfg.theta.empty()) {
    auto th = parse_theta(cfg.theta, sym_of(prog), reg);
    prog = apply_theta_program(th, prog);
    goal = apply_theta(th, goal);
  }
  validate(prog, reg);
  validate(goal, reg);
  Derivation d = solve(prog, reg, goal, EngineOptions{cfg.depth});

  if (cfg.output == "json") {
    nlohmann::ordered_json doc;
    doc["classification"] = answer_kind_name(d.answer.kind);
    doc["expr"] = render(d.answer.expr);
    if (auto v = d.answer.value()) doc["value"] = *v;
    doc["substitution"] = render(d.answer.subst);
    if (cfg.trace) {
      auto steps = nlohmann::ordered_json::array();
      for (const auto& s : d.trace) steps.push_back(render_step(s));
      doc["trace"] = std::move(steps);
    }
    out << doc.dump(2) << "\n";
  } else {
    if (cfg.trace) out << render_trace(d.trace);
    out << render_answer(d.answer) << "\n";
  }
  return kOk;
}

int cmd_tune(const Config& cfg, std::ostream& out) {
  Registry reg = builtin_registry();
  Program prog = parse_program(read_file(cfg.program_path));
  validate(prog, reg);
  auto cases = parse_cases(read_file(cfg.cases_path));
  for (const auto& c : cases) validate(c.goal, reg);

  std::vector<DomainDecl> decls;
  if (!cfg.domains_path.empty()) decls = parse_domain_decls(read_file(cfg.domains_path));
  for (const auto& d : cfg.domains) {
    auto more = parse_domain_decls(d);
    decls.insert(decls.end(), more.begin(), more.end());
  }
  DomainSpec spec = resolve_domains(decls, sym_of(prog), reg);

  TuneOptions opts;
  opts.engine.depth_limit = cfg.depth;
  opts.jobs = cfg.jobs;
  if (cfg.exact) opts.objective_digits.reset();
  TuningReport report = tune(prog, cases, spec, reg, opts);

  if (cfg.output == "json") {
    out << report_json(report, cases);
  } else {
    out << render_table(report, cases);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic multi-adjoint logic programs: check, solve and tune", "smalp"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("program", cfg.program_path, "program file (.smalp)")->required();
    sub->add_option("--depth", cfg.depth, "admissible step limit")->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* check = app.add_subcommand("check", "parse and validate a program, list its symbols");
  add_common(check);

  auto* solve_cmd = app.add_subcommand("solve", "print the first answer of a goal");
  add_common(solve_cmd);
  solve_cmd->add_option("goal", cfg.goal_text, "goal expression")->required();
  solve_cmd->add_option("--theta", cfg.theta, "instantiate symbols first, e.g. s1=prod,v=0.8");
  solve_cmd->add_flag("--trace", cfg.trace, "print the derivation");

  auto* tune_cmd = app.add_subcommand("tune", "choose the symbolic substitution that best fits test cases");
  add_common(tune_cmd);
  tune_cmd->add_option("--cases", cfg.cases_path, "test case file (.cases)")->required();
  auto* dom_file = tune_cmd->add_option("--domains", cfg.domains_path, "domain declaration file");
  auto* dom_inline = tune_cmd->add_option("--domain", cfg.domains, "inline declaration '#name in {...}'");
  tune_cmd->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  tune_cmd->add_flag("--exact", cfg.exact, "select on unrounded total deviation");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
    if (tune_cmd->parsed() && dom_file->count() == 0 && dom_inline->count() == 0) {
      throw CLI::RequiredError("--domains or --domain");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(cfg, out);
    if (solve_cmd->parsed()) return cmd_solve(cfg, out);
    return cmd_tune(cfg, out);
  } catch (const DepthLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const IncompleteDomain& e) {
    err << "IncompleteDomain: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace smalp::cli
