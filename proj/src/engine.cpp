#include "smalp/engine.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "smalp/error.hpp"

namespace smalp {

std::string_view answer_kind_name(AnswerKind kind) {
  switch (kind) {
    case AnswerKind::SACA: return "SACA";
    case AnswerKind::SFCA: return "SFCA";
    case AnswerKind::FCA: return "FCA";
  }
  return "?";
}

std::optional<TruthValue> Answer::value() const {
  if (const auto* v = expr.as_value()) return v->value;
  return std::nullopt;
}

const Expr& subexpr(const Expr& e, const Position& pos) {
  const Expr* cur = &e;
  for (std::size_t i : pos) {
    const auto* app = cur->as_app();
    if (app == nullptr || i >= app->args.size()) throw Error("invalid expression position " + render_position(pos));
    cur = &app->args[i];
  }
  return *cur;
}

Expr replace_at(const Expr& e, const Position& pos, Expr replacement) {
  Expr out = e;
  Expr* cur = &out;
  for (std::size_t i : pos) {
    auto* app = cur->as_app();
    if (app == nullptr || i >= app->args.size()) throw Error("invalid expression position " + render_position(pos));
    cur = &app->args[i];
  }
  *cur = std::move(replacement);
  return out;
}

namespace {

bool find_atom(const Expr& e, Position& pos) {
  if (e.as_atom()) return true;
  if (const auto* app = e.as_app()) {
    for (std::size_t i = 0; i < app->args.size(); ++i) {
      pos.push_back(i);
      if (find_atom(app->args[i], pos)) return true;
      pos.pop_back();
    }
  }
  return false;
}

bool find_redex(const Expr& e, Position& pos) {
  const auto* app = e.as_app();
  if (app == nullptr) return false;
  bool all_values = true;
  for (std::size_t i = 0; i < app->args.size(); ++i) {
    pos.push_back(i);
    if (find_redex(app->args[i], pos)) return true;
    pos.pop_back();
    all_values = all_values && app->args[i].is_value();
  }
  return all_values && !app->conn.symbolic;
}

// v &i B for a rule, or just v for a fact.
Expr resolvent(const RuleDef& rule, const Registry& reg) {
  if (rule.is_fact) return rule.weight;
  ConnName conj = rule.impl.symbolic ? ConnName::symbol(rule.impl.name)
                                     : ConnName::concrete(reg.adjoint_of(rule.impl.name));
  return Expr::app(ConnectiveKind::Conjunction, std::move(conj), {rule.weight, rule.body});
}

std::optional<Transition> resolve_with(const Program& prog, const Registry& reg, const State& st,
                                       const Position& pos, std::size_t index, FreshNames& fresh) {
  const Atom& selected = *subexpr(st.goal, pos).as_atom();
  std::size_t base = fresh.peek();
  RuleDef variant = rename_apart(prog.rules[index], fresh);
  auto theta = mgu(variant.head, selected);
  if (!theta) return std::nullopt;
  State next{apply(*theta, replace_at(st.goal, pos, resolvent(variant, reg))), compose(st.subst, *theta)};
  Step step{Stage::Admissible, pos, index, base, {}, next};
  return Transition{std::move(next), std::move(step)};
}

Transition to_bottom(const State& st, const Position& pos) {
  State next{replace_at(st.goal, pos, Expr::value(kBottom)), st.subst};
  Step step{Stage::Admissible, pos, std::nullopt, 0, {}, next};
  return Transition{std::move(next), std::move(step)};
}

std::string connective_label(const Expr::App& app) {
  return std::string(sigil(app.kind)) + app.conn.name;
}

Transition reduce_at(const Registry& reg, const State& st, const Position& pos) {
  const auto& app = *subexpr(st.goal, pos).as_app();
  std::vector<TruthValue> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) args.push_back(a.as_value()->value);
  TruthValue v = reg.eval(app.kind, app.conn.name, args);
  State next{replace_at(st.goal, pos, Expr::value(v)), st.subst};
  Step step{Stage::Interpretive, pos, std::nullopt, 0, connective_label(app), next};
  return Transition{std::move(next), std::move(step)};
}

std::set<std::string> goal_variables(const Expr& goal) {
  auto vs = variables(goal);
  return {vs.begin(), vs.end()};
}

struct Run {
  State state;
  Trace trace;
};

Run run_admissible(const Program& prog, const Registry& reg, const Expr& goal, const EngineOptions& opts);
Run run_interpretive(const Registry& reg, State st);

}  // namespace

std::optional<Position> select_atom(const Expr& goal) {
  Position pos;
  if (find_atom(goal, pos)) return pos;
  return std::nullopt;
}

std::vector<Transition> admissible_step(const Program& prog, const Registry& reg, const State& st,
                                        FreshNames& fresh) {
  auto pos = select_atom(st.goal);
  if (!pos) throw Error("admissible step on an atom-free goal");
  // Alternatives are separate branches, so each renames from the same base;
  // the counter then moves past the names any of them introduced.
  std::size_t base = fresh.peek();
  std::size_t end = base;
  std::vector<Transition> out;
  for (std::size_t i = 0; i < prog.rules.size(); ++i) {
    FreshNames local(base);
    if (auto t = resolve_with(prog, reg, st, *pos, i, local)) {
      out.push_back(std::move(*t));
      end = std::max(end, local.peek());
    }
  }
  fresh = FreshNames(end);
  if (out.empty()) out.push_back(to_bottom(st, *pos));
  return out;
}

namespace {

Run run_admissible(const Program& prog, const Registry& reg, const Expr& goal, const EngineOptions& opts) {
  FreshNames fresh;
  State st{goal, Substitution::identity()};
  Trace trace;
  // The bottom rule makes the step relation total, so the first alternative
  // of every step always has a successor and the depth-first search never
  // needs to backtrack; only the step budget can stop it.
  while (select_atom(st.goal)) {
    if (trace.size() >= opts.depth_limit) throw DepthLimitExceeded(opts.depth_limit);
    auto alternatives = admissible_step(prog, reg, st, fresh);
    st = alternatives.front().state;
    trace.push_back(std::move(alternatives.front().step));
  }
  return {std::move(st), std::move(trace)};
}

Run run_interpretive(const Registry& reg, State st) {
  if (atom_count(st.goal) != 0) throw Error("interpretive stage needs an atom-free expression");
  Trace trace;
  while (auto t = interpretive_step(reg, st)) {
    st = std::move(t->state);
    trace.push_back(std::move(t->step));
  }
  return {std::move(st), std::move(trace)};
}

}  // namespace

Derivation admissible_derive(const Program& prog, const Registry& reg, const Expr& goal,
                             const EngineOptions& opts) {
  Run run = run_admissible(prog, reg, goal, opts);
  Answer ans{std::move(run.state.goal), restrict(run.state.subst, goal_variables(goal)), AnswerKind::SACA};
  return Derivation{std::move(ans), std::move(run.trace)};
}

std::optional<Transition> interpretive_step(const Registry& reg, const State& st) {
  Position pos;
  if (!find_redex(st.goal, pos)) return std::nullopt;
  return reduce_at(reg, st, pos);
}

Derivation interpret(const Registry& reg, const Answer& saca) {
  Run run = run_interpretive(reg, State{saca.expr, saca.subst});
  AnswerKind kind = run.state.goal.is_value() ? AnswerKind::FCA : AnswerKind::SFCA;
  return Derivation{Answer{std::move(run.state.goal), std::move(run.state.subst), kind}, std::move(run.trace)};
}

Derivation solve(const Program& prog, const Registry& reg, const Expr& goal, const EngineOptions& opts) {
  Run adm = run_admissible(prog, reg, goal, opts);
  Run fin = run_interpretive(reg, std::move(adm.state));
  adm.trace.insert(adm.trace.end(), std::make_move_iterator(fin.trace.begin()),
                   std::make_move_iterator(fin.trace.end()));
  AnswerKind kind = fin.state.goal.is_value() ? AnswerKind::FCA : AnswerKind::SFCA;
  Answer ans{std::move(fin.state.goal), restrict(fin.state.subst, goal_variables(goal)), kind};
  return Derivation{std::move(ans), std::move(adm.trace)};
}

State replay(const Program& prog, const Registry& reg, const Expr& goal, const Trace& trace) {
  State st{goal, Substitution::identity()};
  for (std::size_t n = 0; n < trace.size(); ++n) {
    const Step& step = trace[n];
    std::optional<Transition> t;
    if (step.stage == Stage::Interpretive) {
      const auto* app = subexpr(st.goal, step.position).as_app();
      if (app != nullptr && !app->conn.symbolic) t = reduce_at(reg, st, step.position);
    } else if (subexpr(st.goal, step.position).as_atom()) {
      if (!step.rule) {
        t = to_bottom(st, step.position);
      } else if (*step.rule < prog.rules.size()) {
        FreshNames fresh(step.fresh_base);
        t = resolve_with(prog, reg, st, step.position, *step.rule, fresh);
      }
    }
    if (!t || !(t->state == step.result)) {
      throw Error("trace step " + std::to_string(n + 1) + " does not replay");
    }
    st = std::move(t->state);
  }
  return st;
}

std::string render_position(const Position& pos) {
  if (pos.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i > 0) out += ".";
    out += std::to_string(pos[i] + 1);
  }
  return out;
}

std::string render_step(const Step& step) {
  RenderStyle spaced{true};
  std::string out = step.stage == Stage::Admissible ? "[A] @" : "[I] @";
  out += render_position(step.position) + " ";
  if (step.stage == Stage::Admissible) {
    out += step.rule ? "R" + std::to_string(*step.rule + 1) : std::string("bot");
  } else {
    out += step.connective;
  }
  return out + " => " + render(step.result.goal, spaced) + " ; " + render(step.result.subst, spaced);
}

std::string render_trace(const Trace& trace) {
  std::string out;
  for (const auto& s : trace) out += render_step(s) + "\n";
  return out;
}

std::string render_answer(const Answer& ans) {
  RenderStyle spaced{true};
  return std::string(answer_kind_name(ans.kind)) + ": " + render(ans.expr, spaced) + " ; " +
         render(ans.subst, spaced);
}

}  // namespace smalp
