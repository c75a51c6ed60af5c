#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smalp/lattice.hpp"
#include "smalp/syntax.hpp"
#include "smalp/unify.hpp"

namespace smalp {

struct State {
  Expr goal;
  Substitution subst;
  friend bool operator==(const State&, const State&) = default;
};

enum class AnswerKind { SACA, SFCA, FCA };
std::string_view answer_kind_name(AnswerKind kind);

struct Answer {
  Expr expr;
  Substitution subst;  // restricted to the goal's variables
  AnswerKind kind = AnswerKind::SACA;

  /// Truth degree of an FCA.
  std::optional<TruthValue> value() const;
};

/// Path from the root of an expression: 0-based argument indices.
using Position = std::vector<std::size_t>;

const Expr& subexpr(const Expr& e, const Position& pos);
Expr replace_at(const Expr& e, const Position& pos, Expr replacement);

enum class Stage { Admissible, Interpretive };

struct Step {
  Stage stage = Stage::Admissible;
  Position position;
  // Admissible: 0-based index of the program rule used; empty when no head
  // unified and the atom was replaced by bottom.
  std::optional<std::size_t> rule;
  // Admissible: first fresh-variable index consumed by this step's renaming.
  std::size_t fresh_base = 0;
  // Interpretive: reduced connective, e.g. "@aver".
  std::string connective;
  State result;
};

using Trace = std::vector<Step>;

struct Transition {
  State state;
  Step step;
};

struct EngineOptions {
  std::size_t depth_limit = 10000;
};

struct Derivation {
  Answer answer;
  Trace trace;
};

/// Leftmost atom in depth-first, left-to-right order.
std::optional<Position> select_atom(const Expr& goal);

/// All successors of `st` for its selected atom, in program rule order. When
/// no rule head unifies the single successor replaces the atom by 0.0.
std::vector<Transition> admissible_step(const Program& prog, const Registry& reg, const State& st,
                                        FreshNames& fresh);

/// First symbolic admissible computed answer of `goal`.
Derivation admissible_derive(const Program& prog, const Registry& reg, const Expr& goal,
                             const EngineOptions& opts = {});

/// Reduces the leftmost-innermost concrete connective whose arguments are
/// all truth values. Symbolic connectives and symbolic values block
/// reduction.
std::optional<Transition> interpretive_step(const Registry& reg, const State& st);

/// Interpretive stage to a fixpoint; FCA when the result is a single value.
Derivation interpret(const Registry& reg, const Answer& saca);

/// Admissible stage followed by the interpretive stage; first answer only.
Derivation solve(const Program& prog, const Registry& reg, const Expr& goal, const EngineOptions& opts = {});

/// Re-executes every recorded step from ⟨goal; id⟩ and returns the final
/// state. Throws Error if a step does not reproduce its recorded result.
State replay(const Program& prog, const Registry& reg, const Expr& goal, const Trace& trace);

std::string render_position(const Position& pos);
std::string render_step(const Step& step);
std::string render_trace(const Trace& trace);
/// `SFCA: #&s1(0.9, #&s2(#v, 0.6)) ; {X/a}`
std::string render_answer(const Answer& ans);

}  // namespace smalp
