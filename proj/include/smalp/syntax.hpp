#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smalp/lattice.hpp"

namespace smalp {

/// First-order term: a variable or a compound (constants have no arguments).
struct Term {
  enum class Kind { Variable, Compound };

  Kind kind = Kind::Compound;
  std::string name;
  std::vector<Term> args;

  static Term variable(std::string name) { return Term{Kind::Variable, std::move(name), {}}; }
  static Term compound(std::string functor, std::vector<Term> args = {}) {
    return Term{Kind::Compound, std::move(functor), std::move(args)};
  }

  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Connective name inside an expression: a concrete label or a symbolic id.
struct ConnName {
  std::string name;
  bool symbolic = false;

  static ConnName concrete(std::string n) { return {std::move(n), false}; }
  static ConnName symbol(std::string n) { return {std::move(n), true}; }

  friend bool operator==(const ConnName&, const ConnName&) = default;
};

/// Truth expression: values, symbolic values, atoms and connective
/// applications. Implications never occur inside an Expr.
struct Expr {
  struct Value {
    TruthValue value;
    friend bool operator==(const Value&, const Value&) = default;
  };
  struct SymValue {
    std::string name;
    friend bool operator==(const SymValue&, const SymValue&) = default;
  };
  struct App {
    ConnectiveKind kind;
    ConnName conn;
    std::vector<Expr> args;
    friend bool operator==(const App&, const App&) = default;
  };

  std::variant<Value, SymValue, Atom, App> node;

  static Expr value(TruthValue v) { return Expr{Value{v}}; }
  static Expr symbol(std::string name) { return Expr{SymValue{std::move(name)}}; }
  static Expr atom(Atom a) { return Expr{std::move(a)}; }
  static Expr app(ConnectiveKind kind, ConnName conn, std::vector<Expr> args) {
    return Expr{App{kind, std::move(conn), std::move(args)}};
  }

  bool is_value() const { return std::holds_alternative<Value>(node); }
  const Value* as_value() const { return std::get_if<Value>(&node); }
  const SymValue* as_symbol() const { return std::get_if<SymValue>(&node); }
  const Atom* as_atom() const { return std::get_if<Atom>(&node); }
  const App* as_app() const { return std::get_if<App>(&node); }
  App* as_app() { return std::get_if<App>(&node); }

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// A weighted rule `head <impl| body with weight`. Facts carry body 1.0 and
/// the `godel` label; the label is never consulted for them.
struct RuleDef {
  Atom head;
  ConnName impl;
  Expr body;
  Expr weight;  // Value or SymValue
  bool is_fact = false;

  static RuleDef fact(Atom head, Expr weight) {
    return RuleDef{std::move(head), ConnName::concrete("godel"), Expr::value(kTop), std::move(weight), true};
  }

  friend bool operator==(const RuleDef&, const RuleDef&) = default;
};

/// Rules in textual order, which is also the resolution search order.
struct Program {
  std::vector<RuleDef> rules;
  friend bool operator==(const Program&, const Program&) = default;
};

enum class Sort { Weight, Conjunction, Disjunction, Aggregator, AdjointPair };

std::string_view sort_name(Sort sort);

struct SymbolId {
  std::string name;
  Sort sort = Sort::Weight;
  friend bool operator==(const SymbolId&, const SymbolId&) = default;
};

Program parse_program(std::string_view text);
Expr parse_goal(std::string_view text);
Term parse_term(std::string_view text);

/// `spaced` separates arguments with ", " instead of ",".
struct RenderStyle {
  bool spaced = false;
};

std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Expr& e, RenderStyle style = {});
std::string render(const RuleDef& r, RenderStyle style = {});
std::string render(const Program& p, RenderStyle style = {});
std::string render_value(TruthValue v);

std::size_t atom_count(const Expr& e);

/// Throws UnknownConnective for any concrete connective or implication label
/// missing from `reg`, and SortClash for inconsistent symbol usage.
void validate(const Program& p, const Registry& reg);
void validate(const Expr& e, const Registry& reg);

}  // namespace smalp
