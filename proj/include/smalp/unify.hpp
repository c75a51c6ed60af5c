#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smalp/syntax.hpp"

namespace smalp {

/// Finite mapping from variable names to terms. Identity bindings are never
/// stored, so the map's keys are exactly Dom(s).
class Substitution {
 public:
  Substitution() = default;

  static Substitution identity() { return {}; }

  /// Adds X/t; a binding X/X is dropped.
  void bind(std::string var, Term t);

  const Term* lookup(std::string_view var) const;
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term, std::less<>>& bindings() const { return bindings_; }
  std::set<std::string> domain() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term, std::less<>> bindings_;
};

Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);
Expr apply(const Substitution& s, const Expr& e);

/// x(compose(s1, s2)) = s2(s1(x)) for every variable x.
Substitution compose(const Substitution& s1, const Substitution& s2);

Substitution restrict(const Substitution& s, const std::set<std::string>& vars);

/// Most general unifier with occurs check, or nullopt. When both sides are
/// variables the right-hand one is bound, so mgu(head, goal_atom) maps goal
/// variables onto rule variables.
std::optional<Substitution> mgu(const Atom& a, const Atom& b);
std::optional<Substitution> mgu(const Term& a, const Term& b);

/// Variables in first-occurrence order.
std::vector<std::string> variables(const Term& t);
std::vector<std::string> variables(const Atom& a);
std::vector<std::string> variables(const Expr& e);
std::vector<std::string> variables(const RuleDef& r);

/// Monotone counter yielding `_G1`, `_G2`, ...; one per derivation.
class FreshNames {
 public:
  explicit FreshNames(std::size_t next = 1) : next_(next) {}
  std::string next() { return "_G" + std::to_string(next_++); }
  std::size_t peek() const { return next_; }

 private:
  std::size_t next_;
};

/// Renames every rule variable to a fresh one. Symbolic values and
/// connectives are left alone.
RuleDef rename_apart(const RuleDef& r, FreshNames& fresh);

/// True when `a` and `b` bind the same variables to terms that are equal up
/// to a consistent bijective renaming of the variables they contain.
bool equivalent_up_to_renaming(const Substitution& a, const Substitution& b);

/// `{X/a,Y/f(b)}`; the identity renders as `{}`.
std::string render(const Substitution& s, RenderStyle style = {});
Substitution parse_substitution(std::string_view text);

}  // namespace smalp
