#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smalp/lattice.hpp"
#include "smalp/syntax.hpp"

namespace smalp {

/// Concrete replacement for one symbol. Adjoint pairs carry both faces: the
/// implication label and its conjunction.
struct Assignment {
  Sort sort = Sort::Weight;
  TruthValue value = 0.0;   // Weight
  std::string label;        // connective or adjoint-pair label
  std::string conjunction;  // AdjointPair only

  static Assignment weight(TruthValue v);
  static Assignment connective(Sort sort, std::string label);
  static Assignment pair(std::string implication, std::string conjunction);

  /// `0.3`, `prod`, ...
  std::string render() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Builds a sort-correct assignment from its surface form (a decimal or a
/// bare label), checking the label against `reg`.
Assignment make_assignment(const Registry& reg, const SymbolId& sym, std::string_view item);

/// Mapping Θ from symbol names to assignments, kept in insertion order.
class SymbolicSubstitution {
 public:
  void assign(const std::string& name, Assignment a);
  const Assignment* find(std::string_view name) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<std::string, Assignment>>& entries() const { return entries_; }

  /// `s=luka, disj=prod, v=0.3`
  std::string render() const;

  friend bool operator==(const SymbolicSubstitution&, const SymbolicSubstitution&) = default;

 private:
  std::vector<std::pair<std::string, Assignment>> entries_;
};

/// Parses `s1=prod,s2=godel,v=0.8`; sorts come from `symbols`.
SymbolicSubstitution parse_theta(std::string_view text, const std::vector<SymbolId>& symbols, const Registry& reg);

/// Symbolic values and connectives in first-occurrence order.
std::vector<SymbolId> sym_of(const Program& p);
std::vector<SymbolId> sym_of(const Expr& e);

/// Replaces every assigned symbol; unassigned ones stay symbolic.
Expr apply_theta(const SymbolicSubstitution& th, const Expr& e);
RuleDef apply_theta(const SymbolicSubstitution& th, const RuleDef& r);
Program apply_theta_program(const SymbolicSubstitution& th, const Program& p);

/// Ordered candidate assignments per symbol.
struct DomainSpec {
  std::vector<std::pair<SymbolId, std::vector<Assignment>>> domains;
};

/// Raw `#name in {item, ...}.` declarations, before sorts are known.
struct DomainDecl {
  std::string name;
  std::vector<std::string> items;
};

std::vector<DomainDecl> parse_domain_decls(std::string_view text);

/// Orders `decls` by `symbols` and types every item. Throws IncompleteDomain
/// if a symbol has no declaration or a declaration names an unknown symbol,
/// and EmptyDomain for an empty item list.
DomainSpec resolve_domains(const std::vector<DomainDecl>& decls, const std::vector<SymbolId>& symbols,
                           const Registry& reg);

/// Lexicographic Cartesian product of a DomainSpec; the first symbol varies
/// slowest. Random access so candidates can be split across workers.
class Enumeration {
 public:
  explicit Enumeration(DomainSpec spec);
  std::size_t size() const { return size_; }
  SymbolicSubstitution operator[](std::size_t index) const;
  const DomainSpec& spec() const { return spec_; }

 private:
  DomainSpec spec_;
  std::size_t size_ = 1;
};

std::vector<SymbolicSubstitution> enumerate(const DomainSpec& spec);

}  // namespace smalp
