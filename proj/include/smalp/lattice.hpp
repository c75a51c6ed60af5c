#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smalp {

/// Truth degree in the unit interval [0, 1].
using TruthValue = double;

inline constexpr TruthValue kBottom = 0.0;
inline constexpr TruthValue kTop = 1.0;

/// Absolute tolerance used when comparing computed truth degrees.
inline constexpr double kTruthTolerance = 1e-9;

inline bool in_unit_interval(TruthValue v) { return v >= 0.0 && v <= 1.0; }

enum class ConnectiveKind { Conjunction, Disjunction, Aggregator, Implication };

/// Surface prefix of a connective kind: `&`, `|`, `@` or `<`.
std::string_view sigil(ConnectiveKind kind);
std::string_view kind_name(ConnectiveKind kind);

using TruthFunction = std::function<TruthValue(std::span<const TruthValue>)>;

struct ConnectiveDef {
  std::string name;
  ConnectiveKind kind = ConnectiveKind::Aggregator;
  // Binary connectives accept any n >= 2 arguments by right nesting.
  std::size_t arity = 2;
  TruthFunction truth_function;
  // Implications only: label of the adjoint conjunction.
  std::optional<std::string> adjoint;
};

/// The multi-adjoint lattice over [0,1]: named connectives plus the pairing
/// of each implication with its adjoint conjunction.
///
/// A registry is a value; `with` returns an extended copy. Builtins cannot be
/// shadowed and every implication must name a registered conjunction.
class Registry {
 public:
  bool contains(ConnectiveKind kind, std::string_view name) const;
  const ConnectiveDef* find(ConnectiveKind kind, std::string_view name) const;

  TruthValue eval(ConnectiveKind kind, std::string_view name, std::span<const TruthValue> args) const;

  /// Conjunction label paired with implication `impl`.
  const std::string& adjoint_of(std::string_view impl) const;

  /// Copy of this registry extended with `def`.
  [[nodiscard]] Registry with(ConnectiveDef def) const;

  /// Registered names of one kind, sorted.
  std::vector<std::string> names(ConnectiveKind kind) const;

  /// Every definition, ordered by (kind, name).
  std::vector<const ConnectiveDef*> all() const;

 private:
  void insert(ConnectiveDef def);

  std::map<std::pair<ConnectiveKind, std::string>, ConnectiveDef, std::less<>> defs_;
  std::map<std::string, std::string, std::less<>> adjoint_;

  friend Registry builtin_registry();
};

/// Product, Goedel and Lukasiewicz conjunctions, disjunctions and implications
/// plus the arithmetic mean aggregator `aver`.
Registry builtin_registry();

TruthValue eval_connective(const Registry& reg, ConnectiveKind kind, std::string_view name,
                           std::span<const TruthValue> args);

const std::string& adjoint_of(const Registry& reg, std::string_view impl_label);

[[nodiscard]] Registry register_connective(const Registry& reg, ConnectiveDef def);

}  // namespace smalp
