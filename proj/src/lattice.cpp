#include "smalp/lattice.hpp"

#include <algorithm>

#include "smalp/error.hpp"

namespace smalp {

std::string_view sigil(ConnectiveKind kind) {
  switch (kind) {
    case ConnectiveKind::Conjunction: return "&";
    case ConnectiveKind::Disjunction: return "|";
    case ConnectiveKind::Aggregator: return "@";
    case ConnectiveKind::Implication: return "<";
  }
  return "?";
}

std::string_view kind_name(ConnectiveKind kind) {
  switch (kind) {
    case ConnectiveKind::Conjunction: return "conjunction";
    case ConnectiveKind::Disjunction: return "disjunction";
    case ConnectiveKind::Aggregator: return "aggregator";
    case ConnectiveKind::Implication: return "implication";
  }
  return "?";
}

namespace {

std::string qualified(ConnectiveKind kind, std::string_view name) {
  return std::string(sigil(kind)) + std::string(name);
}

template <class F>
TruthFunction binary(F f) {
  return [f](std::span<const TruthValue> a) { return f(a[0], a[1]); };
}

}  // namespace

bool Registry::contains(ConnectiveKind kind, std::string_view name) const {
  return find(kind, name) != nullptr;
}

const ConnectiveDef* Registry::find(ConnectiveKind kind, std::string_view name) const {
  auto it = defs_.find(std::pair{kind, std::string(name)});
  return it == defs_.end() ? nullptr : &it->second;
}

TruthValue Registry::eval(ConnectiveKind kind, std::string_view name,
                          std::span<const TruthValue> args) const {
  const ConnectiveDef* def = find(kind, name);
  if (def == nullptr) throw UnknownConnective("unknown connective " + qualified(kind, name));

  if (def->arity == 2 && args.size() > 2) {
    // f(x1, ..., xn) = f(x1, f(x2, ..., f(xn-1, xn)))
    TruthValue acc = args.back();
    for (std::size_t i = args.size() - 1; i-- > 0;) {
      const TruthValue pair[2] = {args[i], acc};
      acc = def->truth_function(pair);
    }
    return acc;
  }
  if (args.size() != def->arity) {
    throw ArityMismatch(qualified(kind, name) + " expects " + std::to_string(def->arity) +
                        " arguments, got " + std::to_string(args.size()));
  }
  return def->truth_function(args);
}

const std::string& Registry::adjoint_of(std::string_view impl) const {
  auto it = adjoint_.find(impl);
  if (it == adjoint_.end()) throw UnknownConnective("no adjoint pair labelled " + std::string(impl));
  return it->second;
}

Registry Registry::with(ConnectiveDef def) const {
  Registry copy = *this;
  copy.insert(std::move(def));
  return copy;
}

void Registry::insert(ConnectiveDef def) {
  if (def.name.empty()) throw Error("connective name must not be empty");
  if (def.arity == 0) throw ArityMismatch("connective " + def.name + " must have positive arity");
  if (!def.truth_function) throw Error("connective " + def.name + " has no truth function");
  if (contains(def.kind, def.name)) {
    throw DuplicateConnective("connective " + qualified(def.kind, def.name) + " is already registered");
  }
  if (def.kind == ConnectiveKind::Implication) {
    if (!def.adjoint || !contains(ConnectiveKind::Conjunction, *def.adjoint)) {
      throw UnknownConnective("implication " + def.name + " needs a registered adjoint conjunction");
    }
    for (const auto& [impl, conj] : adjoint_) {
      if (conj == *def.adjoint) {
        throw DuplicateConnective("conjunction &" + conj + " is already paired with <" + impl + "|");
      }
    }
    adjoint_.emplace(def.name, *def.adjoint);
  }
  auto key = std::pair{def.kind, def.name};
  defs_.emplace(std::move(key), std::move(def));
}

std::vector<std::string> Registry::names(ConnectiveKind kind) const {
  std::vector<std::string> out;
  for (const auto& [key, def] : defs_) {
    if (key.first == kind) out.push_back(key.second);
  }
  return out;
}

std::vector<const ConnectiveDef*> Registry::all() const {
  std::vector<const ConnectiveDef*> out;
  out.reserve(defs_.size());
  for (const auto& [key, def] : defs_) out.push_back(&def);
  return out;
}

Registry builtin_registry() {
  using K = ConnectiveKind;
  Registry reg;
  auto add = [&](std::string name, K kind, TruthFunction f, std::optional<std::string> adj = {}) {
    reg.insert(ConnectiveDef{std::move(name), kind, 2, std::move(f), std::move(adj)});
  };

  add("prod", K::Conjunction, binary([](double x, double y) { return x * y; }));
  add("godel", K::Conjunction, binary([](double x, double y) { return std::min(x, y); }));
  add("luka", K::Conjunction, binary([](double x, double y) { return std::max(0.0, x + y - 1.0); }));

  add("prod", K::Disjunction, binary([](double x, double y) { return x + y - x * y; }));
  add("godel", K::Disjunction, binary([](double x, double y) { return std::max(x, y); }));
  add("luka", K::Disjunction, binary([](double x, double y) { return std::min(x + y, 1.0); }));

  add("aver", K::Aggregator, binary([](double x, double y) { return (x + y) / 2.0; }));

  // Implications take (head, body). y == 0 falls in the y <= x branch, so
  // the product residuum never divides by zero.
  add("prod", K::Implication, binary([](double x, double y) { return y <= x ? 1.0 : x / y; }), "prod");
  add("godel", K::Implication, binary([](double x, double y) { return y <= x ? 1.0 : x; }), "godel");
  add("luka", K::Implication, binary([](double x, double y) { return std::min(x - y + 1.0, 1.0); }),
      "luka");
  return reg;
}

TruthValue eval_connective(const Registry& reg, ConnectiveKind kind, std::string_view name,
                           std::span<const TruthValue> args) {
  return reg.eval(kind, name, args);
}

const std::string& adjoint_of(const Registry& reg, std::string_view impl_label) {
  return reg.adjoint_of(impl_label);
}

Registry register_connective(const Registry& reg, ConnectiveDef def) { return reg.with(std::move(def)); }

}  // namespace smalp
