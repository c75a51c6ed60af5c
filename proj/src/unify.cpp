#include "smalp/unify.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "cursor.hpp"

namespace smalp {

void Substitution::bind(std::string var, Term t) {
  if (t.is_variable() && t.name == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(std::move(var), std::move(t));
}

const Term* Substitution::lookup(std::string_view var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::set<std::string> Substitution::domain() const {
  std::set<std::string> out;
  for (const auto& [v, t] : bindings_) out.insert(v);
  return out;
}

Term apply(const Substitution& s, const Term& t) {
  if (t.is_variable()) {
    const Term* b = s.lookup(t.name);
    return b ? *b : t;
  }
  Term out = Term::compound(t.name);
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(apply(s, a));
  return out;
}

Atom apply(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(apply(s, t));
  return out;
}

Expr apply(const Substitution& s, const Expr& e) {
  if (const auto* a = e.as_atom()) return Expr::atom(apply(s, *a));
  if (const auto* app = e.as_app()) {
    Expr::App out{app->kind, app->conn, {}};
    out.args.reserve(app->args.size());
    for (const auto& x : app->args) out.args.push_back(apply(s, x));
    return Expr{std::move(out)};
  }
  return e;
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  for (const auto& [v, t] : s1.bindings()) out.bind(v, apply(s2, t));
  for (const auto& [v, t] : s2.bindings()) {
    if (!s1.lookup(v)) out.bind(v, t);
  }
  return out;
}

Substitution restrict(const Substitution& s, const std::set<std::string>& vars) {
  Substitution out;
  for (const auto& [v, t] : s.bindings()) {
    if (vars.contains(v)) out.bind(v, t);
  }
  return out;
}

namespace {

bool occurs(std::string_view var, const Term& t) {
  if (t.is_variable()) return t.name == var;
  return std::any_of(t.args.begin(), t.args.end(), [&](const Term& a) { return occurs(var, a); });
}

// Keeps `s` idempotent: terms are resolved against `s` before each binding,
// and every new binding is pushed into the existing ones.
bool unify_into(Substitution& s, const Term& lhs, const Term& rhs) {
  Term a = apply(s, lhs);
  Term b = apply(s, rhs);
  if (a == b) return true;

  const Term* var = nullptr;
  const Term* other = nullptr;
  if (b.is_variable()) {
    var = &b;
    other = &a;
  } else if (a.is_variable()) {
    var = &a;
    other = &b;
  }
  if (var != nullptr) {
    if (occurs(var->name, *other)) return false;
    Substitution single;
    single.bind(var->name, *other);
    s = compose(s, single);
    return true;
  }

  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_into(s, a.args[i], b.args[i])) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> mgu(const Term& a, const Term& b) {
  Substitution s;
  if (!unify_into(s, a, b)) return std::nullopt;
  return s;
}

std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_into(s, a.args[i], b.args[i])) return std::nullopt;
  }
  return s;
}

namespace {

void collect(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect(a, out);
}

void collect(const Atom& a, std::vector<std::string>& out) {
  for (const auto& t : a.args) collect(t, out);
}

void collect(const Expr& e, std::vector<std::string>& out) {
  if (const auto* a = e.as_atom()) {
    collect(*a, out);
  } else if (const auto* app = e.as_app()) {
    for (const auto& x : app->args) collect(x, out);
  }
}

}  // namespace

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  collect(t, out);
  return out;
}

std::vector<std::string> variables(const Atom& a) {
  std::vector<std::string> out;
  collect(a, out);
  return out;
}

std::vector<std::string> variables(const Expr& e) {
  std::vector<std::string> out;
  collect(e, out);
  return out;
}

std::vector<std::string> variables(const RuleDef& r) {
  std::vector<std::string> out;
  collect(r.head, out);
  collect(r.body, out);
  return out;
}

RuleDef rename_apart(const RuleDef& r, FreshNames& fresh) {
  Substitution renaming;
  for (const auto& v : variables(r)) renaming.bind(v, Term::variable(fresh.next()));
  return RuleDef{apply(renaming, r.head), r.impl, apply(renaming, r.body), r.weight, r.is_fact};
}

namespace {

bool match_renaming(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                    std::map<std::string, std::string>& bwd) {
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) {
    auto [fi, f_new] = fwd.emplace(a.name, b.name);
    auto [bi, b_new] = bwd.emplace(b.name, a.name);
    return fi->second == b.name && bi->second == a.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!match_renaming(a.args[i], b.args[i], fwd, bwd)) return false;
  }
  return true;
}

}  // namespace

bool equivalent_up_to_renaming(const Substitution& a, const Substitution& b) {
  if (a.domain() != b.domain()) return false;
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> bwd;
  for (const auto& [v, t] : a.bindings()) {
    if (!match_renaming(t, *b.lookup(v), fwd, bwd)) return false;
  }
  return true;
}

std::string render(const Substitution& s, RenderStyle style) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += style.spaced ? ", " : ",";
    first = false;
    out += v + "/" + render(t);
  }
  return out + "}";
}

Substitution parse_substitution(std::string_view text) {
  detail::Cursor in(text);
  Substitution s;
  in.expect("{");
  if (!in.consume("}")) {
    do {
      in.skip_space();
      if (!(std::isupper(static_cast<unsigned char>(in.peek())) || in.peek() == '_')) in.fail("expected variable");
      std::string var = in.identifier();
      in.expect("/");
      s.bind(std::move(var), detail::read_term(in));
    } while (in.consume(","));
    in.expect("}");
  }
  if (!in.at_end()) in.fail("unexpected trailing input");
  return s;
}

}  // namespace smalp
