#include "smalp/symsubst.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

#include "cursor.hpp"
#include "smalp/error.hpp"

namespace smalp {

Assignment Assignment::weight(TruthValue v) {
  if (!in_unit_interval(v)) throw InvalidAssignment("weight " + render_value(v) + " outside [0,1]");
  return Assignment{Sort::Weight, v, {}, {}};
}

Assignment Assignment::connective(Sort sort, std::string label) {
  return Assignment{sort, 0.0, std::move(label), {}};
}

Assignment Assignment::pair(std::string implication, std::string conjunction) {
  return Assignment{Sort::AdjointPair, 0.0, std::move(implication), std::move(conjunction)};
}

std::string Assignment::render() const { return sort == Sort::Weight ? render_value(value) : label; }

namespace {

ConnectiveKind kind_for(Sort sort) {
  switch (sort) {
    case Sort::Conjunction: return ConnectiveKind::Conjunction;
    case Sort::Disjunction: return ConnectiveKind::Disjunction;
    case Sort::Aggregator: return ConnectiveKind::Aggregator;
    default: return ConnectiveKind::Implication;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Assignment make_assignment(const Registry& reg, const SymbolId& sym, std::string_view item) {
  item = trim(item);
  if (sym.sort == Sort::Weight) {
    TruthValue v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw InvalidAssignment("weight symbol #" + sym.name + " needs a truth degree, got '" + std::string(item) + "'");
    }
    return Assignment::weight(v);
  }
  // Optional sigil: `&prod`, `|luka`, `@aver`, `<prod|`.
  std::string label(item);
  if (!label.empty() && (label.front() == '&' || label.front() == '|' || label.front() == '@' ||
                         label.front() == '<')) {
    label.erase(0, 1);
    if (!label.empty() && label.back() == '|' && item.front() == '<') label.pop_back();
  }
  ConnectiveKind kind = kind_for(sym.sort);
  if (!reg.contains(kind, label)) {
    throw InvalidAssignment("#" + sym.name + " (" + std::string(sort_name(sym.sort)) + ") cannot be '" + label +
                            "': no such " + std::string(kind_name(kind)));
  }
  if (sym.sort == Sort::AdjointPair) return Assignment::pair(label, reg.adjoint_of(label));
  return Assignment::connective(sym.sort, std::move(label));
}

void SymbolicSubstitution::assign(const std::string& name, Assignment a) {
  for (auto& [n, existing] : entries_) {
    if (n == name) {
      existing = std::move(a);
      return;
    }
  }
  entries_.emplace_back(name, std::move(a));
}

const Assignment* SymbolicSubstitution::find(std::string_view name) const {
  for (const auto& [n, a] : entries_) {
    if (n == name) return &a;
  }
  return nullptr;
}

std::string SymbolicSubstitution::render() const {
  std::string out;
  for (const auto& [n, a] : entries_) {
    if (!out.empty()) out += ", ";
    out += n + "=" + a.render();
  }
  return out;
}

SymbolicSubstitution parse_theta(std::string_view text, const std::vector<SymbolId>& symbols, const Registry& reg) {
  SymbolicSubstitution th;
  while (!trim(text).empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidAssignment("expected name=value, got '" + std::string(item) + "'");
    std::string_view name = trim(item.substr(0, eq));
    if (name.starts_with('#')) name.remove_prefix(1);
    auto sym = std::find_if(symbols.begin(), symbols.end(), [&](const SymbolId& s) { return s.name == name; });
    if (sym == symbols.end()) throw InvalidAssignment("unknown symbol '" + std::string(name) + "'");
    th.assign(sym->name, make_assignment(reg, *sym, item.substr(eq + 1)));
  }
  return th;
}

std::vector<SymbolId> sym_of(const Program& p) { return detail::collect_symbols(p); }
std::vector<SymbolId> sym_of(const Expr& e) { return detail::collect_symbols(e); }

namespace {

// Concrete label replacing a symbolic connective of `kind`, or empty when
// the symbol is unassigned.
std::string concrete_label(const SymbolicSubstitution& th, const std::string& name, ConnectiveKind kind) {
  const Assignment* a = th.find(name);
  if (a == nullptr) return {};
  if (a->sort == Sort::AdjointPair) {
    if (kind == ConnectiveKind::Conjunction) return a->conjunction;
    if (kind == ConnectiveKind::Implication) return a->label;
  } else if (a->sort != Sort::Weight && kind_for(a->sort) == kind) {
    return a->label;
  }
  throw SortClash("symbol #" + name + " is assigned a " + std::string(sort_name(a->sort)) + " but used as " +
                  std::string(kind_name(kind)));
}

}  // namespace

Expr apply_theta(const SymbolicSubstitution& th, const Expr& e) {
  if (const auto* s = e.as_symbol()) {
    const Assignment* a = th.find(s->name);
    if (a == nullptr) return e;
    if (a->sort != Sort::Weight) {
      throw SortClash("symbol #" + s->name + " is assigned a " + std::string(sort_name(a->sort)) +
                      " but used as a truth value");
    }
    return Expr::value(a->value);
  }
  if (const auto* app = e.as_app()) {
    Expr::App out{app->kind, app->conn, {}};
    if (app->conn.symbolic) {
      std::string label = concrete_label(th, app->conn.name, app->kind);
      if (!label.empty()) out.conn = ConnName::concrete(std::move(label));
    }
    out.args.reserve(app->args.size());
    for (const auto& a : app->args) out.args.push_back(apply_theta(th, a));
    return Expr{std::move(out)};
  }
  return e;
}

RuleDef apply_theta(const SymbolicSubstitution& th, const RuleDef& r) {
  RuleDef out{r.head, r.impl, apply_theta(th, r.body), apply_theta(th, r.weight), r.is_fact};
  if (!r.is_fact && r.impl.symbolic) {
    std::string label = concrete_label(th, r.impl.name, ConnectiveKind::Implication);
    if (!label.empty()) out.impl = ConnName::concrete(std::move(label));
  }
  return out;
}

Program apply_theta_program(const SymbolicSubstitution& th, const Program& p) {
  Program out;
  out.rules.reserve(p.rules.size());
  for (const auto& r : p.rules) out.rules.push_back(apply_theta(th, r));
  return out;
}

std::vector<DomainDecl> parse_domain_decls(std::string_view text) {
  detail::Cursor in(text);
  std::vector<DomainDecl> out;
  while (!in.at_end()) {
    in.expect("#");
    DomainDecl d{in.identifier(), {}};
    if (!in.consume_keyword("in")) in.fail("expected 'in'");
    in.expect("{");
    if (!in.consume("}")) {
      do {
        in.skip_space();
        std::string item;
        while (in.peek() != '\0' && in.peek() != ',' && in.peek() != '}' && in.peek() != '\n') {
          item += in.peek();
          in.advance();
        }
        std::string_view t = trim(item);
        if (t.empty()) in.fail("empty domain item");
        d.items.emplace_back(t);
      } while (in.consume(","));
      in.expect("}");
    }
    in.consume(".");
    for (const auto& prev : out) {
      if (prev.name == d.name) in.fail("domain for #" + d.name + " declared twice");
    }
    out.push_back(std::move(d));
  }
  return out;
}

DomainSpec resolve_domains(const std::vector<DomainDecl>& decls, const std::vector<SymbolId>& symbols,
                           const Registry& reg) {
  for (const auto& d : decls) {
    bool known = std::any_of(symbols.begin(), symbols.end(), [&](const SymbolId& s) { return s.name == d.name; });
    if (!known) throw IncompleteDomain("domain declared for unknown symbol '" + d.name + "'");
  }
  DomainSpec spec;
  for (const auto& sym : symbols) {
    auto d = std::find_if(decls.begin(), decls.end(), [&](const DomainDecl& x) { return x.name == sym.name; });
    if (d == decls.end()) throw IncompleteDomain("no domain for symbol '" + sym.name + "'");
    if (d->items.empty()) throw EmptyDomain("domain of '" + sym.name + "' is empty");
    std::vector<Assignment> values;
    for (const auto& item : d->items) values.push_back(make_assignment(reg, sym, item));
    spec.domains.emplace_back(sym, std::move(values));
  }
  return spec;
}

Enumeration::Enumeration(DomainSpec spec) : spec_(std::move(spec)) {
  for (const auto& [sym, values] : spec_.domains) {
    if (values.empty()) throw EmptyDomain("domain of '" + sym.name + "' is empty");
    size_ *= values.size();
  }
}

SymbolicSubstitution Enumeration::operator[](std::size_t index) const {
  std::vector<std::size_t> digits(spec_.domains.size());
  for (std::size_t i = spec_.domains.size(); i-- > 0;) {
    std::size_t radix = spec_.domains[i].second.size();
    digits[i] = index % radix;
    index /= radix;
  }
  SymbolicSubstitution th;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    th.assign(spec_.domains[i].first.name, spec_.domains[i].second[digits[i]]);
  }
  return th;
}

std::vector<SymbolicSubstitution> enumerate(const DomainSpec& spec) {
  Enumeration e(spec);
  std::vector<SymbolicSubstitution> out;
  out.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out.push_back(e[i]);
  return out;
}

}  // namespace smalp
