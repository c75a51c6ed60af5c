#include "smalp/syntax.hpp"

#include <cctype>
#include <charconv>
#include <utility>

#include "cursor.hpp"
#include "smalp/error.hpp"

namespace smalp {

namespace detail {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

void Cursor::skip_space() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '%') {
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else {
      break;
    }
  }
}

bool Cursor::at_end() {
  skip_space();
  return pos_ >= text_.size();
}

char Cursor::peek(std::size_t offset) const {
  return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
}

void Cursor::advance(std::size_t n) {
  for (; n > 0 && pos_ < text_.size(); --n, ++pos_) {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
  }
}

bool Cursor::consume(std::string_view token) {
  skip_space();
  if (text_.substr(pos_).starts_with(token)) {
    advance(token.size());
    return true;
  }
  return false;
}

bool Cursor::consume_keyword(std::string_view word) {
  skip_space();
  if (text_.substr(pos_).starts_with(word) && !is_ident_char(peek(word.size()))) {
    advance(word.size());
    return true;
  }
  return false;
}

void Cursor::expect(std::string_view token) {
  if (!consume(token)) {
    fail("expected '" + std::string(token) + "'" +
         (pos_ < text_.size() ? " but found '" + std::string(1, text_[pos_]) + "'" : " at end of input"));
  }
}

std::string Cursor::identifier() {
  skip_space();
  if (!is_ident_start(peek())) fail("expected identifier");
  std::size_t start = pos_;
  while (is_ident_char(peek())) advance();
  return std::string(text_.substr(start, pos_ - start));
}

TruthValue Cursor::number() {
  skip_space();
  std::size_t start = pos_;
  std::size_t line = line_;
  std::size_t column = column_;
  while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
  if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
    advance();
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
  }
  if (pos_ == start) fail("expected truth degree");
  std::string_view digits = text_.substr(start, pos_ - start);
  TruthValue v = 0.0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ParseError(line, column, "malformed number '" + std::string(digits) + "'");
  }
  if (!in_unit_interval(v)) {
    throw ParseError(line, column, "truth degree " + std::string(digits) + " outside [0,1]");
  }
  return v;
}

void Cursor::fail(const std::string& message) const { throw ParseError(line_, column_, message); }

namespace {

std::vector<Term> read_term_args(Cursor& in) {
  std::vector<Term> args;
  if (!in.consume("(")) return args;
  do {
    args.push_back(read_term(in));
  } while (in.consume(","));
  in.expect(")");
  return args;
}

std::string read_functor(Cursor& in, const char* what) {
  in.skip_space();
  if (!std::islower(static_cast<unsigned char>(in.peek()))) in.fail(std::string("expected ") + what);
  return in.identifier();
}

}  // namespace

Term read_term(Cursor& in) {
  in.skip_space();
  char c = in.peek();
  if (std::isupper(static_cast<unsigned char>(c)) || c == '_') return Term::variable(in.identifier());
  std::string functor = read_functor(in, "term");
  return Term::compound(std::move(functor), read_term_args(in));
}

Atom read_atom(Cursor& in) {
  std::string pred = read_functor(in, "atom");
  if (pred == "with") in.fail("'with' cannot name a predicate");
  return Atom{std::move(pred), read_term_args(in)};
}

namespace {

ConnectiveKind kind_of_sigil(char c) {
  switch (c) {
    case '&': return ConnectiveKind::Conjunction;
    case '|': return ConnectiveKind::Disjunction;
    default: return ConnectiveKind::Aggregator;
  }
}

Expr read_app(Cursor& in, ConnectiveKind kind, bool symbolic) {
  std::string name = in.identifier();
  in.expect("(");
  std::vector<Expr> args;
  do {
    args.push_back(read_expr(in));
  } while (in.consume(","));
  in.expect(")");
  return Expr::app(kind, ConnName{std::move(name), symbolic}, std::move(args));
}

}  // namespace

Expr read_expr(Cursor& in) {
  in.skip_space();
  char c = in.peek();
  if (c == '<') throw ImplicationInBody(in.line(), in.column(), "implications may not occur in a body");
  if (std::isdigit(static_cast<unsigned char>(c))) return Expr::value(in.number());
  if (c == '&' || c == '|' || c == '@') {
    in.advance();
    return read_app(in, kind_of_sigil(c), false);
  }
  if (c == '#') {
    in.advance();
    char s = in.peek();
    if (s == '&' || s == '|' || s == '@') {
      in.advance();
      return read_app(in, kind_of_sigil(s), true);
    }
    return Expr::symbol(in.identifier());
  }
  return Expr::atom(read_atom(in));
}

Expr read_weight(Cursor& in) {
  in.skip_space();
  if (in.consume("#")) return Expr::symbol(in.identifier());
  return Expr::value(in.number());
}

namespace {

class SymbolCollector {
 public:
  void note(const std::string& name, Sort sort) {
    for (auto& s : symbols_) {
      if (s.name != name) continue;
      if (s.sort == sort) return;
      bool pair_face = (s.sort == Sort::AdjointPair && sort == Sort::Conjunction) ||
                       (s.sort == Sort::Conjunction && sort == Sort::AdjointPair);
      if (!pair_face) {
        throw SortClash("symbol #" + name + " used both as " + std::string(sort_name(s.sort)) + " and as " +
                        std::string(sort_name(sort)));
      }
      s.sort = Sort::AdjointPair;
      return;
    }
    symbols_.push_back(SymbolId{name, sort});
  }

  void visit(const Expr& e) {
    if (const auto* s = e.as_symbol()) {
      note(s->name, Sort::Weight);
    } else if (const auto* app = e.as_app()) {
      if (app->conn.symbolic) {
        switch (app->kind) {
          case ConnectiveKind::Conjunction: note(app->conn.name, Sort::Conjunction); break;
          case ConnectiveKind::Disjunction: note(app->conn.name, Sort::Disjunction); break;
          case ConnectiveKind::Aggregator: note(app->conn.name, Sort::Aggregator); break;
          case ConnectiveKind::Implication: note(app->conn.name, Sort::AdjointPair); break;
        }
      }
      for (const auto& a : app->args) visit(a);
    }
  }

  std::vector<SymbolId> take() { return std::move(symbols_); }

 private:
  std::vector<SymbolId> symbols_;
};

}  // namespace

std::vector<SymbolId> collect_symbols(const Program& p) {
  SymbolCollector c;
  for (const auto& r : p.rules) {
    if (!r.is_fact && r.impl.symbolic) c.note(r.impl.name, Sort::AdjointPair);
    if (!r.is_fact) c.visit(r.body);
    c.visit(r.weight);
  }
  return c.take();
}

std::vector<SymbolId> collect_symbols(const Expr& e) {
  SymbolCollector c;
  c.visit(e);
  return c.take();
}

}  // namespace detail

std::string_view sort_name(Sort sort) {
  switch (sort) {
    case Sort::Weight: return "weight";
    case Sort::Conjunction: return "conjunction";
    case Sort::Disjunction: return "disjunction";
    case Sort::Aggregator: return "aggregator";
    case Sort::AdjointPair: return "adjoint-pair";
  }
  return "?";
}

Program parse_program(std::string_view text) {
  detail::Cursor in(text);
  Program prog;
  while (!in.at_end()) {
    Atom head = detail::read_atom(in);
    if (in.consume_keyword("with")) {
      prog.rules.push_back(RuleDef::fact(std::move(head), detail::read_weight(in)));
    } else {
      in.expect("<");
      ConnName impl{{}, in.consume("#")};
      impl.name = in.identifier();
      in.expect("|");
      Expr body = detail::read_expr(in);
      if (!in.consume_keyword("with")) in.fail("expected 'with'");
      Expr weight = detail::read_weight(in);
      prog.rules.push_back(RuleDef{std::move(head), std::move(impl), std::move(body), std::move(weight), false});
    }
    in.expect(".");
  }
  detail::collect_symbols(prog);
  return prog;
}

Expr parse_goal(std::string_view text) {
  detail::Cursor in(text);
  Expr e = detail::read_expr(in);
  in.consume(".");
  if (!in.at_end()) in.fail("unexpected trailing input");
  detail::collect_symbols(e);
  return e;
}

Term parse_term(std::string_view text) {
  detail::Cursor in(text);
  Term t = detail::read_term(in);
  if (!in.at_end()) in.fail("unexpected trailing input");
  return t;
}

std::string render_value(TruthValue v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  std::string s(buf, ptr);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

namespace {

template <class T, class F>
std::string join(const std::vector<T>& xs, std::string_view sep, F f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += sep;
    out += f(xs[i]);
  }
  return out;
}

}  // namespace

std::string render(const Term& t) {
  if (t.is_variable() || t.args.empty()) return t.name;
  return t.name + "(" + join(t.args, ",", [](const Term& a) { return render(a); }) + ")";
}

std::string render(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  return a.predicate + "(" + join(a.args, ",", [](const Term& t) { return render(t); }) + ")";
}

std::string render(const Expr& e, RenderStyle style) {
  if (const auto* v = e.as_value()) return render_value(v->value);
  if (const auto* s = e.as_symbol()) return "#" + s->name;
  if (const auto* a = e.as_atom()) return render(*a);
  const auto& app = *e.as_app();
  std::string out = app.conn.symbolic ? "#" : "";
  out += sigil(app.kind);
  out += app.conn.name;
  out += "(";
  out += join(app.args, style.spaced ? ", " : ",", [&](const Expr& x) { return render(x, style); });
  out += ")";
  return out;
}

std::string render(const RuleDef& r, RenderStyle style) {
  std::string out = render(r.head);
  if (!r.is_fact) {
    out += " <";
    if (r.impl.symbolic) out += "#";
    out += r.impl.name + "| " + render(r.body, style);
  }
  return out + " with " + render(r.weight, style) + ".";
}

std::string render(const Program& p, RenderStyle style) {
  std::string out;
  for (const auto& r : p.rules) out += render(r, style) + "\n";
  return out;
}

std::size_t atom_count(const Expr& e) {
  if (e.as_atom()) return 1;
  std::size_t n = 0;
  if (const auto* app = e.as_app()) {
    for (const auto& a : app->args) n += atom_count(a);
  }
  return n;
}

void validate(const Expr& e, const Registry& reg) {
  const auto* app = e.as_app();
  if (app == nullptr) return;
  if (app->kind == ConnectiveKind::Implication) throw Error("implication inside an expression");
  if (!app->conn.symbolic) {
    const ConnectiveDef* def = reg.find(app->kind, app->conn.name);
    if (def == nullptr) {
      throw UnknownConnective("unknown connective " + std::string(sigil(app->kind)) + app->conn.name);
    }
    bool ok = def->arity == 2 ? app->args.size() >= 2 : app->args.size() == def->arity;
    if (!ok) {
      throw ArityMismatch(std::string(sigil(app->kind)) + app->conn.name + " applied to " +
                          std::to_string(app->args.size()) + " arguments");
    }
  }
  for (const auto& a : app->args) validate(a, reg);
}

void validate(const Program& p, const Registry& reg) {
  detail::collect_symbols(p);
  for (const auto& r : p.rules) {
    if (r.is_fact) continue;
    if (!r.impl.symbolic && !reg.contains(ConnectiveKind::Implication, r.impl.name)) {
      throw UnknownConnective("unknown implication <" + r.impl.name + "|");
    }
    validate(r.body, reg);
  }
}

}  // namespace smalp
