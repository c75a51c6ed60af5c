#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "smalp/syntax.hpp"

namespace smalp::detail {

/// Character cursor over surface text with line/column tracking. `%` starts
/// a comment running to the end of the line.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space();
  bool at_end();
  char peek(std::size_t offset = 0) const;
  void advance(std::size_t n = 1);

  /// Consumes `token` after skipping space; false if it is not next.
  bool consume(std::string_view token);
  /// Consumes `word` only when it is not followed by an identifier character.
  bool consume_keyword(std::string_view word);
  void expect(std::string_view token);

  std::string identifier();
  TruthValue number();

  [[noreturn]] void fail(const std::string& message) const;

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_ident_start(char c);
bool is_ident_char(char c);

Term read_term(Cursor& in);
Atom read_atom(Cursor& in);
Expr read_expr(Cursor& in);
/// Truth value or `#name`.
Expr read_weight(Cursor& in);

/// Symbols of a program or expression in first-occurrence order; throws
/// SortClash on inconsistent use.
std::vector<SymbolId> collect_symbols(const Program& p);
std::vector<SymbolId> collect_symbols(const Expr& e);

}  // namespace smalp::detail
