#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gksym/expr.hpp"

namespace gksym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceSpan span) : std::runtime_error(msg), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// Names known to the parser. Function signatures list formal argument names
// (drawn from x, y, t, u) and are used when a call omits its argument list.
struct ParseContext {
  std::set<std::string> params;
  std::map<std::string, std::vector<std::string>> functions;
  std::map<std::string, std::string> macros;  // identifier -> DSL text, expanded in place

  static ParseContext standard();
  void declare_function(const std::string& name, std::vector<std::string> formal) { functions[name] = std::move(formal); }
};

Expr parse_expr(const std::string& src, const ParseContext& ctx = ParseContext::standard());
Poly parse_poly(const std::string& src, const ParseContext& ctx = ParseContext::standard());

std::string print_expr(const Expr& e);
std::string print_poly(const Poly& p);
std::string print_monomial(const Monomial& m);
// Formats "message" with a caret line under the span.
std::string format_parse_error(const std::string& src, const ParseError& err);

}  // namespace gksym
