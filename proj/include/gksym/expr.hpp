#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gksym/poly.hpp"

namespace gksym {

// Byte offsets [start, end) into the parsed source.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

// Immutable expression tree. The parser produces these with source spans;
// normalize() maps to the canonical tree of the equivalent Poly.
class Expr {
 public:
  enum class Kind { Num, Leaf, Add, Mul, Pow, Call };
  enum class Call { Func, Exp, Sin, Cos };

  Expr();  // zero

  static Expr number(const Rational& c, SourceSpan s = {});
  static Expr leaf(const Atom& a, SourceSpan s = {});
  static Expr add(std::vector<Expr> children, SourceSpan s = {});
  static Expr mul(std::vector<Expr> children, SourceSpan s = {});
  static Expr power(const Expr& base, Exponent e, SourceSpan s = {});
  static Expr call(Call c, std::vector<Expr> args, SourceSpan s = {});
  static Expr function(const std::string& name, std::vector<int> deriv, std::vector<Expr> args, SourceSpan s = {});

  Kind kind() const;
  const Rational& value() const;
  const Atom& atom() const;
  const std::vector<Expr>& children() const;
  Exponent exponent() const;
  Call call_kind() const;
  const std::string& name() const;
  const std::vector<int>& deriv() const;
  SourceSpan span() const;
  Expr with_span(SourceSpan s) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

Poly to_poly(const Expr& e);
Expr from_poly(const Poly& p);
Expr normalize(const Expr& e);

// Canonical JSON tree: {"kind": ..., ...}.
nlohmann::json to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);
inline nlohmann::json poly_to_json(const Poly& p) { return to_json(from_poly(p)); }

}  // namespace gksym
