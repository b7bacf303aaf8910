#pragma once

#include "rpqwn/expr.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rpqwn {

struct Span {
    std::size_t line = 1;
    std::size_t col = 1;
};

// Parse tree with source spans. Sums carry a sign per child; scalar leaves
// carry an optional integer exponent.
struct AstNode {
    enum class Kind {
        Sum,
        Product,
        Rational,
        ImagUnit,
        Sqrt2,
        Atom,
        Generator,
        BracketRequest, // children: lhs, rhs; name: family
    };

    Kind kind{};
    Span span{};
    Rational number;
    std::string name;
    long long exponent = 1;
    bool is_winf = false;
    long long upper = 0;
    long long lower = 0;
    bool has_testfn = false;
    std::vector<std::pair<std::string, long long>> testfn_factors;
    std::vector<AstNode> children;
    std::vector<int> child_signs; // Sum only
};

// A "[lhs, rhs] @ family" request; the family is resolved by the caller.
struct BracketRequest {
    std::string family;
    Span family_span;
    Expr lhs;
    Expr rhs;
};

// Total: every input yields an AST or throws ParseError with a span.
AstNode parse_input(const std::string& text);

using ParseOutcome = std::variant<Expr, BracketRequest>;

// Lowers an AST; domain violations (bad indices) surface as ParseError
// carrying the offending span.
ParseOutcome lower(const AstNode& ast);

// Convenience: parse + lower, rejecting bracket requests.
Expr parse_to_expr(const std::string& text);

// Canonical rendering; parse_to_expr(render_expr(e)) == e.
std::string render_expr(const Expr& e);

} // namespace rpqwn
