#include "rpqwn/parser.hpp"

#include "rpqwn/errors.hpp"

#include <cctype>

namespace rpqwn {

namespace {

struct Token {
    enum class Kind {
        Number, Ident, Plus, Minus, Star, Slash, Caret,
        LParen, RParen, LBracket, RBracket, Comma, At, End,
    };
    Kind kind;
    std::string text;
    Span span;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        const char c = text[i];
        const Span here{line, col};
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Kind::Number, text.substr(i, j - i), here});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Kind::Ident, text.substr(i, j - i), here});
            advance(j - i);
            continue;
        }
        Token::Kind kind;
        switch (c) {
            case '+': kind = Token::Kind::Plus; break;
            case '-': kind = Token::Kind::Minus; break;
            case '*': kind = Token::Kind::Star; break;
            case '/': kind = Token::Kind::Slash; break;
            case '^': kind = Token::Kind::Caret; break;
            case '(': kind = Token::Kind::LParen; break;
            case ')': kind = Token::Kind::RParen; break;
            case '[': kind = Token::Kind::LBracket; break;
            case ']': kind = Token::Kind::RBracket; break;
            case ',': kind = Token::Kind::Comma; break;
            case '@': kind = Token::Kind::At; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back({kind, std::string(1, c), here});
        advance(1);
    }
    out.push_back({Token::Kind::End, "", {line, col}});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

    AstNode run() {
        AstNode node = peek().kind == Token::Kind::LBracket ? parse_bracket_request()
                                                            : parse_sum();
        expect(Token::Kind::End, "end of input");
        return node;
    }

  private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t j = pos_ + ahead;
        return j < tokens_.size() ? tokens_[j] : tokens_.back();
    }
    const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.span.line, at.span.col);
    }
    const Token& expect(Token::Kind kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what, peek());
        return take();
    }

    long long parse_integer_token(const Token& tok) const {
        try {
            return std::stoll(tok.text);
        } catch (const std::exception&) {
            fail("integer literal out of range", tok);
        }
    }

    // [-]digits, used for indices and exponents.
    long long parse_signed_integer() {
        bool neg = false;
        if (peek().kind == Token::Kind::Minus) {
            take();
            neg = true;
        }
        const Token& tok = expect(Token::Kind::Number, "an integer");
        const long long v = parse_integer_token(tok);
        return neg ? -v : v;
    }

    AstNode parse_bracket_request() {
        AstNode node;
        node.kind = AstNode::Kind::BracketRequest;
        expect(Token::Kind::LBracket, "'['");
        node.children.push_back(parse_sum());
        expect(Token::Kind::Comma, "','");
        node.children.push_back(parse_sum());
        expect(Token::Kind::RBracket, "']'");
        expect(Token::Kind::At, "'@'");
        const Token& fam = expect(Token::Kind::Ident, "a family name");
        node.name = fam.text;
        node.span = fam.span; // family span, for resolution errors
        // family names may be hyphenated (e.g. "c-renorm")
        while (peek().kind == Token::Kind::Minus && peek(1).kind == Token::Kind::Ident) {
            take();
            node.name += "-" + take().text;
        }
        return node;
    }

    AstNode parse_sum() {
        AstNode node;
        node.kind = AstNode::Kind::Sum;
        node.span = peek().span;
        int sign = 1;
        if (peek().kind == Token::Kind::Minus) {
            take();
            sign = -1;
        }
        node.children.push_back(parse_term());
        node.child_signs.push_back(sign);
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            sign = take().kind == Token::Kind::Plus ? 1 : -1;
            node.children.push_back(parse_term());
            node.child_signs.push_back(sign);
        }
        if (node.children.size() == 1 && node.child_signs[0] == 1)
            return std::move(node.children[0]);
        return node;
    }

    static bool starts_factor(Token::Kind k) {
        return k == Token::Kind::Number || k == Token::Kind::Ident ||
               k == Token::Kind::LParen;
    }

    AstNode parse_term() {
        AstNode node;
        node.kind = AstNode::Kind::Product;
        node.span = peek().span;
        node.children.push_back(parse_factor());
        while (true) {
            if (peek().kind == Token::Kind::Star) {
                take();
                node.children.push_back(parse_factor());
            } else if (starts_factor(peek().kind)) {
                node.children.push_back(parse_factor()); // juxtaposition
            } else {
                break;
            }
        }
        if (node.children.size() == 1) return std::move(node.children[0]);
        return node;
    }

    AstNode parse_factor() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Token::Kind::Number: return parse_rational();
            case Token::Kind::LParen: {
                take();
                AstNode inner = parse_sum();
                expect(Token::Kind::RParen, "')'");
                return inner;
            }
            case Token::Kind::Ident: {
                if ((tok.text == "B" || tok.text == "Bh") &&
                    peek(1).kind == Token::Kind::LBracket)
                    return parse_generator();
                return parse_scalar_ident();
            }
            default: fail("expected a factor", tok);
        }
    }

    AstNode parse_rational() {
        AstNode node;
        node.kind = AstNode::Kind::Rational;
        node.span = peek().span;
        const Token& num = expect(Token::Kind::Number, "a number");
        Int n(num.text);
        if (peek().kind == Token::Kind::Slash && peek(1).kind == Token::Kind::Number) {
            take();
            const Token& den = take();
            Int d(den.text);
            if (d == 0) fail("zero denominator", den);
            node.number = Rational(n, d);
        } else {
            node.number = Rational(n);
        }
        return node;
    }

    AstNode parse_scalar_ident() {
        AstNode node;
        node.span = peek().span;
        const Token& tok = take();
        if (tok.text == "i") {
            node.kind = AstNode::Kind::ImagUnit;
        } else if (tok.text == "sqrt2") {
            node.kind = AstNode::Kind::Sqrt2;
        } else {
            node.kind = AstNode::Kind::Atom;
            node.name = tok.text;
        }
        if (peek().kind == Token::Kind::Caret) {
            take();
            node.exponent = parse_signed_integer();
        }
        return node;
    }

    // True when the tokens after a '(' look like a test-function list:
    // ident [^int] ('*' ident [^int])* ')'.
    bool testfn_follows() const {
        std::size_t j = pos_ + 1;
        while (true) {
            if (peek_at(j).kind != Token::Kind::Ident) return false;
            if (peek_at(j + 1).kind == Token::Kind::LBracket) return false; // generator
            ++j;
            if (peek_at(j).kind == Token::Kind::Caret) {
                ++j;
                if (peek_at(j).kind == Token::Kind::Minus) ++j;
                if (peek_at(j).kind != Token::Kind::Number) return false;
                ++j;
            }
            if (peek_at(j).kind == Token::Kind::RParen) return true;
            if (peek_at(j).kind != Token::Kind::Star) return false;
            ++j;
        }
    }

    const Token& peek_at(std::size_t j) const {
        return j < tokens_.size() ? tokens_[j] : tokens_.back();
    }

    AstNode parse_generator() {
        AstNode node;
        node.kind = AstNode::Kind::Generator;
        node.span = peek().span;
        const Token& head = take();
        node.is_winf = head.text == "Bh";
        expect(Token::Kind::LBracket, "'['");
        node.upper = parse_signed_integer();
        expect(Token::Kind::Comma, "','");
        node.lower = parse_signed_integer();
        expect(Token::Kind::RBracket, "']'");
        if (peek().kind == Token::Kind::LParen && testfn_follows()) {
            take();
            node.has_testfn = true;
            while (true) {
                const Token& name = expect(Token::Kind::Ident, "a test-function symbol");
                long long power = 1;
                if (peek().kind == Token::Kind::Caret) {
                    take();
                    power = parse_signed_integer();
                    if (power < 1) fail("test-function power must be positive", name);
                }
                node.testfn_factors.emplace_back(name.text, power);
                if (peek().kind != Token::Kind::Star) break;
                take();
            }
            expect(Token::Kind::RParen, "')'");
        }
        return node;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

Expr lower_node(const AstNode& node);

Expr lower_sum(const AstNode& node) {
    Expr acc;
    for (std::size_t j = 0; j < node.children.size(); ++j) {
        const Expr child = lower_node(node.children[j]);
        acc += node.child_signs[j] < 0 ? -child : child;
    }
    return acc;
}

Expr lower_generator(const AstNode& node) {
    std::map<std::string, long long> raw;
    for (const auto& [name, power] : node.testfn_factors) raw[name] += power;
    auto [fn, shed] = make_testfn(raw);
    try {
        const Generator gen(node.is_winf ? FamilyTag::WINF : FamilyTag::RPQWN, node.upper,
                            node.lower, fn);
        return Expr::from_generator(gen, shed);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), node.span.line, node.span.col);
    }
}

Expr lower_node(const AstNode& node) {
    switch (node.kind) {
        case AstNode::Kind::Sum: return lower_sum(node);
        case AstNode::Kind::Product: {
            Expr acc = Expr::identity();
            for (const auto& child : node.children) acc = acc * lower_node(child);
            return acc;
        }
        case AstNode::Kind::Rational: return Expr::from_scalar(Scalar(node.number));
        case AstNode::Kind::ImagUnit:
            return Expr::from_scalar(Scalar::monomial(Rational(1), node.exponent, 0, {}));
        case AstNode::Kind::Sqrt2:
            return Expr::from_scalar(Scalar::monomial(Rational(1), 0, node.exponent, {}));
        case AstNode::Kind::Atom:
            if (node.exponent == 0) return Expr::identity();
            return Expr::from_scalar(Scalar::atom(node.name, node.exponent));
        case AstNode::Kind::Generator: return lower_generator(node);
        case AstNode::Kind::BracketRequest:
            throw ParseError("bracket request is only valid at top level", node.span.line,
                             node.span.col);
    }
    throw DomainError("unreachable AST kind");
}

} // namespace

AstNode parse_input(const std::string& text) { return Parser(text).run(); }

ParseOutcome lower(const AstNode& ast) {
    if (ast.kind == AstNode::Kind::BracketRequest) {
        BracketRequest req;
        req.family = ast.name;
        req.family_span = ast.span;
        req.lhs = lower_node(ast.children[0]);
        req.rhs = lower_node(ast.children[1]);
        return req;
    }
    return lower_node(ast);
}

Expr parse_to_expr(const std::string& text) {
    ParseOutcome out = lower(parse_input(text));
    if (auto* e = std::get_if<Expr>(&out)) return *e;
    throw ParseError("expected an expression, got a bracket request", 1, 1);
}

std::string render_expr(const Expr& e) { return e.render(); }

} // namespace rpqwn
