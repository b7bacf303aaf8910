#include "rpqwn/expr.hpp"

namespace rpqwn {

Expr Expr::from_scalar(const Scalar& s) {
    Expr e;
    e.add_term(Word{}, s);
    return e;
}

Expr Expr::from_generator(const Generator& g, const Scalar& coeff) {
    Expr e;
    e.add_term(Word{g}, coeff);
    return e;
}

Expr Expr::from_word(const Word& w, const Scalar& coeff) {
    Expr e;
    e.add_term(w, coeff);
    return e;
}

void Expr::add_term(const Word& w, const Scalar& s) {
    if (s.is_zero()) return;
    auto [pos, inserted] = terms_.emplace(w, s);
    if (!inserted) {
        pos->second += s;
        if (pos->second.is_zero()) terms_.erase(pos);
    }
}

Scalar Expr::coefficient(const Word& w) const {
    const auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
}

Expr Expr::operator+(const Expr& o) const {
    Expr out = *this;
    out += o;
    return out;
}

Expr& Expr::operator+=(const Expr& o) {
    for (const auto& [w, s] : o.terms_) add_term(w, s);
    return *this;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator-() const {
    Expr out;
    for (const auto& [w, s] : terms_) out.terms_.emplace(w, -s);
    return out;
}

Expr Expr::operator*(const Expr& o) const {
    Expr out;
    for (const auto& [wa, sa] : terms_) {
        for (const auto& [wb, sb] : o.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, sa * sb);
        }
    }
    return out;
}

Expr Expr::scale(const Scalar& s) const {
    Expr out;
    for (const auto& [w, coeff] : terms_) out.add_term(w, coeff * s);
    return out;
}

Expr Expr::involution() const {
    Expr out;
    for (const auto& [w, s] : terms_) out.add_term(involution_word(w), s.conj());
    return out;
}

Expr Expr::substitute(const std::map<std::string, Rational>& bindings) const {
    Expr out;
    for (const auto& [w, s] : terms_) out.add_term(w, s.substitute(bindings));
    return out;
}

std::string Expr::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [word, scalar] : terms_) {
        bool neg = false;
        std::string body;
        if (word.empty()) {
            body = scalar.render(); // identity term, always leads
        } else if (scalar.is_one()) {
            body = render_word(word);
        } else if (scalar.parts().size() == 1) {
            neg = scalar.parts().begin()->second < 0;
            const Scalar mag = neg ? -scalar : scalar;
            body = mag.is_one() ? render_word(word) : mag.render() + " * " + render_word(word);
        } else {
            body = "(" + scalar.render() + ") * " + render_word(word);
        }
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += body;
    }
    return out;
}

} // namespace rpqwn
