#pragma once

#include "rpqwn/generator.hpp"
#include "rpqwn/scalar.hpp"

#include <map>
#include <string>

namespace rpqwn {

// Finite linear combination of operator words with Scalar coefficients,
// kept canonical: zero coefficients dropped, words in lexicographic order
// on (family, upper, lower, testfn) with the empty (identity) word first.
class Expr {
  public:
    Expr() = default; // zero
    static Expr zero() { return Expr(); }
    static Expr identity() { return from_scalar(Scalar(1)); }
    static Expr from_scalar(const Scalar& s);
    static Expr from_generator(const Generator& g, const Scalar& coeff = Scalar(1));
    static Expr from_word(const Word& w, const Scalar& coeff = Scalar(1));

    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, Scalar>& terms() const { return terms_; }
    // Coefficient of a word (zero if absent).
    Scalar coefficient(const Word& w) const;

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator-() const;
    Expr& operator+=(const Expr& o);
    // Operator product: words concatenate, coefficients multiply.
    Expr operator*(const Expr& o) const;
    Expr scale(const Scalar& s) const;

    bool operator==(const Expr& o) const { return terms_ == o.terms_; }
    bool operator!=(const Expr& o) const { return !(*this == o); }

    // Adjoint: words reverse, generators involute, scalars conjugate.
    Expr involution() const;

    // Applies Scalar::substitute to every coefficient.
    Expr substitute(const std::map<std::string, Rational>& bindings) const;

    std::string render() const; // "0" when zero

  private:
    void add_term(const Word& w, const Scalar& s);
    std::map<Word, Scalar> terms_;
};

inline Expr operator*(const Scalar& s, const Expr& e) { return e.scale(s); }

} // namespace rpqwn
