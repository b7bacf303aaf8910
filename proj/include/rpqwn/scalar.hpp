#pragma once

#include "rpqwn/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace rpqwn {

// The inert singular atom; substitution into it is refused.
inline constexpr const char* kDelta0Atom = "delta0";

using AtomExponents = std::map<std::string, long long>;

// Symbolic part of one scalar monomial. Canonical form: i_pow and sqrt2_pow
// in {0,1} (i^2 folds into the sign, (sqrt2)^2 into the rational), atom
// exponents nonzero.
struct ScalarKey {
    int i_pow = 0;
    int sqrt2_pow = 0;
    AtomExponents atoms;

    bool operator==(const ScalarKey& o) const;
    bool operator<(const ScalarKey& o) const;
};

// Element of the commutative ring Q(i)[sqrt2, 1/sqrt2] extended by a free
// abelian group of named atoms: a finite sum of monomials with exact
// rational coefficients. Structural equality after normalization is
// semantic equality.
class Scalar {
  public:
    Scalar() = default; // zero
    Scalar(long long v);
    Scalar(const Int& v);
    Scalar(const Rational& v);

    static Scalar atom(const std::string& name, long long exp = 1);
    static Scalar imaginary_unit();
    static Scalar sqrt2(long long pow = 1);
    static Scalar monomial(const Rational& rat, long long i_pow, long long sqrt2_pow,
                           const AtomExponents& atoms);

    bool is_zero() const { return parts_.empty(); }
    bool is_one() const;
    // The value as a plain rational, if it is one.
    std::optional<Rational> as_rational() const;
    bool contains_atom(const std::string& name) const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    bool operator==(const Scalar& o) const { return parts_ == o.parts_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar pow(long long p) const; // p >= 0

    // Complex conjugation: atoms and sqrt2 are real, i negates.
    Scalar conj() const;

    // Replaces bound atoms by rational values; a homomorphism on the bound
    // subring. Refuses any binding of delta0, and 0 to a negative power.
    Scalar substitute(const std::map<std::string, Rational>& bindings) const;

    const std::map<ScalarKey, Rational>& parts() const { return parts_; }

    std::string render() const;

  private:
    void insert_normalized(ScalarKey key, Rational rat);
    // Monomials keyed by symbolic part; no zero coefficients stored.
    std::map<ScalarKey, Rational> parts_;
};

inline Scalar operator*(long long v, const Scalar& s) { return Scalar(v) * s; }

} // namespace rpqwn
