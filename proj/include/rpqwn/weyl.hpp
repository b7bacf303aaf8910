#pragma once

#include "rpqwn/rational.hpp"
#include "rpqwn/scalar.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace rpqwn {

// Monomial x^x_pow D^d_pow h^h_pow in the algebra [D,x] = h, h central.
struct WeylKey {
    long long x_pow = 0;
    long long d_pow = 0;
    long long h_pow = 0;

    bool operator==(const WeylKey& o) const;
    bool operator<(const WeylKey& o) const;
};

// Normal form: every monomial keeps all x to the left of all D.
class WeylElement {
public:
    WeylElement() = default;

    static WeylElement zero();
    static WeylElement one();
    static WeylElement x();
    static WeylElement d();
    static WeylElement h();
    static WeylElement monomial(long long x_pow, long long d_pow, long long h_pow,
                                const Scalar& coeff = Scalar(1));

    const std::map<WeylKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    WeylElement operator+(const WeylElement& o) const;
    WeylElement operator-(const WeylElement& o) const;
    WeylElement operator*(const WeylElement& o) const; // closed-form reorder of D-past-x
    WeylElement scale(const Scalar& s) const;
    WeylElement pow(long long e) const;

    bool operator==(const WeylElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }

    std::string render() const;

private:
    void add_term(const WeylKey& key, const Scalar& coeff);

    std::map<WeylKey, Scalar> terms_;
};

// Normal-orders a free word over the letters x, D, h by pairwise rewriting
// Dx -> xD + h alone; independent of the closed-form product above.
WeylElement weyl_normal_order(const std::string& word);

// Closed form for D^n x^m: sum over j from 0 of C(n,j) C(m,j) j! x^(m-j) D^(n-j) h^j.
WeylElement dn_xm_closed_form(long long n, long long m);

// Commuting formal parameters s, a, c_param with WeylElement coefficients,
// truncated at total parameter degree `order`.
struct ParamKey {
    long long s_pow = 0;
    long long a_pow = 0;
    long long c_pow = 0;

    bool operator==(const ParamKey& o) const;
    bool operator<(const ParamKey& o) const;
    long long degree() const { return s_pow + a_pow + c_pow; }
};

class FormalSeries {
public:
    explicit FormalSeries(long long order);

    static FormalSeries constant(long long order, const WeylElement& e);
    // One of 's', 'a', 'c' times a WeylElement.
    static FormalSeries parameter(long long order, char which,
                                  const WeylElement& e = WeylElement::one());

    long long order() const { return order_; }
    const std::map<ParamKey, WeylElement>& coeffs() const { return coeffs_; }

    FormalSeries operator+(const FormalSeries& o) const;
    FormalSeries operator-(const FormalSeries& o) const;
    FormalSeries operator*(const FormalSeries& o) const;
    FormalSeries scale(const Rational& r) const;

    // Exponential series; the argument must have no parameter-degree-zero part.
    FormalSeries exp() const;

    bool operator==(const FormalSeries& o) const;

private:
    void add_term(const ParamKey& key, const WeylElement& e);

    long long order_;
    std::map<ParamKey, WeylElement> coeffs_;
};

struct ExponentialIdentitiesReport {
    long long order = 0;
    bool combine_exponentials = false;     // e^{s(x+aD+ch)} = e^{sx} e^{saD} e^{(sc+s^2 a/2)h}
    bool exchange_exponentials = false;    // e^{sD} e^{ax} = e^{ax} e^{sD} e^{ash}
    bool d_power_past_exponential = false; // D^l e^{ax} = e^{ax} sum C(l,m) D^m (ah)^(l-m)
    bool x_power_under_exponential = false; // e^{sD} x^l = sum C(l,m) x^m (sh)^(l-m) e^{sD}

    bool all() const {
        return combine_exponentials && exchange_exponentials && d_power_past_exponential &&
               x_power_under_exponential;
    }
};

// Expands each identity to the truncation order and compares exactly. order >= 2.
ExponentialIdentitiesReport verify_exponential_identities(long long order);

enum class WhiteNoisePairing : std::uint8_t {
    PLUS_MINUS, // D = b_t - b_t*, x = b_s + b_s*, h = +2 delta(t-s)
    MINUS_PLUS, // D = b_t + b_t*, x = b_s - b_s*, h = -2 delta(t-s)
};

struct WhiteNoiseSubstitution {
    WhiteNoisePairing pairing;
    std::string d_combo;
    std::string x_combo;
    long long h_coefficient = 0; // multiplies the symmetric delta(t-s) marker
    bool ccr_consistent = false; // [D,x] = h rederived from [b_t, b_s*] = delta(t-s)
};

WhiteNoiseSubstitution instantiate_white_noise(WhiteNoisePairing pairing);

} // namespace rpqwn
