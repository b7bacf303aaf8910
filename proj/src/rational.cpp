#include "rpqwn/rational.hpp"

#include "rpqwn/errors.hpp"

#include <cctype>

namespace rpqwn {

Int falling_factorial(const Int& x, long long y) {
    if (y < 0) throw DomainError("falling factorial needs a nonnegative length");
    Int acc = 1;
    for (long long j = 0; j < y; ++j) acc *= x - j;
    return acc;
}

Int binomial(const Int& n, const Int& k) {
    if (k < 0 || k > n) return 0;
    Int acc = 1;
    for (Int j = 0; j < k; ++j) {
        acc *= n - j;
        acc /= j + 1; // exact: product of j+1 consecutive integers
    }
    return acc;
}

Int factorial(long long n) {
    if (n < 0) throw DomainError("factorial of a negative integer");
    Int acc = 1;
    for (long long j = 2; j <= n; ++j) acc *= j;
    return acc;
}

Rational rational_pow(const Rational& base, long long p) {
    if (p == 0) return Rational(1);
    if (base == 0) {
        if (p < 0) throw DomainError("zero raised to a negative power");
        return Rational(0);
    }
    Rational b = p > 0 ? base : Rational(1) / base;
    long long e = p > 0 ? p : -p;
    Rational acc = 1;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

std::string render_rational(const Rational& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    // Validates and drops an explicit '+'; the Int constructor accepts '-' only.
    auto as_int = [](std::string s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) throw DomainError("not a rational literal: '" + s + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(s[j])))
                throw DomainError("not a rational literal: '" + s + "'");
        if (s[0] == '+') s.erase(0, 1);
        return Int(s);
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(as_int(text));
    const Int num = as_int(text.substr(0, slash));
    const Int den = as_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

} // namespace rpqwn
