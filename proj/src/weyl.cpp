#include "rpqwn/weyl.hpp"

#include "rpqwn/errors.hpp"
#include "rpqwn/util.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace rpqwn {

bool WeylKey::operator==(const WeylKey& o) const {
    return x_pow == o.x_pow && d_pow == o.d_pow && h_pow == o.h_pow;
}

bool WeylKey::operator<(const WeylKey& o) const {
    return std::tie(x_pow, d_pow, h_pow) < std::tie(o.x_pow, o.d_pow, o.h_pow);
}

WeylElement WeylElement::zero() { return {}; }

WeylElement WeylElement::one() { return monomial(0, 0, 0); }

WeylElement WeylElement::x() { return monomial(1, 0, 0); }

WeylElement WeylElement::d() { return monomial(0, 1, 0); }

WeylElement WeylElement::h() { return monomial(0, 0, 1); }

WeylElement WeylElement::monomial(long long x_pow, long long d_pow, long long h_pow,
                                  const Scalar& coeff) {
    if (x_pow < 0 || d_pow < 0 || h_pow < 0)
        throw DomainError("weyl monomial exponents must be nonnegative");
    WeylElement e;
    e.add_term({x_pow, d_pow, h_pow}, coeff);
    return e;
}

void WeylElement::add_term(const WeylKey& key, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
    WeylElement out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, c);
    return out;
}

WeylElement WeylElement::operator-(const WeylElement& o) const {
    WeylElement out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
    return out;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
    // (x^a1 D^b1 h^g1)(x^a2 D^b2 h^g2)
    //   = sum_j C(b1,j) C(a2,j) j! x^(a1+a2-j) D^(b1+b2-j) h^(g1+g2+j)
    WeylElement out;
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : o.terms_) {
            const long long jmax = std::min(k1.d_pow, k2.x_pow);
            for (long long j = 0; j <= jmax; ++j) {
                const Int weight =
                    binomial(Int(k1.d_pow), Int(j)) * binomial(Int(k2.x_pow), Int(j)) *
                    factorial(j);
                out.add_term({k1.x_pow + k2.x_pow - j, k1.d_pow + k2.d_pow - j,
                              k1.h_pow + k2.h_pow + j},
                             c1 * c2 * Scalar(Rational(weight)));
            }
        }
    }
    return out;
}

WeylElement WeylElement::scale(const Scalar& s) const {
    WeylElement out;
    for (const auto& [k, c] : terms_) out.add_term(k, c * s);
    return out;
}

WeylElement WeylElement::pow(long long e) const {
    if (e < 0) throw DomainError("weyl power must be nonnegative");
    WeylElement out = one();
    WeylElement base = *this;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

std::string WeylElement::render() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<WeylKey, Scalar>> items(terms_.begin(), terms_.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        return std::tie(b.first.x_pow, b.first.d_pow, a.first.h_pow) <
               std::tie(a.first.x_pow, a.first.d_pow, b.first.h_pow);
    });
    const auto letters = [](const WeylKey& k) {
        std::string s;
        const auto put = [&s](const char* name, long long p) {
            if (p == 0) return;
            if (!s.empty()) s += "*";
            s += name;
            if (p != 1) s += "^" + std::to_string(p);
        };
        put("x", k.x_pow);
        put("D", k.d_pow);
        put("h", k.h_pow);
        return s;
    };
    std::string out;
    bool first = true;
    for (const auto& [k, c] : items) {
        std::string cs = c.render();
        const bool multi = cs.find(" + ") != std::string::npos ||
                           cs.find(" - ") != std::string::npos;
        if (multi) cs = "(" + cs + ")";
        bool neg = false;
        if (!multi && !cs.empty() && cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        const std::string mono = letters(k);
        std::string body;
        if (mono.empty()) body = cs;
        else if (cs == "1") body = mono;
        else body = cs + "*" + mono;
        if (first) {
            out = neg ? "-" + body : body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

WeylElement weyl_normal_order(const std::string& word) {
    long long h_count = 0;
    std::string core;
    core.reserve(word.size());
    for (const char ch : word) {
        if (ch == 'h') ++h_count;
        else if (ch == 'x' || ch == 'D') core += ch;
        else throw DomainError(std::string("unknown weyl letter '") + ch + "'");
    }
    std::unordered_map<std::string, WeylElement> memo;
    const std::function<WeylElement(const std::string&)> go =
        [&](const std::string& w) -> WeylElement {
        const auto hit = memo.find(w);
        if (hit != memo.end()) return hit->second;
        const auto pos = w.find("Dx");
        WeylElement result;
        if (pos == std::string::npos) {
            const long long xs =
                static_cast<long long>(std::count(w.begin(), w.end(), 'x'));
            result = WeylElement::monomial(xs, static_cast<long long>(w.size()) - xs, 0);
        } else {
            std::string swapped = w;
            swapped[pos] = 'x';
            swapped[pos + 1] = 'D';
            std::string reduced = w;
            reduced.erase(pos, 2); // the pair collapses to central h
            result = go(swapped) + WeylElement::h() * go(reduced);
        }
        memo.emplace(w, result);
        return result;
    };
    return go(core) * WeylElement::monomial(0, 0, h_count);
}

WeylElement dn_xm_closed_form(long long n, long long m) {
    if (n < 0 || m < 0) throw DomainError("closed form needs nonnegative exponents");
    WeylElement out;
    for (long long j = 0; j <= std::min(n, m); ++j) {
        const Int weight = binomial(Int(n), Int(j)) * binomial(Int(m), Int(j)) * factorial(j);
        out = out + WeylElement::monomial(m - j, n - j, j, Scalar(Rational(weight)));
    }
    return out;
}

bool ParamKey::operator==(const ParamKey& o) const {
    return s_pow == o.s_pow && a_pow == o.a_pow && c_pow == o.c_pow;
}

bool ParamKey::operator<(const ParamKey& o) const {
    return std::tie(s_pow, a_pow, c_pow) < std::tie(o.s_pow, o.a_pow, o.c_pow);
}

FormalSeries::FormalSeries(long long order) : order_(order) {
    if (order < 0) throw DomainError("series order must be nonnegative");
}

void FormalSeries::add_term(const ParamKey& key, const WeylElement& e) {
    if (key.degree() > order_ || e.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(key, e);
    if (!inserted) {
        it->second = it->second + e;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

FormalSeries FormalSeries::constant(long long order, const WeylElement& e) {
    FormalSeries s(order);
    s.add_term({0, 0, 0}, e);
    return s;
}

FormalSeries FormalSeries::parameter(long long order, char which, const WeylElement& e) {
    ParamKey key;
    if (which == 's') key.s_pow = 1;
    else if (which == 'a') key.a_pow = 1;
    else if (which == 'c') key.c_pow = 1;
    else throw DomainError(std::string("unknown formal parameter '") + which + "'");
    FormalSeries s(order);
    s.add_term(key, e);
    return s;
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
    if (order_ != o.order_) throw DomainError("series truncation orders differ");
    FormalSeries out = *this;
    for (const auto& [k, e] : o.coeffs_) out.add_term(k, e);
    return out;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
    if (order_ != o.order_) throw DomainError("series truncation orders differ");
    FormalSeries out = *this;
    for (const auto& [k, e] : o.coeffs_) out.add_term(k, WeylElement::zero() - e);
    return out;
}

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
    if (order_ != o.order_) throw DomainError("series truncation orders differ");
    FormalSeries out(order_);
    for (const auto& [k1, e1] : coeffs_) {
        for (const auto& [k2, e2] : o.coeffs_) {
            if (k1.degree() + k2.degree() > order_) continue;
            out.add_term({k1.s_pow + k2.s_pow, k1.a_pow + k2.a_pow, k1.c_pow + k2.c_pow},
                         e1 * e2);
        }
    }
    return out;
}

FormalSeries FormalSeries::scale(const Rational& r) const {
    FormalSeries out(order_);
    for (const auto& [k, e] : coeffs_) out.add_term(k, e.scale(Scalar(r)));
    return out;
}

FormalSeries FormalSeries::exp() const {
    if (coeffs_.count({0, 0, 0}))
        throw DomainError("exp needs an argument without a degree-zero part");
    FormalSeries out = constant(order_, WeylElement::one());
    FormalSeries power = out;
    for (long long j = 1; j <= order_; ++j) {
        power = (power * *this).scale(Rational(1) / j);
        if (power.coeffs_.empty()) break;
        out = out + power;
    }
    return out;
}

bool FormalSeries::operator==(const FormalSeries& o) const {
    return order_ == o.order_ && coeffs_ == o.coeffs_;
}

namespace {

// e^{s(x + aD + ch)} vs e^{sx} e^{saD} e^{(sc + s^2 a / 2) h}
bool check_combine(long long order) {
    const auto s_of = [order](char p, const WeylElement& e) {
        return FormalSeries::parameter(order, p, e);
    };
    const FormalSeries sx = s_of('s', WeylElement::x());
    const FormalSeries saD = s_of('s', WeylElement::one()) * s_of('a', WeylElement::d());
    const FormalSeries sch = s_of('s', WeylElement::one()) * s_of('c', WeylElement::h());
    const FormalSeries lhs = (sx + saD + sch).exp();
    const FormalSeries s2a_half =
        (s_of('s', WeylElement::one()) * s_of('s', WeylElement::one()) *
         s_of('a', WeylElement::h()))
            .scale(Rational(1, 2));
    const FormalSeries rhs = sx.exp() * saD.exp() * (sch + s2a_half).exp();
    return lhs == rhs;
}

// e^{sD} e^{ax} vs e^{ax} e^{sD} e^{ash}
bool check_exchange(long long order) {
    const FormalSeries sD = FormalSeries::parameter(order, 's', WeylElement::d());
    const FormalSeries ax = FormalSeries::parameter(order, 'a', WeylElement::x());
    const FormalSeries ash = FormalSeries::parameter(order, 'a', WeylElement::one()) *
                             FormalSeries::parameter(order, 's', WeylElement::h());
    return sD.exp() * ax.exp() == ax.exp() * sD.exp() * ash.exp();
}

// D^lambda e^{ax} vs e^{ax} sum_m C(lambda,m) D^m (ah)^(lambda-m)
bool check_d_power(long long order, long long lambda) {
    const FormalSeries eax = FormalSeries::parameter(order, 'a', WeylElement::x()).exp();
    const FormalSeries lhs =
        FormalSeries::constant(order, WeylElement::monomial(0, lambda, 0)) * eax;
    FormalSeries sum(order);
    const FormalSeries a1 = FormalSeries::parameter(order, 'a', WeylElement::one());
    for (long long m = 0; m <= lambda; ++m) {
        FormalSeries term = FormalSeries::constant(
            order, WeylElement::monomial(0, m, lambda - m,
                                         Scalar(Rational(binomial(Int(lambda), Int(m))))));
        for (long long p = 0; p < lambda - m; ++p) term = term * a1;
        sum = sum + term;
    }
    return lhs == eax * sum;
}

// e^{sD} x^lambda vs sum_m C(lambda,m) x^m (sh)^(lambda-m) e^{sD}
bool check_x_power(long long order, long long lambda) {
    const FormalSeries esD = FormalSeries::parameter(order, 's', WeylElement::d()).exp();
    const FormalSeries lhs =
        esD * FormalSeries::constant(order, WeylElement::monomial(lambda, 0, 0));
    FormalSeries sum(order);
    const FormalSeries s1 = FormalSeries::parameter(order, 's', WeylElement::one());
    for (long long m = 0; m <= lambda; ++m) {
        FormalSeries term = FormalSeries::constant(
            order, WeylElement::monomial(m, 0, lambda - m,
                                         Scalar(Rational(binomial(Int(lambda), Int(m))))));
        for (long long p = 0; p < lambda - m; ++p) term = term * s1;
        sum = sum + term;
    }
    return lhs == sum * esD;
}

} // namespace

ExponentialIdentitiesReport verify_exponential_identities(long long order) {
    if (order < 2) throw DomainError("exponential identity checks need order >= 2");
    ExponentialIdentitiesReport report;
    report.order = order;
    report.combine_exponentials = check_combine(order);
    report.exchange_exponentials = check_exchange(order);
    std::vector<char> d_ok(static_cast<std::size_t>(order) + 1, 0);
    std::vector<char> x_ok(static_cast<std::size_t>(order) + 1, 0);
    parallel_for(d_ok.size(), [&](std::size_t lambda) {
        d_ok[lambda] = check_d_power(order, static_cast<long long>(lambda)) ? 1 : 0;
        x_ok[lambda] = check_x_power(order, static_cast<long long>(lambda)) ? 1 : 0;
    });
    report.d_power_past_exponential =
        std::all_of(d_ok.begin(), d_ok.end(), [](char c) { return c == 1; });
    report.x_power_under_exponential =
        std::all_of(x_ok.begin(), x_ok.end(), [](char c) { return c == 1; });
    return report;
}

WhiteNoiseSubstitution instantiate_white_noise(WhiteNoisePairing pairing) {
    WhiteNoiseSubstitution sub;
    sub.pairing = pairing;
    // D = da*b_t + dc*b_t*, x = xa*b_s + xc*b_s*.
    long long da = 1, dc = 0, xa = 1, xc = 0, expected = 0;
    if (pairing == WhiteNoisePairing::PLUS_MINUS) {
        dc = -1;
        xc = 1;
        expected = 2;
        sub.d_combo = "b_t - b_t*";
        sub.x_combo = "b_s + b_s*";
    } else {
        dc = 1;
        xc = -1;
        expected = -2;
        sub.d_combo = "b_t + b_t*";
        sub.x_combo = "b_s - b_s*";
    }
    // [D,x] = da*xc*[b_t,b_s*] + dc*xa*[b_t*,b_s]
    //       = da*xc*delta(t-s) - dc*xa*delta(s-t), and the marker is symmetric.
    sub.h_coefficient = da * xc - dc * xa;
    sub.ccr_consistent = sub.h_coefficient == expected;
    return sub;
}

} // namespace rpqwn
