#include "rpqwn/poisson.hpp"

#include "rpqwn/bracket.hpp"
#include "rpqwn/errors.hpp"
#include "rpqwn/util.hpp"

#include <array>
#include <sstream>
#include <tuple>
#include <vector>

namespace rpqwn {

bool PBKey::operator==(const PBKey& o) const {
    return freq == o.freq && x_pow == o.x_pow && y_pow == o.y_pow;
}

bool PBKey::operator<(const PBKey& o) const {
    return std::tie(freq, x_pow, y_pow) < std::tie(o.freq, o.x_pow, o.y_pow);
}

PBFunction PBFunction::one() { return monomial(0, 0, 0); }

PBFunction PBFunction::monomial(long long freq, long long x_pow, long long y_pow,
                                const Scalar& coeff) {
    if (x_pow < 0 || y_pow < 0)
        throw DomainError("poisson monomial exponents must be nonnegative");
    PBFunction f;
    f.add_term({freq, x_pow, y_pow}, coeff);
    return f;
}

void PBFunction::add_term(const PBKey& key, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PBFunction PBFunction::dx() const {
    PBFunction out;
    for (const auto& [k, c] : terms_) {
        if (k.freq != 0)
            out.add_term(k, c * Scalar::imaginary_unit() * Scalar(k.freq));
        if (k.x_pow > 0) out.add_term({k.freq, k.x_pow - 1, k.y_pow}, c * Scalar(k.x_pow));
    }
    return out;
}

PBFunction PBFunction::dy() const {
    PBFunction out;
    for (const auto& [k, c] : terms_)
        if (k.y_pow > 0) out.add_term({k.freq, k.x_pow, k.y_pow - 1}, c * Scalar(k.y_pow));
    return out;
}

PBFunction PBFunction::operator+(const PBFunction& o) const {
    PBFunction out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, c);
    return out;
}

PBFunction PBFunction::operator-(const PBFunction& o) const {
    PBFunction out = *this;
    for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
    return out;
}

PBFunction PBFunction::operator*(const PBFunction& o) const {
    PBFunction out;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_)
            out.add_term({k1.freq + k2.freq, k1.x_pow + k2.x_pow, k1.y_pow + k2.y_pow},
                         c1 * c2);
    return out;
}

PBFunction PBFunction::scale(const Scalar& s) const {
    PBFunction out;
    for (const auto& [k, c] : terms_) out.add_term(k, c * s);
    return out;
}

PBFunction PBFunction::conj() const {
    PBFunction out;
    for (const auto& [k, c] : terms_)
        out.add_term({-k.freq, k.x_pow, k.y_pow}, c.conj());
    return out;
}

std::string PBFunction::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string cs = c.render();
        const bool multi = cs.find(" + ") != std::string::npos ||
                           cs.find(" - ") != std::string::npos;
        if (multi) cs = "(" + cs + ")";
        bool neg = false;
        if (!multi && !cs.empty() && cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        std::string mono;
        const auto put = [&mono](const std::string& sym, long long p) {
            if (p == 0) return;
            if (!mono.empty()) mono += "*";
            mono += sym;
            if (p != 1) mono += "^" + std::to_string(p);
        };
        if (k.freq != 0) mono += "e[" + std::to_string(k.freq) + "]";
        put("x", k.x_pow);
        put("y", k.y_pow);
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

PBFunction poisson_bracket(const PBFunction& f, const PBFunction& g) {
    return f.dx() * g.dy() - f.dy() * g.dx();
}

namespace {

Scalar inv_sqrt2_pow(long long m) {
    if (m < 0) throw DomainError("negative sqrt2 power request");
    const Rational half_pow = Rational(1) / rational_pow(Rational(2), (m + 1) / 2);
    return m % 2 == 0 ? Scalar(half_pow) : Scalar::sqrt2() * Scalar(half_pow);
}

} // namespace

PBFunction make_family(PBFamily which, long long n, long long k) {
    if (which == PBFamily::F) {
        if (n < 1) throw DomainError("family f needs n >= 1 (y-exponent n-1)");
        return PBFunction::monomial(k, 0, n - 1);
    }
    if (n < 0 || k < 0) throw DomainError("family g needs nonnegative indices");
    // ((x+iy)/sqrt2)^n ((x-iy)/sqrt2)^k expanded binomially.
    PBFunction out;
    const Scalar norm = inv_sqrt2_pow(n + k);
    for (long long j = 0; j <= n; ++j) {
        for (long long l = 0; l <= k; ++l) {
            Scalar coeff = Scalar(Rational(binomial(Int(n), Int(j)) *
                                           binomial(Int(k), Int(l)))) *
                           Scalar::imaginary_unit().pow(j + l) * norm;
            if (l % 2 != 0) coeff = -coeff;
            out = out + PBFunction::monomial(0, n - j + k - l, j + l, coeff);
        }
    }
    return out;
}

namespace {

// Integer structure constant of a single-term Lie bracket result.
Rational lie_constant(const Expr& e, const std::string& tag) {
    if (e.is_zero()) return Rational(0);
    if (e.terms().size() != 1)
        throw EngineError("bracket result is not a single term at " + tag);
    const auto r = e.terms().begin()->second.as_rational();
    if (!r) throw EngineError("bracket coefficient is not rational at " + tag);
    return *r;
}

PoissonBoxReport run_box(PBFamily family,
                         const std::vector<std::array<long long, 4>>& tuples) {
    PoissonBoxReport report;
    report.family = family;
    report.pairs_checked = tuples.size();
    const Scalar i_unit = Scalar::imaginary_unit();
    const Scalar inv_i = -i_unit; // 1/i

    std::vector<std::vector<std::string>> faults(tuples.size());
    parallel_for(tuples.size(), [&](std::size_t idx) {
        const auto [n, k, N, K] = tuples[idx];
        std::ostringstream tag;
        tag << "(n=" << n << ",k=" << k << ",N=" << N << ",K=" << K << ")";
        const PBFunction lhs = make_family(family, n, k);
        const PBFunction rhs = make_family(family, N, K);
        const PBFunction bracket = poisson_bracket(lhs, rhs);

        long long c = 0, up = 0, low = 0;
        Expr lie;
        if (family == PBFamily::F) {
            c = k * (N - 1) - K * (n - 1);
            up = n + N - 2;
            low = k + K;
            lie = bracket_generators(BracketFamily::WINF,
                                     Generator(FamilyTag::WINF, n, k, TestFn::unit()),
                                     Generator(FamilyTag::WINF, N, K, TestFn::unit()));
        } else {
            c = k * N - n * K;
            up = n + N - 1;
            low = k + K - 1;
            lie = bracket_generators(BracketFamily::CANONICAL,
                                     Generator(FamilyTag::RPQWN, n, k, TestFn::unit()),
                                     Generator(FamilyTag::RPQWN, N, K, TestFn::unit()));
        }
        PBFunction closed;
        if (c != 0) closed = make_family(family, up, low).scale(i_unit * Scalar(c));
        if (bracket != closed)
            faults[idx].push_back("closed-form " + tag.str() + ": " + bracket.render() +
                                  " vs " + closed.render());

        const PBFunction conj_bracket =
            poisson_bracket(lhs.conj(), rhs.conj());
        const PBFunction member_conj = family == PBFamily::F
                                           ? make_family(family, n, -k)
                                           : make_family(PBFamily::G, k, n);
        if (lhs.conj() != member_conj || bracket.conj() != conj_bracket)
            faults[idx].push_back("conjugation " + tag.str());

        const Rational lie_c = lie_constant(lie, tag.str());
        const PBFunction quantized = bracket.scale(inv_i);
        PBFunction lie_side;
        if (lie_c != 0) lie_side = make_family(family, up, low).scale(Scalar(lie_c));
        if (lie_c != Rational(c) || quantized != lie_side)
            faults[idx].push_back("quantization " + tag.str() + ": constant " +
                                  render_rational(lie_c) + " vs " + std::to_string(c));
    });

    bool closed_ok = true, conj_ok = true, quant_ok = true;
    for (const auto& bucket : faults) {
        for (const auto& msg : bucket) {
            report.violations.push_back(msg);
            if (msg.rfind("closed-form", 0) == 0) closed_ok = false;
            else if (msg.rfind("conjugation", 0) == 0) conj_ok = false;
            else quant_ok = false;
        }
    }
    report.closed_form_ok = closed_ok;
    report.conjugation_ok = conj_ok;
    report.quantization_ok = quant_ok;
    return report;
}

} // namespace

PoissonBoxReport verify_realizations_f(long long n_max, long long k_max) {
    if (n_max < 2 || k_max < 0) throw DomainError("f box needs n_max >= 2, k_max >= 0");
    std::vector<std::array<long long, 4>> tuples;
    for (long long n = 2; n <= n_max; ++n)
        for (long long N = 2; N <= n_max; ++N)
            for (long long k = -k_max; k <= k_max; ++k)
                for (long long K = -k_max; K <= k_max; ++K)
                    tuples.push_back({n, k, N, K});
    return run_box(PBFamily::F, tuples);
}

PoissonBoxReport verify_realizations_g(long long idx_max) {
    if (idx_max < 0) throw DomainError("g box needs idx_max >= 0");
    std::vector<std::array<long long, 4>> tuples;
    for (long long n = 0; n <= idx_max; ++n)
        for (long long N = 0; N <= idx_max; ++N)
            for (long long k = 0; k <= idx_max; ++k)
                for (long long K = 0; K <= idx_max; ++K)
                    tuples.push_back({n, k, N, K});
    return run_box(PBFamily::G, tuples);
}

} // namespace rpqwn
