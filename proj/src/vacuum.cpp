#include "rpqwn/vacuum.hpp"

#include "rpqwn/errors.hpp"

#include <functional>
#include <random>
#include <string>

namespace rpqwn {

namespace {

std::string factor_key(const std::map<std::string, long long>& factors) {
    std::string out;
    for (const auto& [name, pow] : factors) {
        if (!out.empty()) out += "__";
        out += name;
        if (pow != 1) out += "_pow" + std::to_string(pow);
    }
    return out;
}

void require_vacuum_family(BracketFamily f) {
    if (f != BracketFamily::C_RENORM && f != BracketFamily::PHI_RENORM &&
        f != BracketFamily::DELTA0_RENORM)
        throw DomainError("vacuum expectations are defined for the three renormalizations");
}

// Exchange positions: lower index > 0 with a pure creator to the right.
std::vector<std::size_t> eligible_positions(const Word& w) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].lower() > 0 && w[i + 1].lower() == 0) out.push_back(i);
    return out;
}

Scalar eval_word(BracketFamily f, const Word& w,
                 const std::function<std::size_t(std::size_t)>& pick) {
    if (w.empty()) return Scalar(1);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].upper() == 0 && w[i].lower() == 0) { // central identity multiple
            Word rest = w;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            return integral_atom(w[i].testfn()) * eval_word(f, rest, pick);
        }
    }
    if (w.back().lower() > 0) return Scalar(); // annihilates the vacuum
    if (w.front().upper() > 0) return Scalar(); // adjoint annihilates the vacuum
    const auto eligible = eligible_positions(w);
    if (eligible.empty()) throw EngineError("vacuum reduction stuck");
    const std::size_t i = eligible[pick(eligible.size())];

    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    Scalar acc = eval_word(f, swapped, pick);

    const Expr bracket = bracket_generators(f, w[i], w[i + 1]);
    for (const auto& [bw, coeff] : bracket.terms()) {
        Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        next.insert(next.end(), bw.begin(), bw.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        acc += coeff * eval_word(f, next, pick);
    }
    return acc;
}

VacuumResult eval_expr(BracketFamily f, const Expr& e,
                       const std::function<std::size_t(std::size_t)>& pick) {
    require_vacuum_family(f);
    for (const auto& [w, s] : e.terms())
        for (const auto& g : w)
            if (g.family() != FamilyTag::RPQWN)
                throw DomainError("vacuum expectation needs RPQWN words, got " + g.render());
    Scalar value;
    for (const auto& [w, s] : e.terms()) value += s * eval_word(f, w, pick);
    return {value, value.contains_atom(kDelta0Atom)};
}

} // namespace

Scalar integral_atom(const TestFn& fn) {
    std::map<std::string, long long> factors = fn.factors();
    const auto d = factors.find(kDeltaFactor);
    if (d != factors.end()) {
        factors.erase(d); // power 1 by the TestFn invariant
        if (factors.empty()) return Scalar(1); // integral of a bare delta
        for (const auto& [name, pow] : factors)
            if (symbol_vanishes_at_zero(name)) return Scalar();
        return Scalar::atom("ev0_" + factor_key(factors)); // value at zero
    }
    if (factors.empty()) return Scalar::atom("int_1");
    long long phi_pow = 0;
    const auto p = factors.find("phi");
    if (p != factors.end()) {
        phi_pow = p->second;
        factors.erase(p);
    }
    if (factors.size() == 1 && factors.begin()->first.rfind("chi", 0) == 0) {
        if (phi_pow == 0) return Scalar::atom("mu");
        return Scalar::atom("I_" + std::to_string(phi_pow));
    }
    return Scalar::atom("int_" + factor_key(fn.factors()));
}

VacuumResult vacuum_expectation(BracketFamily f, const Expr& e) {
    return eval_expr(f, e, [](std::size_t n) { return n - 1; }); // rightmost
}

VacuumResult vacuum_expectation_randomized(BracketFamily f, const Expr& e,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return eval_expr(f, e, [&rng](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    });
}

GramGate gram_gate(long long n, const std::map<std::string, Rational>& bindings) {
    if (n < 1) throw DomainError("gram_gate needs n >= 1");
    const TestFn chi = TestFn::symbol("chi_I");
    const Generator whole(FamilyTag::RPQWN, 2 * n, 0, chi);
    const Generator half(FamilyTag::RPQWN, n, 0, chi);
    const Word v1{whole};
    const Word v2{half, half};
    const auto entry = [&](const Word& left, const Word& right) {
        Word w = involution_word(left);
        w.insert(w.end(), right.begin(), right.end());
        return vacuum_expectation(BracketFamily::C_RENORM, Expr::from_word(w)).value;
    };
    GramGate gate;
    gate.a00 = entry(v1, v1);
    gate.a01 = entry(v1, v2);
    gate.a10 = entry(v2, v1);
    gate.a11 = entry(v2, v2);
    if (gate.a01 != gate.a10.conj()) throw EngineError("gram matrix is not hermitian");
    gate.d1 = gate.a00;
    gate.d2 = gate.a00 * gate.a11 - gate.a01 * gate.a10;
    if (!bindings.empty()) {
        const auto v1r = gate.d1.substitute(bindings).as_rational();
        const auto v2r = gate.d2.substitute(bindings).as_rational();
        if (v1r && v2r) {
            gate.d1_value = *v1r;
            gate.d2_value = *v2r;
            gate.psd = *v1r >= 0 && *v2r >= 0;
        }
    }
    return gate;
}

PhiConditions phi_conditions(long long n, const std::map<std::string, Rational>& bindings,
                             bool all_ones) {
    if (n < 2)
        throw DomainError("phi moment conditions need n >= 2 (I_(-1) is undefined)");
    const TestFn chi = TestFn::symbol("chi_I");
    const Generator whole(FamilyTag::RPQWN, 2 * n, 0, chi);
    const Generator half(FamilyTag::RPQWN, n, 0, chi);
    const auto entry = [&](const Word& left, const Word& right) {
        Word w = involution_word(left);
        w.insert(w.end(), right.begin(), right.end());
        return vacuum_expectation(BracketFamily::PHI_RENORM, Expr::from_word(w)).value;
    };
    PhiConditions out;
    out.a00 = entry({whole}, {whole});
    out.a01 = entry({whole}, {half, half});
    out.a11 = entry({half, half}, {half, half});

    std::map<std::string, Rational> bound = bindings;
    if (all_ones) {
        bound.clear();
        bound.emplace("mu", 1);
        for (const Scalar* s : {&out.a00, &out.a01, &out.a11})
            for (const auto& [key, rat] : s->parts())
                for (const auto& [name, exp] : key.atoms)
                    if (name.rfind("I_", 0) == 0) bound.emplace(name, 1);
        for (const long long m : {2 * n - 1, 2 * n - 2, 2 * n - 3, n - 1})
            bound.emplace("I_" + std::to_string(m), 1);
    }
    const auto moment = [&](long long m) {
        const auto it = bound.find("I_" + std::to_string(m));
        if (it == bound.end())
            throw DomainError("missing binding for I_" + std::to_string(m));
        return it->second;
    };
    out.i_2n1 = moment(2 * n - 1);
    out.i_2n2 = moment(2 * n - 2);
    out.i_2n3 = moment(2 * n - 3);
    out.i_n1 = moment(n - 1);
    out.c1 = out.i_2n1 >= 0;
    out.c2 = out.i_2n2 * out.i_2n2 == out.i_2n1 * out.i_2n3;
    out.c3 = out.i_2n1 * out.i_n1 * out.i_n1 >= out.i_2n1 * out.i_2n3;
    return out;
}

} // namespace rpqwn
