#include "rpqwn/bracket.hpp"

#include "rpqwn/errors.hpp"
#include "rpqwn/util.hpp"

#include <algorithm>

namespace rpqwn {

std::string family_name(BracketFamily f) {
    switch (f) {
        case BracketFamily::C_RENORM: return "c-renorm";
        case BracketFamily::PHI_RENORM: return "phi-renorm";
        case BracketFamily::DELTA0_RENORM: return "delta0-renorm";
        case BracketFamily::CANONICAL: return "canonical";
        case BracketFamily::WINF: return "winf";
    }
    throw DomainError("unknown family");
}

std::optional<BracketFamily> family_from_name(const std::string& name) {
    for (const auto f :
         {BracketFamily::C_RENORM, BracketFamily::PHI_RENORM, BracketFamily::DELTA0_RENORM,
          BracketFamily::CANONICAL, BracketFamily::WINF})
        if (family_name(f) == name) return f;
    return std::nullopt;
}

FamilyTag algebra_of(BracketFamily f) {
    return f == BracketFamily::WINF ? FamilyTag::WINF : FamilyTag::RPQWN;
}

namespace {

long long eps(long long v) { return v == 0 ? 0 : 1; } // 1 - kronecker(v, 0)

void require_algebra(BracketFamily f, const Generator& g) {
    if (g.family() != algebra_of(f))
        throw DomainError("generator " + g.render() + " does not belong to the " +
                          family_name(f) + " algebra");
}

} // namespace

Scalar b_coeff(long long x, long long y, long long z, bool hat) {
    if (x < 1) throw DomainError("b_coeff needs x >= 1");
    const Int value = eps(y) * eps(z) * binomial(y, x) * falling_factorial(z, x);
    if (value == 0) return Scalar();
    Scalar out{value};
    if (!hat && x > 1) out *= Scalar::atom("c", x - 1);
    return out;
}

Int theta_coeff(long long N, long long K, long long n, long long k, long long L) {
    if (L < 1) throw DomainError("theta_coeff needs L >= 1");
    return eps(K) * eps(n) * binomial(K, L) * falling_factorial(n, L) -
           eps(k) * eps(N) * binomial(k, L) * falling_factorial(N, L);
}

Expr bracket_generators(BracketFamily f, const Generator& a, const Generator& b) {
    require_algebra(f, a);
    require_algebra(f, b);
    const long long U1 = a.upper(), W1 = a.lower();
    const long long U2 = b.upper(), W2 = b.lower();

    if (f == BracketFamily::WINF) {
        const Scalar coeff{(U2 - 1) * W1 - (U1 - 1) * W2};
        if (coeff.is_zero()) return Expr::zero();
        auto [fn, shed] = testfn_mul(a.testfn(), b.testfn());
        return Expr::from_generator(Generator(FamilyTag::WINF, U1 + U2 - 2, W1 + W2, fn),
                                    coeff * shed);
    }

    if (f == BracketFamily::CANONICAL) {
        const Scalar coeff{W1 * U2 - W2 * U1};
        if (coeff.is_zero()) return Expr::zero();
        auto [fn, shed] = testfn_mul(a.testfn(), b.testfn());
        return Expr::from_generator(
            Generator(FamilyTag::RPQWN, U1 + U2 - 1, W1 + W2 - 1, fn), coeff * shed);
    }

    // The three renormalizations share the theta coefficients and result
    // indices; only the L-dependent payload differs.
    const long long L_max = std::max(std::min(W1, U2), std::min(W2, U1));
    Expr acc;
    for (long long L = 1; L <= L_max; ++L) {
        const Int th = theta_coeff(U1, W1, U2, W2, L);
        if (th == 0) continue;
        Scalar coeff{th};
        auto [fn, shed] = testfn_mul(a.testfn(), b.testfn());
        coeff *= shed;
        switch (f) {
            case BracketFamily::C_RENORM:
                if (L > 1) coeff *= Scalar::atom("c", L - 1);
                break;
            case BracketFamily::PHI_RENORM:
                if (L > 1) {
                    auto [pfn, pshed] = testfn_mul(fn, make_testfn({{"phi", L - 1}}).first);
                    fn = pfn;
                    coeff *= pshed;
                }
                break;
            case BracketFamily::DELTA0_RENORM:
                if (L > 1) {
                    if (a.testfn().vanishes_at_zero() && b.testfn().vanishes_at_zero())
                        continue; // the delta(s)-terms integrate to zero
                    auto [dfn, dshed] = testfn_mul(fn, TestFn::symbol(kDeltaFactor));
                    fn = dfn;
                    coeff *= dshed;
                }
                break;
            default: break;
        }
        acc += Expr::from_generator(
            Generator(FamilyTag::RPQWN, U1 + U2 - L, W1 + W2 - L, fn), coeff);
    }
    return acc;
}

namespace {

// [u, v] on words via the derivation property, recursing to generators.
Expr bracket_words(BracketFamily f, const Word& u, const Word& v) {
    if (u.empty() || v.empty()) return Expr::zero(); // identity is central
    if (u.size() == 1 && v.size() == 1) return bracket_generators(f, u[0], v[0]);
    if (v.size() > 1) {
        // [u, v1 v2] = [u, v1] v2 + v1 [u, v2]
        const Word v1{v[0]};
        const Word v2(v.begin() + 1, v.end());
        return bracket_words(f, u, v1) * Expr::from_word(v2) +
               Expr::from_word(v1) * bracket_words(f, u, v2);
    }
    // [u1 u2, v] = u1 [u2, v] + [u1, v] u2
    const Word u1{u[0]};
    const Word u2(u.begin() + 1, u.end());
    return Expr::from_word(u1) * bracket_words(f, u2, v) +
           bracket_words(f, u1, v) * Expr::from_word(u2);
}

} // namespace

Expr bracket_exprs(BracketFamily f, const Expr& a, const Expr& b) {
    Expr acc;
    for (const auto& [wa, sa] : a.terms())
        for (const auto& [wb, sb] : b.terms())
            acc += bracket_words(f, wa, wb).scale(sa * sb);
    return acc;
}

Expr iterated_C(BracketFamily f, long long n, int depth) {
    if (algebra_of(f) != FamilyTag::RPQWN)
        throw DomainError("iterated_C is defined on the RPQWN renormalizations");
    if (n < 1) throw DomainError("iterated_C needs n >= 1");
    if (depth < 1) throw DomainError("iterated_C needs depth >= 1");
    const TestFn chi = TestFn::symbol("chi_I");
    const Expr lhs = Expr::from_generator(Generator(FamilyTag::RPQWN, 0, n, chi));
    Expr acc = bracket_exprs(
        f, lhs, Expr::from_generator(Generator(FamilyTag::RPQWN, n, 0, chi)));
    for (int j = 1; j < depth; ++j) acc = bracket_exprs(f, lhs, acc);
    return acc;
}

Scalar beta_coeff(long long n) {
    if (n < 2) throw DomainError("beta_coeff needs n >= 2");
    Scalar acc;
    for (long long L1 = 1; L1 <= n - 1; ++L1) {
        for (long long L2 = 1; L2 <= n - L1; ++L2) {
            if (L1 + L2 == n) continue; // b_0 term, zero by the eps-kill
            acc += b_coeff(L1, n, n) * b_coeff(L2, n, n - L1) *
                   b_coeff(n - (L1 + L2), n, n - (L1 + L2));
        }
    }
    return acc;
}

Expr nsum_terms(long long n) {
    if (n < 2) throw DomainError("nsum_terms needs n >= 2");
    const TestFn chi = TestFn::symbol("chi_I");
    Expr acc;
    for (long long L1 = 1; L1 <= n - 1; ++L1) {
        for (long long L2 = 1; L2 <= n - L1; ++L2) {
            for (long long L3 = 1; L3 <= n - (L1 + L2); ++L3) {
                const long long s = L1 + L2 + L3;
                if (s == n) continue; // the beta term
                const Scalar coeff = b_coeff(L1, n, n) * b_coeff(L2, n, n - L1) *
                                     b_coeff(L3, n, n - (L1 + L2));
                acc += Expr::from_generator(
                    Generator(FamilyTag::RPQWN, n - s, 3 * n - s, chi), coeff);
            }
        }
    }
    return acc;
}

std::vector<Generator> box_generators(BracketFamily f, const IndexBox& box) {
    std::vector<Generator> gens;
    const FamilyTag tag = algebra_of(f);
    for (long long n = box.n_min; n <= box.n_max; ++n) {
        if (tag == FamilyTag::WINF && n < 2) continue;
        if (tag == FamilyTag::RPQWN && n < 0) continue;
        for (long long k = box.k_min; k <= box.k_max; ++k) {
            if (tag == FamilyTag::RPQWN && k < 0) continue;
            gens.emplace_back(tag, n, k, TestFn::unit());
        }
    }
    return gens;
}

JacobiReport jacobi_check(BracketFamily f, const std::vector<Generator>& gens) {
    const std::size_t m = gens.size();
    JacobiReport report;
    report.triples_checked = m * m * m;
    std::vector<std::vector<JacobiViolation>> found(m);
    parallel_for(m, [&](std::size_t ia) {
        const Expr ea = Expr::from_generator(gens[ia]);
        for (std::size_t ib = 0; ib < m; ++ib) {
            const Expr eb = Expr::from_generator(gens[ib]);
            const Expr ab = bracket_exprs(f, ea, eb);
            for (std::size_t ic = 0; ic < m; ++ic) {
                const Expr ec = Expr::from_generator(gens[ic]);
                const Expr residual = bracket_exprs(f, ea, bracket_exprs(f, eb, ec)) +
                                      bracket_exprs(f, ec, ab) +
                                      bracket_exprs(f, eb, bracket_exprs(f, ec, ea));
                if (!residual.is_zero())
                    found[ia].push_back({gens[ia], gens[ib], gens[ic], residual.render()});
            }
        }
    });
    for (auto& chunk : found)
        report.violations.insert(report.violations.end(), chunk.begin(), chunk.end());
    return report;
}

JacobiReport jacobi_check(BracketFamily f, const IndexBox& box) {
    return jacobi_check(f, box_generators(f, box));
}

} // namespace rpqwn
