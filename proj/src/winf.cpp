#include "rpqwn/winf.hpp"

#include "rpqwn/errors.hpp"
#include "rpqwn/util.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <tuple>

namespace rpqwn {

namespace {

Scalar int_pow_scalar(long long base, long long exp) {
    return Scalar(rational_pow(Rational(base), exp));
}

} // namespace

ComwExpansion comw_expand(long long n, long long k, long long N, long long K) {
    if (n < 2 || N < 2) throw DomainError("expansion needs upper indices >= 2");
    ComwExpansion out;
    out.n = n;
    out.k = k;
    out.N = N;
    out.K = K;
    const Scalar shared = Scalar(Rational(1) / rational_pow(Rational(2), n + N - 2));
    for (long long m1 = 0; m1 <= n - 1; ++m1) {
        for (long long m2 = 0; m2 <= N - 1; ++m2) {
            ExpansionTerm t;
            t.branch = ExpansionTerm::Branch::DIRECT;
            t.m1 = m1;
            t.m2 = m2;
            t.sign = (n - 1 - m1) % 2 == 0 ? 1 : -1;
            t.kK_factor = int_pow_scalar(K, n - 1 - m1) * int_pow_scalar(k, N - 1 - m2);
            t.delta_power = (n - 1 - m1) + (N - 1 - m2);
            t.prefactor = Scalar(Rational(binomial(Int(n - 1), Int(m1)) *
                                          binomial(Int(N - 1), Int(m2)))) *
                          shared;
            out.terms.push_back(std::move(t));
        }
    }
    for (long long m3 = 0; m3 <= N - 1; ++m3) {
        for (long long m4 = 0; m4 <= n - 1; ++m4) {
            ExpansionTerm t;
            t.branch = ExpansionTerm::Branch::REVERSED;
            t.m1 = m3;
            t.m2 = m4;
            t.sign = (N - 1 - m3) % 2 == 0 ? 1 : -1;
            t.kK_factor = int_pow_scalar(k, N - 1 - m3) * int_pow_scalar(K, n - 1 - m4);
            t.delta_power = (N - 1 - m3) + (n - 1 - m4);
            t.prefactor = Scalar(Rational(binomial(Int(N - 1), Int(m3)) *
                                          binomial(Int(n - 1), Int(m4)))) *
                          shared;
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

Expr comw_reduce(const ComwExpansion& expansion, const RenormPolicy& policy,
                 const TestFn& left_fn, const TestFn& right_fn) {
    if (!policy.testfns_vanish_at_zero)
        throw DomainError(
            "reduction requires test functions vanishing at zero; the result would "
            "retain singular delta(s) terms");
    if (!left_fn.vanishes_at_zero() || !right_fn.vanishes_at_zero())
        throw DomainError("test functions " + left_fn.render() + ", " + right_fn.render() +
                          " do not vanish at zero");
    const long long n = expansion.n, k = expansion.k;
    const long long N = expansion.N, K = expansion.K;

    const auto signed_value = [](const ExpansionTerm& t) {
        Scalar v = t.prefactor * t.kK_factor * Scalar(t.sign);
        if (t.branch == ExpansionTerm::Branch::REVERSED) v = -v;
        return v;
    };

    // Rule (a): the unique delta-power-zero term of each branch carries the
    // same operator content (the exponential factors commute), so the pair
    // must cancel exactly.
    Scalar zero_sum;
    std::size_t zero_count = 0;
    for (const auto& t : expansion.terms) {
        if (t.delta_power != 0) continue;
        ++zero_count;
        zero_sum += signed_value(t);
    }
    if (zero_count != 2 || !zero_sum.is_zero())
        throw EngineError("delta-power-zero terms failed to cancel");

    // Rule (b): delta-power-one survivors must be exactly the four expected
    // index pairs; the diagonal collapse contributes 2^(n+N-3) when the
    // centered power is rescaled back to the generator normalization.
    using Key = std::tuple<int, long long, long long>;
    std::set<Key> survivors;
    Scalar one_sum;
    for (const auto& t : expansion.terms) {
        if (t.delta_power != 1) continue;
        survivors.insert({t.branch == ExpansionTerm::Branch::DIRECT ? 0 : 1, t.m1, t.m2});
        one_sum += signed_value(t);
    }
    const std::set<Key> expected = {
        {0, n - 1, N - 2}, {0, n - 2, N - 1}, {1, N - 1, n - 2}, {1, N - 2, n - 1}};
    if (survivors != expected)
        throw EngineError("delta-power-one survivors differ from the expected four");
    const Scalar coeff = one_sum * int_pow_scalar(2, n + N - 3);
    if (coeff != Scalar(k * (N - 1) - K * (n - 1)))
        throw EngineError("reduced coefficient does not match k(N-1) - K(n-1)");

    // Rule (c): delta-power >= 2 terms vanish under the policy; nothing to add.
    if (coeff.is_zero()) return Expr::zero();
    auto [fn, shed] = testfn_mul(left_fn, right_fn);
    return Expr::from_generator(Generator(FamilyTag::WINF, n + N - 2, k + K, fn),
                                coeff * shed);
}

WinfBoxReport verify_winf_box(long long n_max, long long k_max) {
    if (n_max < 2) throw DomainError("box needs n_max >= 2");
    if (k_max < 0) throw DomainError("box needs k_max >= 0");
    WinfBoxReport report;
    report.n_max = n_max;
    report.k_max = k_max;

    const TestFn gbar = TestFn::symbol("g_bar");
    const TestFn f = TestFn::symbol("f");
    const RenormPolicy policy{true};

    std::vector<std::array<long long, 4>> tuples;
    for (long long n = 2; n <= n_max; ++n)
        for (long long N = 2; N <= n_max; ++N)
            for (long long k = -k_max; k <= k_max; ++k)
                for (long long K = -k_max; K <= k_max; ++K)
                    tuples.push_back({n, k, N, K});

    std::vector<std::vector<std::string>> faults(tuples.size());
    parallel_for(tuples.size(), [&](std::size_t idx) {
        const auto [n, k, N, K] = tuples[idx];
        std::ostringstream tag;
        tag << "(n=" << n << ",k=" << k << ",N=" << N << ",K=" << K << ")";
        const Generator a(FamilyTag::WINF, n, k, gbar);
        const Generator b(FamilyTag::WINF, N, K, f);
        const Expr lie = bracket_generators(BracketFamily::WINF, a, b);
        Expr reduced;
        try {
            reduced = comw_reduce(comw_expand(n, k, N, K), policy, gbar, f);
        } catch (const EngineError& e) {
            faults[idx].push_back("dual-path " + tag.str() + ": " + e.what());
            return;
        }
        if (reduced != lie)
            faults[idx].push_back("dual-path " + tag.str() + ": " + reduced.render() +
                                  " vs " + lie.render());
        if (n == 2 && N == 2) {
            const auto [fn, shed] = testfn_mul(gbar, f);
            Expr expect;
            if (k != K)
                expect = Expr::from_generator(Generator(FamilyTag::WINF, 2, k + K, fn),
                                              Scalar(k - K) * shed);
            if (reduced != expect)
                faults[idx].push_back("virasoro " + tag.str() + ": " + reduced.render());
        }
        const Expr adj_lhs = lie.involution();
        const Expr adj_rhs =
            bracket_generators(BracketFamily::WINF, b.involution(), a.involution());
        if (adj_lhs != adj_rhs)
            faults[idx].push_back("involution " + tag.str() + ": " + adj_lhs.render() +
                                  " vs " + adj_rhs.render());
    });

    report.tuples_checked = tuples.size();
    bool dual = true, vira = true, invo = true;
    for (const auto& bucket : faults) {
        for (const auto& msg : bucket) {
            report.violations.push_back(msg);
            if (msg.rfind("dual-path", 0) == 0) dual = false;
            else if (msg.rfind("virasoro", 0) == 0) vira = false;
            else invo = false;
        }
    }
    report.dual_path_ok = dual;
    report.virasoro_ok = vira;
    report.involution_ok = invo;
    return report;
}

} // namespace rpqwn
