// Acceptance gate: every release-blocking property in one binary, one
// pass/fail line each. All comparisons are exact (big-rational / symbolic
// equality, zero tolerance); there are no floating-point paths.

#include "rpqwn/bracket.hpp"
#include "rpqwn/cli.hpp"
#include "rpqwn/errors.hpp"
#include "rpqwn/parser.hpp"
#include "rpqwn/poisson.hpp"
#include "rpqwn/vacuum.hpp"
#include "rpqwn/weyl.hpp"
#include "rpqwn/winf.hpp"

#include "support.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace rpqwn;
using testing::gen;

namespace {

#ifndef RPQWN_TEST_DATA_DIR
#error "RPQWN_TEST_DATA_DIR must point at the golden-file directory"
#endif

std::string data_file(const std::string& name) {
    const std::string path = std::string(RPQWN_TEST_DATA_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw EngineError("cannot open golden file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

struct Gate {
    int failures = 0;
    std::ostringstream detail;

    void criterion(int number, const std::string& label, const std::function<bool()>& body) {
        bool ok = false;
        std::string note;
        try {
            ok = body();
        } catch (const std::exception& e) {
            note = e.what();
        }
        if (ok) {
            std::cout << "[PASS] criterion " << number << ": " << label << "\n";
        } else {
            ++failures;
            std::cout << "[FAIL] criterion " << number << ": " << label;
            if (!note.empty()) std::cout << " -- " << note;
            std::cout << "\n";
        }
    }

    bool expect(bool cond, const std::string& what) {
        if (!cond) throw EngineError(what);
        return true;
    }
};

int run_cli(const std::vector<std::string>& args, Report* captured = nullptr) {
    std::ostringstream out, err;
    return run_command(args, out, err, captured);
}

Scalar c_pow(long long p) { return Scalar::atom("c", p); }
Scalar mu_pow(long long p) { return Scalar::atom("mu", p); }

} // namespace

int main() {
    Gate g;

    // 1. The depth-1/2/3 commutator chain at degree 2 reproduces the golden
    //    strings exactly, with the c -> 1 binding applied at depth 1.
    g.criterion(1, "degree-2 commutator chain matches golden strings under c -> 1", [&] {
        const std::vector<std::vector<std::string>> argvs = {
            {"iterate-c", "--n", "2", "--depth", "1", "--bind", "c=1"},
            {"iterate-c", "--n", "2", "--depth", "2"},
            {"iterate-c", "--n", "2", "--depth", "3"},
        };
        const std::vector<std::string> goldens = {
            data_file("chain_n2_depth1.txt"), data_file("chain_n2_depth2.txt"),
            data_file("chain_n2_depth3.txt")};
        for (std::size_t i = 0; i < argvs.size(); ++i) {
            Report rep;
            g.expect(run_cli(argvs[i], &rep) == 0, "chain step exited nonzero");
            g.expect(rep.result_expr.has_value(), "chain step produced no result");
            g.expect(*rep.result_expr == goldens[i],
                     "step " + std::to_string(i + 1) + ": got '" + *rep.result_expr +
                         "', golden '" + goldens[i] + "'");
        }
        Report suite;
        g.expect(run_cli({"suite", std::string(RPQWN_TEST_DATA_DIR) + "/chain_n2_suite.json"},
                         &suite) == 0,
                 "golden suite config did not aggregate to pass");
        g.expect(suite.checks.size() == 3, "golden suite ran an unexpected case count");
        return true;
    });

    // 2. Depth-3 decomposition: beta(n) B[0,2n] plus residual terms whose
    //    adjoints kill the vacuum, for n = 3 and n = 4.
    g.criterion(2, "depth-3 chain splits into beta * B[0,2n] plus vacuum-killed residuals", [&] {
        for (long long n = 3; n <= 4; ++n) {
            const Expr c3 = iterated_C(BracketFamily::C_RENORM, n, 3);
            const Scalar beta = beta_coeff(n);
            g.expect(!beta.is_zero(), "beta vanished at n = " + std::to_string(n));
            const Expr residuals = nsum_terms(n);
            const Expr rebuilt = Expr::from_generator(gen(0, 2 * n), beta) + residuals;
            g.expect(c3 == rebuilt, "decomposition mismatch at n = " + std::to_string(n));
            for (const auto& [word, coeff] : residuals.terms()) {
                (void)coeff;
                g.expect(word.size() == 1, "residual term is not a single generator");
                g.expect(word.front().lower() >= 2 * n, "residual lower index below 2n");
                const Expr adjoint = Expr::from_word(involution_word(word));
                const VacuumResult v = vacuum_expectation(BracketFamily::C_RENORM, adjoint);
                g.expect(v.value.is_zero(), "adjoint residual has nonzero vacuum expectation");
            }
        }
        return true;
    });

    // 3. 2x2 positivity gate: symbolic minors match the closed forms for
    //    n = 2..4 and the verdict flips exactly at mu = 1/c.
    g.criterion(3, "positivity-gate minors match closed forms and flip at mu = 1/c", [&] {
        for (long long n = 2; n <= 4; ++n) {
            const GramGate gate = gram_gate(n);
            const Rational f2n = factorial(2 * n), fn = factorial(n);
            g.expect(gate.d1 == Scalar(f2n) * c_pow(2 * n - 1) * mu_pow(1),
                     "d1 closed form mismatch at n = " + std::to_string(n));
            g.expect(gate.d2 == Scalar(2 * fn * fn * f2n) * c_pow(4 * (n - 1)) * mu_pow(2) *
                                    (Scalar::atom("c") * Scalar::atom("mu") - Scalar(1)),
                     "d2 closed form mismatch at n = " + std::to_string(n));
            for (const long long c : {1LL, 2LL, 5LL}) {
                const Rational boundary(1, c);
                const auto verdict = [&](const Rational& mu) {
                    const GramGate bound =
                        gram_gate(n, {{"c", Rational(c)}, {"mu", mu}});
                    g.expect(bound.psd.has_value(), "bound gate stayed symbolic");
                    return *bound.psd;
                };
                g.expect(verdict(boundary + Rational(1, 1000)), "psd expected above 1/c");
                g.expect(!verdict(boundary - Rational(1, 1000)), "non-psd expected below 1/c");
                g.expect(verdict(boundary), "boundary mu = 1/c must be psd (d2 = 0)");
            }
        }
        return true;
    });

    // 4. Moment-matrix entries for the pointwise renormalization and the
    //    three moment conditions on designated bindings.
    g.criterion(4, "moment-matrix entries and conditions behave on both bindings", [&] {
        const std::map<std::string, Rational> ones = {
            {"mu", 1}, {"I_1", 1}, {"I_2", 1}, {"I_3", 1}, {"I_4", 1}, {"I_5", 1}};
        for (long long n = 2; n <= 3; ++n) {
            const PhiConditions p = phi_conditions(n, ones);
            const Rational f2n = factorial(2 * n), fn = factorial(n);
            const auto I = [](long long m) {
                return m == 0 ? Scalar::atom("mu") : Scalar::atom("I_" + std::to_string(m));
            };
            g.expect(p.a00 == Scalar(f2n) * I(2 * n - 1), "a00 entry mismatch");
            g.expect(p.a01 == Scalar(f2n) * I(2 * n - 2), "a01 entry mismatch");
            g.expect(p.a11 == Scalar(2 * fn * fn) * I(n - 1) * I(n - 1) +
                                  Scalar(f2n - 2 * fn * fn) * I(2 * n - 3),
                     "a11 entry mismatch");
        }
        for (long long n = 2; n <= 3; ++n) {
            const PhiConditions p = phi_conditions(n, {}, /*all_ones=*/true);
            g.expect(p.c1 && p.c2 && p.c3, "all-ones binding must satisfy every condition");
        }
        const PhiConditions bad = phi_conditions(
            2, {{"I_1", Rational(1)}, {"I_2", Rational(4)}, {"I_3", Rational(9)},
                {"mu", Rational(1)}});
        g.expect(bad.c1, "designated binding keeps nonnegativity");
        g.expect(!bad.c2, "designated binding must fail the interpolation equality");
        g.expect(bad.c3, "designated binding keeps domination");
        return true;
    });

    // 5. Jacobi identity with zero residual plus antisymmetry on both boxes.
    g.criterion(5, "Jacobi residual zero and antisymmetry on both index boxes", [&] {
        const IndexBox canonical_box{0, 4, 0, 4};
        const JacobiReport jc = jacobi_check(BracketFamily::CANONICAL, canonical_box);
        g.expect(jc.ok(), "canonical box Jacobi violation");
        g.expect(jc.triples_checked == 25ull * 25 * 25, "canonical triple count");
        const IndexBox winf_box{2, 6, -4, 4};
        const JacobiReport jw = jacobi_check(BracketFamily::WINF, winf_box);
        g.expect(jw.ok(), "winf box Jacobi violation");
        g.expect(jw.triples_checked == 45ull * 45 * 45, "winf triple count");
        for (const BracketFamily fam : {BracketFamily::CANONICAL, BracketFamily::WINF}) {
            const auto gens =
                box_generators(fam, fam == BracketFamily::WINF ? winf_box : canonical_box);
            for (const auto& a : gens)
                for (const auto& b : gens)
                    g.expect(bracket_generators(fam, a, b) ==
                                 bracket_generators(fam, b, a).scale(Scalar(-1)),
                             "antisymmetry violation");
        }
        return true;
    });

    // 6. Normal ordering: rewriter equals closed form up to degree 6, the
    //    exponential identities hold to order 8, and the (1,1) case certifies
    //    the summation starts at j = 0.
    g.criterion(6, "normal-ordering closed form, exponential identities, j = 0 base term", [&] {
        for (long long n = 0; n <= 6; ++n)
            for (long long m = 0; m <= 6; ++m) {
                const std::string word(std::string(n, 'D') + std::string(m, 'x'));
                g.expect(dn_xm_closed_form(n, m) == weyl_normal_order(word),
                         "closed form mismatch at D^" + std::to_string(n) + " x^" +
                             std::to_string(m));
            }
        const ExponentialIdentitiesReport er = verify_exponential_identities(8);
        g.expect(er.all(), "an exponential identity failed at order 8");
        const WeylElement brute = weyl_normal_order("Dx");
        g.expect(brute == dn_xm_closed_form(1, 1), "(1,1) closed form mismatch");
        g.expect(brute != WeylElement::h(),
                 "(1,1) must contain the j = 0 term x D, not h alone");
        g.expect(brute.terms().count(WeylKey{1, 1, 0}) == 1, "x D term missing at (1,1)");
        return true;
    });

    // 7. Two-branch expansion sweep: dual-path equality with the Lie bracket,
    //    pair cancellation, the singular-term policy, and the Virasoro line.
    g.criterion(7, "two-branch expansion reduces to the hatted bracket on the full box", [&] {
        const WinfBoxReport rep = verify_winf_box(6, 4);
        g.expect(rep.tuples_checked == 5ull * 5 * 9 * 9, "tuple count");
        g.expect(rep.dual_path_ok, "dual-path mismatch");
        g.expect(rep.virasoro_ok, "Virasoro sub-box mismatch");
        g.expect(rep.involution_ok, "involution compatibility failed");
        g.expect(rep.pass(), "box sweep reported failure");
        // the delta-power >= 2 policy refuses non-vanishing test functions
        const ComwExpansion e = comw_expand(3, 1, 3, 0);
        bool refused = false;
        try {
            comw_reduce(e, RenormPolicy{true}, TestFn::symbol("chi_I"), TestFn::symbol("f"));
        } catch (const DomainError&) {
            refused = true;
        }
        g.expect(refused, "singular-term policy accepted a non-vanishing test function");
        return true;
    });

    // 8. Classical realizations on both boxes with exact quantization match.
    g.criterion(8, "classical realizations verify with exact quantization match", [&] {
        const PoissonBoxReport f = verify_realizations_f(5, 3);
        g.expect(f.pairs_checked == 4ull * 4 * 7 * 7, "f-box pair count");
        g.expect(f.pass(), "f-box failed: closed form, conjugation, or quantization");
        const PoissonBoxReport p = verify_realizations_g(4);
        g.expect(p.pairs_checked == 5ull * 5 * 5 * 5, "g-box pair count");
        g.expect(p.pass(), "g-box failed: closed form, conjugation, or quantization");
        return true;
    });

    // 9. Parser round-trips and the full exit-code contract.
    g.criterion(9, "1000 parser round-trips and every CLI exit code", [&] {
        testing::Rng rng(0xACCE97);
        for (int trial = 0; trial < 1000; ++trial) {
            const Expr e = testing::random_expr(rng);
            const std::string text = render_expr(e);
            const Expr back = parse_to_expr(text);
            g.expect(back == e, "round-trip mismatch on '" + text + "'");
        }
        g.expect(run_cli({"iterate-c", "--n", "2", "--depth", "2"}) == 0, "exit 0 path");
        g.expect(run_cli({"--help"}) == 0, "help exit 0 path");
        g.expect(run_cli({"nogo-gate", "--n", "2", "--bind", "c=2", "--bind", "mu=1/8"}) == 1,
                 "exit 1 path (failed check)");
        g.expect(run_cli({"phi-conditions", "--n", "2", "--bind", "I_1=1", "--bind", "I_2=4",
                          "--bind", "I_3=9", "--bind", "mu=1"}) == 1,
                 "exit 1 path (moment gate)");
        g.expect(run_cli({"no-such-command"}) == 2, "exit 2 path (usage)");
        g.expect(run_cli({"bracket", "B[0,(", "B[1,1]", "--family", "c-renorm"}) == 2,
                 "exit 2 path (parse error)");
        g.expect(run_cli({"vacuum", "B[0,0]", "--family", "winf"}) == 2,
                 "exit 2 path (engine refusal)");
        return true;
    });

    std::cout << (g.failures == 0 ? "acceptance: all criteria passed"
                                  : "acceptance: " + std::to_string(g.failures) +
                                        " criterion(s) failed")
              << " (exact arithmetic, zero tolerance)\n";
    return g.failures == 0 ? 0 : 1;
}
