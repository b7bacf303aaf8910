#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rpqwn/bracket.hpp"
#include "rpqwn/errors.hpp"
#include "rpqwn/parser.hpp"

#include "support.hpp"

using namespace rpqwn;
using testing::bhat;
using testing::gen;

namespace {

Expr expr_of(const std::string& text) { return parse_to_expr(text); }

} // namespace

TEST_CASE("structure coefficients") {
    // b_1(2,2) = C(2,1) * 2^(1) * c^0 = 4; b_2(2,2) = C(2,2) * 2^(2) * c = 2c
    CHECK(b_coeff(1, 2, 2) == Scalar(4));
    CHECK(b_coeff(2, 2, 2) == Scalar(2) * Scalar::atom("c"));
    CHECK(b_coeff(2, 2, 2, /*hat=*/true) == Scalar(2));
    // any zero argument kills the coefficient
    CHECK(b_coeff(1, 0, 2).is_zero());
    CHECK(b_coeff(1, 2, 0).is_zero());
    // binomial vanishes when x > y
    CHECK(b_coeff(3, 2, 5).is_zero());
    CHECK_THROWS_AS(b_coeff(0, 2, 2), DomainError);
    CHECK_THROWS_AS(b_coeff(-1, 2, 2), DomainError);

    // theta_L(N,K;n,k) = eps(K)eps(n) C(K,L) n^(L) - eps(k)eps(N) C(k,L) N^(L)
    CHECK(theta_coeff(2, 0, 0, 1, 1) == -2); // only the second branch survives
    CHECK(theta_coeff(0, 1, 1, 0, 1) == 1);
    CHECK(theta_coeff(0, 2, 2, 0, 1) == 4);
    CHECK(theta_coeff(0, 2, 2, 0, 2) == 2);
    CHECK(theta_coeff(2, 2, 2, 2, 1) == 0); // symmetric arguments cancel
    CHECK(theta_coeff(3, 1, 2, 2, 1) == 1 * 2 - 2 * 3); // C(1,1)*2^(1) - C(2,1)*3^(1)
}

TEST_CASE("renormalized bracket families on generators") {
    SUBCASE("c-renorm pins") {
        CHECK(bracket_generators(BracketFamily::C_RENORM, gen(0, 1), gen(1, 0)) ==
              expr_of("B[0,0](chi_I)"));
        CHECK(bracket_generators(BracketFamily::C_RENORM, gen(0, 2), gen(2, 0)) ==
              expr_of("2*c * B[0,0](chi_I) + 4 * B[1,1](chi_I)"));
        CHECK(bracket_generators(BracketFamily::C_RENORM, gen(2, 0), gen(0, 2)) ==
              expr_of("-2*c * B[0,0](chi_I) - 4 * B[1,1](chi_I)"));
        // commuting pairs
        CHECK(bracket_generators(BracketFamily::C_RENORM, gen(2, 0), gen(3, 0)).is_zero());
        CHECK(bracket_generators(BracketFamily::C_RENORM, gen(0, 0), gen(3, 3)).is_zero());
    }
    SUBCASE("phi-renorm carries phi powers into the test function") {
        const Expr lie = bracket_generators(BracketFamily::PHI_RENORM, gen(0, 2), gen(2, 0));
        const TestFn phi_chi = make_testfn({{"phi", 1}, {"chi_I", 1}}).first;
        Expr expected = Expr::from_generator(gen(1, 1), Scalar(4));
        expected = expected + Expr::from_generator(
                                  Generator(FamilyTag::RPQWN, 0, 0, phi_chi), Scalar(2));
        CHECK(lie == expected);
    }
    SUBCASE("delta0-renorm appends the delta factor unless both inputs vanish at 0") {
        // chi_I does not vanish at zero: the L=2 term keeps a delta_at_0 marker
        const Expr lie = bracket_generators(BracketFamily::DELTA0_RENORM, gen(0, 2), gen(2, 0));
        const TestFn delta_chi = make_testfn({{kDeltaFactor, 1}, {"chi_I", 1}}).first;
        Expr expected = Expr::from_generator(gen(1, 1), Scalar(4));
        expected = expected + Expr::from_generator(
                                  Generator(FamilyTag::RPQWN, 0, 0, delta_chi), Scalar(2));
        CHECK(lie == expected);

        // f and g vanish at zero: the L=2 term is dropped entirely
        const Expr lie_ff = bracket_generators(BracketFamily::DELTA0_RENORM,
                                               gen(0, 2, "f"), gen(2, 0, "g"));
        const TestFn fg = make_testfn({{"f", 1}, {"g", 1}}).first;
        CHECK(lie_ff == Expr::from_generator(Generator(FamilyTag::RPQWN, 1, 1, fg),
                                             Scalar(4)));
        // mixed: one vanishing input is not enough to drop the singular term
        const Expr lie_fchi = bracket_generators(BracketFamily::DELTA0_RENORM,
                                                 gen(0, 2, "f"), gen(2, 0));
        bool has_delta = false;
        for (const auto& [word, coeff] : lie_fchi.terms()) {
            (void)coeff;
            for (const auto& g : word)
                if (g.testfn().has_factor(kDeltaFactor)) has_delta = true;
        }
        CHECK(has_delta);
    }
    SUBCASE("canonical family uses kN - Kn on unhatted generators") {
        CHECK(bracket_generators(BracketFamily::CANONICAL, gen(2, 1), gen(1, 2)) ==
              expr_of("-3 * B[2,2](chi_I)"));
        CHECK(bracket_generators(BracketFamily::CANONICAL, gen(0, 1), gen(1, 0)) ==
              expr_of("B[0,0](chi_I)"));
        CHECK(bracket_generators(BracketFamily::CANONICAL, gen(1, 1), gen(1, 1)).is_zero());
        CHECK(bracket_generators(BracketFamily::CANONICAL, gen(2, 2), gen(1, 1)).is_zero());
    }
    SUBCASE("winf family uses (N-1)k - (n-1)K on hatted generators") {
        CHECK(bracket_generators(BracketFamily::WINF, bhat(3, 2), bhat(2, -1)) ==
              parse_to_expr("4 * Bh[3,1]"));
        // Virasoro sub-box: [Bh[2,k], Bh[2,K]] = (k-K) Bh[2,k+K]
        for (long long k = -3; k <= 3; ++k)
            for (long long K = -3; K <= 3; ++K) {
                const Expr lie = bracket_generators(BracketFamily::WINF, bhat(2, k), bhat(2, K));
                Expr expected = Expr::from_generator(bhat(2, k + K), Scalar(k - K));
                if (k == K) expected = Expr::zero();
                CHECK(lie == expected);
            }
        // zero coefficient wins before index validation: result upper would be 1
        CHECK(bracket_generators(BracketFamily::WINF, bhat(2, 0), bhat(2, 0)).is_zero());
    }
    SUBCASE("family mismatch is refused") {
        CHECK_THROWS_AS(bracket_generators(BracketFamily::C_RENORM, bhat(2, 1), bhat(2, 0)),
                        DomainError);
        CHECK_THROWS_AS(bracket_generators(BracketFamily::WINF, gen(1, 1), gen(2, 0)),
                        DomainError);
        CHECK_THROWS_AS(bracket_generators(BracketFamily::CANONICAL, bhat(2, 1), gen(2, 0)),
                        DomainError);
    }
}

TEST_CASE("iterated commutators with the number-operator ladder") {
    SUBCASE("n = 2 chain") {
        CHECK(iterated_C(BracketFamily::C_RENORM, 2, 1) ==
              expr_of("2*c * B[0,0](chi_I) + 4 * B[1,1](chi_I)"));
        CHECK(iterated_C(BracketFamily::C_RENORM, 2, 2) == expr_of("8 * B[0,2](chi_I)"));
        CHECK(iterated_C(BracketFamily::C_RENORM, 2, 3).is_zero());
    }
    SUBCASE("n = 3 chain") {
        CHECK(iterated_C(BracketFamily::C_RENORM, 3, 1) ==
              expr_of("6*c^2 * B[0,0](chi_I) + 18*c * B[1,1](chi_I) + 9 * B[2,2](chi_I)"));
        CHECK(iterated_C(BracketFamily::C_RENORM, 3, 2) ==
              expr_of("108*c * B[0,3](chi_I) + 54 * B[1,4](chi_I)"));
        CHECK(iterated_C(BracketFamily::C_RENORM, 3, 3) == expr_of("162 * B[0,6](chi_I)"));
    }
    SUBCASE("n = 4 chain third step") {
        CHECK(iterated_C(BracketFamily::C_RENORM, 4, 3) ==
              expr_of("6912*c * B[0,8](chi_I) + 1536 * B[1,9](chi_I)"));
    }
    SUBCASE("closed-form coefficient of B[0,2n]") {
        CHECK(beta_coeff(2).is_zero());
        CHECK(beta_coeff(3) == Scalar(162));
        CHECK(beta_coeff(4) == Scalar(6912) * Scalar::atom("c"));
        for (long long n = 2; n <= 6; ++n) {
            const Expr c3 = iterated_C(BracketFamily::C_RENORM, n, 3);
            const Word target{gen(0, 2 * n)};
            CHECK(c3.coefficient(target) == beta_coeff(n));
        }
    }
    SUBCASE("C_3(n) = beta(n) B[0,2n] + residuals killed by the vacuum shape") {
        for (long long n = 3; n <= 5; ++n) {
            const Expr c3 = iterated_C(BracketFamily::C_RENORM, n, 3);
            const Expr residual =
                c3 - Expr::from_generator(gen(0, 2 * n), beta_coeff(n));
            CHECK(residual == nsum_terms(n));
            for (const auto& [word, coeff] : residual.terms()) {
                (void)coeff;
                REQUIRE(word.size() == 1);
                const Generator& g = word.front();
                CHECK(g.lower() >= 2 * n);
                CHECK(g.lower() - g.upper() == 2 * n); // adjoint sends it to
                CHECK(g.upper() >= 1);                 // upper-heavy, vacuum-killed
            }
        }
        CHECK(nsum_terms(2).is_zero());
        CHECK(nsum_terms(4) == expr_of("1536 * B[1,9](chi_I)"));
    }
    SUBCASE("depth and index guards") {
        CHECK_THROWS_AS(iterated_C(BracketFamily::C_RENORM, 0, 1), DomainError);
        CHECK_THROWS_AS(iterated_C(BracketFamily::C_RENORM, 2, 0), DomainError);
        CHECK_THROWS_AS(beta_coeff(1), DomainError);
        CHECK_THROWS_AS(nsum_terms(1), DomainError);
    }
}

TEST_CASE("bracket on expressions is bilinear and a derivation") {
    testing::Rng rng(0x5EED);
    const BracketFamily fam = BracketFamily::C_RENORM;
    for (int trial = 0; trial < 40; ++trial) {
        const Expr a = Expr::from_generator(testing::random_rpqwn_generator(rng));
        const Expr b = Expr::from_generator(testing::random_rpqwn_generator(rng));
        const Expr c = Expr::from_generator(testing::random_rpqwn_generator(rng));
        const Scalar s = testing::random_scalar(rng);

        // bilinearity
        CHECK(bracket_exprs(fam, a + b, c) ==
              bracket_exprs(fam, a, c) + bracket_exprs(fam, b, c));
        CHECK(bracket_exprs(fam, a.scale(s), c) == bracket_exprs(fam, a, c).scale(s));
        // antisymmetry on these generators
        CHECK(bracket_exprs(fam, a, b) == bracket_exprs(fam, b, a).scale(Scalar(-1)));
        // derivation in the right slot: [a, bc] = [a,b]c + b[a,c]
        CHECK(bracket_exprs(fam, a, b * c) ==
              bracket_exprs(fam, a, b) * c + b * bracket_exprs(fam, a, c));
        // involution antihomomorphism: [a,b]* = [b*, a*]
        CHECK(bracket_exprs(fam, a, b).involution() ==
              bracket_exprs(fam, b.involution(), a.involution()));
    }
}

TEST_CASE("jacobi identity over index boxes") {
    SUBCASE("canonical box") {
        const JacobiReport rep = jacobi_check(BracketFamily::CANONICAL, IndexBox{0, 3, 0, 3});
        CHECK(rep.ok());
        CHECK(rep.triples_checked == 16 * 16 * 16);
    }
    SUBCASE("winf box skips upper < 2") {
        const auto gens = box_generators(BracketFamily::WINF, IndexBox{2, 4, -2, 2});
        CHECK(gens.size() == 3 * 5);
        for (const auto& g : gens) CHECK(g.upper() >= 2);
        const JacobiReport rep = jacobi_check(BracketFamily::WINF, IndexBox{0, 4, -2, 2});
        CHECK(rep.ok());
        CHECK(rep.triples_checked == 15 * 15 * 15);
    }
    SUBCASE("c-renorm box") {
        const JacobiReport rep = jacobi_check(BracketFamily::C_RENORM, IndexBox{0, 2, 0, 2});
        CHECK(rep.ok());
    }
}
