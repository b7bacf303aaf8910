#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rpqwn/errors.hpp"
#include "rpqwn/rational.hpp"
#include "rpqwn/scalar.hpp"
#include "rpqwn/testfn.hpp"

#include "support.hpp"

using namespace rpqwn;

TEST_CASE("falling factorial") {
    CHECK(falling_factorial(5, 3) == 60);
    CHECK(falling_factorial(5, 0) == 1);
    CHECK(falling_factorial(3, 5) == 0);  // hits the zero factor
    CHECK(falling_factorial(-2, 3) == -24); // (-2)(-3)(-4)
    CHECK_THROWS_AS(falling_factorial(2, -1), DomainError);
}

TEST_CASE("binomial and factorial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 7) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(6, -1) == 0);
    CHECK(binomial(52, 26) == Int("495918532948104"));
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == Int("2432902008176640000"));
    CHECK_THROWS_AS(factorial(-1), DomainError);
}

TEST_CASE("rational powers") {
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(rational_pow(Rational(0), 0) == 1);
    CHECK(rational_pow(Rational(-2), 3) == -8);
    CHECK_THROWS_AS(rational_pow(Rational(0), -1), DomainError);
}

TEST_CASE("rational rendering and parsing") {
    CHECK(render_rational(Rational(3)) == "3");
    CHECK(render_rational(Rational(-7, 2)) == "-7/2");
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("42") == 42);
    CHECK(parse_rational("+3/9") == Rational(1, 3));
    CHECK_THROWS_AS(parse_rational("1.5"), DomainError);
    CHECK_THROWS_AS(parse_rational("x"), DomainError);
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("imaginary unit and sqrt2 fold into canonical powers") {
    const Scalar i = Scalar::imaginary_unit();
    CHECK((i * i).as_rational() == Rational(-1));
    CHECK(i.pow(4).is_one());
    CHECK(i.pow(3) == -i);
    CHECK((Scalar::sqrt2() * Scalar::sqrt2()).as_rational() == Rational(2));
    CHECK(Scalar::sqrt2(3) == Scalar(2) * Scalar::sqrt2());
    CHECK(i.conj() == -i);
    const Scalar one_plus_i = Scalar(1) + i;
    CHECK(one_plus_i.pow(2) == Scalar(2) * i);
    CHECK((one_plus_i * one_plus_i.conj()).as_rational() == Rational(2));
}

TEST_CASE("atoms, rendering order, and queries") {
    const Scalar c = Scalar::atom("c");
    const Scalar mu = Scalar::atom("mu");
    const Scalar moment = Scalar(8) * c.pow(2) * mu.pow(2) + Scalar(16) * c * mu;
    CHECK(moment.render() == "8*c^2*mu^2 + 16*c*mu");
    CHECK((Scalar(2) * c - Scalar(2) * c).is_zero());
    CHECK_FALSE(moment.as_rational().has_value());
    CHECK(moment.contains_atom("mu"));
    CHECK_FALSE(moment.contains_atom("delta0"));
    CHECK(Scalar(1).is_one());
    CHECK((c * mu - Scalar(1)).render() == "c*mu - 1");
    CHECK((-c).render() == "-c");
    CHECK((mu - c).render() == "-c + mu");
}

TEST_CASE("substitution is a homomorphism with guarded corners") {
    const Scalar c = Scalar::atom("c");
    const Scalar mu = Scalar::atom("mu");
    const std::map<std::string, Rational> bind{{"c", Rational(2)}, {"mu", Rational(1, 4)}};
    CHECK((c * mu - Scalar(1)).substitute(bind).as_rational() == Rational(-1, 2));
    const Scalar partial = (c * Scalar::atom("I_3")).substitute(bind);
    CHECK(partial == Scalar(2) * Scalar::atom("I_3"));
    CHECK(Scalar::atom("c", -1).substitute(bind).as_rational() == Rational(1, 2));
    CHECK_THROWS_AS(Scalar::atom("c", -1).substitute({{"c", Rational(0)}}), DomainError);
    CHECK_THROWS_AS(Scalar::atom(kDelta0Atom).substitute({{kDelta0Atom, Rational(1)}}),
                    SingularAtomError);
    // i is untouched and conjugation commutes with real substitution
    const Scalar z = Scalar::imaginary_unit() * c + mu;
    CHECK(z.substitute(bind).conj() == z.conj().substitute(bind));
}

TEST_CASE("scalar ring axioms on random elements") {
    testing::Rng rng(20260819);
    for (int trial = 0; trial < 200; ++trial) {
        const Scalar a = testing::random_scalar(rng);
        const Scalar b = testing::random_scalar(rng);
        const Scalar c = testing::random_scalar(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK((a * Scalar(1)) == a);
        CHECK((a * Scalar(0)).is_zero());
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK(a.pow(3) == a * a * a);
    }
}

TEST_CASE("test function normalization") {
    const auto [chi3, shed1] = make_testfn({{"chi_I", 3}});
    CHECK(chi3 == TestFn::symbol("chi_I")); // indicators are idempotent
    CHECK(shed1.is_one());

    const auto [delta3, shed2] = make_testfn({{kDeltaFactor, 3}});
    CHECK(delta3 == TestFn::symbol(kDeltaFactor));
    CHECK(shed2 == Scalar::atom(kDelta0Atom, 2)); // excess folds to delta(0)^2

    CHECK_THROWS_AS(make_testfn({{"f", -1}}), DomainError);
    CHECK(make_testfn({{"phi", 0}}).first.is_unit());
}

TEST_CASE("test function products, conjugates, vanishing") {
    const TestFn f = TestFn::symbol("f");
    const TestFn phi2 = make_testfn({{"phi", 2}}).first;
    const auto [prod, shed] = testfn_mul(f, phi2);
    CHECK(shed.is_one());
    CHECK(prod.factors().at("f") == 1);
    CHECK(prod.factors().at("phi") == 2);
    CHECK(prod.render() == "f*phi^2");

    CHECK(f.vanishes_at_zero());
    CHECK(TestFn::symbol("g_bar").vanishes_at_zero());
    CHECK(prod.vanishes_at_zero()); // one vanishing factor suffices
    CHECK_FALSE(TestFn::symbol("chi_I").vanishes_at_zero());
    CHECK_FALSE(phi2.vanishes_at_zero());
    CHECK_FALSE(TestFn::unit().vanishes_at_zero());

    CHECK(f.conj() == TestFn::symbol("f_bar"));
    CHECK(TestFn::symbol("f_bar").conj() == f);
    CHECK(TestFn::symbol("chi_I").conj() == TestFn::symbol("chi_I"));
    CHECK(phi2.conj() == phi2);
    CHECK(TestFn::symbol(kDeltaFactor).conj() == TestFn::symbol(kDeltaFactor));

    const auto [chichi, shed3] = testfn_mul(TestFn::symbol("chi_I"), TestFn::symbol("chi_I"));
    CHECK(chichi == TestFn::symbol("chi_I"));
    CHECK(shed3.is_one());

    const auto [dd, shed4] =
        testfn_mul(TestFn::symbol(kDeltaFactor), TestFn::symbol(kDeltaFactor));
    CHECK(dd == TestFn::symbol(kDeltaFactor));
    CHECK(shed4 == Scalar::atom(kDelta0Atom));
}
