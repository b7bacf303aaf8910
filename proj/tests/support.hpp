#pragma once

#include "rpqwn/expr.hpp"
#include "rpqwn/generator.hpp"
#include "rpqwn/scalar.hpp"
#include "rpqwn/testfn.hpp"

#include <random>
#include <vector>

namespace rpqwn::testing {

using Rng = std::mt19937_64;

inline long long pick(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Scalar random_scalar(Rng& rng) {
    Scalar s(Rational(Int(pick(rng, -9, 9)), Int(pick(rng, 1, 9))));
    if (pick(rng, 0, 2) == 0) s *= Scalar::imaginary_unit().pow(pick(rng, 1, 3));
    if (pick(rng, 0, 2) == 0) s *= Scalar::sqrt2();
    if (pick(rng, 0, 1) == 0) s *= Scalar::atom("c", pick(rng, 1, 2));
    if (pick(rng, 0, 2) == 0) s *= Scalar::atom("mu", pick(rng, 1, 2));
    if (pick(rng, 0, 3) == 0) s += Scalar(pick(rng, -4, 4));
    return s;
}

inline TestFn random_testfn(Rng& rng) {
    switch (pick(rng, 0, 5)) {
    case 0: return TestFn::unit();
    case 1: return TestFn::symbol("chi_I");
    case 2: return TestFn::symbol("f");
    case 3: return TestFn::symbol("g_bar");
    case 4: return make_testfn({{"phi", pick(rng, 1, 3)}}).first;
    default: return make_testfn({{"chi_I", 1}, {"phi", pick(rng, 1, 2)}}).first;
    }
}

inline Generator random_rpqwn_generator(Rng& rng) {
    return Generator(FamilyTag::RPQWN, pick(rng, 0, 5), pick(rng, 0, 5),
                     random_testfn(rng));
}

inline Generator random_generator(Rng& rng) {
    if (pick(rng, 0, 3) == 0)
        return Generator(FamilyTag::WINF, pick(rng, 2, 6), pick(rng, -4, 4),
                         random_testfn(rng));
    return random_rpqwn_generator(rng);
}

inline Expr random_expr(Rng& rng) {
    Expr e;
    const long long terms = pick(rng, 0, 4);
    for (long long t = 0; t < terms; ++t) {
        Word w;
        const long long len = pick(rng, 0, 3);
        for (long long j = 0; j < len; ++j) w.push_back(random_generator(rng));
        e += Expr::from_word(w, random_scalar(rng));
    }
    return e;
}

// Shorthand for smeared RPQWN generators in oracle tests.
inline Generator gen(long long n, long long k, const std::string& fn = "chi_I") {
    return Generator(FamilyTag::RPQWN, n, k,
                     fn.empty() ? TestFn::unit() : TestFn::symbol(fn));
}

inline Generator bhat(long long n, long long k, const std::string& fn = "") {
    return Generator(FamilyTag::WINF, n, k,
                     fn.empty() ? TestFn::unit() : TestFn::symbol(fn));
}

} // namespace rpqwn::testing
