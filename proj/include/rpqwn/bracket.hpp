#pragma once

#include "rpqwn/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rpqwn {

enum class BracketFamily {
    C_RENORM,      // delta^l = c^(l-1) delta
    PHI_RENORM,    // delta^l(t-s) = phi^(l-1)(s) delta(t-s)
    DELTA0_RENORM, // delta^l(t-s) = delta(s) delta(t-s)
    CANONICAL,     // restricted-kernel bracket (kN - Kn)
    WINF,          // Bhat bracket ((N-1)k - (n-1)K)
};

std::string family_name(BracketFamily f);
std::optional<BracketFamily> family_from_name(const std::string& name);
FamilyTag algebra_of(BracketFamily f);

// b_x(y,z) = eps(y) eps(z) C(y,x) z^(x) c^(x-1); the hat variant omits the
// c power. Refuses x < 1 (x = 0 would need 1/c).
Scalar b_coeff(long long x, long long y, long long z, bool hat = false);

// theta_L(N,K;n,k) = eps(K)eps(n) C(K,L) n^(L) - eps(k)eps(N) C(k,L) N^(L).
Int theta_coeff(long long N, long long K, long long n, long long k, long long L);

// Lie bracket of two generators; zero coefficients return the zero Expr
// before any result-index validation.
Expr bracket_generators(BracketFamily f, const Generator& a, const Generator& b);

// Bilinear extension; on words it expands by the derivation property.
Expr bracket_exprs(BracketFamily f, const Expr& a, const Expr& b);

// C_1 = [B^0_n, B^n_0] (both smeared with chi_I), C_j = [B^0_n, C_(j-1)].
Expr iterated_C(BracketFamily f, long long n, int depth);

// Closed-form coefficient of B^0_(2n) in C_3(n).
Scalar beta_coeff(long long n);

// The residual terms of C_3(n): lower index >= 2n, adjoints kill the vacuum.
Expr nsum_terms(long long n);

struct IndexBox {
    long long n_min = 0, n_max = 0;
    long long k_min = 0, k_max = 0;
};

struct JacobiViolation {
    Generator a, b, c;
    std::string residual;
};

struct JacobiReport {
    std::size_t triples_checked = 0;
    std::vector<JacobiViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Sums [a,[b,c]] + [c,[a,b]] + [b,[c,a]] over every ordered triple.
JacobiReport jacobi_check(BracketFamily f, const std::vector<Generator>& gens);
JacobiReport jacobi_check(BracketFamily f, const IndexBox& box);

// Generators with unit test functions over the box (WINF skips upper < 2).
std::vector<Generator> box_generators(BracketFamily f, const IndexBox& box);

} // namespace rpqwn
