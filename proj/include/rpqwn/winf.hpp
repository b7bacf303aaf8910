#pragma once

#include "rpqwn/bracket.hpp"
#include "rpqwn/expr.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rpqwn {

// One term of the two-branch commutator expansion of white-noise operators
// e^{(k/2)(b-b*)} ((b+b*)/2)^(n-1) e^{(k/2)(b-b*)}: purely combinatorial
// bookkeeping, no operator reduction.
struct ExpansionTerm {
    enum class Branch { DIRECT, REVERSED };

    Branch branch = Branch::DIRECT;
    long long m1 = 0; // first summation index (m3 on the reversed branch)
    long long m2 = 0; // second summation index (m4 on the reversed branch)
    int sign = 1;     // the (-1)-power factor
    Scalar kK_factor; // bound powers of the exponents k, K
    long long delta_power = 0;
    Scalar prefactor; // binomials over the shared 2^(n+N-2)
};

struct ComwExpansion {
    long long n = 0, k = 0, N = 0, K = 0;
    std::vector<ExpansionTerm> terms;
};

struct RenormPolicy {
    bool testfns_vanish_at_zero = false; // reduction requires true
};

// All (m1,m2) direct-branch and (m3,m4) reversed-branch terms with exact
// prefactors. Requires n, N >= 2.
ComwExpansion comw_expand(long long n, long long k, long long N, long long K);

// Applies the three reduction rules (delta-power 0 pairs cancel, delta-power 1
// collapses to the diagonal, delta-power >= 2 vanishes against test functions
// with value 0 at zero) and returns the reduced commutator
// (k(N-1) - K(n-1)) * Bh[n+N-2, k+K](left*right). Refuses policies or test
// functions that would retain singular terms.
Expr comw_reduce(const ComwExpansion& expansion, const RenormPolicy& policy,
                 const TestFn& left_fn, const TestFn& right_fn);

struct WinfBoxReport {
    long long n_max = 0, k_max = 0;
    std::size_t tuples_checked = 0;
    bool dual_path_ok = false;   // reduced expansion equals the Lie bracket
    bool virasoro_ok = false;    // n = N = 2 sub-box reproduces (k - K)
    bool involution_ok = false;  // ([X,Y])* = [Y*,X*] on every tuple
    std::vector<std::string> violations;

    bool pass() const { return dual_path_ok && virasoro_ok && involution_ok; }
};

// Sweeps n, N in [2, n_max], k, K in [-k_max, k_max].
WinfBoxReport verify_winf_box(long long n_max, long long k_max);

} // namespace rpqwn
