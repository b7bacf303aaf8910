#pragma once

#include "rpqwn/bracket.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace rpqwn {

struct VacuumResult {
    Scalar value;
    bool singular = false; // delta(0) atom present
};

// <Phi, e Phi> by repeatedly exchanging annihilator-bearing generators to
// the right; B^0_0(t) factors read off as integral atoms (chi_I -> mu,
// phi^m chi_I -> I_m, general products -> a dedicated pairing atom).
// Requires an RPQWN renormalization family and RPQWN words.
VacuumResult vacuum_expectation(BracketFamily f, const Expr& e);

// Same value with the exchange position chosen pseudo-randomly; exists to
// demonstrate strategy independence.
VacuumResult vacuum_expectation_randomized(BracketFamily f, const Expr& e, std::uint64_t seed);

// Integral of a test-function product as a scalar: unit -> int_1, chi_I ->
// mu, phi^m chi_I -> I_m, delta_at_0 u -> u(0) (zero if u vanishes at 0),
// anything else -> an atom named after the factor list.
Scalar integral_atom(const TestFn& fn);

struct GramGate {
    Scalar a00, a01, a10, a11; // entries of the 2x2 Gram matrix
    Scalar d1, d2;             // leading principal minors
    std::optional<bool> psd;   // verdict when bindings cover c and mu
    std::optional<Rational> d1_value, d2_value;
};

// Gram matrix of {B^(2n)_0 Phi, (B^n_0)^2 Phi} under the c-renormalization,
// smeared with chi_I. PSD iff d1 >= 0 and d2 >= 0 at the binding.
GramGate gram_gate(long long n, const std::map<std::string, Rational>& bindings = {});

struct PhiConditions {
    Scalar a00, a01, a11;       // Gram entries, symbolic in the I_m atoms
    Rational i_2n1, i_2n2, i_2n3, i_n1; // bound moment values
    bool c1 = false;            // I_(2n-1) >= 0
    bool c2 = false;            // I_(2n-2)^2 = I_(2n-1) I_(2n-3)
    bool c3 = false;            // I_(2n-1) I_(n-1)^2 >= I_(2n-1) I_(2n-3)
};

// Moment conditions for the phi-renormalization, n >= 2 (n = 1 would need
// I_(-1) and is refused). all_ones binds every occurring I_m to 1.
PhiConditions phi_conditions(long long n, const std::map<std::string, Rational>& bindings,
                             bool all_ones = false);

} // namespace rpqwn
