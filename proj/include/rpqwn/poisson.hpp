#pragma once

#include "rpqwn/scalar.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace rpqwn {

// Monomial key e^(i*freq*x) x^x_pow y^y_pow.
struct PBKey {
    long long freq = 0;
    long long x_pow = 0;
    long long y_pow = 0;

    bool operator==(const PBKey& o) const;
    bool operator<(const PBKey& o) const;
};

// Finite sum of monomials coeff * e^(i*freq*x) x^a y^b, closed under the
// partial derivatives and products; equal keys merge canonically.
class PBFunction {
  public:
    PBFunction() = default; // zero
    static PBFunction zero() { return {}; }
    static PBFunction one();
    static PBFunction monomial(long long freq, long long x_pow, long long y_pow,
                               const Scalar& coeff = Scalar(1));

    bool is_zero() const { return terms_.empty(); }
    const std::map<PBKey, Scalar>& terms() const { return terms_; }

    PBFunction dx() const;
    PBFunction dy() const;

    PBFunction operator+(const PBFunction& o) const;
    PBFunction operator-(const PBFunction& o) const;
    PBFunction operator*(const PBFunction& o) const;
    PBFunction scale(const Scalar& s) const;

    PBFunction conj() const; // x, y real; e^(i freq x) flips frequency

    bool operator==(const PBFunction& o) const { return terms_ == o.terms_; }
    bool operator!=(const PBFunction& o) const { return !(*this == o); }

    std::string render() const;

  private:
    void add_term(const PBKey& key, const Scalar& coeff);
    std::map<PBKey, Scalar> terms_;
};

// {F,G} = Fx Gy - Fy Gx.
PBFunction poisson_bracket(const PBFunction& f, const PBFunction& g);

enum class PBFamily { F, G };

// F: e^(ikx) y^(n-1), needs n >= 1. G: ((x+iy)/sqrt2)^n ((x-iy)/sqrt2)^k
// expanded into the monomial basis, needs n, k >= 0.
PBFunction make_family(PBFamily which, long long n, long long k);

struct PoissonBoxReport {
    PBFamily family = PBFamily::F;
    std::size_t pairs_checked = 0;
    bool closed_form_ok = false;       // bracket equals the index-rule right side
    bool conjugation_ok = false;       // conj maps members and brackets coherently
    bool quantization_ok = false;      // /i structure constants match the Lie bracket
    std::vector<std::string> violations;

    bool pass() const { return closed_form_ok && conjugation_ok && quantization_ok; }
};

// F box: n, N in [2, n_max], k, K in [-k_max, k_max].
PoissonBoxReport verify_realizations_f(long long n_max, long long k_max);
// G box: all four indices in [0, idx_max].
PoissonBoxReport verify_realizations_g(long long idx_max);

} // namespace rpqwn
