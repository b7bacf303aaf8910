#pragma once

#include "rpqwn/scalar.hpp"

#include <map>
#include <string>
#include <utility>

namespace rpqwn {

// The delta(s) factor produced by the delta0 renormalization.
inline constexpr const char* kDeltaFactor = "delta_at_0";

// True for the canonical step-function symbols f, g and their conjugates.
bool symbol_vanishes_at_zero(const std::string& name);

// Formal product of test-function symbols with positive integer powers.
// Invariants: indicator symbols (chi-prefixed) carry power 1 (idempotent),
// the delta_at_0 factor carries power at most 1 (excess folds into delta(0)
// scalar atoms at construction time).
class TestFn {
  public:
    TestFn() = default; // the unit test function
    static TestFn unit() { return TestFn(); }
    static TestFn symbol(const std::string& name);

    bool is_unit() const { return factors_.empty(); }
    const std::map<std::string, long long>& factors() const { return factors_; }
    bool has_factor(const std::string& name) const { return factors_.count(name) != 0; }
    // True iff some factor vanishes at zero; then so does the product.
    bool vanishes_at_zero() const;

    TestFn conj() const;

    bool operator==(const TestFn& o) const { return factors_ == o.factors_; }
    bool operator!=(const TestFn& o) const { return !(*this == o); }
    bool operator<(const TestFn& o) const { return factors_ < o.factors_; }

    std::string render() const; // "" for the unit

    friend std::pair<TestFn, Scalar> make_testfn(const std::map<std::string, long long>& raw);

  private:
    std::map<std::string, long long> factors_;
};

// Normalizes raw factor powers into a TestFn and the scalar it sheds:
// chi-powers clamp to 1, delta_at_0^p becomes delta(0)^(p-1) * delta_at_0.
std::pair<TestFn, Scalar> make_testfn(const std::map<std::string, long long>& raw);

// Pointwise product: powers add, then normalize as above.
std::pair<TestFn, Scalar> testfn_mul(const TestFn& a, const TestFn& b);

} // namespace rpqwn
