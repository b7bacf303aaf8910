#pragma once

#include "rpqwn/testfn.hpp"

#include <string>
#include <vector>

namespace rpqwn {

enum class FamilyTag {
    RPQWN, // B^n_k(f), n >= 0, k >= 0
    WINF,  // Bhat^n_k(f), n >= 2, k any integer
};

// One smeared operator symbol. Immutable after construction; the
// constructor enforces the family's index domain.
class Generator {
  public:
    Generator(FamilyTag family, long long upper, long long lower, TestFn testfn = TestFn());

    FamilyTag family() const { return family_; }
    long long upper() const { return upper_; }
    long long lower() const { return lower_; }
    const TestFn& testfn() const { return testfn_; }

    // RPQWN: swaps indices; WINF: negates the lower index. Conjugates the
    // test function either way.
    Generator involution() const;

    bool operator==(const Generator& o) const;
    bool operator<(const Generator& o) const; // (family, upper, lower, testfn)

    std::string render() const; // "B[n,k](fn)" / "Bh[n,k](fn)"

  private:
    FamilyTag family_;
    long long upper_;
    long long lower_;
    TestFn testfn_;
};

// Operator word; the empty word denotes the identity.
using Word = std::vector<Generator>;

Word involution_word(const Word& w); // reverse and involute each generator

std::string render_word(const Word& w);

} // namespace rpqwn
