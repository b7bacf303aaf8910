#include "rpqwn/generator.hpp"

#include "rpqwn/errors.hpp"

#include <algorithm>
#include <tuple>

namespace rpqwn {

Generator::Generator(FamilyTag family, long long upper, long long lower, TestFn testfn)
    : family_(family), upper_(upper), lower_(lower), testfn_(std::move(testfn)) {
    if (family_ == FamilyTag::RPQWN) {
        if (upper_ < 0 || lower_ < 0)
            throw DomainError("B[" + std::to_string(upper_) + "," + std::to_string(lower_) +
                              "] needs nonnegative indices");
    } else {
        if (upper_ < 2)
            throw DomainError("Bh[" + std::to_string(upper_) + "," + std::to_string(lower_) +
                              "] needs an upper index >= 2");
    }
}

Generator Generator::involution() const {
    if (family_ == FamilyTag::RPQWN)
        return Generator(family_, lower_, upper_, testfn_.conj());
    return Generator(family_, upper_, -lower_, testfn_.conj());
}

bool Generator::operator==(const Generator& o) const {
    return family_ == o.family_ && upper_ == o.upper_ && lower_ == o.lower_ &&
           testfn_ == o.testfn_;
}

bool Generator::operator<(const Generator& o) const {
    return std::tie(family_, upper_, lower_, testfn_) <
           std::tie(o.family_, o.upper_, o.lower_, o.testfn_);
}

std::string Generator::render() const {
    std::string out = family_ == FamilyTag::RPQWN ? "B[" : "Bh[";
    out += std::to_string(upper_) + "," + std::to_string(lower_) + "]";
    if (!testfn_.is_unit()) out += "(" + testfn_.render() + ")";
    return out;
}

Word involution_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->involution());
    return out;
}

std::string render_word(const Word& w) {
    std::string out;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j) out += " ";
        out += w[j].render();
    }
    return out;
}

} // namespace rpqwn
