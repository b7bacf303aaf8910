#include "rpqwn/testfn.hpp"

#include "rpqwn/errors.hpp"

namespace rpqwn {

namespace {

bool is_indicator(const std::string& name) { return name.rfind("chi", 0) == 0; }

} // namespace

bool symbol_vanishes_at_zero(const std::string& name) {
    return name == "f" || name == "g" || name == "f_bar" || name == "g_bar";
}

TestFn TestFn::symbol(const std::string& name) {
    if (name.empty()) throw DomainError("test-function symbol with an empty name");
    TestFn fn;
    fn.factors_.emplace(name, 1);
    return fn;
}

bool TestFn::vanishes_at_zero() const {
    for (const auto& [name, pow] : factors_)
        if (symbol_vanishes_at_zero(name)) return true;
    return false;
}

TestFn TestFn::conj() const {
    TestFn out;
    for (const auto& [name, pow] : factors_) {
        std::string partner;
        if (is_indicator(name) || name == "phi" || name == kDeltaFactor)
            partner = name; // real symbols
        else if (name.size() > 4 && name.compare(name.size() - 4, 4, "_bar") == 0)
            partner = name.substr(0, name.size() - 4);
        else
            partner = name + "_bar";
        out.factors_[partner] += pow;
    }
    return out;
}

std::string TestFn::render() const {
    std::string out;
    for (const auto& [name, pow] : factors_) {
        if (!out.empty()) out += "*";
        out += pow == 1 ? name : name + "^" + std::to_string(pow);
    }
    return out;
}

std::pair<TestFn, Scalar> make_testfn(const std::map<std::string, long long>& raw) {
    TestFn fn;
    Scalar shed(1);
    for (const auto& [name, pow] : raw) {
        if (pow < 0) throw DomainError("test-function factor " + name + " with a negative power");
        if (pow == 0) continue;
        if (is_indicator(name)) {
            fn.factors_.emplace(name, 1);
        } else if (name == kDeltaFactor) {
            fn.factors_.emplace(name, 1);
            if (pow > 1) shed *= Scalar::atom(kDelta0Atom, pow - 1);
        } else {
            fn.factors_.emplace(name, pow);
        }
    }
    return {fn, shed};
}

std::pair<TestFn, Scalar> testfn_mul(const TestFn& a, const TestFn& b) {
    std::map<std::string, long long> raw = a.factors();
    for (const auto& [name, pow] : b.factors()) raw[name] += pow;
    return make_testfn(raw);
}

} // namespace rpqwn
