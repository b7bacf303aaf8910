#include "rpqwn/scalar.hpp"

#include "rpqwn/errors.hpp"

#include <algorithm>
#include <iterator>
#include <tuple>
#include <utility>
#include <vector>

namespace rpqwn {

bool ScalarKey::operator==(const ScalarKey& o) const {
    return i_pow == o.i_pow && sqrt2_pow == o.sqrt2_pow && atoms == o.atoms;
}

bool ScalarKey::operator<(const ScalarKey& o) const {
    return std::tie(i_pow, sqrt2_pow, atoms) < std::tie(o.i_pow, o.sqrt2_pow, o.atoms);
}

Scalar::Scalar(long long v) : Scalar(Rational(v)) {}
Scalar::Scalar(const Int& v) : Scalar(Rational(v)) {}

Scalar::Scalar(const Rational& v) {
    if (v != 0) parts_.emplace(ScalarKey{}, v);
}

Scalar Scalar::atom(const std::string& name, long long exp) {
    if (name.empty()) throw DomainError("atom with an empty name");
    Scalar s;
    AtomExponents atoms;
    if (exp != 0) atoms.emplace(name, exp);
    s.parts_.emplace(ScalarKey{0, 0, std::move(atoms)}, Rational(1));
    return s;
}

Scalar Scalar::imaginary_unit() {
    Scalar s;
    s.parts_.emplace(ScalarKey{1, 0, {}}, Rational(1));
    return s;
}

Scalar Scalar::sqrt2(long long pow) { return monomial(Rational(1), 0, pow, {}); }

Scalar Scalar::monomial(const Rational& rat, long long i_pow, long long sqrt2_pow,
                        const AtomExponents& atoms) {
    Scalar s;
    ScalarKey key;
    key.i_pow = static_cast<int>(((i_pow % 4) + 4) % 4);
    key.sqrt2_pow = static_cast<int>(((sqrt2_pow % 2) + 2) % 2);
    key.atoms = atoms;
    Rational r = rat;
    if (key.i_pow >= 2) { // i^2 = -1
        r = -r;
        key.i_pow -= 2;
    }
    const long long folded = (sqrt2_pow - key.sqrt2_pow) / 2; // (sqrt2)^2 = 2
    r *= rational_pow(Rational(2), folded);
    s.insert_normalized(std::move(key), std::move(r));
    return s;
}

void Scalar::insert_normalized(ScalarKey key, Rational rat) {
    if (rat == 0) return;
    for (auto it = key.atoms.begin(); it != key.atoms.end();)
        it = it->second == 0 ? key.atoms.erase(it) : std::next(it);
    auto [pos, inserted] = parts_.emplace(std::move(key), rat);
    if (!inserted) {
        pos->second += rat;
        if (pos->second == 0) parts_.erase(pos);
    }
}

bool Scalar::is_one() const {
    return parts_.size() == 1 && parts_.begin()->first == ScalarKey{} &&
           parts_.begin()->second == 1;
}

std::optional<Rational> Scalar::as_rational() const {
    if (parts_.empty()) return Rational(0);
    if (parts_.size() == 1 && parts_.begin()->first == ScalarKey{})
        return parts_.begin()->second;
    return std::nullopt;
}

bool Scalar::contains_atom(const std::string& name) const {
    for (const auto& [key, rat] : parts_)
        if (key.atoms.count(name)) return true;
    return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar out = *this;
    out += o;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (const auto& [key, rat] : o.parts_) insert_normalized(key, rat);
    return *this;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar out;
    for (const auto& [key, rat] : parts_) out.parts_.emplace(key, -rat);
    return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar out;
    for (const auto& [ka, ra] : parts_) {
        for (const auto& [kb, rb] : o.parts_) {
            AtomExponents atoms = ka.atoms;
            for (const auto& [name, exp] : kb.atoms) atoms[name] += exp;
            ScalarKey key;
            Rational rat = ra * rb;
            key.i_pow = ka.i_pow + kb.i_pow;
            if (key.i_pow >= 2) { // i^2 = -1
                rat = -rat;
                key.i_pow -= 2;
            }
            key.sqrt2_pow = ka.sqrt2_pow + kb.sqrt2_pow;
            if (key.sqrt2_pow >= 2) { // (sqrt2)^2 = 2
                rat *= 2;
                key.sqrt2_pow -= 2;
            }
            key.atoms = std::move(atoms);
            out.insert_normalized(std::move(key), std::move(rat));
        }
    }
    return out;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
}

Scalar Scalar::pow(long long p) const {
    if (p < 0) throw DomainError("scalar power with a negative exponent");
    Scalar acc(1);
    for (long long j = 0; j < p; ++j) acc *= *this;
    return acc;
}

Scalar Scalar::conj() const {
    Scalar out;
    for (const auto& [key, rat] : parts_)
        out.parts_.emplace(key, key.i_pow == 1 ? -rat : rat);
    return out;
}

Scalar Scalar::substitute(const std::map<std::string, Rational>& bindings) const {
    if (bindings.count(kDelta0Atom))
        throw SingularAtomError("delta(0) is an inert atom and cannot be bound");
    Scalar out;
    for (const auto& [key, rat] : parts_) {
        ScalarKey nk{key.i_pow, key.sqrt2_pow, {}};
        Rational r = rat;
        for (const auto& [name, exp] : key.atoms) {
            const auto bound = bindings.find(name);
            if (bound == bindings.end()) {
                nk.atoms.emplace(name, exp);
                continue;
            }
            if (bound->second == 0 && exp < 0)
                throw DomainError("binding " + name + " = 0 under a negative exponent");
            r *= rational_pow(bound->second, exp);
        }
        out.insert_normalized(std::move(nk), std::move(r));
    }
    return out;
}

namespace {

long long total_degree(const ScalarKey& key) {
    long long deg = 0;
    for (const auto& [name, exp] : key.atoms) deg += exp;
    return deg;
}

std::string render_monomial(const Rational& rat, const ScalarKey& key) {
    std::vector<std::string> factors;
    const Rational mag = rat < 0 ? Rational(-rat) : rat;
    const bool bare = key.i_pow == 0 && key.sqrt2_pow == 0 && key.atoms.empty();
    if (mag != 1 || bare) factors.push_back(render_rational(mag));
    if (key.i_pow == 1) factors.push_back("i");
    if (key.sqrt2_pow == 1) factors.push_back("sqrt2");
    for (const auto& [name, exp] : key.atoms)
        factors.push_back(exp == 1 ? name : name + "^" + std::to_string(exp));
    std::string out;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        if (j) out += "*";
        out += factors[j];
    }
    return out;
}

} // namespace

std::string Scalar::render() const {
    if (parts_.empty()) return "0";
    // Deterministic display order: total atom degree descending, then key.
    std::vector<const std::pair<const ScalarKey, Rational>*> order;
    order.reserve(parts_.size());
    for (const auto& part : parts_) order.push_back(&part);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
        const long long da = total_degree(a->first), db = total_degree(b->first);
        if (da != db) return da > db;
        return a->first < b->first;
    });
    std::string out;
    bool first = true;
    for (const auto* part : order) {
        const bool neg = part->second < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += render_monomial(part->second, part->first);
    }
    return out;
}

} // namespace rpqwn
