#pragma once

// Formal sums of ordered tuples modulo (a_{s(1)},...,a_{s(r)}) = sign(s) (a_1,...,a_r).
// Tuples with a repeated entry are zero. Used for oriented simplices over point
// labels and, with vector entries, as the carrier of sharbly chains.

#include "shc/exactq.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace shc {

/// Sorts in place by comp; returns the sign of the sorting permutation, or 0
/// when two entries are equivalent.
template <class T, class Compare = std::less<T>>
int sort_with_sign(std::vector<T>& tuple, Compare comp = {})
{
    int sign = 1;
    // insertion sort keeps the parity count trivial; tuples are short
    for (std::size_t i = 1; i < tuple.size(); ++i) {
        for (std::size_t j = i; j > 0 && comp(tuple[j], tuple[j - 1]); --j) {
            std::swap(tuple[j], tuple[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < tuple.size(); ++i)
        if (!comp(tuple[i - 1], tuple[i])) return 0;
    return sign;
}

template <class T>
class AntisymSum {
public:
    using Tuple = std::vector<T>;
    using Coeff = exactq::Rational;

    void add(Tuple tuple, const Coeff& coeff)
    {
        if (sgn(coeff) == 0) return;
        const int sign = sort_with_sign(tuple);
        if (sign == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(tuple), 0);
        it->second += sign * coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    }

    void add(const AntisymSum& other, const Coeff& scale = 1)
    {
        for (const auto& [tuple, c] : other.terms_) add(tuple, scale * c);
    }

    const std::map<Tuple, Coeff>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    AntisymSum scaled(const Coeff& s) const
    {
        AntisymSum out;
        out.add(*this, s);
        return out;
    }

    friend AntisymSum operator+(const AntisymSum& a, const AntisymSum& b)
    {
        AntisymSum out = a;
        out.add(b);
        return out;
    }
    friend AntisymSum operator-(const AntisymSum& a, const AntisymSum& b)
    {
        AntisymSum out = a;
        out.add(b, -1);
        return out;
    }
    friend bool operator==(const AntisymSum&, const AntisymSum&) = default;

private:
    std::map<Tuple, Coeff> terms_;
};

/// Sum over i of sign_of(i) * (a_1, ..., a_i omitted, ..., a_r) with i 1-based;
/// first_sign is the sign attached to i = 1 (the sharbly boundary uses +1, the
/// circuit identities use -1).
template <class T>
AntisymSum<T> alternating_faces(const std::vector<T>& tuple, const exactq::Rational& coeff, int first_sign)
{
    AntisymSum<T> out;
    int sign = first_sign;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        std::vector<T> face;
        face.reserve(tuple.size() - 1);
        for (std::size_t j = 0; j < tuple.size(); ++j)
            if (j != i) face.push_back(tuple[j]);
        out.add(std::move(face), sign * coeff);
        sign = -sign;
    }
    return out;
}

template <class T>
AntisymSum<T> boundary(const AntisymSum<T>& sum, int first_sign = 1)
{
    AntisymSum<T> out;
    for (const auto& [tuple, c] : sum.terms()) out.add(alternating_faces(tuple, c, first_sign));
    return out;
}

}  // namespace shc
