#pragma once

// Basic sharblies [v_1, ..., v_{n+k}] modulo permutation sign, scaling and
// non-spanning lists, their boundary, and reduction to SL_n(Z)-coinvariants.

#include "shc/budget.hpp"
#include "shc/exactq.hpp"
#include "shc/voronoi.hpp"

#include <compare>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace shc::sharbly {

using exactq::IntVector;
using exactq::Rational;
using exactq::Vector;
using voronoi::GroupElement;

/// Canonical form: primitive vectors with positive leading entry, in
/// decreasing lexicographic order (so e_1 comes before e_2), pairwise
/// distinct and spanning Q^n.
struct BasicSharbly {
    std::size_t n = 0;
    std::vector<IntVector> vectors;

    std::size_t degree() const { return vectors.size() - n; }
    friend bool operator==(const BasicSharbly&, const BasicSharbly&) = default;
    friend auto operator<=>(const BasicSharbly&, const BasicSharbly&) = default;
};

struct Signed {
    int sign = 1;
    BasicSharbly basic;
};

/// nullopt is the zero element (non-spanning or a repeated line).
std::optional<Signed> canonicalize(std::size_t n, const std::vector<IntVector>& vectors);
std::optional<Signed> canonicalize(std::size_t n, const std::vector<Vector>& vectors);

class SharblyChain {
public:
    SharblyChain() = default;
    SharblyChain(std::size_t n, std::size_t degree) : n_(n), degree_(degree) {}

    std::size_t n() const { return n_; }
    std::size_t degree() const { return degree_; }

    /// Adds coeff * [vectors] after canonicalizing.
    void add(const std::vector<IntVector>& vectors, const Rational& coeff);
    void add(const BasicSharbly& basic, const Rational& coeff);
    void add(const SharblyChain& other, const Rational& scale = 1);

    const std::map<BasicSharbly, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    SharblyChain acted_on_by(const GroupElement& g) const;

    friend SharblyChain operator+(const SharblyChain& a, const SharblyChain& b);
    friend SharblyChain operator-(const SharblyChain& a, const SharblyChain& b);
    friend bool operator==(const SharblyChain&, const SharblyChain&) = default;

private:
    std::size_t n_ = 0;
    std::size_t degree_ = 0;
    std::map<BasicSharbly, Rational> terms_;
};

/// Alternating face sum with sign (-1)^(i+1); throws for degree 0.
SharblyChain boundary(const SharblyChain& chain);
SharblyChain boundary(const BasicSharbly& basic);

/// g.a as a signed canonical basic.
Signed act(const GroupElement& g, const BasicSharbly& a);

struct Equivalence {
    GroupElement g;
    int sign = 1;  // g.a = sign * b
};

/// Calls visit(g, sign) for each g in SL_n(Z) with g.a = sign * b until it
/// returns true. Lines are matched by pruned backtracking on |det| profiles.
void for_each_equivalence(const BasicSharbly& a, const BasicSharbly& b, const Budget& budget,
                          const std::function<bool(const GroupElement&, int)>& visit);

/// Some g in SL_n(Z) with g.a = +-b, if one exists.
std::optional<Equivalence> equivalent(const BasicSharbly& a, const BasicSharbly& b, const Budget& budget = {});
/// Some g with g.a = -a, if one exists.
std::optional<GroupElement> find_negator(const BasicSharbly& a, const Budget& budget = {});

struct OrbitClass {
    std::size_t id = 0;
    BasicSharbly representative;
    bool is_zero = false;
    std::optional<GroupElement> negator;  // g.rep = -rep when is_zero
};

struct ClassLookup {
    std::size_t class_id = 0;
    int sign = 1;
    GroupElement witness;  // witness.a = sign * representative
};

/// Orbit representatives of basic sharblies, keyed by |det| profiles.
/// classify is an atomic get-or-insert and may be called concurrently.
class OrbitDictionary {
public:
    explicit OrbitDictionary(Budget budget = {}) : budget_(budget) {}

    ClassLookup classify(const BasicSharbly& a);
    OrbitClass at(std::size_t id) const;
    std::size_t size() const;

private:
    using Key = std::pair<std::size_t, std::vector<exactq::Integer>>;

    Budget budget_;
    mutable std::mutex mutex_;
    std::map<Key, std::vector<std::size_t>> by_key_;
    std::deque<OrbitClass> classes_;
};

/// Sorted |det| over all n-subsets; an SL_n(Z)-invariant of the basic.
std::vector<exactq::Integer> det_profile(const BasicSharbly& a);

struct CoinvariantChain {
    std::map<std::size_t, Rational> terms;  // class id -> coefficient
    bool empty() const { return terms.empty(); }
    friend bool operator==(const CoinvariantChain&, const CoinvariantChain&) = default;
};

CoinvariantChain project_coinvariants(const SharblyChain& chain, OrbitDictionary& dict);

/// A top-dimensional simplicial cone with rays v v^t, oriented compatibly
/// with Y times the datum.
struct OrientedCone {
    int sign = 1;                     // chain element = sign * [basic]
    BasicSharbly basic;
    std::vector<IntVector> ordered;   // lexicographic, last two swapped when needed
};

OrientedCone sharbly_of_cone(const std::vector<IntVector>& vectors, int orientation = 1);
/// Sign of det of the rays v v^t, in the given order, in the lexicographic Y basis.
int cone_orientation(const std::vector<IntVector>& vectors);

}  // namespace shc::sharbly
