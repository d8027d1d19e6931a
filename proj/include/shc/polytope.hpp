#pragma once

// Exact combinatorics of labeled point configurations: convex hulls, circuits,
// triangulations, regularity and bistellar flips.

#include "shc/antisym.hpp"
#include "shc/budget.hpp"
#include "shc/exactq.hpp"

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace shc::polytope {

using exactq::Rational;
using exactq::Vector;

using Label = std::size_t;
/// Sorted vertex labels.
using Simplex = std::vector<Label>;
using Triangulation = std::set<Simplex>;
using LiftingHeights = std::vector<Rational>;
using OrientedSum = AntisymSum<Label>;

class DegenerateConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonGenericHeights : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Points labeled 0..size()-1 in Q^ambient_dim.
struct PointConfiguration {
    std::size_t ambient_dim = 0;
    std::vector<Vector> points;

    static PointConfiguration from_points(std::vector<Vector> points);

    std::size_t size() const { return points.size(); }
    std::size_t affine_dimension() const;
    bool full_dimensional() const { return !points.empty() && affine_dimension() == ambient_dim; }
    /// Same labels, coordinates re-expressed in an exact affine basis of the span.
    PointConfiguration restricted_to_span() const;
    PointConfiguration subconfiguration(std::span<const Label> labels) const;
};

/// Minimal affine dependence. `dependence` is aligned with `labels`, primitive
/// integral, and positive on the smallest label unless the circuit was
/// re-oriented by a flip.
struct Circuit {
    std::vector<Label> labels;
    std::vector<Label> positive;
    std::vector<Label> negative;
    std::vector<Rational> dependence;

    Circuit reversed() const;
    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Replaces the joins of the positive-side triangulation of the circuit with
/// each link simplex by the joins of the negative side.
struct Flip {
    Circuit circuit;
    std::vector<Simplex> links;
    Triangulation removed;
    Triangulation inserted;

    Flip reversed() const;
};

struct HullFacet {
    std::vector<Label> vertices;
    /// (a0, a1, ..., aD) with a0 + a.x >= 0 on every point, = 0 on the facet.
    Vector functional;
};

struct PlacingResult {
    Triangulation triangulation;
    LiftingHeights witness;
};

/// Result of checking the flip identity one link at a time.
struct FlipIdentity {
    bool holds = false;
    std::vector<int> signs;  // e per link; 0 where neither sign works
    OrientedSum lhs;         // sum over links of e * sum_i (-1)^i (z..^z_i..z, link)
    OrientedSum rhs;         // oriented(removed) - oriented(inserted)
};

/// Facets of the cone generated by the given vectors (which must span).
/// Functionals satisfy a.g >= 0; vertices index the generators.
std::vector<HullFacet> cone_facets(std::span<const Vector> generators);

Circuit affine_dependence(const PointConfiguration& config, std::span<const Label> labels);
std::vector<HullFacet> convex_hull_facets(const PointConfiguration& config);

/// +1, -1 or 0: orientation of the ordered full-dimensional simplex.
int orientation(const PointConfiguration& config, std::span<const Label> tuple);
/// |det| of the homogenized simplex; D! times its Euclidean volume.
Rational normalized_volume(const PointConfiguration& config, const Simplex& simplex);
OrientedSum oriented_sum(const PointConfiguration& config, const Triangulation& triangulation);

PlacingResult placing_triangulation(const PointConfiguration& config, std::span<const Label> order);
PlacingResult placing_triangulation(const PointConfiguration& config);
Triangulation lift_triangulation(const PointConfiguration& config, const LiftingHeights& heights);
bool is_valid_triangulation(const PointConfiguration& config, const Triangulation& triangulation);
std::optional<LiftingHeights> is_regular(const PointConfiguration& config, const Triangulation& triangulation);
/// Checks a regularity witness directly: every interior wall folds upward and
/// every unused point is lifted strictly above.
bool check_regularity_witness(const PointConfiguration& config, const Triangulation& triangulation,
                              const LiftingHeights& heights);

/// (T+, T-) as simplices over the circuit labels.
std::pair<Triangulation, Triangulation> gkz_two_triangulations(const Circuit& circuit);
Triangulation apply_flip(const PointConfiguration& config, const Triangulation& triangulation, const Flip& flip);
std::vector<Flip> supported_flips(const PointConfiguration& config, const Triangulation& triangulation);
std::vector<Triangulation> enumerate_regular_triangulations(const PointConfiguration& config,
                                                            const Budget& budget = {});
std::vector<Flip> flip_path(const PointConfiguration& config, const Triangulation& from, const Triangulation& to,
                            const Budget& budget = {});
FlipIdentity verify_flip_identity(const PointConfiguration& config, const Flip& flip);

}  // namespace shc::polytope
