#pragma once

// The candidate cycle z_G for n = 2, 3, 4 as a stabilizer-weighted sum of
// oriented tile simplices, the certificate that its boundary vanishes in
// coinvariants, and the flipon constructions used when facets are not
// simplicial.

#include "shc/budget.hpp"
#include "shc/polytope.hpp"
#include "shc/sharbly.hpp"
#include "shc/voronoi.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shc::cycle {

using exactq::IntVector;
using exactq::Rational;
using polytope::Label;
using polytope::Simplex;
using polytope::Triangulation;
using sharbly::BasicSharbly;
using sharbly::SharblyChain;
using voronoi::GroupElement;

struct CycleTerm {
    std::string tile;
    Simplex simplex;                  // tile labels
    GroupElement transform;           // identity unless the chain was symmetrized
    Rational weight;                  // 1 / |Stab(tile)|, or its square when symmetrized
    std::vector<IntVector> vectors;   // positively oriented in Y
};

/// z = sum of weight * [vectors] over the terms.
struct CycleChain {
    std::size_t n = 0;
    std::vector<CycleTerm> terms;

    SharblyChain chain() const;
};

struct BuildOptions {
    /// Replaces the printed 16-simplex subdivision of the D4 tile (tile labels).
    std::optional<Triangulation> d4_triangulation;
    /// Averages each tile triangulation over the tile stabilizer.
    bool symmetrize = false;
};

/// Throws std::invalid_argument unless n is 2, 3 or 4.
CycleChain build_zG(std::size_t n, const BuildOptions& options = {});

/// Boundary faces whose contributions cancel before any group action.
struct InteriorCancellation {
    BasicSharbly face;
    std::vector<std::size_t> sources;  // indices into CycleChain::terms
};

/// witness . term = sign * representative of the class.
struct LedgerEntry {
    BasicSharbly term;
    Rational coefficient;
    std::size_t class_id = 0;
    GroupElement witness;
    int sign = 1;
    std::optional<GroupElement> negator;  // negator . term = -term, for zero classes
};

struct ClassSummary {
    std::size_t id = 0;
    BasicSharbly representative;
    bool is_zero = false;
    std::optional<GroupElement> negator;  // negator . rep = -rep
    Rational total;                       // sum of sign * coefficient over the entries
};

struct BoundaryCertificate {
    std::string input_hash;
    std::vector<InteriorCancellation> interior;
    std::vector<LedgerEntry> entries;
    std::vector<ClassSummary> classes;
    std::map<std::size_t, Rational> residual;  // nonzero totals of classes that are not zero

    bool valid() const { return residual.empty(); }
};

BoundaryCertificate verify_boundary_zero(const CycleChain& z, const Budget& budget = {});

struct CheckResult {
    bool ok = false;
    std::string reason;
};

/// Re-derives the boundary of z and checks every ledger claim by direct
/// arithmetic. ok means the certificate is consistent and valid.
CheckResult check_boundary_certificate(const CycleChain& z, const BoundaryCertificate& cert);

/// Facet (tile labels) -> boundary of the triangulation on that facet, in
/// tile labels, oriented compatibly with Y. Throws std::invalid_argument if the
/// triangulation is not valid.
std::map<std::vector<Label>, polytope::OrientedSum> phi_by_facet(const voronoi::Tile& tile,
                                                                 const Triangulation& triangulation);

struct FacetMatch {
    std::size_t tile = 0;
    std::vector<Label> facet;
    std::optional<std::size_t> partner;     // index into the representatives
    std::vector<Label> partner_facet;
    std::optional<GroupElement> g;          // tile and g.partner meet in the facet
};

/// One entry per facet of every representative; unmatched facets have no g.
std::vector<FacetMatch> match_facets(const std::vector<voronoi::Tile>& representatives, const Budget& budget = {});

struct FliponTerm {
    std::vector<Label> labels;        // circuit labels, then the link
    std::vector<IntVector> vectors;   // empty for configurations without vectors
    int coefficient = 1;
};

/// The flipon of one flip: sum over links L of e_L [z_1, ..., z_p, L].
struct Flipon {
    std::vector<Label> facet;         // tile labels; empty for bare configurations
    std::size_t step = 0;             // position along the flip path
    std::vector<Label> circuit;
    std::size_t circuit_size = 0;
    std::vector<FliponTerm> terms;
    bool identity_holds = false;
};

/// Flipons along a flip path from a to b. vectors, when nonempty, are the
/// primitive vectors of the labels.
std::vector<Flipon> flipons_for_configuration(const polytope::PointConfiguration& config, const Triangulation& a,
                                              const Triangulation& b, const std::vector<IntVector>& vectors = {},
                                              const Budget& budget = {});
/// a and b triangulate the facet (tile labels).
std::vector<Flipon> flipons_for_facet(const voronoi::Tile& tile, const std::vector<Label>& facet,
                                      const Triangulation& a, const Triangulation& b, const Budget& budget = {});

struct SecondaryInput {
    std::vector<IntVector> vectors;   // circuit first
    std::size_t circuit_size = 0;
    Rational coefficient = 1;
};

/// Formal tuples of vectors, antisymmetric in the order.
using FormalChain = AntisymSum<IntVector>;

struct SecondaryFlipons {
    SharblyChain omega;
    SharblyChain psi;
    FormalChain formal_omega;
    FormalChain formal_psi;
    FormalChain x_i;     // faces of the omega summands dropping a circuit vector
    FormalChain x_ii;    // dropping a later non-circuit vector
    FormalChain x_iii;   // dropping an earlier non-circuit vector
};

/// Omega = sum_alpha sum_{j > p} (-1)^j [x, v_1, ..., ^v_j, ..., v_d] and the
/// matching Psi. Throws std::domain_error if a nonzero summand is not a flipon.
SecondaryFlipons secondary_flipons(std::size_t n, const std::vector<SecondaryInput>& terms, const IntVector& x);

struct AnRemark {
    std::size_t n = 0;
    std::size_t boundary_terms = 0;
    sharbly::CoinvariantChain classes;
    bool single_class = false;
    Rational coefficient;  // of the single class, 0 when empty
};

AnRemark verify_an_remark(std::size_t n, const Budget& budget = {});

}  // namespace shc::cycle
