#pragma once

// Perfect quadratic forms and their Voronoi tiles. Symmetric n x n matrices
// are vectorized by their upper triangle in lexicographic order
// (y11, y12, ..., y1n, y22, ..., ynn); that ordered basis orients Y.

#include "shc/exactq.hpp"
#include "shc/polytope.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace shc::voronoi {

using exactq::IntVector;
using exactq::Matrix;
using exactq::Rational;
using exactq::Vector;
using exactq::operator*;
using exactq::operator+;
using exactq::operator-;
using polytope::Label;

/// n(n+1)/2
std::size_t sym_dim(std::size_t n);
/// Inverse of sym_dim; throws when d is not triangular.
std::size_t rank_of_sym_dim(std::size_t d);

/// v v^t, vectorized.
Vector rank1(const IntVector& v);
/// Positive rescaling onto the section trace(y) = 1.
Vector normalize_to_section(const Vector& y, std::size_t n);
Rational trace(const Vector& y, std::size_t n);

class NotPositiveDefinite : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MinimalVectors {
    Rational min_value;
    /// One per +- pair, first nonzero entry positive, sorted.
    std::vector<IntVector> vectors;
};

MinimalVectors minimal_vectors(const Matrix& gram);
Rational evaluate(const Matrix& gram, const IntVector& v);

struct PerfectForm {
    std::string name;
    std::size_t n = 0;
    Matrix gram;
    Rational min_value;
    /// In the order given to form_from_minvecs (labels of the tile vertices).
    std::vector<IntVector> minimal_vectors;
};

/// Solves Q(v) = 2 on every vector and checks that the result is positive
/// definite with exactly these minimal vectors. Signs and order are kept.
PerfectForm form_from_minvecs(std::vector<IntVector> vectors, std::string name = {});

struct Tile {
    PerfectForm form;
    std::vector<Vector> rays;            // v' per minimal vector
    std::vector<Vector> section_points;  // v'' = v' / trace v'
    int orientation = 1;                 // relative to the lexicographic basis of Y

    std::size_t size() const { return rays.size(); }
    /// Section points in exact coordinates of their (d-1)-dimensional span.
    polytope::PointConfiguration section_configuration() const;
};

Tile tile_of(const PerfectForm& form);
/// Vertex-label sets of the facets, sorted.
std::vector<std::vector<Label>> tile_facets(const Tile& tile);

struct Face {
    std::vector<Label> vertices;
    std::size_t dim = 0;  // dimension of the section face
};

struct FaceLattice {
    std::size_t vertex_count = 0;
    std::size_t top_dim = 0;
    /// Nonempty faces ordered by dimension, then vertex list.
    std::vector<Face> faces;

    bool contains(std::size_t outer, std::size_t inner) const;
    std::vector<std::size_t> of_dimension(std::size_t dim) const;
    std::size_t index_of(const std::vector<Label>& vertices) const;
};

FaceLattice face_lattice(const Tile& tile);
/// Smallest face containing every label of S; throws when S is not inside the tile.
const Face& minimal_face(const FaceLattice& lattice, std::span<const Label> s);

/// Element of SL_n(Z), acting on Q^n by v -> g v and on Y by y -> g y g^t.
class GroupElement {
public:
    GroupElement() = default;
    /// Row-major entries; throws unless the determinant is 1.
    GroupElement(std::size_t n, std::vector<std::int64_t> entries);
    static GroupElement identity(std::size_t n);
    /// Throws unless m is integral with determinant 1.
    static GroupElement from_matrix(const Matrix& m);

    std::size_t n() const { return n_; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
    const std::vector<std::int64_t>& entries() const { return entries_; }

    IntVector apply(const IntVector& v) const;
    Vector apply_sym(const Vector& y) const;
    GroupElement operator*(const GroupElement& other) const;
    GroupElement inverse() const;
    Matrix matrix() const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

private:
    struct Unchecked {};
    GroupElement(std::size_t n, std::vector<std::int64_t> entries, Unchecked) : n_(n), entries_(std::move(entries)) {}

    std::size_t n_ = 0;
    std::vector<std::int64_t> entries_;
};

/// All g in SL_n(Z) with g.tile = tile, sorted.
std::vector<GroupElement> stabilizer(const Tile& tile);
/// Automorphisms of the form in SL_n(Z) (same set as the tile stabilizer).
std::vector<GroupElement> form_automorphisms(const Matrix& gram, const std::vector<IntVector>& minimal_vectors);

/// Position of the line through v among the vectors (by +-v), or npos.
std::size_t find_line(const std::vector<IntVector>& vectors, const IntVector& v, int* sign = nullptr);
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct DatasetForm {
    std::string name;
    std::size_t n = 0;
    /// Columns of the printed matrix, labelled 0.. in order.
    std::vector<IntVector> vectors;
};

/// The forms printed for rank n in {2,3,4,5}; throws otherwise.
std::vector<DatasetForm> builtin_dataset(std::size_t n);
DatasetForm find_dataset_form(const std::string& name);
/// The printed 16-cone subdivision of the D4 tile, in D4 column labels.
const std::vector<polytope::Simplex>& d4_subdivision();

/// e_1..e_n followed by e_i - e_j for i < j in lexicographic order.
std::vector<IntVector> an_vectors(std::size_t n);

/// The non-simplicial facet F of the D5 tile and its flip data.
struct D5FacetData {
    std::vector<Label> facet;                  // tile labels of F's 16 vertices
    std::vector<polytope::Simplex> first;      // tile labels
    std::vector<polytope::Simplex> second;     // tile labels
    std::vector<Label> circuit;                // F-local labels
    std::vector<polytope::Simplex> t_plus;     // F-local labels
    std::vector<polytope::Simplex> t_minus;    // F-local labels
};
const D5FacetData& d5_facet_data();

}  // namespace shc::voronoi
