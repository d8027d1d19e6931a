#pragma once

// Orientation signs and degeneracy of section simplices: the structure that
// decides the sign of the cocycle on a chain without evaluating any volume.

#include "shc/cycle.hpp"
#include "shc/exactq.hpp"
#include "shc/sharbly.hpp"

#include <vector>

namespace shc::cosharbly {

using exactq::IntVector;
using exactq::Rational;
using exactq::Vector;
using sharbly::BasicSharbly;

/// Ordered points v'' = v v^t / |v|^2 in the trace-one section of Y.
struct OrientedSectionSimplex {
    std::size_t n = 0;
    std::vector<Vector> points;

    static OrientedSectionSimplex of(const std::vector<IntVector>& vectors);
    bool proper() const;
};

/// Sign of the simplex relative to the lexicographic orientation of Y with the
/// radial direction first; 0 when degenerate. Requires d = dim Y points on
/// the section.
int epsilon(const OrientedSectionSimplex& simplex);

/// True when the section points of the d vectors span at most d - 2 affine
/// dimensions.
bool is_flipon(const BasicSharbly& b);

enum class Verdict { flipon, proper_positive, proper_negative };

struct TermVerdict {
    BasicSharbly term;
    Rational coefficient;
    int epsilon = 0;
    Verdict verdict = Verdict::flipon;
};

struct PositivityCertificate {
    std::vector<TermVerdict> terms;
    bool valid = false;  // some proper term, and every proper term positive
};

PositivityCertificate mu_sign_certificate(const sharbly::SharblyChain& z);
PositivityCertificate mu_sign_certificate(const cycle::CycleChain& z);
/// Recomputes every verdict from the listed terms.
bool check_positivity_certificate(const PositivityCertificate& cert);

/// Squared Euclidean volume of the simplex in the coordinates of its points.
/// Throws std::domain_error for a degenerate simplex.
Rational euclidean_volume_section(const OrientedSectionSimplex& simplex);

const char* to_string(Verdict v);

}  // namespace shc::cosharbly
