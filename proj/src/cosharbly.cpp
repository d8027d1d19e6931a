#include "shc/cosharbly.hpp"

#include "shc/voronoi.hpp"

#include <stdexcept>

namespace shc::cosharbly {

using exactq::Matrix;
using exactq::operator-;

OrientedSectionSimplex OrientedSectionSimplex::of(const std::vector<IntVector>& vectors)
{
    if (vectors.empty()) throw std::invalid_argument("empty simplex");
    OrientedSectionSimplex s;
    s.n = vectors.front().size();
    for (const auto& v : vectors) s.points.push_back(voronoi::normalize_to_section(voronoi::rank1(v), s.n));
    return s;
}

bool OrientedSectionSimplex::proper() const
{
    return !points.empty() && exactq::affine_dim(points) + 1 == points.size();
}

int epsilon(const OrientedSectionSimplex& simplex)
{
    const std::size_t d = voronoi::sym_dim(simplex.n);
    if (simplex.points.size() != d) throw std::invalid_argument("epsilon needs dim Y points");
    for (const auto& p : simplex.points)
        if (p.size() != d || voronoi::trace(p, simplex.n) != 1)
            throw std::invalid_argument("point is not on the section");
    return sgn(exactq::det(Matrix::from_rows(simplex.points)));
}

bool is_flipon(const BasicSharbly& b)
{
    const auto s = OrientedSectionSimplex::of(b.vectors);
    return exactq::affine_dim(s.points) + 2 <= s.points.size();
}

PositivityCertificate mu_sign_certificate(const sharbly::SharblyChain& z)
{
    PositivityCertificate cert;
    bool any_proper = false;
    bool all_positive = true;
    for (const auto& [basic, coeff] : z.terms()) {
        TermVerdict v{basic, coeff, epsilon(OrientedSectionSimplex::of(basic.vectors)), Verdict::flipon};
        if (v.epsilon != 0) {
            any_proper = true;
            v.verdict = v.epsilon * sgn(coeff) > 0 ? Verdict::proper_positive : Verdict::proper_negative;
            if (v.verdict == Verdict::proper_negative) all_positive = false;
        }
        cert.terms.push_back(std::move(v));
    }
    cert.valid = any_proper && all_positive;
    return cert;
}

PositivityCertificate mu_sign_certificate(const cycle::CycleChain& z)
{
    return mu_sign_certificate(z.chain());
}

bool check_positivity_certificate(const PositivityCertificate& cert)
{
    sharbly::SharblyChain chain;
    if (!cert.terms.empty()) {
        const auto& first = cert.terms.front().term;
        chain = sharbly::SharblyChain(first.n, first.degree());
    }
    for (const auto& t : cert.terms) {
        const auto c = sharbly::canonicalize(t.term.n, t.term.vectors);
        if (!c || c->basic != t.term || c->sign != 1) return false;
        chain.add(t.term, t.coefficient);
    }
    if (chain.size() != cert.terms.size()) return false;
    const auto fresh = mu_sign_certificate(chain);
    if (fresh.valid != cert.valid) return false;
    for (std::size_t i = 0; i < cert.terms.size(); ++i) {
        const auto& a = fresh.terms[i];
        const auto& b = cert.terms[i];
        if (a.term != b.term || a.coefficient != b.coefficient || a.epsilon != b.epsilon || a.verdict != b.verdict)
            return false;
    }
    return true;
}

Rational euclidean_volume_section(const OrientedSectionSimplex& simplex)
{
    const auto& p = simplex.points;
    if (p.empty()) throw std::domain_error("empty simplex");
    const std::size_t k = p.size() - 1;
    std::vector<exactq::Vector> disp;
    for (std::size_t i = 1; i < p.size(); ++i) disp.push_back(p[i] - p[0]);
    Matrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = exactq::dot(disp[i], disp[j]);
    const Rational g = k == 0 ? Rational(1) : exactq::det(gram);
    if (sgn(g) == 0) throw std::domain_error("degenerate simplex");
    Rational fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<long>(i);
    return g / (fact * fact);
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::flipon: return "flipon";
    case Verdict::proper_positive: return "proper-positive";
    case Verdict::proper_negative: return "proper-negative";
    }
    return "?";
}

}  // namespace shc::cosharbly
