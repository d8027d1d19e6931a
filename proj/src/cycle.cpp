#include "shc/cycle.hpp"

#include "shc/cosharbly.hpp"
#include "shc/io.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace shc::cycle {

using exactq::Matrix;
using exactq::operator*;
using exactq::Vector;
using polytope::OrientedSum;
using polytope::PointConfiguration;

namespace {

std::vector<IntVector> vectors_of(const std::vector<IntVector>& all, const std::vector<Label>& labels)
{
    std::vector<IntVector> out;
    out.reserve(labels.size());
    for (Label l : labels) out.push_back(all.at(l));
    return out;
}

Triangulation tile_triangulation(const voronoi::DatasetForm& form, const voronoi::Tile& tile,
                                 const BuildOptions& options)
{
    const std::size_t d = voronoi::sym_dim(form.n);
    if (tile.size() == d) {
        Simplex all(d);
        std::iota(all.begin(), all.end(), Label{0});
        return {all};
    }
    if (form.name == "D4") {
        if (options.d4_triangulation) return *options.d4_triangulation;
        const auto& printed = voronoi::d4_subdivision();
        return Triangulation(printed.begin(), printed.end());
    }
    throw std::logic_error("no triangulation chosen for tile " + form.name);
}

SharblyChain term_chain(std::size_t n, const std::vector<IntVector>& vectors, const Rational& coeff)
{
    SharblyChain c(n, vectors.size() - n);
    c.add(vectors, coeff);
    return c;
}

bool has_det_one(const GroupElement& g)
{
    return g.n() > 0 && exactq::det(g.matrix()) == 1;
}

bool acts_as(const GroupElement& g, const BasicSharbly& a, int sign, const BasicSharbly& b)
{
    if (!has_det_one(g) || g.n() != a.n) return false;
    const auto image = sharbly::act(g, a);
    return image.basic == b && image.sign == sign;
}

SharblyChain to_sharblies(std::size_t n, const OrientedSum& sum, const std::vector<IntVector>& vectors)
{
    if (sum.empty()) return {};
    SharblyChain out(n, sum.terms().begin()->first.size() - n);
    for (const auto& [tuple, c] : sum.terms()) out.add(vectors_of(vectors, tuple), c);
    return out;
}

void add_with_x(FormalChain& chain, const IntVector& x, const std::vector<IntVector>& rest, const Rational& c)
{
    std::vector<IntVector> tuple;
    tuple.reserve(rest.size() + 1);
    tuple.push_back(x);
    tuple.insert(tuple.end(), rest.begin(), rest.end());
    chain.add(std::move(tuple), c);
}

}  // namespace

SharblyChain CycleChain::chain() const
{
    if (terms.empty()) return SharblyChain(n, n == 0 ? 0 : voronoi::sym_dim(n) - n);
    SharblyChain out(n, terms.front().vectors.size() - n);
    for (const auto& t : terms) out.add(t.vectors, t.weight);
    return out;
}

CycleChain build_zG(std::size_t n, const BuildOptions& options)
{
    if (n < 2 || n > 4) throw std::invalid_argument("z_G is only assembled for n = 2, 3, 4");
    CycleChain z;
    z.n = n;
    for (const auto& entry : voronoi::builtin_dataset(n)) {
        const auto tile = voronoi::tile_of(voronoi::form_from_minvecs(entry.vectors, entry.name));
        const auto triangulation = tile_triangulation(entry, tile, options);
        if (!polytope::is_valid_triangulation(tile.section_configuration(), triangulation))
            throw std::invalid_argument("triangulation of " + entry.name + " is not valid");
        const auto stab = voronoi::stabilizer(tile);
        const Rational order = static_cast<long>(stab.size());
        const std::vector<GroupElement> moves =
            options.symmetrize ? stab : std::vector<GroupElement>{GroupElement::identity(n)};
        const Rational weight = options.symmetrize ? Rational(1 / (order * order)) : Rational(1 / order);
        for (const auto& h : moves) {
            for (const auto& s : triangulation) {
                std::vector<IntVector> vecs;
                for (Label l : s) vecs.push_back(h.apply(tile.form.minimal_vectors.at(l)));
                z.terms.push_back({entry.name, s, h, weight, sharbly::sharbly_of_cone(vecs).ordered});
            }
        }
    }
    return z;
}

BoundaryCertificate verify_boundary_zero(const CycleChain& z, const Budget& budget)
{
    BoundaryCertificate cert;
    cert.input_hash = io::digest(io::to_json(z));

    struct Contribution {
        Rational total;
        std::vector<std::size_t> sources;
    };
    std::map<BasicSharbly, Contribution> faces;
    for (std::size_t i = 0; i < z.terms.size(); ++i) {
        const auto& t = z.terms[i];
        const auto faces_of_term = sharbly::boundary(term_chain(z.n, t.vectors, t.weight));
        for (const auto& [face, c] : faces_of_term.terms()) {
            auto& slot = faces[face];
            slot.total += c;
            slot.sources.push_back(i);
        }
    }

    sharbly::OrbitDictionary dict(budget);
    std::map<std::size_t, std::vector<std::size_t>> by_class;
    for (const auto& [face, slot] : faces) {
        if (sgn(slot.total) == 0) {
            cert.interior.push_back({face, slot.sources});
            continue;
        }
        const auto lookup = dict.classify(face);
        by_class[lookup.class_id].push_back(cert.entries.size());
        cert.entries.push_back({face, slot.total, lookup.class_id, lookup.witness, lookup.sign, std::nullopt});
    }

    for (const auto& [id, members] : by_class) {
        const auto cls = dict.at(id);
        ClassSummary summary{id, cls.representative, cls.is_zero, cls.negator, 0};
        for (std::size_t k : members) {
            auto& e = cert.entries[k];
            summary.total += e.sign * e.coefficient;
            if (cls.is_zero) e.negator = e.witness.inverse() * (*cls.negator) * e.witness;
        }
        if (!cls.is_zero && sgn(summary.total) != 0) cert.residual[id] = summary.total;
        cert.classes.push_back(std::move(summary));
    }
    return cert;
}

CheckResult check_boundary_certificate(const CycleChain& z, const BoundaryCertificate& cert)
{
    auto fail = [](std::string why) { return CheckResult{false, std::move(why)}; };

    std::map<BasicSharbly, Rational> totals;
    std::map<BasicSharbly, std::vector<std::size_t>> sources;
    for (std::size_t i = 0; i < z.terms.size(); ++i) {
        const auto& t = z.terms[i];
        const auto faces_of_term = sharbly::boundary(term_chain(z.n, t.vectors, t.weight));
        for (const auto& [face, c] : faces_of_term.terms()) {
            totals[face] += c;
            sources[face].push_back(i);
        }
    }

    std::set<BasicSharbly> seen;
    for (const auto& ic : cert.interior) {
        auto it = totals.find(ic.face);
        if (it == totals.end() || sgn(it->second) != 0) return fail("interior face does not cancel");
        if (sources[ic.face] != ic.sources) return fail("interior sources differ");
        if (!seen.insert(ic.face).second) return fail("face listed twice");
    }

    std::map<std::size_t, const ClassSummary*> classes;
    for (const auto& c : cert.classes) {
        if (!classes.emplace(c.id, &c).second) return fail("duplicate class id");
        if (c.is_zero) {
            if (!c.negator || !acts_as(*c.negator, c.representative, -1, c.representative))
                return fail("class negator does not negate its representative");
        }
    }

    std::map<std::size_t, Rational> recomputed;
    for (const auto& e : cert.entries) {
        auto it = totals.find(e.term);
        if (it == totals.end() || it->second != e.coefficient) return fail("ledger coefficient differs from the boundary");
        if (!seen.insert(e.term).second) return fail("face listed twice");
        auto cls = classes.find(e.class_id);
        if (cls == classes.end()) return fail("unknown class id");
        if (e.sign != 1 && e.sign != -1) return fail("bad sign");
        if (!acts_as(e.witness, e.term, e.sign, cls->second->representative))
            return fail("witness does not carry the term to its representative");
        if (cls->second->is_zero) {
            if (e.negator && !acts_as(*e.negator, e.term, -1, e.term)) return fail("term negator is wrong");
        }
        recomputed[e.class_id] += e.sign * e.coefficient;
    }
    if (seen.size() != totals.size()) return fail("ledger does not account for every boundary face");

    std::map<std::size_t, Rational> residual;
    for (const auto& [id, c] : classes) {
        const Rational total = recomputed.count(id) ? recomputed[id] : Rational(0);
        if (total != c->total) return fail("class total differs");
        if (!c->is_zero && sgn(total) != 0) residual[id] = total;
    }
    if (residual != cert.residual) return fail("residual differs");
    if (!residual.empty()) return fail("nonzero residual");
    return {true, {}};
}

std::map<std::vector<Label>, OrientedSum> phi_by_facet(const voronoi::Tile& tile, const Triangulation& triangulation)
{
    if (!polytope::is_valid_triangulation(tile.section_configuration(), triangulation))
        throw std::invalid_argument("triangulation is not valid");
    OrientedSum total;
    for (const auto& s : triangulation) {
        const int sigma = sharbly::cone_orientation(vectors_of(tile.form.minimal_vectors, s));
        total.add(alternating_faces(s, sigma, 1));
    }
    const auto facets = voronoi::tile_facets(tile);
    std::map<std::vector<Label>, OrientedSum> out;
    for (const auto& [tuple, c] : total.terms()) {
        auto f = std::find_if(facets.begin(), facets.end(), [&](const auto& facet) {
            return std::includes(facet.begin(), facet.end(), tuple.begin(), tuple.end());
        });
        if (f == facets.end()) throw std::logic_error("uncancelled face inside the tile");
        out[*f].add(tuple, c);
    }
    return out;
}

std::vector<FacetMatch> match_facets(const std::vector<voronoi::Tile>& reps, const Budget& budget)
{
    std::vector<std::vector<std::vector<Label>>> facets;
    for (const auto& t : reps) facets.push_back(voronoi::tile_facets(t));

    std::vector<FacetMatch> out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& tile = reps[i];
        const std::size_t n = tile.form.n;
        for (const auto& facet : facets[i]) {
            FacetMatch m{i, facet, std::nullopt, {}, std::nullopt};
            std::vector<Vector> rows;
            for (Label l : facet) rows.push_back(tile.rays[l]);
            const auto kernel = exactq::nullspace(Matrix::from_rows(rows));
            const auto target = sharbly::canonicalize(n, vectors_of(tile.form.minimal_vectors, facet));
            if (kernel.size() != 1 || !target) {
                out.push_back(std::move(m));
                continue;
            }
            Vector f = kernel.front();
            for (Label l = 0; l < tile.size(); ++l) {
                if (std::binary_search(facet.begin(), facet.end(), l)) continue;
                if (sgn(exactq::dot(f, tile.rays[l])) < 0) f = Rational(-1) * f;
                break;
            }
            for (std::size_t j = 0; j < reps.size() && !m.g; ++j) {
                const auto& other = reps[j];
                if (other.form.n != n) continue;
                for (const auto& candidate : facets[j]) {
                    if (candidate.size() != facet.size()) continue;
                    const auto source = sharbly::canonicalize(n, vectors_of(other.form.minimal_vectors, candidate));
                    if (!source) continue;
                    Label off = 0;
                    while (std::binary_search(candidate.begin(), candidate.end(), off)) ++off;
                    sharbly::for_each_equivalence(source->basic, target->basic, budget,
                                                  [&](const GroupElement& g, int) {
                                                      if (sgn(exactq::dot(f, g.apply_sym(other.rays[off]))) >= 0)
                                                          return false;
                                                      m.g = g;
                                                      return true;
                                                  });
                    if (m.g) {
                        m.partner = j;
                        m.partner_facet = candidate;
                        break;
                    }
                }
            }
            out.push_back(std::move(m));
        }
    }
    return out;
}

std::vector<Flipon> flipons_for_configuration(const PointConfiguration& config, const Triangulation& a,
                                              const Triangulation& b, const std::vector<IntVector>& vectors,
                                              const Budget& budget)
{
    if (!vectors.empty() && vectors.size() != config.size())
        throw std::invalid_argument("one vector per label expected");
    const std::size_t n = vectors.empty() ? 0 : vectors.front().size();
    std::vector<Flipon> out;
    const auto path = polytope::flip_path(config, a, b, budget);
    for (std::size_t step = 0; step < path.size(); ++step) {
        const auto& flip = path[step];
        const auto identity = polytope::verify_flip_identity(config, flip);
        Flipon f;
        f.step = step;
        f.circuit = flip.circuit.labels;
        f.circuit_size = f.circuit.size();
        f.identity_holds = identity.holds;
        for (std::size_t k = 0; k < flip.links.size(); ++k) {
            FliponTerm term;
            term.labels = f.circuit;
            term.labels.insert(term.labels.end(), flip.links[k].begin(), flip.links[k].end());
            term.coefficient = identity.signs[k];
            if (n > 0) {
                term.vectors = vectors_of(vectors, term.labels);
                const auto c = sharbly::canonicalize(n, term.vectors);
                if (!c) throw std::domain_error("flipon vectors do not span");
                if (c->basic.vectors.size() == voronoi::sym_dim(n) && !cosharbly::is_flipon(c->basic))
                    throw std::domain_error("flipon is not degenerate in the section");
            }
            f.terms.push_back(std::move(term));
        }
        if (n > 0 && f.identity_holds)
            f.identity_holds = to_sharblies(n, identity.lhs, vectors) == to_sharblies(n, identity.rhs, vectors);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Flipon> flipons_for_facet(const voronoi::Tile& tile, const std::vector<Label>& facet,
                                      const Triangulation& a, const Triangulation& b, const Budget& budget)
{
    std::vector<Label> sorted = facet;
    std::sort(sorted.begin(), sorted.end());
    auto local_of = [&](const Triangulation& t) {
        Triangulation out;
        for (const auto& s : t) {
            Simplex local;
            for (Label l : s) {
                auto it = std::lower_bound(sorted.begin(), sorted.end(), l);
                if (it == sorted.end() || *it != l) throw std::invalid_argument("simplex leaves the facet");
                local.push_back(static_cast<Label>(it - sorted.begin()));
            }
            out.insert(std::move(local));
        }
        return out;
    };
    const auto config = tile.section_configuration().subconfiguration(sorted).restricted_to_span();
    auto flipons = flipons_for_configuration(config, local_of(a), local_of(b),
                                             vectors_of(tile.form.minimal_vectors, sorted), budget);
    for (auto& f : flipons) {
        f.facet = sorted;
        for (auto& l : f.circuit) l = sorted[l];
        for (auto& t : f.terms)
            for (auto& l : t.labels) l = sorted[l];
    }
    return flipons;
}

SecondaryFlipons secondary_flipons(std::size_t n, const std::vector<SecondaryInput>& terms, const IntVector& x)
{
    if (x.size() != n || std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; }))
        throw std::invalid_argument("x must be a nonzero vector of length n");
    const std::size_t d = voronoi::sym_dim(n);
    SecondaryFlipons out;
    out.omega = SharblyChain(n, d - n);
    out.psi = SharblyChain(n, d - 1 - n);
    for (const auto& term : terms) {
        const auto& v = term.vectors;
        if (v.size() != d || term.circuit_size > d) throw std::invalid_argument("flipon terms need d vectors");
        for (std::size_t j = term.circuit_size + 1; j <= d; ++j) {
            const Rational cj = (j % 2 == 0 ? 1 : -1) * term.coefficient;
            std::vector<IntVector> w;
            for (std::size_t i = 1; i <= d; ++i)
                if (i != j) w.push_back(v[i - 1]);
            add_with_x(out.formal_omega, x, w, cj);
            out.formal_psi.add(w, cj);
            for (std::size_t k = 1; k < d; ++k) {
                const std::size_t i = k < j ? k : k + 1;
                std::vector<IntVector> u = w;
                u.erase(u.begin() + static_cast<std::ptrdiff_t>(k - 1));
                const Rational c = (k % 2 == 0 ? 1 : -1) * cj;
                auto& target = i <= term.circuit_size ? out.x_i : (i < j ? out.x_ii : out.x_iii);
                add_with_x(target, x, u, c);
            }
        }
    }
    for (const auto& [tuple, c] : out.formal_omega.terms()) {
        const auto canon = sharbly::canonicalize(n, tuple);
        if (!canon) continue;
        if (!cosharbly::is_flipon(canon->basic)) throw std::domain_error("summand of Omega is not a flipon");
        out.omega.add(canon->basic, canon->sign * c);
    }
    for (const auto& [tuple, c] : out.formal_psi.terms()) out.psi.add(tuple, c);
    return out;
}

AnRemark verify_an_remark(std::size_t n, const Budget& budget)
{
    AnRemark r;
    r.n = n;
    const auto cone = sharbly::sharbly_of_cone(voronoi::an_vectors(n));
    const auto b = sharbly::boundary(term_chain(n, cone.ordered, 1));
    r.boundary_terms = b.size();
    sharbly::OrbitDictionary dict(budget);
    r.classes = sharbly::project_coinvariants(b, dict);
    r.single_class = r.classes.terms.size() == 1;
    r.coefficient = r.single_class ? r.classes.terms.begin()->second : Rational(0);
    return r;
}

}  // namespace shc::cycle
