#include "shc/repro.hpp"

#include "shc/cosharbly.hpp"
#include "shc/cycle.hpp"
#include "shc/polytope.hpp"
#include "shc/sharbly.hpp"
#include "shc/voronoi.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace shc::repro {

using exactq::IntVector;
using exactq::Rational;
using exactq::Vector;
using polytope::Label;
using polytope::OrientedSum;
using polytope::PointConfiguration;
using polytope::Triangulation;
using voronoi::GroupElement;

namespace {

class Checks {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
    std::vector<std::string> failures;
};

voronoi::Tile tile_named(const std::string& name)
{
    const auto f = voronoi::find_dataset_form(name);
    return voronoi::tile_of(voronoi::form_from_minvecs(f.vectors, f.name));
}

sharbly::BasicSharbly basic(std::size_t n, const std::vector<IntVector>& v)
{
    auto c = sharbly::canonicalize(n, v);
    if (!c) throw std::logic_error("degenerate basic in the reproduction data");
    return c->basic;
}

Triangulation to_local(const std::vector<Label>& facet, const std::vector<polytope::Simplex>& cells)
{
    Triangulation out;
    for (const auto& s : cells) {
        polytope::Simplex local;
        for (Label l : s)
            local.push_back(static_cast<Label>(std::lower_bound(facet.begin(), facet.end(), l) - facet.begin()));
        out.insert(local);
    }
    return out;
}

void check_certificate(Checks& c, const cycle::CycleChain& z, const cycle::BoundaryCertificate& cert)
{
    c.expect(cert.valid(), "boundary residual is not empty");
    const auto checked = cycle::check_boundary_certificate(z, cert);
    c.expect(checked.ok, "certificate re-check: " + checked.reason);
}

void item1(Checks& c, const Options&)
{
    const auto z = cycle::build_zG(2);
    sharbly::SharblyChain expected(2, 1);
    expected.add(std::vector<IntVector>{{1, 0}, {0, 1}, {1, -1}}, Rational(1, 6));
    c.expect(z.chain() == expected, "z_G differs from (1/6)[e1, e2, e1 - e2]");
    const auto cert = cycle::verify_boundary_zero(z);
    check_certificate(c, z, cert);

    const GroupElement g(2, {0, 1, -1, 0});
    const GroupElement h(2, {0, 1, -1, -1});
    const auto ab = basic(2, {{1, 0}, {0, 1}});
    c.expect(cert.entries.size() == 3, "expected three boundary faces");
    for (const auto& e : cert.entries) {
        bool conjugate = false;
        for (const auto& carrier : {GroupElement::identity(2), h, h * h}) {
            if (sharbly::act(carrier, ab).basic != e.term || !e.negator) continue;
            conjugate = *e.negator == carrier * g * carrier.inverse() ||
                        *e.negator == carrier * g.inverse() * carrier.inverse();
        }
        c.expect(conjugate, "a face negator is not a conjugate of g by a power of h");
    }
}

void item2(Checks& c, const Options&)
{
    c.expect(voronoi::stabilizer(tile_named("A3")).size() == 24, "A3 stabilizer order is not 24");
    const auto z = cycle::build_zG(3);
    c.expect(z.terms.size() == 1 && z.terms[0].weight == Rational(1, 24), "coefficient is not 1/24");
    sharbly::SharblyChain expected(3, 3);
    expected.add(std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}},
                 Rational(1, 24));
    c.expect(z.chain() == expected, "z_G differs from the closed form");
    const auto cert = cycle::verify_boundary_zero(z);
    check_certificate(c, z, cert);
    c.expect(cert.entries.size() == 6, "expected six boundary faces");
    for (const auto& e : cert.entries) {
        const bool negated = e.negator && sharbly::act(*e.negator, e.term).basic == e.term &&
                             sharbly::act(*e.negator, e.term).sign == -1;
        c.expect(negated, "a boundary face lacks a self-negation witness");
    }
}

void item3(Checks& c, const Options& options)
{
    const auto forms = voronoi::builtin_dataset(4);
    c.expect(forms.size() == 2, "expected two tile orbits");
    const auto d4 = tile_named("D4");
    c.expect(d4.size() == 12, "D4 tile does not have 12 rays");
    const auto& printed = voronoi::d4_subdivision();
    c.expect(polytope::is_valid_triangulation(d4.section_configuration(),
                                              Triangulation(printed.begin(), printed.end())),
             "printed 16-simplex list is not a triangulation");
    const auto z = cycle::build_zG(4);
    c.expect(z.terms.size() == 17, "expected 17 weighted terms");
    const auto cert = cycle::verify_boundary_zero(z, options.budget);
    check_certificate(c, z, cert);
}

void item4(Checks& c, const Options& options)
{
    const auto r = cycle::verify_an_remark(4, options.budget);
    c.expect(r.single_class, "boundary of the A4 simplex is not a single class");
    c.expect(abs(r.coefficient) == 10, "coefficient is not +-10");
    for (std::size_t n : {2u, 3u}) c.expect(cycle::verify_an_remark(n, options.budget).classes.empty(),
                                            "n = " + std::to_string(n) + " does not give the empty chain");
}

void item5(Checks& c, const Options& options)
{
    const auto form = voronoi::find_dataset_form("D5");
    const auto perfect = voronoi::form_from_minvecs(form.vectors, form.name);
    std::set<IntVector> got, want;
    for (const auto& v : voronoi::minimal_vectors(perfect.gram).vectors) got.insert(exactq::primitive_normalize(v));
    for (const auto& v : form.vectors) want.insert(exactq::primitive_normalize(v));
    c.expect(got == want && got.size() == 20, "D5 minimal vectors differ from the printed columns");

    const auto tile = voronoi::tile_of(perfect);
    const auto facets = voronoi::tile_facets(tile);
    std::map<std::size_t, std::size_t> census;
    for (const auto& f : facets) ++census[f.size()];
    c.expect(facets.size() == 400 && census == std::map<std::size_t, std::size_t>{{14, 320}, {16, 80}},
             "facet census is not 400 = 320 + 80");

    const auto& data = voronoi::d5_facet_data();
    auto facet = data.facet;
    std::sort(facet.begin(), facet.end());
    c.expect(std::find(facets.begin(), facets.end(), facet) != facets.end(), "F is not a facet");
    const auto config = tile.section_configuration().subconfiguration(facet).restricted_to_span();
    const auto first = to_local(facet, data.first);
    const auto second = to_local(facet, data.second);
    c.expect(polytope::enumerate_regular_triangulations(config, options.budget).size() == 3,
             "F does not have exactly 3 regular triangulations");
    for (const auto* t : {&first, &second}) {
        c.expect(polytope::is_valid_triangulation(config, *t), "a printed triangulation of F is not valid");
        const auto h = polytope::is_regular(config, *t);
        c.expect(h && polytope::check_regularity_witness(config, *t, *h), "a printed triangulation is not regular");
    }
    const auto path = polytope::flip_path(config, first, second, options.budget);
    c.expect(path.size() == 1, "flip path does not have length 1");
    if (path.size() == 1) {
        c.expect(path[0].circuit.labels == data.circuit, "circuit differs from {0,1,5,6,9,10,12,13}");
        c.expect(polytope::verify_flip_identity(config, path[0]).holds, "flip identity fails");
        const auto [plus, minus] = polytope::gkz_two_triangulations(path[0].circuit);
        const Triangulation tp(data.t_plus.begin(), data.t_plus.end());
        const Triangulation tm(data.t_minus.begin(), data.t_minus.end());
        c.expect((plus == tp && minus == tm) || (plus == tm && minus == tp),
                 "circuit triangulations differ from the printed pair");
    }
}

// 6(a): random circuits with p <= 6 points have exactly two sign patterns
// whose alternating face sum has zero boundary.
void item6a(Checks& c, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coord(-3, 3);
    int circuits = 0;
    for (int trial = 0; trial < 400 && circuits < 40; ++trial) {
        const std::size_t p = 3 + trial % 4;
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < p; ++i) {
            Vector q;
            for (std::size_t k = 0; k + 2 < p; ++k) q.emplace_back(coord(rng));
            pts.push_back(std::move(q));
        }
        const auto config = PointConfiguration::from_points(pts);
        std::vector<Label> labels(p);
        std::iota(labels.begin(), labels.end(), Label{0});
        polytope::Circuit z;
        try {
            z = polytope::affine_dependence(config, labels);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (z.labels.size() != p || std::any_of(z.dependence.begin(), z.dependence.end(),
                                                [](const Rational& q) { return sgn(q) == 0; }))
            continue;
        ++circuits;
        int good = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
            OrientedSum chain;
            for (std::size_t i = 0; i < p; ++i) {
                std::vector<Label> face;
                for (std::size_t j = 0; j < p; ++j)
                    if (j != i) face.push_back(j);
                chain.add(face, (mask >> i & 1) ? -1 : 1);
            }
            if (shc::boundary(chain).empty()) ++good;
        }
        c.expect(good == 2, "a circuit has " + std::to_string(good) + " annihilating sign patterns");
    }
    c.expect(circuits >= 20, "too few random circuits");
}

void item6b(Checks& c)
{
    const auto pyramid = PointConfiguration::from_points({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    const Triangulation t{{0, 1, 2, 4}, {0, 2, 3, 4}};
    const auto flips = polytope::supported_flips(pyramid, t);
    c.expect(flips.size() == 1, "pyramid triangulation should support one flip");
    if (flips.size() != 1) return;
    const auto id = polytope::verify_flip_identity(pyramid, flips[0]);
    OrientedSum expected;
    expected.add({1, 2, 3, 4}, -1);
    expected.add({0, 2, 3, 4}, 1);
    expected.add({0, 1, 3, 4}, -1);
    expected.add({0, 1, 2, 4}, 1);
    c.expect(id.holds && id.signs == std::vector<int>{1} && id.lhs == expected, "pyramid identity differs");
}

IntVector random_vector(std::mt19937_64& rng, std::size_t n, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    IntVector v;
    do {
        v.assign(n, 0);
        for (auto& x : v) x = d(rng);
    } while (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }));
    return v;
}

// 6(c): chains of degree k + 1, so that the middle chain has degree k.
void item6c(Checks& c, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (std::size_t n : {2u, 3u, 4u})
        for (std::size_t k : {1u, 2u}) {
            int nonzero = 0;
            for (int trial = 0; trial < 100; ++trial) {
                sharbly::SharblyChain chain(n, k + 1);
                for (int t = 0; t < 3; ++t) {
                    std::vector<IntVector> v;
                    for (std::size_t i = 0; i < n + k + 1; ++i) v.push_back(random_vector(rng, n, 3));
                    chain.add(v, coeff(rng));
                }
                const auto once = sharbly::boundary(chain);
                nonzero += !once.empty();
                c.expect(sharbly::boundary(once).empty(), "boundary of a boundary is not zero");
            }
            c.expect(nonzero > 50, "random chains were mostly trivial");
        }
}

// 6(d): along a flip path the identities telescope to the difference of the
// end triangulations.
void item6d(Checks& c, std::mt19937_64& rng, const Budget& budget)
{
    std::uniform_int_distribution<int> coord(-4, 4);
    int configs = 0;
    for (int trial = 0; trial < 40 && configs < 12; ++trial) {
        const std::size_t dim = trial % 2 == 0 ? 2 : 3;
        const std::size_t count = dim == 2 ? 6 + trial % 3 : 6 + (trial / 2) % 2;
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < count; ++i) {
            Vector q;
            for (std::size_t k = 0; k < dim; ++k) q.emplace_back(coord(rng));
            pts.push_back(std::move(q));
        }
        const auto config = PointConfiguration::from_points(pts);
        if (!config.full_dimensional()) continue;
        std::vector<Label> order(count);
        std::iota(order.begin(), order.end(), Label{0});
        Triangulation a, b;
        try {
            a = polytope::placing_triangulation(config, order).triangulation;
            std::shuffle(order.begin(), order.end(), rng);
            b = polytope::placing_triangulation(config, order).triangulation;
        } catch (const std::invalid_argument&) {
            continue;
        }
        ++configs;
        const auto path = polytope::flip_path(config, a, b, budget);
        OrientedSum telescoped;
        bool all_hold = true;
        for (const auto& f : path) {
            const auto id = polytope::verify_flip_identity(config, f);
            all_hold = all_hold && id.holds;
            telescoped.add(id.lhs);
        }
        c.expect(all_hold, "a flip identity fails along the path");
        c.expect(telescoped == polytope::oriented_sum(config, a) - polytope::oriented_sum(config, b),
                 "flip identities do not telescope");
    }
    c.expect(configs >= 8, "too few random configurations");
}

void item6(Checks& c, const Options& options)
{
    std::mt19937_64 rng(options.seed);
    item6a(c, rng);
    item6b(c);
    item6c(c, rng);
    item6d(c, rng, options.budget);
}

// Affine rank of the trace-normalized rank-one forms, from differences.
std::size_t section_affine_rank(const sharbly::BasicSharbly& b)
{
    std::vector<Vector> pts;
    for (const auto& v : b.vectors) {
        Vector y;
        Rational tr = 0;
        for (std::size_t i = 0; i < b.n; ++i) {
            tr += static_cast<long>(v[i] * v[i]);
            for (std::size_t j = i; j < b.n; ++j) y.emplace_back(static_cast<long>(v[i] * v[j]));
        }
        for (auto& x : y) x /= tr;
        pts.push_back(std::move(y));
    }
    exactq::Matrix diff(pts.size() - 1, pts[0].size());
    for (std::size_t r = 1; r < pts.size(); ++r)
        for (std::size_t k = 0; k < pts[0].size(); ++k) diff(r - 1, k) = pts[r][k] - pts[0][k];
    return exactq::rank(diff);
}

void item7(Checks& c, const Options& options)
{
    std::mt19937_64 rng(options.seed + 7);
    for (std::size_t n : {2u, 3u}) {
        const std::size_t d = voronoi::sym_dim(n);
        int tested = 0, degenerate = 0;
        while (tested < 1000) {
            std::vector<IntVector> v;
            const bool planar = n == 3 && rng() % 2 == 0;
            for (std::size_t i = 0; i < d; ++i) {
                auto w = random_vector(rng, n, 2);
                if (planar && i < 4) w[2] = 0;
                if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) w[0] = 1;
                v.push_back(w);
            }
            const auto canon = sharbly::canonicalize(n, v);
            if (!canon || canon->basic.vectors.size() != d) continue;
            ++tested;
            const bool oracle = section_affine_rank(canon->basic) + 2 <= d;
            degenerate += oracle;
            c.expect(cosharbly::is_flipon(canon->basic) == oracle, "is_flipon disagrees with the affine rank");
        }
        if (n == 3) c.expect(degenerate > 0, "no degenerate samples were drawn");
    }
    const auto example = basic(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, -1, 0}, {0, 0, 1}, {1, 0, 1}});
    c.expect(cosharbly::is_flipon(example) && section_affine_rank(example) <= 4, "the n = 3 flipon example fails");
    for (std::size_t n : {2u, 3u, 4u}) {
        const auto cert = cosharbly::mu_sign_certificate(cycle::build_zG(n));
        c.expect(cert.valid && cosharbly::check_positivity_certificate(cert),
                 "sign certificate for n = " + std::to_string(n) + " is not valid");
    }
}

void item8(Checks& c, const Options&)
{
    const std::vector<std::string> names{"A2", "A3", "A4", "D4", "A5", "A5+3", "D5"};
    for (const auto& name : names) {
        const auto form = voronoi::find_dataset_form(name);
        std::set<IntVector> got, want;
        for (const auto& v : form.vectors) want.insert(exactq::primitive_normalize(v));
        try {
            const auto perfect = voronoi::form_from_minvecs(form.vectors, name);
            for (const auto& v : voronoi::minimal_vectors(perfect.gram).vectors)
                got.insert(exactq::primitive_normalize(v));
        } catch (const std::exception& e) {
            c.expect(false, name + ": " + e.what());
            continue;
        }
        c.expect(got == want && want.size() == form.vectors.size(), name + ": minimal vectors differ");
    }
}

struct Item {
    const char* title;
    std::size_t rank;  // largest n the item needs
    double seconds;    // time bound from the acceptance list
    void (*run)(Checks&, const Options&);
};

const Item items[item_count] = {
    {"n=2 closed form and certificate", 2, 1, item1},
    {"n=3 closed form and self-negation witnesses", 3, 30, item2},
    {"n=4 cycle certificate", 4, 1800, item3},
    {"A4 boundary class", 4, 300, item4},
    {"n=5 data: D5 census and the facet F", 5, 3600, item5},
    {"circuit signs, pyramid, boundary squared, telescoping", 4, 300, item6},
    {"flipon detection and sign certificates", 4, 300, item7},
    {"dataset integrity", 5, 600, item8},
};

}  // namespace

ItemResult run_item(int id, const Options& options)
{
    if (id < 1 || id > item_count) throw std::out_of_range("no acceptance item " + std::to_string(id));
    const auto& item = items[id - 1];
    ItemResult r;
    r.id = id;
    r.title = item.title;
    if (item.rank > options.max_n) {
        r.status = Status::skip;
        r.notes.push_back("needs n = " + std::to_string(item.rank));
        return r;
    }
    const auto start = std::chrono::steady_clock::now();
    Checks checks;
    try {
        item.run(checks, options);
    } catch (const std::exception& e) {
        checks.failures.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > item.seconds) {
        std::ostringstream msg;
        msg << "took " << r.seconds << " s, limit " << item.seconds << " s";
        checks.failures.push_back(msg.str());
    }
    r.notes = std::move(checks.failures);
    r.status = r.notes.empty() ? Status::pass : Status::fail;
    return r;
}

std::vector<ItemResult> run_all(const Options& options, const std::function<void(const ItemResult&)>& on_item)
{
    std::vector<ItemResult> out;
    for (int id = 1; id <= item_count; ++id) {
        out.push_back(run_item(id, options));
        if (on_item) on_item(out.back());
    }
    return out;
}

const char* to_string(Status s)
{
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
    }
    return "?";
}

std::string format(const ItemResult& r)
{
    std::ostringstream out;
    out << "criterion " << r.id << ": " << to_string(r.status) << "  " << r.title;
    out.setf(std::ios::fixed);
    out.precision(2);
    if (r.status != Status::skip) out << "  (" << r.seconds << " s)";
    for (const auto& note : r.notes) out << "\n    - " << note;
    return out.str();
}

}  // namespace shc::repro
