// Command-line front end. Exit status: 0 valid, 1 invalid or failed check,
// 2 bad input or usage, 3 search budget exceeded.

#include "shc/cosharbly.hpp"
#include "shc/cycle.hpp"
#include "shc/io.hpp"
#include "shc/repro.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

using namespace shc;
using exactq::IntVector;
using io::json;
using polytope::Label;
using polytope::PointConfiguration;
using polytope::Triangulation;

namespace {

enum Exit { ok = 0, invalid = 1, bad_input = 2, over_budget = 3 };

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::size_t n = 0;
    std::string form, facet, in, out, cert, vectors, cone_vertex, file;
    std::size_t budget_nodes = Budget{}.max_nodes;
    std::size_t budget_states = Budget{}.max_states;
    std::uint64_t seed = repro::Options{}.seed;
    std::size_t max_n = repro::Options{}.max_n;
    bool symmetrize = false;

    Budget budget() const { return {budget_nodes, budget_states}; }
};

void emit(const Args& a, const json& j)
{
    if (a.out.empty())
        std::cout << j.dump(2) << '\n';
    else
        io::write_json_file(a.out, j);
}

voronoi::Tile tile_named(const std::string& name)
{
    if (name.empty()) throw BadInput("--form is required");
    try {
        const auto f = voronoi::find_dataset_form(name);
        return voronoi::tile_of(voronoi::form_from_minvecs(f.vectors, f.name));
    } catch (const std::invalid_argument&) {
        throw BadInput("unknown form " + name);
    }
}

// "F" picks the flip facet of D5; a number picks from the sorted facet list.
std::vector<Label> facet_of(const voronoi::Tile& tile, const std::string& sel)
{
    if (sel == "F") {
        if (tile.form.name != "D5") throw BadInput("facet F belongs to D5");
        auto f = voronoi::d5_facet_data().facet;
        std::sort(f.begin(), f.end());
        return f;
    }
    const auto facets = voronoi::tile_facets(tile);
    std::size_t i = 0;
    try {
        std::size_t used = 0;
        i = std::stoul(sel, &used);
        if (used != sel.size()) throw std::invalid_argument(sel);
    } catch (const std::exception&) {
        throw BadInput("--facet takes F or an index");
    }
    if (i >= facets.size()) throw BadInput("facet index out of range (" + std::to_string(facets.size()) + " facets)");
    return facets[i];
}

PointConfiguration points_from_json(const json& j)
{
    if (j.contains("ambient_dim")) return io::configuration_from_json(j);
    std::vector<exactq::Vector> pts;
    for (const auto& p : j.at("points")) {
        exactq::Vector v;
        for (const auto& x : p) v.push_back(io::rational_from_json(x));
        pts.push_back(std::move(v));
    }
    return PointConfiguration::from_points(std::move(pts));
}

// Configuration chosen by --in, or by --form with an optional --facet.
// Facet configurations keep facet-local labels 0..k-1.
struct Target {
    PointConfiguration config;
    std::optional<voronoi::Tile> tile;
    std::vector<Label> facet;
    json input;
};

Target target(const Args& a)
{
    Target t;
    if (!a.in.empty()) {
        t.input = io::read_json_file(a.in);
        t.config = points_from_json(t.input.contains("points") && t.input["points"].is_object() ? t.input["points"]
                                                                                              : t.input);
        return t;
    }
    t.tile = tile_named(a.form);
    auto whole = t.tile->section_configuration();
    if (a.facet.empty()) {
        t.config = whole;
        return t;
    }
    t.facet = facet_of(*t.tile, a.facet);
    t.config = whole.subconfiguration(t.facet).restricted_to_span();
    return t;
}

Triangulation to_local(const std::vector<Label>& facet, const std::vector<polytope::Simplex>& cells)
{
    Triangulation out;
    for (const auto& s : cells) {
        polytope::Simplex local;
        for (Label l : s) {
            auto it = std::lower_bound(facet.begin(), facet.end(), l);
            if (it == facet.end() || *it != l) throw BadInput("simplex leaves the facet");
            local.push_back(static_cast<Label>(it - facet.begin()));
        }
        out.insert(local);
    }
    return out;
}

std::vector<IntVector> parse_vectors(const std::string& s)
{
    std::vector<IntVector> out;
    std::stringstream rows(s);
    std::string row;
    while (std::getline(rows, row, ';')) {
        IntVector v;
        std::stringstream cols(row);
        std::string x;
        while (std::getline(cols, x, ',')) {
            try {
                v.push_back(std::stoll(x));
            } catch (const std::exception&) {
                throw BadInput("bad vector entry '" + x + "'");
            }
        }
        if (!out.empty() && v.size() != out.front().size()) throw BadInput("vectors of different lengths");
        out.push_back(std::move(v));
    }
    if (out.empty() || out.front().empty()) throw BadInput("no vectors");
    return out;
}

void check_rank(std::size_t n)
{
    if (n < 2 || n > 4) throw BadInput("z_G is built for n = 2, 3, 4");
}

int report(const cycle::CheckResult& r)
{
    std::cout << (r.ok ? "valid" : "INVALID: " + r.reason) << '\n';
    return r.ok ? ok : invalid;
}

// ---- subcommands

int forms_list(const Args&)
{
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto& f : voronoi::builtin_dataset(n)) {
            const auto form = voronoi::form_from_minvecs(f.vectors, f.name);
            json gram = json::array();
            for (std::size_t r = 0; r < form.n; ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < form.n; ++c) row.push_back(io::to_json(form.gram(r, c)));
                gram.push_back(row);
            }
            std::cout << json{{"name", f.name}, {"n", f.n}, {"gram", gram}, {"min_vectors", f.vectors}}.dump() << '\n';
        }
    return ok;
}

int tile_facets(const Args& a)
{
    const auto tile = tile_named(a.form);
    const auto facets = voronoi::tile_facets(tile);
    std::map<std::size_t, std::size_t> census;
    for (const auto& f : facets) ++census[f.size()];
    std::cout << a.form << ": " << tile.size() << " rays, " << facets.size() << " facets\n";
    for (const auto& [size, count] : census) std::cout << "  " << count << " with " << size << " vertices\n";
    if (!a.out.empty()) io::write_json_file(a.out, io::census_certificate_file(tile.form.minimal_vectors, facets));
    return ok;
}

int tile_stabilizer(const Args& a)
{
    const auto stab = voronoi::stabilizer(tile_named(a.form));
    std::cout << a.form << ": |Stab| = " << stab.size() << '\n';
    if (!a.out.empty()) {
        json elems = json::array();
        for (const auto& g : stab) elems.push_back(io::to_json(g));
        io::write_json_file(a.out, {{"form", a.form}, {"order", stab.size()}, {"elements", elems}});
    }
    return ok;
}

int triangulate(const Args& a)
{
    const auto t = target(a);
    Triangulation tri;
    std::optional<polytope::LiftingHeights> heights;
    if (t.input.contains("triangulation")) {
        tri = io::triangulation_from_json(t.input["triangulation"]);
        heights = polytope::is_regular(t.config, tri);
    } else if (t.tile && t.tile->form.name == "D4" && t.facet.empty()) {
        const auto& s = voronoi::d4_subdivision();
        tri = Triangulation(s.begin(), s.end());
        heights = polytope::is_regular(t.config, tri);
    } else {
        auto placed = polytope::placing_triangulation(t.config);
        tri = std::move(placed.triangulation);
        heights = std::move(placed.witness);
    }
    const bool valid = polytope::is_valid_triangulation(t.config, tri);
    std::cout << tri.size() << " simplices, " << (valid ? "valid" : "INVALID") << ", "
              << (heights ? "regular" : "no regularity witness") << '\n';
    if (!valid) return invalid;
    const auto file = io::triangulation_certificate_file(t.config, tri, heights);
    if (a.out.empty())
        std::cout << file.dump(2) << '\n';
    else
        io::write_json_file(a.out, file);
    return ok;
}

int triangulations_enumerate(const Args& a)
{
    const auto t = target(a);
    const auto all = polytope::enumerate_regular_triangulations(t.config, a.budget());
    std::cout << all.size() << " regular triangulations\n";
    json list = json::array();
    for (const auto& tri : all) list.push_back(io::to_json(tri));
    if (!a.out.empty()) io::write_json_file(a.out, {{"points", io::to_json(t.config)}, {"triangulations", list}});
    return ok;
}

int flip_path(const Args& a)
{
    const auto t = target(a);
    Triangulation from, to;
    if (!a.in.empty()) {
        if (!t.input.contains("from") || !t.input.contains("to")) throw BadInput("--in needs from and to");
        from = io::triangulation_from_json(t.input["from"]);
        to = io::triangulation_from_json(t.input["to"]);
    } else {
        if (a.form != "D5" || a.facet != "F") throw BadInput("built-in flip data is --form D5 --facet F");
        const auto& data = voronoi::d5_facet_data();
        from = to_local(t.facet, data.first);
        to = to_local(t.facet, data.second);
    }
    for (const auto* tri : {&from, &to})
        if (!polytope::is_valid_triangulation(t.config, *tri)) {
            std::cout << "INVALID: endpoint is not a triangulation\n";
            return invalid;
        }
    const auto path = polytope::flip_path(t.config, from, to, a.budget());
    bool holds = true;
    std::cout << "flip path of length " << path.size() << '\n';
    for (const auto& f : path) {
        const auto id = polytope::verify_flip_identity(t.config, f);
        holds = holds && id.holds;
        std::cout << "  circuit " << json(f.circuit.labels).dump() << ", " << f.links.size() << " links, identity "
                  << (id.holds ? "holds" : "FAILS") << '\n';
    }
    if (!a.out.empty()) io::write_json_file(a.out, io::flip_certificate_file(t.config, from, path));

    if (!a.cone_vertex.empty()) {
        if (!t.tile) throw BadInput("--cone-vertex needs a tile facet");
        const auto x = parse_vectors(a.cone_vertex);
        if (x.size() != 1 || x[0].size() != t.tile->form.n) throw BadInput("--cone-vertex takes one vector of length n");
        std::vector<polytope::Simplex> first, second;
        for (const auto& s : from) {
            polytope::Simplex g;
            for (Label l : s) g.push_back(t.facet[l]);
            first.push_back(g);
        }
        for (const auto& s : to) {
            polytope::Simplex g;
            for (Label l : s) g.push_back(t.facet[l]);
            second.push_back(g);
        }
        const auto flipons = cycle::flipons_for_facet(*t.tile, t.facet, Triangulation(first.begin(), first.end()),
                                                      Triangulation(second.begin(), second.end()), a.budget());
        std::vector<cycle::SecondaryInput> inputs;
        for (const auto& fl : flipons)
            for (const auto& term : fl.terms) inputs.push_back({term.vectors, fl.circuit_size, term.coefficient});
        try {
            const auto sec = cycle::secondary_flipons(t.tile->form.n, inputs, x[0]);
            std::cout << "Omega: " << sec.omega.size() << " terms, all flipons; Psi: " << sec.psi.size() << " terms\n";
        } catch (const std::domain_error& e) {
            std::cout << "INVALID: " << e.what() << '\n';
            return invalid;
        }
    }
    return holds ? ok : invalid;
}

int flip_verify(const Args& a)
{
    if (a.in.empty()) throw BadInput("--in is required");
    const auto cert = io::read_json_file(a.in);
    if (cert.value("kind", "") != "flip-identity") throw BadInput("not a flip-identity certificate");
    return report(io::check_certificate(cert));
}

sharbly::SharblyChain chain_input(const Args& a)
{
    if (!a.in.empty()) return io::chain_from_json(io::read_json_file(a.in));
    if (a.vectors.empty()) throw BadInput("--vectors or --in is required");
    const auto v = parse_vectors(a.vectors);
    const std::size_t n = a.n ? a.n : v.front().size();
    if (v.front().size() != n) throw BadInput("vector length differs from --n");
    if (v.size() < n) throw BadInput("fewer than n vectors");
    sharbly::SharblyChain c(n, v.size() - n);
    c.add(v, 1);
    return c;
}

int sharbly_canon(const Args& a)
{
    const auto v = parse_vectors(a.vectors);
    const auto c = sharbly::canonicalize(v.front().size(), v);
    if (!c) {
        std::cout << json{{"zero", true}}.dump() << '\n';
        return ok;
    }
    std::cout << json{{"sign", c->sign}, {"basic", io::to_json(c->basic)}}.dump() << '\n';
    return ok;
}

int sharbly_boundary(const Args& a)
{
    const auto c = chain_input(a);
    if (c.degree() == 0) throw BadInput("degree 0 chains have no boundary");
    emit(a, io::to_json(sharbly::boundary(c)));
    return ok;
}

int cycle_build(const Args& a)
{
    check_rank(a.n);
    cycle::BuildOptions options;
    options.symmetrize = a.symmetrize;
    const auto z = cycle::build_zG(a.n, options);
    std::cerr << "z_G for n = " << a.n << ": " << z.terms.size() << " terms\n";
    emit(a, io::to_json(z));
    return ok;
}

int cycle_verify(const Args& a)
{
    if (a.in.empty()) throw BadInput("--in is required");
    const auto z = io::cycle_from_json(io::read_json_file(a.in));
    check_rank(z.n);
    const auto cert = cycle::verify_boundary_zero(z, a.budget());
    const auto file = io::boundary_certificate_file(z, cert);
    if (!a.cert.empty()) io::write_json_file(a.cert, file);
    std::cout << cert.entries.size() << " boundary faces in " << cert.classes.size() << " classes, "
              << cert.interior.size() << " cancel outright\n";
    if (!cert.valid()) {
        std::cout << "INVALID: " << cert.residual.size() << " classes with nonzero total\n";
        return invalid;
    }
    return report(io::check_certificate(file));
}

int cycle_remark_an(const Args& a)
{
    if (a.n < 2 || a.n > 5) throw BadInput("--n must be 2..5");
    const auto r = cycle::verify_an_remark(a.n, a.budget());
    std::cout << "n = " << r.n << ": " << r.boundary_terms << " boundary terms, " << r.classes.terms.size()
              << " classes";
    if (r.single_class) std::cout << ", single class with coefficient " << r.coefficient;
    std::cout << '\n';
    return ok;
}

int cocycle_certify(const Args& a)
{
    if (a.in.empty()) throw BadInput("--in is required");
    const auto j = io::read_json_file(a.in);
    const bool is_cycle = !j.at("terms").empty() && j["terms"][0].contains("tile");
    const auto chain = is_cycle ? io::cycle_from_json(j).chain() : io::chain_from_json(j);
    const auto cert = cosharbly::mu_sign_certificate(chain);
    if (!a.cert.empty()) io::write_json_file(a.cert, io::positivity_certificate_file(chain, cert));
    std::map<std::string, std::size_t> counts;
    for (const auto& t : cert.terms) ++counts[cosharbly::to_string(t.verdict)];
    for (const auto& [v, count] : counts) std::cout << "  " << v << ": " << count << '\n';
    std::cout << (cert.valid ? "mu > 0 certified" : "INVALID: not every term is proper-positive") << '\n';
    return cert.valid ? ok : invalid;
}

int cert_check(const Args& a)
{
    return report(io::check_certificate(io::read_json_file(a.file)));
}

int repro_all(const Args& a)
{
    repro::Options options;
    options.seed = a.seed;
    options.max_n = a.max_n;
    options.budget = a.budget();
    bool failed = false;
    repro::run_all(options, [&](const repro::ItemResult& r) {
        std::cout << repro::format(r) << std::endl;
        failed = failed || r.status == repro::Status::fail;
    });
    return failed ? invalid : ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"sharbly cycles, certificates and dataset checks"};
    app.require_subcommand(1);
    Args a;
    std::function<int(const Args&)> action;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
        auto* sub = parent->add_subcommand(name, help);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };
    auto budget = [&](CLI::App* s) {
        s->add_option("--budget-nodes", a.budget_nodes, "search node limit")->check(CLI::PositiveNumber);
        s->add_option("--budget-states", a.budget_states, "flip search state limit")->check(CLI::PositiveNumber);
    };
    auto selector = [&](CLI::App* s) {
        s->add_option("--form", a.form, "built-in form name, e.g. D4");
        s->add_option("--facet", a.facet, "F, or an index into the sorted facet list");
        s->add_option("--in", a.in, "points JSON")->check(CLI::ExistingFile);
        s->add_option("--out", a.out, "output file");
        budget(s);
    };

    auto* forms = app.add_subcommand("forms", "built-in perfect forms")->require_subcommand(1);
    leaf(forms, "list", "print every built-in form", forms_list);

    auto* tile = app.add_subcommand("tile", "tiles of the built-in forms")->require_subcommand(1);
    auto* facets = leaf(tile, "facets", "facet census, with a census certificate via --out", tile_facets);
    facets->add_option("--form", a.form)->required();
    facets->add_option("--out", a.out);
    auto* stab = leaf(tile, "stabilizer", "stabilizer order and elements", tile_stabilizer);
    stab->add_option("--form", a.form)->required();
    stab->add_option("--out", a.out);

    selector(leaf(&app, "triangulate", "triangulation certificate for a tile, facet or point set", triangulate));

    auto* tris = app.add_subcommand("triangulations", "triangulation searches")->require_subcommand(1);
    selector(leaf(tris, "enumerate", "all regular triangulations", triangulations_enumerate));

    auto* flip = app.add_subcommand("flip", "bistellar flips")->require_subcommand(1);
    auto* path = leaf(flip, "path", "flip path between two triangulations", flip_path);
    selector(path);
    path->add_option("--cone-vertex", a.cone_vertex, "x for the secondary flipons, e.g. \"1,0,0,0,0\"");
    leaf(flip, "verify", "check a flip-identity certificate", flip_verify)
        ->add_option("--in", a.in)
        ->check(CLI::ExistingFile);

    auto* sharbly = app.add_subcommand("sharbly", "basic sharblies and chains")->require_subcommand(1);
    leaf(sharbly, "canon", "canonical form and sign", sharbly_canon)
        ->add_option("--vectors", a.vectors, "\"1,0;0,1;1,1\"")
        ->required();
    auto* bd = leaf(sharbly, "boundary", "boundary of a basic sharbly or a chain", sharbly_boundary);
    bd->add_option("--vectors", a.vectors);
    bd->add_option("--n", a.n);
    bd->add_option("--in", a.in, "chain JSON")->check(CLI::ExistingFile);
    bd->add_option("--out", a.out);

    auto* cyc = app.add_subcommand("cycle", "the cycle z_G")->require_subcommand(1);
    auto* build = leaf(cyc, "build", "build z_G", cycle_build);
    build->add_option("--n", a.n)->required();
    build->add_option("--out", a.out);
    build->add_flag("--symmetrize", a.symmetrize, "average every term over its stabilizer");
    auto* verify = leaf(cyc, "verify", "certify that the boundary vanishes in coinvariants", cycle_verify);
    verify->add_option("--in", a.in)->required()->check(CLI::ExistingFile);
    verify->add_option("--cert", a.cert, "write the boundary certificate here");
    budget(verify);
    auto* remark = leaf(cyc, "remark-an", "boundary of the A_n simplex in coinvariants", cycle_remark_an);
    remark->add_option("--n", a.n)->required();
    budget(remark);

    auto* cocycle = app.add_subcommand("cocycle", "the cocycle mu")->require_subcommand(1);
    auto* certify = leaf(cocycle, "certify", "sign certificate for mu on a chain", cocycle_certify);
    certify->add_option("--in", a.in, "cycle or chain JSON")->required()->check(CLI::ExistingFile);
    certify->add_option("--cert", a.cert, "write the positivity certificate here");

    auto* cert = app.add_subcommand("cert", "certificates")->require_subcommand(1);
    leaf(cert, "check", "re-check a certificate file", cert_check)
        ->add_option("file", a.file)
        ->required()
        ->check(CLI::ExistingFile);

    auto* rep = app.add_subcommand("repro", "reproduction suite")->require_subcommand(1);
    auto* all = leaf(rep, "all", "run every item and print a table", repro_all);
    all->add_option("--seed", a.seed);
    all->add_option("--max-n", a.max_n, "skip items that need a larger rank");
    budget(all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }

    try {
        return action(a);
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return over_budget;
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const json::exception& e) {
        std::cerr << "bad JSON: " << e.what() << '\n';
        return bad_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << '\n';
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    }
}
