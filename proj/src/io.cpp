#include "shc/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace shc::io {

using exactq::IntVector;
using exactq::Rational;
using polytope::Label;

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return out.str();
}

std::string digest(const json& j)
{
    return sha256_hex(j.dump());
}

json to_json(const Rational& q)
{
    return exactq::to_string(q);
}

json to_json(const IntVector& v)
{
    return json(v);
}

json to_json(const voronoi::GroupElement& g)
{
    return {{"n", g.n()}, {"entries", g.entries()}};
}

json to_json(const sharbly::BasicSharbly& b)
{
    return {{"n", b.n}, {"vectors", b.vectors}};
}

json to_json(const sharbly::SharblyChain& c)
{
    json terms = json::array();
    for (const auto& [b, q] : c.terms()) terms.push_back({{"vectors", b.vectors}, {"coefficient", to_json(q)}});
    return {{"n", c.n()}, {"degree", c.degree()}, {"terms", terms}};
}

json to_json(const cycle::CycleChain& z)
{
    json terms = json::array();
    for (const auto& t : z.terms)
        terms.push_back({{"tile", t.tile},
                         {"simplex", t.simplex},
                         {"transform", to_json(t.transform)},
                         {"weight", to_json(t.weight)},
                         {"vectors", t.vectors}});
    return {{"n", z.n}, {"terms", terms}};
}

namespace {

json optional_group(const std::optional<voronoi::GroupElement>& g)
{
    return g ? to_json(*g) : json(nullptr);
}

std::optional<voronoi::GroupElement> optional_group_from(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return group_element_from_json(j);
}

json simplices(const std::vector<polytope::Simplex>& list)
{
    return json(list);
}

}  // namespace

json to_json(const cycle::BoundaryCertificate& cert)
{
    json interior = json::array();
    for (const auto& ic : cert.interior) interior.push_back({{"face", to_json(ic.face)}, {"sources", ic.sources}});
    json entries = json::array();
    for (const auto& e : cert.entries)
        entries.push_back({{"term", to_json(e.term)},
                           {"coefficient", to_json(e.coefficient)},
                           {"class", e.class_id},
                           {"witness", to_json(e.witness)},
                           {"sign", e.sign},
                           {"negator", optional_group(e.negator)}});
    json classes = json::array();
    for (const auto& c : cert.classes)
        classes.push_back({{"id", c.id},
                           {"representative", to_json(c.representative)},
                           {"is_zero", c.is_zero},
                           {"negator", optional_group(c.negator)},
                           {"total", to_json(c.total)}});
    json residual = json::array();
    for (const auto& [id, q] : cert.residual) residual.push_back({{"class", id}, {"coefficient", to_json(q)}});
    return {{"input_hash", cert.input_hash},
            {"interior", interior},
            {"entries", entries},
            {"classes", classes},
            {"residual", residual},
            {"valid", cert.valid()}};
}

json to_json(const cosharbly::PositivityCertificate& cert)
{
    json terms = json::array();
    for (const auto& t : cert.terms)
        terms.push_back({{"term", to_json(t.term)},
                         {"coefficient", to_json(t.coefficient)},
                         {"epsilon", t.epsilon},
                         {"verdict", cosharbly::to_string(t.verdict)}});
    return {{"terms", terms}, {"valid", cert.valid}};
}

json to_json(const polytope::Triangulation& t)
{
    return json(std::vector<polytope::Simplex>(t.begin(), t.end()));
}

json to_json(const polytope::PointConfiguration& config)
{
    json points = json::array();
    for (const auto& p : config.points) {
        json row = json::array();
        for (const auto& x : p) row.push_back(to_json(x));
        points.push_back(row);
    }
    return {{"ambient_dim", config.ambient_dim}, {"points", points}};
}

json to_json(const polytope::Flip& flip)
{
    json dep = json::array();
    for (const auto& q : flip.circuit.dependence) dep.push_back(to_json(q));
    return {{"circuit",
             {{"labels", flip.circuit.labels},
              {"positive", flip.circuit.positive},
              {"negative", flip.circuit.negative},
              {"dependence", dep}}},
            {"links", simplices(flip.links)},
            {"removed", to_json(flip.removed)},
            {"inserted", to_json(flip.inserted)}};
}

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    return exactq::parse_rational(j.get<std::string>());
}

IntVector int_vector_from_json(const json& j)
{
    return j.get<IntVector>();
}

voronoi::GroupElement group_element_from_json(const json& j)
{
    return voronoi::GroupElement(j.at("n").get<std::size_t>(), j.at("entries").get<std::vector<std::int64_t>>());
}

sharbly::BasicSharbly basic_from_json(const json& j)
{
    return {j.at("n").get<std::size_t>(), j.at("vectors").get<std::vector<IntVector>>()};
}

sharbly::SharblyChain chain_from_json(const json& j)
{
    sharbly::SharblyChain c(j.at("n").get<std::size_t>(), j.at("degree").get<std::size_t>());
    for (const auto& t : j.at("terms"))
        c.add(t.at("vectors").get<std::vector<IntVector>>(), rational_from_json(t.at("coefficient")));
    return c;
}

cycle::CycleChain cycle_from_json(const json& j)
{
    cycle::CycleChain z;
    z.n = j.at("n").get<std::size_t>();
    for (const auto& t : j.at("terms"))
        z.terms.push_back({t.at("tile").get<std::string>(), t.at("simplex").get<polytope::Simplex>(),
                           group_element_from_json(t.at("transform")), rational_from_json(t.at("weight")),
                           t.at("vectors").get<std::vector<IntVector>>()});
    return z;
}

cycle::BoundaryCertificate boundary_certificate_from_json(const json& j)
{
    cycle::BoundaryCertificate cert;
    cert.input_hash = j.at("input_hash").get<std::string>();
    for (const auto& ic : j.at("interior"))
        cert.interior.push_back({basic_from_json(ic.at("face")), ic.at("sources").get<std::vector<std::size_t>>()});
    for (const auto& e : j.at("entries"))
        cert.entries.push_back({basic_from_json(e.at("term")), rational_from_json(e.at("coefficient")),
                                e.at("class").get<std::size_t>(), group_element_from_json(e.at("witness")),
                                e.at("sign").get<int>(), optional_group_from(e.at("negator"))});
    for (const auto& c : j.at("classes"))
        cert.classes.push_back({c.at("id").get<std::size_t>(), basic_from_json(c.at("representative")),
                                c.at("is_zero").get<bool>(), optional_group_from(c.at("negator")),
                                rational_from_json(c.at("total"))});
    for (const auto& r : j.at("residual"))
        cert.residual[r.at("class").get<std::size_t>()] = rational_from_json(r.at("coefficient"));
    if (j.contains("valid") && j.at("valid").get<bool>() != cert.valid())
        throw std::invalid_argument("valid flag disagrees with the residual");
    return cert;
}

cosharbly::PositivityCertificate positivity_certificate_from_json(const json& j)
{
    cosharbly::PositivityCertificate cert;
    cert.valid = j.at("valid").get<bool>();
    for (const auto& t : j.at("terms")) {
        const auto v = t.at("verdict").get<std::string>();
        cosharbly::Verdict verdict;
        if (v == "flipon")
            verdict = cosharbly::Verdict::flipon;
        else if (v == "proper-positive")
            verdict = cosharbly::Verdict::proper_positive;
        else if (v == "proper-negative")
            verdict = cosharbly::Verdict::proper_negative;
        else
            throw std::invalid_argument("unknown verdict " + v);
        cert.terms.push_back({basic_from_json(t.at("term")), rational_from_json(t.at("coefficient")),
                              t.at("epsilon").get<int>(), verdict});
    }
    return cert;
}

polytope::Triangulation triangulation_from_json(const json& j)
{
    const auto list = j.get<std::vector<polytope::Simplex>>();
    return polytope::Triangulation(list.begin(), list.end());
}

polytope::PointConfiguration configuration_from_json(const json& j)
{
    std::vector<exactq::Vector> points;
    for (const auto& row : j.at("points")) {
        exactq::Vector p;
        for (const auto& x : row) p.push_back(rational_from_json(x));
        points.push_back(std::move(p));
    }
    auto config = polytope::PointConfiguration::from_points(std::move(points));
    if (j.contains("ambient_dim") && j.at("ambient_dim").get<std::size_t>() != config.ambient_dim)
        throw std::invalid_argument("ambient dimension disagrees with the points");
    return config;
}

polytope::Flip flip_from_json(const json& j)
{
    polytope::Flip flip;
    const auto& c = j.at("circuit");
    flip.circuit.labels = c.at("labels").get<std::vector<Label>>();
    flip.circuit.positive = c.at("positive").get<std::vector<Label>>();
    flip.circuit.negative = c.at("negative").get<std::vector<Label>>();
    for (const auto& q : c.at("dependence")) flip.circuit.dependence.push_back(rational_from_json(q));
    flip.links = j.at("links").get<std::vector<polytope::Simplex>>();
    flip.removed = triangulation_from_json(j.at("removed"));
    flip.inserted = triangulation_from_json(j.at("inserted"));
    return flip;
}

json make_certificate(const std::string& kind, const std::string& input_hash, json payload)
{
    json cert = {{"schema_version", schema_version},
                 {"kind", kind},
                 {"input_hash", input_hash},
                 {"payload", std::move(payload)}};
    cert["digest"] = digest(cert);
    return cert;
}

json boundary_certificate_file(const cycle::CycleChain& z, const cycle::BoundaryCertificate& cert)
{
    return make_certificate("boundary", cert.input_hash, {{"chain", to_json(z)}, {"certificate", to_json(cert)}});
}

json positivity_certificate_file(const sharbly::SharblyChain& z, const cosharbly::PositivityCertificate& cert)
{
    json chain = to_json(z);
    const auto hash = digest(chain);
    return make_certificate("positivity", hash, {{"chain", std::move(chain)}, {"certificate", to_json(cert)}});
}

json triangulation_certificate_file(const polytope::PointConfiguration& config, const polytope::Triangulation& t,
                                    const std::optional<polytope::LiftingHeights>& heights)
{
    json points = to_json(config);
    json h = nullptr;
    if (heights) {
        h = json::array();
        for (const auto& q : *heights) h.push_back(to_json(q));
    }
    const auto hash = digest(points);
    return make_certificate("triangulation", hash,
                            {{"points", std::move(points)},
                             {"triangulation", to_json(t)},
                             {"heights", std::move(h)},
                             {"regular", heights.has_value()}});
}

json flip_certificate_file(const polytope::PointConfiguration& config, const polytope::Triangulation& start,
                           const std::vector<polytope::Flip>& flips)
{
    json points = to_json(config);
    json steps = json::array();
    auto t = start;
    for (const auto& f : flips) {
        steps.push_back({{"flip", to_json(f)}, {"signs", polytope::verify_flip_identity(config, f).signs}});
        t = polytope::apply_flip(config, t, f);
    }
    const auto hash = digest(points);
    return make_certificate("flip-identity", hash,
                            {{"points", std::move(points)},
                             {"start", to_json(start)},
                             {"flips", std::move(steps)},
                             {"end", to_json(t)}});
}

json census_certificate_file(const std::vector<IntVector>& vectors, const std::vector<std::vector<Label>>& facets)
{
    std::map<std::string, std::size_t> counts;
    for (const auto& f : facets) ++counts[std::to_string(f.size())];
    json v = vectors;
    const auto hash = digest(v);
    return make_certificate("census", hash, {{"vectors", std::move(v)}, {"facets", facets}, {"census", counts}});
}

namespace {

using cycle::CheckResult;

CheckResult fail(std::string why)
{
    return {false, std::move(why)};
}

CheckResult check_boundary(const json& cert, const json& payload)
{
    const auto z = cycle_from_json(payload.at("chain"));
    if (digest(to_json(z)) != cert.at("input_hash")) return fail("input hash does not match the chain");
    const auto bc = boundary_certificate_from_json(payload.at("certificate"));
    if (bc.input_hash != cert.at("input_hash")) return fail("certificate hash does not match the chain");
    return cycle::check_boundary_certificate(z, bc);
}

CheckResult check_positivity(const json& cert, const json& payload)
{
    const auto chain = chain_from_json(payload.at("chain"));
    if (digest(payload.at("chain")) != cert.at("input_hash")) return fail("input hash does not match the chain");
    const auto pc = positivity_certificate_from_json(payload.at("certificate"));
    if (pc.terms.size() != chain.size()) return fail("term count differs from the chain");
    std::size_t i = 0;
    for (const auto& [b, q] : chain.terms()) {
        if (pc.terms[i].term != b || pc.terms[i].coefficient != q) return fail("term differs from the chain");
        ++i;
    }
    if (!cosharbly::check_positivity_certificate(pc)) return fail("verdicts do not recompute");
    if (!pc.valid) return fail("positivity certificate is not valid");
    return {true, {}};
}

CheckResult check_triangulation(const json& cert, const json& payload)
{
    const auto config = configuration_from_json(payload.at("points"));
    const auto t = triangulation_from_json(payload.at("triangulation"));
    if (digest(payload.at("points")) != cert.at("input_hash")) return fail("input hash does not match the points");
    if (!polytope::is_valid_triangulation(config, t)) return fail("not a triangulation");
    const auto& heights = payload.at("heights");
    if (!heights.is_null()) {
        polytope::LiftingHeights h;
        for (const auto& q : heights) h.push_back(rational_from_json(q));
        if (!polytope::check_regularity_witness(config, t, h)) return fail("regularity witness fails");
    }
    if (payload.at("regular").get<bool>() != !heights.is_null()) return fail("regular flag without witness");
    return {true, {}};
}

CheckResult check_flips(const json& cert, const json& payload)
{
    const auto config = configuration_from_json(payload.at("points"));
    if (digest(payload.at("points")) != cert.at("input_hash")) return fail("input hash does not match the points");
    auto t = triangulation_from_json(payload.at("start"));
    if (!polytope::is_valid_triangulation(config, t)) return fail("start is not a triangulation");
    const auto& steps = payload.at("flips");
    for (const auto& step : steps) {
        const auto flip = flip_from_json(step.at("flip"));
        const auto identity = polytope::verify_flip_identity(config, flip);
        if (!identity.holds) return fail("flip identity fails");
        if (identity.signs != step.at("signs").get<std::vector<int>>()) return fail("link signs differ");
        t = polytope::apply_flip(config, t, flip);
    }
    if (t != triangulation_from_json(payload.at("end"))) return fail("flips do not reach the end triangulation");
    return {true, {}};
}

CheckResult check_census(const json& cert, const json& payload)
{
    const auto vectors = payload.at("vectors").get<std::vector<IntVector>>();
    if (digest(payload.at("vectors")) != cert.at("input_hash")) return fail("input hash does not match the form");
    const auto tile = voronoi::tile_of(voronoi::form_from_minvecs(vectors));
    const auto facets = voronoi::tile_facets(tile);
    if (facets != payload.at("facets").get<std::vector<std::vector<Label>>>()) return fail("facet list differs");
    std::map<std::string, std::size_t> counts;
    for (const auto& f : facets) ++counts[std::to_string(f.size())];
    if (counts != payload.at("census").get<std::map<std::string, std::size_t>>()) return fail("census differs");
    return {true, {}};
}

}  // namespace

cycle::CheckResult check_certificate(const json& cert)
{
    try {
        if (cert.at("schema_version").get<int>() != schema_version) return fail("unknown schema version");
        json body = cert;
        body.erase("digest");
        if (digest(body) != cert.at("digest").get<std::string>()) return fail("digest mismatch");
        const auto kind = cert.at("kind").get<std::string>();
        const auto& payload = cert.at("payload");
        if (kind == "boundary") return check_boundary(cert, payload);
        if (kind == "positivity") return check_positivity(cert, payload);
        if (kind == "triangulation") return check_triangulation(cert, payload);
        if (kind == "flip-identity") return check_flips(cert, payload);
        if (kind == "census") return check_census(cert, payload);
        return fail("unknown kind " + kind);
    } catch (const std::exception& e) {
        return fail(std::string("malformed certificate: ") + e.what());
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace shc::io
