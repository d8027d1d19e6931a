#include "doctest.h"

#include "shc/io.hpp"

using namespace shc;
using exactq::make_rational;
using exactq::Rational;
using io::json;

namespace {

polytope::PointConfiguration pyramid()
{
    return polytope::PointConfiguration::from_points({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
}

json resealed(json cert)
{
    cert.erase("digest");
    cert["digest"] = io::digest(cert);
    return cert;
}

}  // namespace

TEST_CASE("digests")
{
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::digest(json{{"b", 1}, {"a", 2}}) == io::digest(json{{"a", 2}, {"b", 1}}));
}

TEST_CASE("round trips")
{
    for (const auto& q : {make_rational(-3, 7), Rational(0), Rational(12)})
        CHECK(io::rational_from_json(io::to_json(q)) == q);
    CHECK(io::to_json(make_rational(1, 6)) == "1/6");

    const auto z = cycle::build_zG(3);
    const auto z_back = io::cycle_from_json(io::to_json(z));
    CHECK(io::to_json(z_back) == io::to_json(z));
    CHECK(z_back.chain() == z.chain());

    const auto chain = z.chain();
    CHECK(io::chain_from_json(io::to_json(chain)) == chain);

    const auto cert = cycle::verify_boundary_zero(z);
    const auto cert_back = io::boundary_certificate_from_json(io::to_json(cert));
    CHECK(io::to_json(cert_back) == io::to_json(cert));

    const auto mu = cosharbly::mu_sign_certificate(z);
    CHECK(io::to_json(io::positivity_certificate_from_json(io::to_json(mu))) == io::to_json(mu));

    const auto config = pyramid();
    CHECK(io::to_json(io::configuration_from_json(io::to_json(config))) == io::to_json(config));
    const polytope::Triangulation t{{0, 1, 2, 4}, {0, 2, 3, 4}};
    CHECK(io::triangulation_from_json(io::to_json(t)) == t);
    const auto flips = polytope::supported_flips(config, t);
    REQUIRE_FALSE(flips.empty());
    CHECK(io::to_json(io::flip_from_json(io::to_json(flips[0]))) == io::to_json(flips[0]));

    const voronoi::GroupElement g(2, {0, 1, -1, 0});
    CHECK(io::group_element_from_json(io::to_json(g)) == g);
    CHECK_THROWS(io::group_element_from_json(json{{"n", 2}, {"entries", {1, 1, 1, 1}}}));
}

TEST_CASE("certificate files")
{
    SUBCASE("boundary")
    {
        for (std::size_t n : {2u, 3u}) {
            const auto z = cycle::build_zG(n);
            const auto file = io::boundary_certificate_file(z, cycle::verify_boundary_zero(z));
            const auto checked = io::check_certificate(file);
            CHECK_MESSAGE(checked.ok, checked.reason);

            auto bad = file;
            bad["payload"]["certificate"]["entries"][0]["witness"]["entries"][0] = 5;
            CHECK_FALSE(io::check_certificate(bad).ok);
            CHECK_FALSE(io::check_certificate(resealed(bad)).ok);

            bad = file;
            bad["payload"]["chain"]["terms"][0]["weight"] = "1/7";
            CHECK_FALSE(io::check_certificate(resealed(bad)).ok);

            bad = file;
            bad["payload"]["certificate"]["entries"][0]["coefficient"] = "1/2";
            CHECK_FALSE(io::check_certificate(resealed(bad)).ok);

            bad = file;
            bad["schema_version"] = 2;
            CHECK_FALSE(io::check_certificate(resealed(bad)).ok);
        }
    }
    SUBCASE("positivity")
    {
        const auto z = cycle::build_zG(2).chain();
        const auto file = io::positivity_certificate_file(z, cosharbly::mu_sign_certificate(z));
        CHECK(io::check_certificate(file).ok);
        auto bad = file;
        bad["payload"]["certificate"]["terms"][0]["verdict"] = "proper-negative";
        CHECK_FALSE(io::check_certificate(resealed(bad)).ok);
    }
    SUBCASE("triangulation and flips")
    {
        const auto config = pyramid();
        const polytope::Triangulation t{{0, 1, 2, 4}, {0, 2, 3, 4}};
        const auto file = io::triangulation_certificate_file(config, t, polytope::is_regular(config, t));
        CHECK(io::check_certificate(file).ok);
        auto bad = file;
        bad["payload"]["triangulation"][0][0] = 3;
        CHECK_FALSE(io::check_certificate(resealed(bad)).ok);

        const polytope::Triangulation other{{0, 1, 3, 4}, {1, 2, 3, 4}};
        const auto path = polytope::flip_path(config, t, other);
        const auto flips = io::flip_certificate_file(config, t, path);
        CHECK(io::check_certificate(flips).ok);
        bad = flips;
        bad["payload"]["flips"][0]["signs"][0] = -1;
        CHECK_FALSE(io::check_certificate(resealed(bad)).ok);
    }
    SUBCASE("census")
    {
        const auto form = voronoi::find_dataset_form("A3");
        const auto tile = voronoi::tile_of(voronoi::form_from_minvecs(form.vectors));
        const auto file = io::census_certificate_file(form.vectors, voronoi::tile_facets(tile));
        CHECK(io::check_certificate(file).ok);
        auto bad = file;
        bad["payload"]["census"]["5"] = 7;
        CHECK_FALSE(io::check_certificate(resealed(bad)).ok);
    }
    CHECK_FALSE(io::check_certificate(json{{"kind", "boundary"}}).ok);
}
