#pragma once

// JSON forms of chains and certificates, and the certificate envelope with its
// SHA-256 digest. Rationals are written as "p/q" strings.

#include "shc/cosharbly.hpp"
#include "shc/cycle.hpp"
#include "shc/polytope.hpp"
#include "shc/sharbly.hpp"

#include <json.hpp>

#include <string>

namespace shc::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

/// Lowercase hex SHA-256 of the compact dump.
std::string digest(const json& j);
std::string sha256_hex(const std::string& bytes);

json to_json(const exactq::Rational& q);
json to_json(const exactq::IntVector& v);
json to_json(const voronoi::GroupElement& g);
json to_json(const sharbly::BasicSharbly& b);
json to_json(const sharbly::SharblyChain& c);
json to_json(const cycle::CycleChain& z);
json to_json(const cycle::BoundaryCertificate& cert);
json to_json(const cosharbly::PositivityCertificate& cert);
json to_json(const polytope::Triangulation& t);
json to_json(const polytope::PointConfiguration& config);
json to_json(const polytope::Flip& flip);

exactq::Rational rational_from_json(const json& j);
exactq::IntVector int_vector_from_json(const json& j);
voronoi::GroupElement group_element_from_json(const json& j);
sharbly::BasicSharbly basic_from_json(const json& j);
sharbly::SharblyChain chain_from_json(const json& j);
cycle::CycleChain cycle_from_json(const json& j);
cycle::BoundaryCertificate boundary_certificate_from_json(const json& j);
cosharbly::PositivityCertificate positivity_certificate_from_json(const json& j);
polytope::Triangulation triangulation_from_json(const json& j);
polytope::PointConfiguration configuration_from_json(const json& j);
polytope::Flip flip_from_json(const json& j);

/// {schema_version, kind, input_hash, payload, digest}.
json make_certificate(const std::string& kind, const std::string& input_hash, json payload);

json boundary_certificate_file(const cycle::CycleChain& z, const cycle::BoundaryCertificate& cert);
json positivity_certificate_file(const sharbly::SharblyChain& z, const cosharbly::PositivityCertificate& cert);
/// heights empty means the triangulation is only claimed to be valid.
json triangulation_certificate_file(const polytope::PointConfiguration& config, const polytope::Triangulation& t,
                                    const std::optional<polytope::LiftingHeights>& heights);
json flip_certificate_file(const polytope::PointConfiguration& config, const polytope::Triangulation& start,
                           const std::vector<polytope::Flip>& flips);
json census_certificate_file(const std::vector<exactq::IntVector>& vectors,
                             const std::vector<std::vector<polytope::Label>>& facets);

/// Recomputes the digest and every arithmetic claim of the payload. Never
/// runs a search.
cycle::CheckResult check_certificate(const json& cert);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace shc::io
