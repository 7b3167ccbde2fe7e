#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "akcotton/frame_algebra.hpp"

namespace akc {

/// Geometry documents are JSON objects with exactly one of
///
///   "brackets":      [{"i": 1, "j": 2, "coeffs": [c1, c2, c3]}, ...]
///                    ([e_i, e_j] = c1 e1 + c2 e2 + c3 e3, indices 1-based,
///                    unlisted pairs zero)
///   "kenmotsu":      {"lambda": l, "b": b, "c": c}   (b, c default 0)
///   "nonunimodular": {"alpha": a, "beta": b}
///
/// and an optional "metric": 3x3 array (default identity).
///
/// Throws ParseError with the JSON line/column or the offending field path,
/// ValidationError when the result fails validate(), and JacobiViolation for
/// kenmotsu constants that admit no Lie algebra.
MetricLieAlgebra3 parse_geometry(const std::string& text, double tol = kDefaultTolerance);

/// Throws FileNotFound if the path cannot be read, then as parse_geometry.
MetricLieAlgebra3 load_geometry(const std::filesystem::path& path,
                                double tol = kDefaultTolerance);

nlohmann::json mat3_to_json(const Mat3& m);
nlohmann::json vec3_to_json(const Vec3& v);
nlohmann::json tensor3_to_json(const Tensor3& t);
Mat3 mat3_from_json(const nlohmann::json& j);
Vec3 vec3_from_json(const nlohmann::json& j);
Tensor3 tensor3_from_json(const nlohmann::json& j);

/// Structure constants and metric as they appear in machine reports.
nlohmann::json geometry_to_json(const MetricLieAlgebra3& algebra);

}  // namespace akc
