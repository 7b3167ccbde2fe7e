#include "akcotton/geometry_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "akcotton/errors.hpp"

namespace akc {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

Vec3 vec3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) field_error(path, "expected an array of 3 numbers");
  Vec3 v{};
  for (std::size_t k = 0; k < kDim; ++k)
    v[k] = number_at(j[k], path + "[" + std::to_string(k) + "]");
  return v;
}

Mat3 mat3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) field_error(path, "expected a 3x3 array");
  Mat3 m{};
  for (std::size_t r = 0; r < kDim; ++r) m[r] = vec3_at(j[r], path + "[" + std::to_string(r) + "]");
  return m;
}

std::size_t index_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer in 1..3");
  const auto v = j.get<long long>();
  if (v < 1 || v > 3) field_error(path, "index " + std::to_string(v) + " out of range 1..3");
  return std::size_t(v - 1);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      field_error(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) field_error(path + "." + key, "missing required field");
  return obj.at(key);
}

MetricLieAlgebra3 from_bracket_list(const json& list) {
  if (!list.is_array()) field_error("brackets", "expected an array of {i, j, coeffs}");
  MetricLieAlgebra3 algebra;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t n = 0; n < list.size(); ++n) {
    const std::string path = "brackets[" + std::to_string(n) + "]";
    const json& entry = list[n];
    if (!entry.is_object()) field_error(path, "expected an object {i, j, coeffs}");
    check_keys(entry, path, {"i", "j", "coeffs"});
    const std::size_t i = index_at(require(entry, path, "i"), path + ".i");
    const std::size_t j = index_at(require(entry, path, "j"), path + ".j");
    if (i == j) field_error(path, "i and j must differ");
    if (!seen.insert(std::minmax(i, j)).second)
      field_error(path, "bracket of this pair already given");
    algebra.set_bracket(i, j, vec3_at(require(entry, path, "coeffs"), path + ".coeffs"));
  }
  return algebra;
}

}  // namespace

MetricLieAlgebra3 parse_geometry(const std::string& text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("geometry document must be a JSON object");
  check_keys(doc, "", {"brackets", "metric", "kenmotsu", "nonunimodular"});

  const int sources = int(doc.contains("brackets")) + int(doc.contains("kenmotsu")) +
                      int(doc.contains("nonunimodular"));
  if (sources != 1)
    throw ParseError("geometry needs exactly one of 'brackets', 'kenmotsu', 'nonunimodular'");

  MetricLieAlgebra3 algebra;
  if (doc.contains("brackets")) {
    algebra = from_bracket_list(doc["brackets"]);
  } else if (doc.contains("kenmotsu")) {
    const json& k = doc["kenmotsu"];
    if (!k.is_object()) field_error("kenmotsu", "expected an object {lambda, b, c}");
    check_keys(k, "kenmotsu", {"lambda", "b", "c"});
    const double lambda = number_at(require(k, "kenmotsu", "lambda"), "kenmotsu.lambda");
    const double b = k.contains("b") ? number_at(k["b"], "kenmotsu.b") : 0.0;
    const double c = k.contains("c") ? number_at(k["c"], "kenmotsu.c") : 0.0;
    if (!(lambda > 0.0)) field_error("kenmotsu.lambda", "must be > 0");
    algebra = from_kenmotsu_params(lambda, b, c, tol);
  } else {
    const json& u = doc["nonunimodular"];
    if (!u.is_object()) field_error("nonunimodular", "expected an object {alpha, beta}");
    check_keys(u, "nonunimodular", {"alpha", "beta"});
    algebra = from_nonunimodular(
        number_at(require(u, "nonunimodular", "alpha"), "nonunimodular.alpha"),
        number_at(require(u, "nonunimodular", "beta"), "nonunimodular.beta"));
  }
  if (doc.contains("metric")) algebra = algebra.with_metric(mat3_at(doc["metric"], "metric"));

  const ValidityReport report = validate(algebra, tol);
  if (!report.valid()) {
    std::ostringstream msg;
    msg << "invalid geometry:";
    for (const Violation& v : report.violations) {
      msg << " " << to_string(v.kind) << "(";
      for (std::size_t k = 0; k < 3; ++k)
        if (v.indices[k] >= 0) msg << (k ? "," : "") << v.indices[k] + 1;
      msg << ")=" << v.magnitude;
    }
    throw ValidationError(msg.str());
  }
  return algebra;
}

MetricLieAlgebra3 load_geometry(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open geometry file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_geometry(buf.str(), tol);
}

nlohmann::json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

nlohmann::json mat3_to_json(const Mat3& m) {
  return json::array({vec3_to_json(m[0]), vec3_to_json(m[1]), vec3_to_json(m[2])});
}

nlohmann::json tensor3_to_json(const Tensor3& t) {
  return json::array({mat3_to_json(t.t[0]), mat3_to_json(t.t[1]), mat3_to_json(t.t[2])});
}

Vec3 vec3_from_json(const nlohmann::json& j) { return vec3_at(j, "vector"); }
Mat3 mat3_from_json(const nlohmann::json& j) { return mat3_at(j, "matrix"); }

Tensor3 tensor3_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3x3x3 array");
  Tensor3 t;
  for (std::size_t i = 0; i < kDim; ++i) t.t[i] = mat3_from_json(j[i]);
  return t;
}

nlohmann::json geometry_to_json(const MetricLieAlgebra3& algebra) {
  return {{"structure_constants", tensor3_to_json(algebra.structure())},
          {"metric", mat3_to_json(algebra.metric())}};
}

}  // namespace akc
