#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>
#include <quadpencil/quadpencil.hpp>

namespace qp::io {

using nlohmann::json;

// Malformed or mistyped input; the CLI maps it to exit status 2.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A file path, inline JSON (leading '{' or '['), or "-" for stdin.
json load(const std::string& source);

json to_json(Complex z);
json to_json(const CVector& v);
json to_json(const std::vector<Complex>& v);
json to_json(const MatrixC& M);
json to_json(const BinaryForm& f);
json to_json(const DiagonalIntersection& X);
json to_json(const SurfacePoint& p);
json to_json(const RefinedSample& s);
json to_json(const ModuliInvariant& m);

Complex complex_from(const json& j);
std::vector<Complex> complex_list(const json& j);
CVector vector_from(const json& j);
MatrixC matrix_from(const json& j);
BinaryForm form_from(const json& j);
Pencil pencil_from(const json& j);
DiagonalIntersection variety_from(const json& j);
SurfacePoint point_from(const json& j, const DiagonalIntersection& X);
RefinedSample sample_from(const json& j);

} // namespace qp::io
