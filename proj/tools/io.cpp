#include "io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>

namespace qp::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

} // namespace

json load(const std::string& source) {
    std::string text;
    if (source == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
        text = source;
    } else {
        std::ifstream in(source);
        if (!in) throw SchemaError("cannot open '" + source + "'");
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

json to_json(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

json to_json(const MatrixC& M) {
    json a = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) a.push_back(to_json(CVector(M.row(i).transpose())));
    return a;
}

json to_json(const BinaryForm& f) { return {{"degree", f.degree()}, {"coeffs", to_json(f.coeffs())}}; }

json to_json(const DiagonalIntersection& X) { return {{"n", X.n}, {"lambdas", to_json(X.lambdas)}}; }

json to_json(const SurfacePoint& p) { return {{"coords", to_json(p.x())}}; }

json to_json(const RefinedSample& s) { return {{"alphas", to_json(s.alphas)}, {"v", to_json(s.v.coords())}}; }

json to_json(const ModuliInvariant& m) { return {{"n", m.n}, {"canon", to_json(m.canon)}}; }

Complex complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw SchemaError("complex numbers are [re, im] pairs");
}

std::vector<Complex> complex_list(const json& j) {
    if (!j.is_array()) throw SchemaError("expected an array of complex numbers");
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(complex_from(e));
    return out;
}

CVector vector_from(const json& j) { return to_eigen(complex_list(j)); }

MatrixC matrix_from(const json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("expected a nonempty matrix");
    const auto rows = static_cast<Eigen::Index>(j.size());
    MatrixC M;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto r = complex_list(j[i]);
        if (i == 0) M.resize(rows, static_cast<Eigen::Index>(r.size()));
        if (static_cast<Eigen::Index>(r.size()) != M.cols()) throw SchemaError("matrix rows differ in length");
        for (Eigen::Index k = 0; k < M.cols(); ++k) M(i, k) = r[k];
    }
    return M;
}

BinaryForm form_from(const json& j) {
    const auto c = complex_list(field(j, "coeffs"));
    if (j.contains("degree") && int_field(j, "degree") + 1 != static_cast<int>(c.size()))
        throw SchemaError("degree does not match the number of coefficients");
    if (c.empty()) throw SchemaError("binary form needs coefficients");
    return BinaryForm(c);
}

Pencil pencil_from(const json& j) {
    const MatrixC A1 = matrix_from(field(j, "phi1")), A2 = matrix_from(field(j, "phi2"));
    if (j.contains("n") && (int_field(j, "n") != A1.rows() || int_field(j, "n") != A2.rows()))
        throw SchemaError("n does not match the matrix size");
    if (A1.rows() != A1.cols() || A2.rows() != A2.cols() || A1.rows() != A2.rows())
        throw Error(ErrorKind::DimensionMismatch, "forms must be square of equal size");
    return Pencil(A1, A2);
}

DiagonalIntersection variety_from(const json& j) {
    const auto lam = complex_list(field(j, "lambdas"));
    if (j.contains("n") && int_field(j, "n") + 3 != static_cast<int>(lam.size()))
        throw Error(ErrorKind::LengthMismatch, "a variety of dimension n needs n + 3 lambdas");
    return make_variety(lam);
}

SurfacePoint point_from(const json& j, const DiagonalIntersection& X) {
    return make_point(X, vector_from(field(j, "coords")));
}

RefinedSample sample_from(const json& j) {
    RefinedSample s;
    s.alphas = complex_list(field(j, "alphas"));
    s.v = ProjectiveVector(vector_from(field(j, "v")));
    return s;
}

} // namespace qp::io
