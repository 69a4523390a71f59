// Serialization: algebra elements as JSON arrays of 8 numbers (or exact
// rational strings "p/q"), representations and triangles as JSON objects
// with row-major matrix arrays, and a plain-text matrix format for interop.

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "biquat/hcore.hpp"
#include "biquat/periods.hpp"
#include "biquat/reps.hpp"

namespace biquat {

using Json = nlohmann::json;

// Structure tables serialize as parameters plus a backend tag; the table
// itself is reproducible from them.
Json to_json(const Algebra<double>& alg);
Json to_json(const Algebra<Rational>& alg);
Algebra<double> algebra_from_json(const Json& j);
Algebra<Rational> algebra_exact_from_json(const Json& j);

Json to_json(const Vec8<double>& v);
Json to_json(const Vec8<Rational>& v);
Vec8<double> vec8_from_json(const Json& j);
Vec8<Rational> vec8_exact_from_json(const Json& j);

Json to_json(const Eigen::MatrixXd& m);  // row-major flat array
Eigen::MatrixXd matrix_from_json(const Json& j, int rows, int cols);

Json to_json(const MatRep& rep);
MatRep matrep_from_json(const Json& j);

Json to_json(const Triangle& tri);
Triangle triangle_from_json(const Json& j, double tol = 1e-8);

Json to_json(const TwistorSphere& s);
TwistorSphere sphere_from_json(const Json& j, double tol = 1e-8);

// Plain-text format: first line "d", then blocks of d lines with d
// whitespace-separated entries, one block per matrix.
void write_matrices_text(std::ostream& os,
                         const std::vector<Eigen::MatrixXd>& mats);
std::vector<Eigen::MatrixXd> read_matrices_text(std::istream& is);

// %.17g rendering used by the text output paths.
std::string format_double(double x);

}  // namespace biquat
