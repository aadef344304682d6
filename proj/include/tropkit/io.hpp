#pragma once

#include <string>

#include <json.hpp>

#include "tropkit/tropmat.hpp"

namespace tropkit {

using json = nlohmann::json;

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& q);

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Tag tag);
Scalar parse_scalar(const std::string& token, Tag tag);

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, Tag tag);

json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const json& j);
Matrix matrix_from_csv(const std::string& text, Tag tag);

json interval_matrix_to_json(const IntervalMatrix& M);
IntervalMatrix interval_matrix_from_json(const json& j);

}  // namespace tropkit
