#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wigrep/algebra.hpp"
#include "wigrep/validation.hpp"

namespace wigrep::io {

using nlohmann::json;

/// Malformed input: bad JSON, wrong shapes, bad complex literals.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

cplx parse_complex(const json& j);
/// Flat row-major list of d*d complex numbers, or d rows of d.
CMatrix parse_matrix(const json& j, Index rows, Index cols);
CMatrix parse_square(const json& j);
CVector parse_vector(const json& j);

/// {ambient_dim, generators}
AlgebraPtr parse_algebra(const json& j, const Tolerance& tol = {});
/// {values} | {vector} | {density}
State parse_state(const json& j, const MatrixAlgebra& alg);
/// {matrix} | {inner_unitary} | {spatial_unitary} | {named: "swap_blocks" | "identity"}.
/// spatial_unitary is an ambient unitary normalizing the algebra, not necessarily inside it.
Automorphism parse_automorphism(const json& j, const MatrixAlgebra& alg, const Tolerance& tol = {});

json load_file(const std::string& path);

json to_json(cplx z);
json to_json(const CVector& v);
json to_json(const CMatrix& m);  // list of rows
json to_json(const ValidationReport& r);

}  // namespace wigrep::io
