#include "wigrep/json_io.hpp"

#include <cmath>
#include <fstream>

namespace wigrep::io {

namespace {

double parse_real(const json& j) {
  if (!j.is_number()) throw ParseError("expected a number, got " + j.dump());
  return j.get<double>();
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

cplx parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers are [re, im], got " + j.dump());
  return {parse_real(j[0]), parse_real(j[1])};
}

CVector parse_vector(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty list of complex numbers");
  CVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = parse_complex(j[i]);
  return v;
}

CMatrix parse_matrix(const json& j, Index rows, Index cols) {
  if (!j.is_array()) throw ParseError("expected a matrix");
  CMatrix m(rows, cols);
  const bool nested = !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (nested) {
    if (static_cast<Index>(j.size()) != rows) throw ParseError("matrix has the wrong number of rows");
    for (Index r = 0; r < rows; ++r) {
      const json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw ParseError("matrix row has the wrong length");
      for (Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
    }
  } else {
    if (static_cast<Index>(j.size()) != rows * cols) throw ParseError("flat matrix has the wrong number of entries");
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c) m(r, c) = parse_complex(j[static_cast<std::size_t>(r * cols + c)]);
  }
  return m;
}

CMatrix parse_square(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty matrix");
  const bool nested = j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  Index d = 0;
  if (nested) {
    d = static_cast<Index>(j.size());
  } else {
    d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(j.size()))));
    if (d * d != static_cast<Index>(j.size())) throw ParseError("flat matrix length is not a square");
  }
  return parse_matrix(j, d, d);
}

AlgebraPtr parse_algebra(const json& j, const Tolerance& tol) {
  const json& dim = require(j, "ambient_dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) throw ParseError("ambient_dim must be a positive integer");
  const Index d = dim.get<Index>();
  std::vector<CMatrix> gens;
  if (j.contains("generators")) {
    const json& list = j.at("generators");
    if (!list.is_array()) throw ParseError("generators must be a list of matrices");
    for (const auto& g : list) gens.push_back(parse_matrix(g, d, d));
  }
  return make_algebra(d, gens, tol);
}

State parse_state(const json& j, const MatrixAlgebra& alg) {
  if (!j.is_object()) throw ParseError("state must be an object");
  if (j.contains("values")) {
    State s{parse_vector(j.at("values"))};
    if (s.values.size() != alg.size())
      throw ParseError("state has " + std::to_string(s.values.size()) + " values, algebra has N = " +
                       std::to_string(alg.size()));
    return s;
  }
  if (j.contains("vector")) {
    const CVector v = parse_vector(j.at("vector"));
    if (v.size() != alg.ambient_dim()) throw ParseError("state vector length != ambient_dim");
    return vector_state(alg, v);
  }
  if (j.contains("density")) return state_from_density(alg, parse_matrix(j.at("density"), alg.ambient_dim(), alg.ambient_dim()));
  throw ParseError("state needs one of 'values', 'vector', 'density'");
}

Automorphism parse_automorphism(const json& j, const MatrixAlgebra& alg, const Tolerance& tol) {
  if (!j.is_object()) throw ParseError("automorphism must be an object");
  if (j.contains("named")) {
    const json& name = j.at("named");
    if (!name.is_string()) throw ParseError("'named' must be a string");
    const auto s = name.get<std::string>();
    if (s == "identity") return Automorphism::identity(alg);
    if (s == "swap_blocks") return swap_blocks(alg, tol);
    throw ParseError("unknown named automorphism '" + s + "'");
  }
  if (j.contains("matrix")) return Automorphism::from_matrix(alg, parse_matrix(j.at("matrix"), alg.size(), alg.size()), tol);
  if (j.contains("inner_unitary")) {
    const CMatrix u = parse_matrix(j.at("inner_unitary"), alg.ambient_dim(), alg.ambient_dim());
    const double off = alg.span_residual(u);
    if (!(off <= tol.abs)) throw Error(ErrorCode::NotInAlgebra, "inner_unitary is not in the algebra (residual " + std::to_string(off) + ")");
    return inner_automorphism(alg, AlgebraElement{alg.coords(u)}, tol);
  }
  if (j.contains("spatial_unitary"))
    return spatial_automorphism(alg, parse_matrix(j.at("spatial_unitary"), alg.ambient_dim(), alg.ambient_dim()), tol);
  throw ParseError("automorphism needs one of 'named', 'matrix', 'inner_unitary', 'spatial_unitary'");
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// + 0.0 maps -0.0 to 0.0
json to_json(cplx z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const ValidationReport& r) {
  json out = json::array();
  for (const auto& c : r.checks())
    out.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  return out;
}

}  // namespace wigrep::io
