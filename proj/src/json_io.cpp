#include "qcomp/json_io.hpp"

#include <fstream>

namespace qcomp {

namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(what + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

std::size_t positive_size(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw InvalidInput(what + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

void check_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
    throw InvalidInput(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                       ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw InvalidInput(what + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw InvalidInput(what + ": rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols) throw InvalidInput(what + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw InvalidInput(what + ": entries must be [re, im] number pairs");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  require_finite(m, what.c_str());
  return m;
}

Json channel_to_json(const QuantumChannel& channel) {
  Json kraus = Json::array();
  for (const Matrix& v : channel.kraus()) kraus.push_back(matrix_to_json(v));
  Json out;
  out["label"] = channel.label();
  out["dim_in"] = channel.dim_in();
  out["dim_out"] = channel.dim_out();
  out["kraus"] = std::move(kraus);
  return out;
}

QuantumChannel channel_from_json(const Json& j, const Tolerance& tol) {
  const std::string what = "channel";
  std::string label;
  if (j.is_object() && j.contains("label")) {
    if (!j["label"].is_string()) throw InvalidInput("channel: label must be a string");
    label = j["label"].get<std::string>();
  }
  const std::size_t n = positive_size(field(j, "dim_in", what), "channel.dim_in");
  const std::size_t m = positive_size(field(j, "dim_out", what), "channel.dim_out");
  const Json& kraus = field(j, "kraus", what);
  if (!kraus.is_array() || kraus.empty()) throw InvalidInput("channel.kraus must be a non-empty array");
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    const std::string name = "channel.kraus[" + std::to_string(i) + "]";
    Matrix v = matrix_from_json(kraus[i], name);
    check_shape(v, m, n, name);
    ops.push_back(std::move(v));
  }
  return QuantumChannel(KrausMap(n, m, std::move(ops)), label, tol);
}

Json algebra_spec_to_json(const AlgebraSpec& spec) {
  Json gens = Json::array();
  for (const Matrix& g : spec.generators) gens.push_back(matrix_to_json(g));
  Json out;
  out["ambient_dim"] = spec.ambient_dim;
  out["generators"] = std::move(gens);
  out["include_identity"] = spec.include_identity;
  return out;
}

AlgebraSpec algebra_spec_from_json(const Json& j) {
  const std::string what = "algebra";
  AlgebraSpec spec;
  spec.ambient_dim = positive_size(field(j, "ambient_dim", what), "algebra.ambient_dim");
  const Json& gens = field(j, "generators", what);
  if (!gens.is_array()) throw InvalidInput("algebra.generators must be an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string name = "algebra.generators[" + std::to_string(i) + "]";
    Matrix g = matrix_from_json(gens[i], name);
    check_shape(g, spec.ambient_dim, spec.ambient_dim, name);
    spec.generators.push_back(std::move(g));
  }
  if (j.contains("include_identity")) {
    if (!j["include_identity"].is_boolean()) {
      throw InvalidInput("algebra.include_identity must be a boolean");
    }
    spec.include_identity = j["include_identity"].get<bool>();
  }
  return spec;
}

MatrixAlgebra build_algebra(const AlgebraSpec& spec, const Tolerance& tol) {
  if (spec.generators.empty() && !spec.include_identity) {
    return MatrixAlgebra::trusted(OperatorSubspace(spec.ambient_dim), tol);
  }
  if (spec.generators.empty()) {
    const auto n = static_cast<Eigen::Index>(spec.ambient_dim);
    const Matrix id = Matrix::Identity(n, n);
    return algebra_from_generators(std::span<const Matrix>(&id, 1), true, tol);
  }
  return algebra_from_generators(std::span<const Matrix>(spec.generators), spec.include_identity,
                                 tol);
}

Json verdict_to_json(const CodeVerdict& v) {
  Json out;
  out["kind"] = to_string(v.kind);
  out["deviation"] = v.deviation;
  out["witness"] = v.witness ? matrix_to_json(*v.witness) : Json(nullptr);
  out["details"] = v.details;
  return out;
}

Json audit_to_json(const InequalityAudit& a) {
  Json out;
  out["name"] = a.name;
  out["lhs"] = a.lhs;
  out["rhs"] = a.rhs;
  out["holds"] = a.holds;
  out["saturated"] = a.saturated;
  out["applicable"] = a.applicable;
  out["notes"] = a.notes;
  return out;
}

Json tolerance_to_json(const Tolerance& tol) {
  Json out;
  out["rank_rel"] = tol.rank_rel;
  out["eig_cluster"] = tol.eig_cluster;
  out["equality_abs"] = tol.equality_abs;
  out["seed"] = tol.seed;
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

}  // namespace qcomp
