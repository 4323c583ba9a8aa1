#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcomp/algebra.hpp"
#include "qcomp/channel.hpp"
#include "qcomp/codes.hpp"
#include "qcomp/tradeoff.hpp"

namespace qcomp {

using Json = nlohmann::ordered_json;

/// Complex matrices are row-major nested arrays of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what);

struct AlgebraSpec {
  std::size_t ambient_dim = 0;
  std::vector<Matrix> generators;
  bool include_identity = false;
};

Json channel_to_json(const QuantumChannel& channel);
QuantumChannel channel_from_json(const Json& j, const Tolerance& tol);

Json algebra_spec_to_json(const AlgebraSpec& spec);
AlgebraSpec algebra_spec_from_json(const Json& j);
MatrixAlgebra build_algebra(const AlgebraSpec& spec, const Tolerance& tol);

Json verdict_to_json(const CodeVerdict& v);
Json audit_to_json(const InequalityAudit& a);
Json tolerance_to_json(const Tolerance& tol);

/// Parse errors and missing files are reported as InvalidInput.
Json load_json_file(const std::string& path);

}  // namespace qcomp
