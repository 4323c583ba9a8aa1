#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcomp/json_io.hpp"

namespace qcomp {

struct NamedAlgebra {
  std::string name;
  AlgebraSpec spec;
};

struct AnalysisRequest {
  QuantumChannel channel;
  std::vector<NamedAlgebra> algebras;  // the first two play the roles A and B in the audits
  std::optional<Matrix> q;             // defaults to each algebra's unit projection
};

/// Full report: complement, kernel, multiplicative domain, per-algebra
/// verdicts, unital extras and inequality audits. Key order is fixed so
/// that the serialized report is reproducible byte for byte.
Json analyze(const AnalysisRequest& request, const Tolerance& tol);

/// Human-readable summary of a report produced by analyze().
std::string render_report(const Json& report);

}  // namespace qcomp
