#pragma once

#include <string>
#include <vector>

#include "qcomp/analysis.hpp"

namespace qcomp {

/// A built-in example with its expected analysis facts. `expected` maps
/// JSON pointers into the report to either an exact value or a bound
/// object {"max": x} / {"min": x}.
struct GalleryCase {
  std::string id;
  std::string description;
  AnalysisRequest request;
  Json expected;
};

std::vector<GalleryCase> gallery_cases(const Tolerance& tol);

/// Throws InvalidInput for unknown ids.
GalleryCase gallery_case(const std::string& id, const Tolerance& tol);

struct CaseCheck {
  std::string id;
  bool passed = false;
  std::vector<std::string> failures;
  Json report;  // null when the analysis threw
};

/// Runs the analysis and compares it against the expectations. Exceptions
/// raised by the pipeline are recorded as failures.
CaseCheck check_case(const GalleryCase& c, const Tolerance& tol);

/// Compare `report` against `expected`; returns one message per mismatch.
std::vector<std::string> compare_expectations(const Json& report, const Json& expected);

// Small builders shared with the tests.
Matrix pauli(char which);
Matrix kron_all(const std::vector<Matrix>& factors);
Matrix matrix_unit(std::size_t n, std::size_t row, std::size_t col);
/// Matrix units |a><b| for a, b in `indices`, as algebra generators.
std::vector<Matrix> matrix_units_on(std::size_t n, const std::vector<std::size_t>& indices);

}  // namespace qcomp
