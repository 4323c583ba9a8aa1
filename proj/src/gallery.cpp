#include "qcomp/gallery.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qcomp {

Matrix pauli(char which) {
  Matrix p = Matrix::Zero(2, 2);
  switch (which) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw InvalidInput(std::string("unknown Pauli ") + which);
  }
  return p;
}

Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

Matrix matrix_unit(std::size_t n, std::size_t row, std::size_t col) {
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix e = Matrix::Zero(ni, ni);
  e(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return e;
}

std::vector<Matrix> matrix_units_on(std::size_t n, const std::vector<std::size_t>& indices) {
  std::vector<Matrix> out;
  for (std::size_t a : indices)
    for (std::size_t b : indices) out.push_back(matrix_unit(n, a, b));
  return out;
}

namespace {

Matrix pauli_string(const std::string& s) {
  std::vector<Matrix> f;
  for (char c : s) f.push_back(pauli(c));
  return kron_all(f);
}

NamedAlgebra named(std::string name, std::size_t n, std::vector<Matrix> gens, bool with_id) {
  return {std::move(name), AlgebraSpec{n, std::move(gens), with_id}};
}

NamedAlgebra scalars(std::size_t n) { return named("CI", n, {}, true); }

NamedAlgebra diagonal(std::size_t n) {
  std::vector<Matrix> gens;
  for (std::size_t k = 0; k < n; ++k) gens.push_back(matrix_unit(n, k, k));
  return named("diagonal", n, std::move(gens), false);
}

QuantumChannel diagonal_expectation(std::size_t n, const Tolerance& tol) {
  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < n; ++k) kraus.push_back(matrix_unit(n, k, k));
  return QuantumChannel(std::move(kraus), "diag-expectation-n" + std::to_string(n), tol);
}

Json bound_max(double x) { return Json{{"max", x}}; }

GalleryCase identity_n2(const Tolerance& tol) {
  GalleryCase c{"identity-n2", "identity channel on M_2",
                {QuantumChannel({Matrix::Identity(2, 2)}, "identity-n2", tol),
                 {named("M2", 2, matrix_units_on(2, {0, 1}), false), scalars(2)},
                 std::nullopt},
                Json::object()};
  c.expected = {
      {"/channel/choi_rank", 1},
      {"/complement/dim_out", 1},
      {"/kernel/dim", 0},
      {"/multiplicative_domain/dim", 4},
      {"/unital_extras/sum", 4},
      {"/unital_extras/is_projection", true},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/0/private/kind", "neither"},
      {"/algebras/0/complement_private/kind", "private"},
      {"/algebras/0/complementarity_identity/lhs_dim", 4},
      {"/algebras/0/complementarity_identity/rhs_dim", 4},
      {"/algebras/0/complementarity_identity/holds", true},
      {"/algebras/0/complement_rank_bound/lhs", 1.0},
      {"/algebras/0/complement_rank_bound/saturated", true},
      {"/algebras/1/correctable/kind", "correctable"},
      {"/algebras/1/private/kind", "private"},
      {"/algebras/1/privatized_to_state/privatized", true},
      {"/audits/0/lhs", 4.0},
      {"/audits/0/saturated", true},
      {"/audits/0/applicable", true},
      {"/audits/1/rhs", 1.0},
      {"/audits/1/saturated", true},
  };
  return c;
}

GalleryCase qubit4_bitflip(const Tolerance& tol) {
  std::vector<Matrix> kraus;
  for (const char* s : {"IIII", "XIII", "IXII", "IIXI"}) kraus.push_back(0.5 * pauli_string(s));
  // C0 = span{|0000>, |1111>}, C1 = span{|0001>, |1110>}
  std::vector<Matrix> gens = matrix_units_on(16, {0, 15});
  for (Matrix& m : matrix_units_on(16, {1, 14})) gens.push_back(std::move(m));
  GalleryCase c{"qubit4-bitflip",
                "independent bit flips on the first three of four qubits, hybrid code L(C0)+L(C1)",
                {QuantumChannel(std::move(kraus), "qubit4-bitflip", tol),
                 {named("hybrid-code", 16, std::move(gens), false)},
                 std::nullopt},
                Json::object()};
  c.expected = {
      {"/channel/choi_rank", 4},
      {"/channel/unital", true},
      {"/complement/dim_out", 4},
      {"/kernel/dim", 96},
      {"/multiplicative_domain/dim", 32},
      {"/multiplicative_domain/routes_distance", bound_max(1e-8)},
      {"/kernel_duality/distance", bound_max(1e-8)},
      {"/unital_extras/sum", 128},
      {"/unital_extras/is_projection", false},
      {"/unital_extras/complement_symmetry", bound_max(1e-8)},
      {"/algebras/0/dim", 8},
      {"/algebras/0/q_rank", 4},
      {"/algebras/0/commutant_dim", 146},
      {"/algebras/0/center_dim", 2},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/0/correctable/deviation", bound_max(1e-9)},
      {"/algebras/0/private/kind", "neither"},
      {"/algebras/0/complement_private/kind", "private"},
      {"/algebras/0/consistent", true},
      {"/algebras/0/kernel_duality_distance", bound_max(1e-8)},
      {"/algebras/0/pi/round_trip_error", bound_max(1e-8)},
      {"/algebras/0/generalized_mult_domain/dim", 8},
      {"/algebras/0/generalized_mult_domain/distance_to_algebra", bound_max(1e-8)},
      {"/algebras/0/complementarity_identity", nullptr},
      {"/algebras/0/complement_rank_bound/holds", true},
      {"/algebras/0/complement_rank_bound/rhs", 2.0},
  };
  return c;
}

GalleryCase m3_counterexample(const Tolerance& tol) {
  Matrix v1 = matrix_unit(3, 0, 0) + matrix_unit(3, 1, 1);
  Matrix v2 = matrix_unit(3, 1, 2);
  GalleryCase c{"m3-counterexample",
                "non-unital channel on M_3 correcting M2+0 and privatizing 0+M2",
                {QuantumChannel({v1, v2}, "m3-counterexample", tol),
                 {named("M2+0", 3, matrix_units_on(3, {0, 1}), false),
                  named("0+M2", 3, matrix_units_on(3, {1, 2}), false)},
                 std::nullopt},
                Json::object()};
  c.expected = {
      {"/channel/choi_rank", 2},
      {"/channel/unital", false},
      {"/kernel/dim", 5},
      {"/unital_extras", nullptr},
      {"/algebras/0/dim", 4},
      {"/algebras/0/unital", false},
      {"/algebras/0/commutant_dim", 2},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/0/complement_private/kind", "private"},
      {"/algebras/0/pi/round_trip_error", bound_max(1e-8)},
      {"/algebras/1/dim", 4},
      {"/algebras/1/commutant_dim", 2},
      {"/algebras/1/private/kind", "private"},
      {"/algebras/1/privatized_to_state/privatized", true},
      {"/audits/0/lhs", 16.0},
      {"/audits/0/rhs", 9.0},
      {"/audits/0/holds", false},
      {"/audits/0/applicable", false},
      {"/audits/1/applicable", false},
  };
  return c;
}

GalleryCase diag_expectation(std::size_t n, const Tolerance& tol) {
  const double nn = static_cast<double>(n);
  GalleryCase c{"diag-expectation-n" + std::to_string(n),
                "conditional expectation onto the diagonal of M_" + std::to_string(n),
                {diagonal_expectation(n, tol), {diagonal(n)}, std::nullopt},
                Json::object()};
  c.expected = {
      {"/channel/choi_rank", n},
      {"/complement/dim_out", n},
      {"/complement/superoperator_distance", bound_max(1e-8)},
      {"/kernel/dim", n * n - n},
      {"/multiplicative_domain/dim", n},
      {"/unital_extras/sum", n * n},
      {"/unital_extras/is_projection", true},
      {"/unital_extras/complement_symmetry", bound_max(1e-8)},
      {"/unital_extras/commutation_defect", bound_max(1e-8)},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/0/private/kind", "private"},
      {"/algebras/0/complement_private/kind", "private"},
      {"/algebras/0/complementarity_identity/holds", true},
      {"/algebras/0/complement_rank_bound/lhs", nn},
      {"/algebras/0/complement_rank_bound/saturated", true},
  };
  return c;
}

GalleryCase depolarizing_qubit(const Tolerance& tol) {
  std::vector<Matrix> kraus;
  for (char p : {'I', 'X', 'Y', 'Z'}) kraus.push_back(0.5 * pauli(p));
  GalleryCase c{"depolarizing-qubit", "completely depolarizing qubit channel",
                {QuantumChannel(std::move(kraus), "depolarizing-qubit", tol),
                 {scalars(2), named("M2", 2, matrix_units_on(2, {0, 1}), false)},
                 std::nullopt},
                Json::object()};
  c.expected = {
      {"/channel/choi_rank", 4},
      {"/complement/dim_out", 4},
      {"/kernel/dim", 3},
      {"/multiplicative_domain/dim", 1},
      {"/unital_extras/sum", 4},
      {"/unital_extras/is_projection", true},
      {"/unital_extras/factor", true},
      {"/unital_extras/factor_scalar_deviation", bound_max(1e-8)},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/1/correctable/kind", "neither"},
      {"/algebras/1/private/kind", "private"},
      {"/algebras/1/privatized_to_state/privatized", true},
      {"/audits/0/lhs", 4.0},
      {"/audits/0/saturated", true},
      {"/audits/0/applicable", true},
  };
  return c;
}

GalleryCase saturation_n4_k2(const Tolerance& tol) {
  std::vector<Matrix> kraus;
  const std::string letters = "IXYZ";
  for (char a : letters)
    for (char b : letters) kraus.push_back(0.25 * pauli_string(std::string{a, b, 'I', 'I'}));
  GalleryCase c{
      "saturation-n4-k2", "four qubits, first two completely depolarized",
      {QuantumChannel(std::move(kraus), "saturation-n4-k2", tol),
       {named("I4(x)M4", 16, {pauli_string("IIXI"), pauli_string("IIZI"), pauli_string("IIIX"),
                              pauli_string("IIIZ")},
              true),
        named("M4(x)I4", 16, {pauli_string("XIII"), pauli_string("ZIII"), pauli_string("IXII"),
                              pauli_string("IZII")},
              true)},
       std::nullopt},
      Json::object()};
  c.expected = {
      {"/channel/choi_rank", 16},
      {"/kernel/dim", 240},
      {"/multiplicative_domain/dim", 16},
      {"/unital_extras/sum", 256},
      {"/unital_extras/is_projection", true},
      {"/unital_extras/factor", true},
      {"/unital_extras/factor_scalar_deviation", bound_max(1e-8)},
      {"/unital_extras/commutation_defect", bound_max(1e-8)},
      {"/algebras/0/dim", 16},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/1/dim", 16},
      {"/algebras/1/privatized_to_state/privatized", true},
      {"/audits/0/lhs", 256.0},
      {"/audits/0/rhs", 256.0},
      {"/audits/0/saturated", true},
      {"/audits/0/applicable", true},
      {"/audits/1/saturated", true},
      {"/audits/3/rhs", 16.0},
  };
  return c;
}

GalleryCase tensor_pair_m4(const Tolerance& tol) {
  std::vector<Matrix> kraus;
  for (char b : {'I', 'X', 'Y', 'Z'}) kraus.push_back(0.5 * pauli_string(std::string{'I', b}));
  GalleryCase c{"tensor-pair-m4", "conditional expectation onto M2(x)I2 with B = I2(x)M2",
                {QuantumChannel(std::move(kraus), "tensor-pair-m4", tol),
                 {named("M2(x)I2", 4, {pauli_string("XI"), pauli_string("ZI")}, true),
                  named("I2(x)M2", 4, {pauli_string("IX"), pauli_string("IZ")}, true)},
                 std::nullopt},
                Json::object()};
  c.expected = {
      {"/multiplicative_domain/dim", 4},
      {"/unital_extras/sum", 16},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/0/complementarity_identity/holds", true},
      {"/algebras/1/privatized_to_state/privatized", true},
      {"/audits/0/lhs", 16.0},
      {"/audits/0/saturated", true},
      {"/audits/0/applicable", true},
      {"/audits/1/saturated", true},
      {"/audits/2/saturated", true},
  };
  return c;
}

GalleryCase unitary_conj(const Tolerance& tol) {
  const Eigen::Index n = 3;
  Matrix f(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index k = 0; k < n; ++k)
      f(r, k) = std::polar(1.0 / std::sqrt(3.0), 2.0 * std::numbers::pi * static_cast<double>(r * k) / 3.0);
  GalleryCase c{"unitary-conj", "conjugation by the 3x3 Fourier matrix",
                {QuantumChannel({f}, "unitary-conj", tol),
                 {named("M3", 3, matrix_units_on(3, {0, 1, 2}), false)},
                 std::nullopt},
                Json::object()};
  c.expected = {
      {"/channel/choi_rank", 1},
      {"/complement/dim_out", 1},
      {"/kernel/dim", 0},
      {"/multiplicative_domain/dim", 9},
      {"/algebras/0/correctable/kind", "correctable"},
      {"/algebras/0/complementarity_identity/lhs_dim", 9},
      {"/algebras/0/complementarity_identity/rhs_dim", 9},
      {"/algebras/0/complementarity_identity/holds", true},
  };
  return c;
}

bool values_equal(const Json& got, const Json& want) {
  if (want.is_number() && got.is_number()) {
    return std::abs(got.get<double>() - want.get<double>()) <= 1e-12 * (1.0 + std::abs(want.get<double>()));
  }
  return got == want;
}

}  // namespace

std::vector<GalleryCase> gallery_cases(const Tolerance& tol) {
  std::vector<GalleryCase> out;
  out.push_back(identity_n2(tol));
  out.push_back(qubit4_bitflip(tol));
  out.push_back(m3_counterexample(tol));
  out.push_back(diag_expectation(3, tol));
  out.push_back(diag_expectation(4, tol));
  out.push_back(depolarizing_qubit(tol));
  out.push_back(saturation_n4_k2(tol));
  out.push_back(tensor_pair_m4(tol));
  out.push_back(unitary_conj(tol));
  return out;
}

GalleryCase gallery_case(const std::string& id, const Tolerance& tol) {
  for (GalleryCase& c : gallery_cases(tol)) {
    if (c.id == id) return std::move(c);
  }
  throw InvalidInput("unknown gallery case " + id);
}

std::vector<std::string> compare_expectations(const Json& report, const Json& expected) {
  std::vector<std::string> failures;
  for (const auto& [pointer, want] : expected.items()) {
    const Json::json_pointer ptr(pointer);
    if (!report.contains(ptr)) {
      failures.push_back(pointer + ": missing from report");
      continue;
    }
    const Json& got = report.at(ptr);
    bool ok = true;
    std::string expect_text = want.dump();
    if (want.is_object() && (want.contains("max") || want.contains("min"))) {
      if (!got.is_number()) {
        ok = false;
      } else {
        const double v = got.get<double>();
        if (want.contains("max") && !(v <= want["max"].get<double>())) ok = false;
        if (want.contains("min") && !(v >= want["min"].get<double>())) ok = false;
      }
    } else {
      ok = values_equal(got, want);
    }
    if (!ok) failures.push_back(pointer + ": expected " + expect_text + ", got " + got.dump());
  }
  return failures;
}

CaseCheck check_case(const GalleryCase& c, const Tolerance& tol) {
  CaseCheck out;
  out.id = c.id;
  try {
    out.report = analyze(c.request, tol);
    out.failures = compare_expectations(out.report, c.expected);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("analysis failed: ") + e.what());
  }
  out.passed = out.failures.empty();
  return out;
}

}  // namespace qcomp
