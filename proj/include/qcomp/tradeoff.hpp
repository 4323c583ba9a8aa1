#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcomp/algebra.hpp"
#include "qcomp/channel.hpp"

namespace qcomp {

struct InequalityAudit {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;      // lhs <= rhs + equality_abs
  bool saturated = false;  // |lhs - rhs| <= equality_abs
  bool applicable = false;
  std::string notes;

  /// An inapplicable audit is never a violation.
  bool violated() const { return applicable && !holds; }
};

InequalityAudit make_audit(std::string name, double lhs, double rhs, bool applicable,
                           std::string notes, const Tolerance& tol);

struct Privatization {
  bool privatized = false;
  std::optional<Matrix> state;  // rho with Phi(X) = tr(X) rho on the algebra
  double deviation = 0.0;       // max ||Phi(B_i) - tr(B_i) rho||_F
};

/// Candidate rho = Phi(P_B) / tr(P_B). The zero algebra is privatized
/// vacuously and has no state.
Privatization privatized_to_state(const QuantumChannel& channel, const MatrixAlgebra& b,
                                  const Tolerance& tol);

struct QuasiorthogonalityReport {
  Quasiorthogonality test;
  double c = 0.0;                  // complementarity measure c(A, B)
  bool witness_corrects = false;   // E_A corrects A with Q = I
  bool witness_privatizes = false; // E_A privatizes B to a state
  std::optional<Matrix> state;
  bool consistent = false;  // quasiorthogonal <=> witness corrects and privatizes
};

/// Uses the conditional expectation onto A as the witness channel.
QuasiorthogonalityReport quasiorthogonality_equivalence_check(const MatrixAlgebra& a,
                                                              const MatrixAlgebra& b,
                                                              const Tolerance& tol);

struct MasaFlags {
  bool contains_masa = false;  // A' abelian, dim A' <= n, dim A >= n
  bool is_masa = false;        // A abelian, dim A = n, A = A'
};

MasaFlags masa_flags(const MatrixAlgebra& a, const Tolerance& tol);

/// A is checked for correctability with Q = P_A, B for privatization to a
/// state. Failed preconditions make the affected audits inapplicable.
/// `domain` may pass an already computed M(Phi).
std::vector<InequalityAudit> audit_inequalities(const QuantumChannel& channel,
                                                const MatrixAlgebra* a, const MatrixAlgebra* b,
                                                const Tolerance& tol,
                                                const MatrixAlgebra* domain = nullptr);

/// rank(Phi^C restricted to A) <= dim(A cap A'). A must be correctable with
/// Q = P_A, else InvalidInput.
InequalityAudit complement_rank_bound(const QuantumChannel& channel, const MatrixAlgebra& a,
                                      const Tolerance& tol);

}  // namespace qcomp
