#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcomp/algebra.hpp"
#include "qcomp/channel.hpp"

namespace qcomp {

enum class VerdictKind { correctable, private_, neither };

std::string to_string(VerdictKind kind);

struct CodeVerdict {
  VerdictKind kind = VerdictKind::neither;
  std::optional<Matrix> witness;  // present iff kind == neither
  double deviation = 0.0;
  std::string details;

  bool passed() const { return kind != VerdictKind::neither; }
};

/// Correctable iff [Q V_j^* V_i Q, X] = 0 for every Kraus pair and basis
/// element X of A. Q must be a projection with Q X Q = X on A.
CodeVerdict test_correctable(const QuantumChannel& channel, const MatrixAlgebra& a,
                             const Matrix& q, const Tolerance& tol);

/// Private iff Q Phi^dagger(E_kl) Q lies in A' for every output matrix unit.
CodeVerdict test_private(const QuantumChannel& channel, const MatrixAlgebra& a, const Matrix& q,
                         const Tolerance& tol);

/// Private iff A commutes with (ker(Phi o P_Q))^perp.
CodeVerdict privacy_kernel_test(const QuantumChannel& channel, const MatrixAlgebra& a,
                                const Matrix& q, const Tolerance& tol);

/// The three descriptions of a unital channel's multiplicative domain.
struct MultiplicativeDomainRoutes {
  OperatorSubspace linear_system{1};    // solution of the multiplicativity equations
  OperatorSubspace kraus_commutant{1};  // {V_i^* V_j}'
  OperatorSubspace fixed_points{1};     // Fix(Phi^dagger o Phi)
  double max_distance = 0.0;         // largest pairwise projector distance
};

/// Solution space of Phi(AX) = Phi(A)Phi(X), Phi(XA) = Phi(X)Phi(A) for all
/// X. Over a linearly independent Kraus set these reduce to
/// V_i A = Phi(A) V_i and A V_i^* = V_i^* Phi(A).
OperatorSubspace multiplicative_domain_space(const QuantumChannel& channel, const Tolerance& tol);

/// Literal form of the same system, one equation block per matrix unit X.
/// Quadratic in n^2; meant for small dimensions and cross-checks.
OperatorSubspace multiplicative_domain_space_literal(const QuantumChannel& channel,
                                                     const Tolerance& tol);

MultiplicativeDomainRoutes multiplicative_domain_routes(const QuantumChannel& channel,
                                                        const Tolerance& tol);

/// M(Phi) as an algebra. For unital channels the three routes must agree
/// within 1e-8, else StructureError; `routes` receives them when given.
MatrixAlgebra multiplicative_domain(const QuantumChannel& channel, const Tolerance& tol,
                                    MultiplicativeDomainRoutes* routes = nullptr);

/// A *-representation of a subalgebra, stored by its values on the
/// algebra's orthonormal basis and extended linearly.
class Representation {
 public:
  Representation(MatrixAlgebra domain, std::vector<Matrix> images);

  const MatrixAlgebra& domain() const { return domain_; }
  const std::vector<Matrix>& images() const { return images_; }
  std::size_t target_dim() const;

  /// Linear extension; x is first projected onto the domain.
  Matrix operator()(const Matrix& x) const;

  /// Largest violation of multiplicativity and *-preservation on basis pairs.
  double multiplicativity_defect() const;
  double adjoint_defect() const;
  bool is_valid(double eps) const;

 private:
  MatrixAlgebra domain_;
  std::vector<Matrix> images_;
};

/// pi(A) = S Phi(A) S with S the pseudo-inverse square root of R = Phi(Q).
/// With Q = I this is the construction for algebras correctable in the
/// plain sense; for general Q the channel is replaced by Phi o P_Q.
/// The round trip P_Q Phi^dagger(pi(A)) = A is checked to 1e-8 (StructureError);
/// an algebra that is not correctable is InvalidInput.
Representation construct_pi(const QuantumChannel& channel, const MatrixAlgebra& a,
                            const Tolerance& tol);
Representation construct_pi(const QuantumChannel& channel, const MatrixAlgebra& a,
                            const Matrix& q, const Tolerance& tol);

/// max over basis elements of || P_Q Phi^dagger(pi(B_i)) P_Q - B_i ||_F.
double pi_round_trip_error(const QuantumChannel& channel, const Representation& pi,
                           const Matrix& q);

/// Representation implemented by a Kraus family: pi(A) = sum_k K_k A K_k^*.
Representation representation_from_kraus(const MatrixAlgebra& a,
                                         const std::vector<Matrix>& kraus);

/// {A in domain(pi) : Phi(AX) = pi(A)Phi(X), Phi(XA) = Phi(X)pi(A) for all X},
/// with Phi replaced by Phi o P_Q.
OperatorSubspace generalized_mult_domain(const QuantumChannel& channel, const Representation& pi,
                                         const Tolerance& tol);
OperatorSubspace generalized_mult_domain(const QuantumChannel& channel, const Representation& pi,
                                         const Matrix& q, const Tolerance& tol);

struct ComplementarityIdentity {
  std::size_t lhs_dim = 0;  // M_pi(Phi)
  std::size_t rhs_dim = 0;  // ((ker Phi^C)^perp)'
  double distance = 0.0;    // projector distance between the two sides
  double inclusion_residual = 0.0;  // how far M_pi(Phi) sticks out of the right side
  std::size_t kraus_commutant_dim = 0;  // {V_j^* V_i}'
  double commutant_distance = 0.0;  // {V_j^* V_i}' vs ((ker Phi^C)^perp)'
  double round_trip_error = 0.0;
  bool holds = false;
};

/// Compares M_pi(Phi) with ((ker Phi^C)^perp)' for an algebra correctable
/// with Q = I, and the two commutant descriptions with each other.
ComplementarityIdentity complementarity_identity_check(const QuantumChannel& channel,
                                                       const MatrixAlgebra& a,
                                                       const Tolerance& tol);

/// span{Q V_j^* V_i Q} and (ker(Phi^C o P_Q))^perp.
struct KernelDuality {
  OperatorSubspace kraus_span;
  OperatorSubspace kernel_perp;
  double distance = 0.0;
};

KernelDuality kernel_duality(const QuantumChannel& channel, const Matrix& q,
                             const Tolerance& tol);

struct UnitalExtras {
  std::size_t mult_domain_dim = 0;
  std::size_t kernel_dim = 0;
  std::size_t n_squared = 0;
  std::size_t sum = 0;
  bool is_projection = false;  // spectrum of Phi^dagger o Phi inside {0, 1}
  double complement_symmetry = 0.0;  // max ||Phi^C(AX) - Phi^C(XA)||
  bool factor = false;
  std::optional<double> factor_scalar_deviation;  // when M(Phi) is a factor
  std::optional<double> commutation_defect;  // Phi^C(M(Phi)) vs Phi^C(M(Phi^C))
  std::string notes;
};

/// `domain` may pass an already computed M(Phi).
UnitalExtras unital_extras(const QuantumChannel& channel, const Tolerance& tol,
                           const MatrixAlgebra* domain = nullptr);

}  // namespace qcomp
