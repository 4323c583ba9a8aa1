#pragma once

#include <span>
#include <vector>

#include "qcomp/channel.hpp"
#include "qcomp/opspace.hpp"

namespace qcomp {

/// Finite-dimensional *-subalgebra of M_n, not necessarily containing the
/// identity. The unit projection is the largest central projection P_A,
/// with P_A A = A P_A = A for every element.
class MatrixAlgebra {
 public:
  /// Verifies that `basis` is closed under adjoint and multiplication and
  /// computes the unit projection; throws StructureError otherwise.
  static MatrixAlgebra from_subspace(OperatorSubspace basis, const Tolerance& tol);
  /// Skips the closure check. Only for subspaces that are *-algebras by
  /// construction (commutants of adjoint-closed sets, intersections).
  static MatrixAlgebra trusted(OperatorSubspace basis, const Tolerance& tol);

  std::size_t ambient_dim() const { return basis_.ambient_dim(); }
  std::size_t dim() const { return basis_.dim(); }
  const OperatorSubspace& basis() const { return basis_; }
  std::vector<Matrix> elements() const { return basis_.basis(); }
  const Matrix& unit_projection() const { return unit_; }
  bool is_unital() const { return unital_; }
  bool contains(const Matrix& x, double eps) const { return basis_.contains(x, eps); }

 private:
  MatrixAlgebra(OperatorSubspace basis, Matrix unit, bool unital)
      : basis_(std::move(basis)), unit_(std::move(unit)), unital_(unital) {}

  OperatorSubspace basis_;
  Matrix unit_;
  bool unital_;
};

struct Block {
  std::size_t multiplicity = 0;  // m_k
  std::size_t size = 0;          // n_k
  bool operator==(const Block&) const = default;
};

/// A = (sum_k I_{m_k} (x) M_{n_k}) (+) 0_K up to unitary equivalence.
struct BlockSignature {
  std::vector<Block> blocks;  // sorted by (n_k, m_k)
  std::size_t annihilated = 0;  // K

  std::size_t ambient_dim() const;
  std::size_t algebra_dim() const;    // sum n_k^2
  std::size_t commutant_dim() const;  // sum m_k^2 + K^2
  std::size_t center_dim() const { return blocks.size(); }
  bool operator==(const BlockSignature&) const = default;
};

/// Smallest *-algebra containing `gens` (and I if include_identity).
MatrixAlgebra algebra_from_generators(std::span<const Matrix> gens, bool include_identity,
                                      const Tolerance& tol);

/// {X : [X, G] = [X, G^*] = 0 for all G in gens}; always unital.
MatrixAlgebra commutant(std::span<const Matrix> gens, const Tolerance& tol);
MatrixAlgebra commutant(const MatrixAlgebra& a, const Tolerance& tol);

/// A intersected with A'.
MatrixAlgebra center(const MatrixAlgebra& a, const Tolerance& tol);

BlockSignature block_signature(const MatrixAlgebra& a, const Tolerance& tol);

/// Trace-preserving conditional expectation onto a unital algebra: the
/// Hilbert-Schmidt orthogonal projection X -> sum_i tr(B_i^* X) B_i.
QuantumChannel conditional_expectation(const MatrixAlgebra& a, const Tolerance& tol);

struct Quasiorthogonality {
  bool quasiorthogonal = false;
  /// max |tr(B_i C_j) - tr(B_i) tr(C_j) / n| over basis pairs.
  double max_deviation = 0.0;
  /// max distance of E_A(C_j) from the scalars (the conditional-expectation route).
  double expectation_deviation = 0.0;
  bool routes_agree = true;
};

Quasiorthogonality quasiorthogonal(const MatrixAlgebra& a, const MatrixAlgebra& b,
                                   const Tolerance& tol);

/// Trace of E_A o E_B as a superoperator: sum_{i,j} |tr(B_i^* C_j)|^2.
double complementarity_measure(const MatrixAlgebra& a, const MatrixAlgebra& b,
                               const Tolerance& tol);

/// Every pair of basis elements commutes within `eps`.
bool is_abelian(const MatrixAlgebra& a, double eps);

}  // namespace qcomp
