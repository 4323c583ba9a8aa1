#pragma once

// Dense complex linear algebra on operator spaces.
//
// Operators on C^n are n x n complex matrices; the operator space M_n is
// identified with C^{n^2} by column stacking, so the map X -> A X B has the
// matrix kron(B^T, A). Every rank, kernel and pseudo-inverse decision in the
// library goes through rank_cutoff() below.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcomp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Malformed or out-of-contract input (bad dimensions, non-finite entries,
/// a "projection" that is not one, ...).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical structure check failed, which usually means the tolerance
/// policy does not separate signal from rounding noise for this input.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double rank_rel = 1e-10;     // relative singular-value cutoff
  double eig_cluster = 1e-8;   // eigenvalue clustering width
  double equality_abs = 1e-9;  // matrix equality checks
  std::uint64_t seed = 0x5EED;

  void validate() const;
};

/// Singular values at or above the returned value count towards the rank:
/// rank_rel * max(sigma_max, reference) * max(rows, cols).
/// `reference` guards against maps that are numerically zero, where
/// sigma_max alone is rounding noise.
double rank_cutoff(double sigma_max, std::size_t rows, std::size_t cols, const Tolerance& tol,
                   double reference = 0.0);

void require_finite(const Matrix& m, const char* what);

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);
Matrix kron(const Matrix& a, const Matrix& b);
/// Matrix of X -> left * X * right under column stacking.
Matrix sandwich_superop(const Matrix& left, const Matrix& right);

bool is_projection(const Matrix& q, double eps);

/// Orthonormal basis of a subspace of M_n, stored as the n^2 x d matrix of
/// vectorized basis elements. Orthonormality is in the trace inner product
/// <A, B> = tr(A^* B), which is the Euclidean product of the vectorizations.
class OperatorSubspace {
 public:
  explicit OperatorSubspace(std::size_t ambient_dim);
  /// `columns` must already be orthonormal.
  OperatorSubspace(std::size_t ambient_dim, Matrix columns);

  /// Span of arbitrary operators; rank decided by rank_cutoff with the
  /// largest operator norm as reference.
  static OperatorSubspace span(std::size_t ambient_dim, std::span<const Matrix> ops,
                               const Tolerance& tol);
  static OperatorSubspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(q_.cols()); }
  const Matrix& columns() const { return q_; }
  Matrix element(std::size_t i) const;
  std::vector<Matrix> basis() const;

  Matrix project(const Matrix& x) const;
  /// Frobenius norm of x minus its projection.
  double residual(const Matrix& x) const;
  bool contains(const Matrix& x, double eps) const { return residual(x) <= eps; }
  /// Coordinates of x in this basis.
  Vector coordinates(const Matrix& x) const;

 private:
  std::size_t n_;
  Matrix q_;
};

/// Frobenius distance between the orthogonal projectors onto a and b.
double projector_distance(const OperatorSubspace& a, const OperatorSubspace& b);
/// Largest residual of a basis element of `inner` outside `outer`.
double containment_residual(const OperatorSubspace& inner, const OperatorSubspace& outer);

/// Orthonormal basis of the column space of m.
Matrix column_space(const Matrix& m, const Tolerance& tol, double reference = 0.0);

/// Orthonormal basis (as columns) of the null space of an arbitrary matrix.
Matrix null_basis(const Matrix& m, const Tolerance& tol, double reference = 0.0);

/// Kernel of a linear map given by its matrix on vectorized operators; the
/// column count must be a perfect square n^2.
OperatorSubspace nullspace(const Matrix& map_matrix, const Tolerance& tol);

/// Joint null space of `count` linear maps on C^cols, processed a few at a
/// time. `restricted(i, basis)` must return block_i * basis, where basis is
/// an orthonormal cols x k matrix spanning the current candidate space.
/// `reference` is an upper bound on the operator norm of any block.
Matrix joint_null_basis(std::size_t count, Eigen::Index cols, Eigen::Index block_rows,
                        const std::function<Matrix(std::size_t, const Matrix&)>& restricted,
                        double reference, const Tolerance& tol);

OperatorSubspace orthogonal_complement(const OperatorSubspace& s);
OperatorSubspace intersect(const OperatorSubspace& a, const OperatorSubspace& b,
                           const Tolerance& tol);

struct SqrtPinv {
  Matrix sqrt;
  Matrix pinv_sqrt;
};

/// Square root and pseudo-inverse square root of a Hermitian PSD matrix.
SqrtPinv psd_sqrt_pinv(const Matrix& r, const Tolerance& tol);

/// Support projection of a Hermitian PSD matrix.
Matrix support_projection(const Matrix& r, const Tolerance& tol);

/// splitmix64; doubles in [-1, 1) come from the top 53 bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double next_symmetric();

 private:
  std::uint64_t state_;
};

/// Seeded Hermitian element of an adjoint-closed subspace:
/// sum_i a_i (B_i + B_i^*) + b_i * i(B_i - B_i^*), with (a_i, b_i) drawn
/// in that order from SplitMix64(seed).
Matrix random_hermitian_in(const OperatorSubspace& s, std::uint64_t seed, const Tolerance& tol);

}  // namespace qcomp
