#pragma once

#include <string>
#include <vector>

#include "qcomp/opspace.hpp"

namespace qcomp {

/// Completely positive map X -> sum_i V_i X V_i^* from M_n to M_m. No trace
/// or unit condition is imposed; duals and compressions of channels land
/// here.
class KrausMap {
 public:
  KrausMap(std::size_t dim_in, std::size_t dim_out, std::vector<Matrix> kraus);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& x) const;
  /// Adjoint in the trace inner product: Y -> sum_i V_i^* Y V_i.
  KrausMap dual() const;
  /// X -> this(Q X Q).
  KrausMap compressed(const Matrix& q) const;
  /// m^2 x n^2 matrix sum_i conj(V_i) (x) V_i.
  Matrix superoperator() const;
  /// (n m) x (n m) matrix sum_{k,l} E_kl (x) Phi(E_kl).
  Matrix choi() const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<Matrix> kraus_;
};

struct ChoiMatrix {
  Matrix matrix;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
};

/// Trace-preserving Kraus map. Superoperator and Choi matrix are computed
/// once at construction; the object is immutable afterwards.
class QuantumChannel {
 public:
  QuantumChannel(std::vector<Matrix> kraus, std::string label = {}, const Tolerance& tol = {});
  QuantumChannel(KrausMap map, std::string label = {}, const Tolerance& tol = {});

  std::size_t dim_in() const { return map_.dim_in(); }
  std::size_t dim_out() const { return map_.dim_out(); }
  const std::vector<Matrix>& kraus() const { return map_.kraus(); }
  const KrausMap& map() const { return map_; }
  const std::string& label() const { return label_; }
  const Matrix& superoperator() const { return superop_; }
  const ChoiMatrix& choi() const { return choi_; }

  Matrix apply(const Matrix& x) const;
  bool is_square() const { return dim_in() == dim_out(); }
  /// Phi(I) = I within `eps` (Frobenius).
  bool is_unital(double eps) const;
  /// Frobenius norm of sum_i V_i^* V_i - I.
  double trace_deviation() const;

 private:
  KrausMap map_;
  std::string label_;
  Matrix superop_;
  ChoiMatrix choi_;
};

Matrix apply(const QuantumChannel& channel, const Matrix& x);
KrausMap dual(const QuantumChannel& channel);
ChoiMatrix choi(const QuantumChannel& channel);
Matrix superoperator_matrix(const QuantumChannel& channel);

/// Minimal Kraus set from the eigendecomposition of the Choi matrix, in
/// descending eigenvalue order. Inside a degenerate eigenvalue cluster the
/// basis is Gram-Schmidt over the cluster projector's columns in index
/// order, so it does not depend on the input Kraus set. Each operator is
/// phased so its largest entry is real positive.
KrausMap canonical_kraus(const KrausMap& map, const Tolerance& tol);
QuantumChannel canonical_kraus(const QuantumChannel& channel, const Tolerance& tol);

/// Kraus map whose Choi matrix (in the ChoiMatrix layout) is `choi`.
KrausMap kraus_from_choi(const Matrix& choi, std::size_t dim_in, std::size_t dim_out,
                         const Tolerance& tol);
Matrix choi_from_superoperator(const Matrix& superop, std::size_t dim_in, std::size_t dim_out);
QuantumChannel channel_from_superoperator(const Matrix& superop, std::size_t dim_in,
                                          std::size_t dim_out, std::string label,
                                          const Tolerance& tol);

/// Minimal complementary channel M_n -> M_d, d the Choi rank. Kraus operator
/// r of the complement collects row r of every canonical Kraus operator.
QuantumChannel complement(const QuantumChannel& channel, const Tolerance& tol);

/// [Phi^C(rho)]_{ij} = tr(rho V_j^* V_i) over the canonical Kraus set.
Matrix complement_entrywise(const QuantumChannel& channel, const Matrix& rho,
                            const Tolerance& tol);

OperatorSubspace kernel(const QuantumChannel& channel, const Tolerance& tol);
OperatorSubspace kernel(const KrausMap& map, const Tolerance& tol);

/// Gram matrix G_ij = tr(V_i^* V_j) of the Kraus operators.
Matrix kraus_gram(const std::vector<Matrix>& kraus);

/// All products V_i^* V_j (i-major).
std::vector<Matrix> kraus_products(const std::vector<Matrix>& kraus);

}  // namespace qcomp
