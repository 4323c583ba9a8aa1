#include "qcomp/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcomp {

namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Columns of `cols` (each a vectorized n x n operator) multiplied on the
// left by `left`.
Matrix left_multiply_all(const Matrix& left, const Matrix& cols, Eigen::Index n) {
  const Eigen::Index k = cols.cols();
  const Matrix prod = left * cols.reshaped(n, n * k);
  return prod.reshaped(n * n, k);
}

Matrix unit_from_ops(std::span<const Matrix> ops, Eigen::Index n, const Tolerance& tol) {
  Matrix s = Matrix::Zero(n, n);
  for (const Matrix& b : ops) s.noalias() += b * b.adjoint() + b.adjoint() * b;
  if (s.norm() == 0.0) return Matrix::Zero(n, n);
  return support_projection(s, tol);
}

void check_unit(const OperatorSubspace& basis, const Matrix& unit, const Tolerance& tol) {
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const Matrix b = basis.element(i);
    const double scale = tol.equality_abs * (1.0 + b.norm());
    if ((unit * b - b).norm() > scale || (b * unit - b).norm() > scale) {
      throw StructureError("unit projection does not act as a unit on the algebra basis");
    }
  }
}

bool unit_is_identity(const Matrix& unit) {
  const Eigen::Index n = unit.rows();
  return (unit - Matrix::Identity(n, n)).norm() <= 1e-6;
}

std::vector<Matrix> with_adjoints(std::span<const Matrix> gens) {
  std::vector<Matrix> out;
  out.reserve(2 * gens.size());
  for (const Matrix& g : gens) {
    out.push_back(g);
    out.push_back(g.adjoint());
  }
  return out;
}

}  // namespace

MatrixAlgebra MatrixAlgebra::from_subspace(OperatorSubspace basis, const Tolerance& tol) {
  const Eigen::Index n = as_index(basis.ambient_dim());
  const Matrix& u = basis.columns();
  const std::vector<Matrix> elems = basis.basis();
  for (const Matrix& b : elems) {
    if (basis.residual(b.adjoint()) > tol.equality_abs * (1.0 + b.norm())) {
      throw StructureError("subspace is not closed under adjoint");
    }
  }
  // Residuals outside the subspace are measured against whichever of the
  // subspace or its complement is smaller.
  const bool use_complement = 2 * basis.dim() > basis.ambient_dim() * basis.ambient_dim();
  const Matrix w = use_complement ? orthogonal_complement(basis).columns() : Matrix();
  for (const Matrix& b : elems) {
    const Matrix prods = left_multiply_all(b, u, n);
    const Matrix outside = use_complement ? Matrix(w.adjoint() * prods)
                                          : Matrix(prods - u * (u.adjoint() * prods));
    for (Eigen::Index j = 0; j < prods.cols(); ++j) {
      if (outside.col(j).norm() > tol.equality_abs * (1.0 + prods.col(j).norm())) {
        std::ostringstream msg;
        msg << "subspace is not closed under multiplication (residual " << outside.col(j).norm()
            << ")";
        throw StructureError(msg.str());
      }
    }
  }
  return trusted(std::move(basis), tol);
}

MatrixAlgebra MatrixAlgebra::trusted(OperatorSubspace basis, const Tolerance& tol) {
  const Eigen::Index n = as_index(basis.ambient_dim());
  const std::vector<Matrix> elems = basis.basis();
  Matrix unit = unit_from_ops(elems, n, tol);
  check_unit(basis, unit, tol);
  const bool unital = unit_is_identity(unit);
  return MatrixAlgebra(std::move(basis), std::move(unit), unital);
}

std::size_t BlockSignature::ambient_dim() const {
  std::size_t s = annihilated;
  for (const Block& b : blocks) s += b.multiplicity * b.size;
  return s;
}

std::size_t BlockSignature::algebra_dim() const {
  std::size_t s = 0;
  for (const Block& b : blocks) s += b.size * b.size;
  return s;
}

std::size_t BlockSignature::commutant_dim() const {
  std::size_t s = annihilated * annihilated;
  for (const Block& b : blocks) s += b.multiplicity * b.multiplicity;
  return s;
}

MatrixAlgebra algebra_from_generators(std::span<const Matrix> gens, bool include_identity,
                                      const Tolerance& tol) {
  if (gens.empty()) throw InvalidInput("algebra_from_generators: no generators");
  const auto n = static_cast<std::size_t>(gens.front().rows());
  for (const Matrix& g : gens) {
    if (g.rows() != as_index(n) || g.cols() != as_index(n)) {
      throw InvalidInput("algebra_from_generators: generator dimension mismatch");
    }
    require_finite(g, "generator");
  }
  const Eigen::Index ni = as_index(n);
  std::vector<Matrix> seed = with_adjoints(gens);
  if (include_identity) seed.push_back(Matrix::Identity(ni, ni));
  const Matrix unit = include_identity ? Matrix(Matrix::Identity(ni, ni))
                                       : unit_from_ops(seed, ni, tol);

  const OperatorSubspace gen_span = OperatorSubspace::span(n, seed, tol);
  const std::vector<Matrix> letters = gen_span.basis();
  Matrix u = gen_span.columns();
  Matrix frontier = u;
  // Words grow by right multiplication with a letter; stop once no product
  // leaves the current span.
  while (frontier.cols() > 0) {
    Matrix prods(ni * ni, frontier.cols() * as_index(letters.size()));
    const Matrix fs = frontier.reshaped(ni, ni * frontier.cols());
    for (std::size_t l = 0; l < letters.size(); ++l) {
      for (Eigen::Index j = 0; j < frontier.cols(); ++j) {
        prods.col(as_index(l) * frontier.cols() + j) = (fs.middleCols(j * ni, ni) * letters[l]).reshaped();
      }
    }
    const double reference = prods.colwise().norm().maxCoeff();
    Matrix outside = prods - u * (u.adjoint() * prods);
    outside -= u * (u.adjoint() * outside);
    Matrix fresh = column_space(outside, tol, reference);
    if (fresh.cols() == 0) break;
    fresh -= u * (u.adjoint() * fresh);
    Eigen::HouseholderQR<Matrix> qr(fresh);
    fresh = qr.householderQ() * Matrix::Identity(fresh.rows(), fresh.cols());
    Matrix grown(u.rows(), u.cols() + fresh.cols());
    grown << u, fresh;
    u = std::move(grown);
    frontier = std::move(fresh);
    if (u.cols() > ni * ni) throw StructureError("algebra closure exceeded n^2 dimensions");
  }
  OperatorSubspace basis(n, std::move(u));
  check_unit(basis, unit, tol);
  const bool unital = unit_is_identity(unit);
  MatrixAlgebra trusted_alg = MatrixAlgebra::trusted(std::move(basis), tol);
  if ((trusted_alg.unit_projection() - unit).norm() > 1e-6 || trusted_alg.is_unital() != unital) {
    throw StructureError("generator support projection disagrees with the algebra unit");
  }
  return trusted_alg;
}

MatrixAlgebra commutant(std::span<const Matrix> gens, const Tolerance& tol) {
  if (gens.empty()) throw InvalidInput("commutant: empty generator list");
  const auto n = static_cast<std::size_t>(gens.front().rows());
  for (const Matrix& g : gens) {
    if (g.rows() != as_index(n) || g.cols() != as_index(n)) {
      throw InvalidInput("commutant: generator dimension mismatch");
    }
  }
  const Eigen::Index ni = as_index(n);
  const std::vector<Matrix> augmented = with_adjoints(gens);
  // The commutant only depends on the span of the adjoint-augmented set.
  const std::vector<Matrix> letters = OperatorSubspace::span(n, augmented, tol).basis();
  const auto restricted = [&](std::size_t i, const Matrix& basis) {
    const Matrix& g = letters[i];
    const Eigen::Index k = basis.cols();
    const Matrix xs = basis.reshaped(ni, ni * k);
    Matrix out(ni * ni, k);
    const Matrix gx = g * xs;
    for (Eigen::Index j = 0; j < k; ++j) {
      out.col(j) = (gx.middleCols(j * ni, ni) - xs.middleCols(j * ni, ni) * g).reshaped();
    }
    return out;
  };
  // ||[g, .]|| <= 2 ||g|| = 2 for unit-norm letters.
  Matrix null = joint_null_basis(letters.size(), ni * ni, ni * ni, restricted, 2.0, tol);
  return MatrixAlgebra::trusted(OperatorSubspace(n, std::move(null)), tol);
}

MatrixAlgebra commutant(const MatrixAlgebra& a, const Tolerance& tol) {
  if (a.dim() == 0) return MatrixAlgebra::trusted(OperatorSubspace::full(a.ambient_dim()), tol);
  const std::vector<Matrix> elems = a.elements();
  if (elems.size() > 2) {
    // Two generic Hermitian elements generate A, so their commutant is A'.
    // The candidate always contains A'; it equals A' once it commutes with
    // every basis element.
    const Matrix gens[2] = {random_hermitian_in(a.basis(), tol.seed, tol),
                            random_hermitian_in(a.basis(), tol.seed + 1, tol)};
    MatrixAlgebra candidate = commutant(std::span<const Matrix>(gens, 2), tol);
    double worst = 0.0;
    for (const Matrix& y : candidate.elements()) {
      for (const Matrix& b : elems) worst = std::max(worst, (y * b - b * y).norm());
    }
    if (worst <= tol.equality_abs) return candidate;
  }
  return commutant(std::span<const Matrix>(elems), tol);
}

MatrixAlgebra center(const MatrixAlgebra& a, const Tolerance& tol) {
  const MatrixAlgebra comm = commutant(a, tol);
  return MatrixAlgebra::trusted(intersect(a.basis(), comm.basis(), tol), tol);
}

BlockSignature block_signature(const MatrixAlgebra& a, const Tolerance& tol) {
  const std::size_t n = a.ambient_dim();
  const Eigen::Index ni = as_index(n);
  const MatrixAlgebra z = center(a, tol);
  BlockSignature sig;
  if (z.dim() == 0) {
    sig.annihilated = n;
    return sig;
  }
  const Matrix generic = random_hermitian_in(z.basis(), tol.seed, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (generic + generic.adjoint()));
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  const Matrix& unit = a.unit_projection();

  std::vector<Matrix> projections;
  Eigen::Index begin = 0;
  while (begin < ni) {
    Eigen::Index end = begin + 1;
    while (end < ni && lam(end) - lam(end - 1) <= tol.eig_cluster) ++end;
    const Matrix v = vecs.middleCols(begin, end - begin);
    Matrix p = v * v.adjoint() * unit;
    p = 0.5 * (p + p.adjoint());
    if (std::llround(p.trace().real()) > 0) projections.push_back(std::move(p));
    begin = end;
  }
  if (projections.size() != z.dim()) {
    std::ostringstream msg;
    msg << "found " << projections.size() << " spectral clusters for a center of dimension "
        << z.dim();
    throw StructureError(msg.str());
  }
  const std::vector<Matrix> elems = a.elements();
  std::size_t used = 0;
  for (const Matrix& p : projections) {
    std::vector<Matrix> compressed;
    compressed.reserve(elems.size());
    for (const Matrix& b : elems) compressed.push_back(p * b * p);
    const std::size_t dim_k = OperatorSubspace::span(n, compressed, tol).dim();
    const auto size = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim_k))));
    if (size == 0 || size * size != dim_k) {
      throw StructureError("block dimension " + std::to_string(dim_k) + " is not a square");
    }
    const double mult = p.trace().real() / static_cast<double>(size);
    if (std::abs(mult - std::round(mult)) > 1e-6 || std::round(mult) < 1.0) {
      throw StructureError("block multiplicity is not an integer");
    }
    const auto m = static_cast<std::size_t>(std::llround(mult));
    sig.blocks.push_back({m, size});
    used += m * size;
  }
  if (used > n) throw StructureError("block sizes exceed the ambient dimension");
  sig.annihilated = n - used;
  std::sort(sig.blocks.begin(), sig.blocks.end(), [](const Block& x, const Block& y) {
    return std::pair(x.size, x.multiplicity) < std::pair(y.size, y.multiplicity);
  });
  return sig;
}

QuantumChannel conditional_expectation(const MatrixAlgebra& a, const Tolerance& tol) {
  if (!a.is_unital()) {
    throw InvalidInput("conditional expectation requires a unital algebra");
  }
  const Matrix& u = a.basis().columns();
  const Matrix superop = u * u.adjoint();
  return channel_from_superoperator(superop, a.ambient_dim(), a.ambient_dim(),
                                    "conditional expectation", tol);
}

namespace {

void require_unital_pair(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidInput("algebras act on different spaces");
  if (!a.is_unital() || !b.is_unital()) throw InvalidInput("algebras must be unital");
}

}  // namespace

Quasiorthogonality quasiorthogonal(const MatrixAlgebra& a, const MatrixAlgebra& b,
                                   const Tolerance& tol) {
  require_unital_pair(a, b);
  const double n = static_cast<double>(a.ambient_dim());
  const Eigen::Index ni = as_index(a.ambient_dim());
  const std::vector<Matrix> ea = a.elements();
  const std::vector<Matrix> eb = b.elements();
  Quasiorthogonality out;
  for (const Matrix& x : ea) {
    const Complex tx = x.trace();
    for (const Matrix& y : eb) {
      // tr(XY) = sum_kl X_kl Y_lk
      const Complex txy = (x.transpose().cwiseProduct(y)).sum();
      out.max_deviation = std::max(out.max_deviation, std::abs(txy - tx * y.trace() / n));
    }
  }
  const Matrix& ua = a.basis().columns();
  for (const Matrix& y : eb) {
    const Matrix e = unvec(ua * (ua.adjoint() * vec(y)), ni, ni);
    const Complex scalar = e.trace() / n;
    out.expectation_deviation =
        std::max(out.expectation_deviation, (e - scalar * Matrix::Identity(ni, ni)).norm());
  }
  out.quasiorthogonal = out.max_deviation <= tol.equality_abs;
  out.routes_agree = out.quasiorthogonal == (out.expectation_deviation <= tol.equality_abs);
  return out;
}

double complementarity_measure(const MatrixAlgebra& a, const MatrixAlgebra& b,
                               const Tolerance& /*tol*/) {
  require_unital_pair(a, b);
  return (a.basis().columns().adjoint() * b.basis().columns()).squaredNorm();
}

bool is_abelian(const MatrixAlgebra& a, double eps) {
  const std::vector<Matrix> e = a.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if ((e[i] * e[j] - e[j] * e[i]).norm() > eps) return false;
  return true;
}

}  // namespace qcomp
