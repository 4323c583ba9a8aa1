#include "qcomp/opspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace qcomp {

namespace {

constexpr Eigen::Index kTargetChunkRows = 4096;

struct RightSvd {
  Eigen::VectorXd sigma;
  Matrix v;  // full cols x cols
};

// Eigen's BDCSVD returns wrong singular values on some highly structured
// inputs and JacobiSVD is too slow at n^2 = 256, so SVDs go through LAPACK.
template <int Options>
void svd_into(const Matrix& m, Eigen::VectorXd& sigma, Matrix* u, Matrix* v) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  Matrix a = m;
  sigma.resize(k);
  Matrix uu(rows, (Options & Eigen::ComputeThinU) ? k : 1);
  Matrix vt((Options & Eigen::ComputeFullV) ? cols : 1, cols);
  std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(k, 1)));
  const char jobu = (Options & Eigen::ComputeThinU) ? 'S' : 'N';
  const char jobvt = (Options & Eigen::ComputeFullV) ? 'A' : 'N';
  const lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, jobu, jobvt, rows, cols, reinterpret_cast<lapack_complex_double*>(a.data()),
      std::max<lapack_int>(rows, 1), sigma.data(), reinterpret_cast<lapack_complex_double*>(uu.data()),
      std::max<lapack_int>(rows, 1), reinterpret_cast<lapack_complex_double*>(vt.data()),
      static_cast<lapack_int>(vt.rows()), superb.data());
  if (info != 0) throw StructureError("SVD did not converge");
  if (u != nullptr) *u = std::move(uu);
  if (v != nullptr) *v = vt.adjoint();
}

// Singular values and right singular vectors. Tall inputs are first reduced
// to their square R factor, which has the same singular values and right
// singular vectors.
RightSvd right_svd(const Matrix& m) {
  RightSvd out;
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    svd_into<Eigen::ComputeFullV>(r, out.sigma, nullptr, &out.v);
  } else {
    svd_into<Eigen::ComputeFullV>(m, out.sigma, nullptr, &out.v);
  }
  return out;
}

Eigen::Index count_rank(const Eigen::VectorXd& sigma, double cutoff) {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > 0.0 && sigma(i) >= cutoff) ++r;
  }
  return r;
}

std::size_t checked_sqrt(Eigen::Index cols) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(cols))));
  if (static_cast<Eigen::Index>(n * n) != cols) {
    throw InvalidInput("map matrix column count " + std::to_string(cols) +
                       " is not a square of an operator dimension");
  }
  return n;
}

}  // namespace

void Tolerance::validate() const {
  if (!(rank_rel > 0.0) || !(eig_cluster > 0.0) || !(equality_abs > 0.0)) {
    throw InvalidInput("tolerances must be strictly positive");
  }
}

double rank_cutoff(double sigma_max, std::size_t rows, std::size_t cols, const Tolerance& tol,
                   double reference) {
  const double scale = std::max(sigma_max, reference);
  return tol.rank_rel * scale * static_cast<double>(std::max<std::size_t>({rows, cols, 1}));
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidInput(std::string(what) + " has non-finite entries");
}

Vector vec(const Matrix& m) { return m.reshaped(); }

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw InvalidInput("unvec: size mismatch");
  return v.reshaped(rows, cols);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix sandwich_superop(const Matrix& left, const Matrix& right) {
  return kron(right.transpose(), left);
}

bool is_projection(const Matrix& q, double eps) {
  if (q.rows() != q.cols()) return false;
  const double scale = 1.0 + q.norm();
  return (q - q.adjoint()).norm() <= eps * scale && (q * q - q).norm() <= eps * scale;
}

// ---------------------------------------------------------------------------
// OperatorSubspace

OperatorSubspace::OperatorSubspace(std::size_t ambient_dim)
    : n_(ambient_dim), q_(Matrix::Zero(static_cast<Eigen::Index>(ambient_dim * ambient_dim), 0)) {
  if (ambient_dim == 0) throw InvalidInput("ambient dimension must be positive");
}

OperatorSubspace::OperatorSubspace(std::size_t ambient_dim, Matrix columns)
    : n_(ambient_dim), q_(std::move(columns)) {
  if (ambient_dim == 0) throw InvalidInput("ambient dimension must be positive");
  if (q_.rows() != static_cast<Eigen::Index>(n_ * n_)) {
    throw InvalidInput("subspace basis rows must equal n^2");
  }
  if (q_.cols() > q_.rows()) throw InvalidInput("subspace dimension exceeds n^2");
  require_finite(q_, "subspace basis");
  const Matrix gram = q_.adjoint() * q_;
  if ((gram - Matrix::Identity(q_.cols(), q_.cols())).norm() > 1e-8) {
    throw InvalidInput("subspace basis is not orthonormal");
  }
}

OperatorSubspace OperatorSubspace::span(std::size_t ambient_dim, std::span<const Matrix> ops,
                                        const Tolerance& tol) {
  const auto nn = static_cast<Eigen::Index>(ambient_dim * ambient_dim);
  Matrix stacked(nn, static_cast<Eigen::Index>(ops.size()));
  double reference = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Matrix& op = ops[i];
    if (op.rows() != static_cast<Eigen::Index>(ambient_dim) || op.cols() != op.rows()) {
      throw InvalidInput("span: operator dimension mismatch");
    }
    require_finite(op, "span operand");
    stacked.col(static_cast<Eigen::Index>(i)) = vec(op);
    reference = std::max(reference, op.norm());
  }
  return OperatorSubspace(ambient_dim, column_space(stacked, tol, reference));
}

OperatorSubspace OperatorSubspace::full(std::size_t ambient_dim) {
  const auto nn = static_cast<Eigen::Index>(ambient_dim * ambient_dim);
  return OperatorSubspace(ambient_dim, Matrix::Identity(nn, nn));
}

Matrix OperatorSubspace::element(std::size_t i) const {
  const auto n = static_cast<Eigen::Index>(n_);
  return unvec(q_.col(static_cast<Eigen::Index>(i)), n, n);
}

std::vector<Matrix> OperatorSubspace::basis() const {
  std::vector<Matrix> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(element(i));
  return out;
}

Vector OperatorSubspace::coordinates(const Matrix& x) const { return q_.adjoint() * vec(x); }

Matrix OperatorSubspace::project(const Matrix& x) const {
  const auto n = static_cast<Eigen::Index>(n_);
  return unvec(q_ * coordinates(x), n, n);
}

double OperatorSubspace::residual(const Matrix& x) const {
  const Vector v = vec(x);
  return (v - q_ * (q_.adjoint() * v)).norm();
}

double projector_distance(const OperatorSubspace& a, const OperatorSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidInput("projector_distance: ambient mismatch");
  const Matrix& qa = a.columns();
  const Matrix& qb = b.columns();
  // ||P_a - P_b||_F^2 = ||(I - P_b) Q_a||_F^2 + ||(I - P_a) Q_b||_F^2
  const double ra = (qa - qb * (qb.adjoint() * qa)).squaredNorm();
  const double rb = (qb - qa * (qa.adjoint() * qb)).squaredNorm();
  return std::sqrt(ra + rb);
}

double containment_residual(const OperatorSubspace& inner, const OperatorSubspace& outer) {
  if (inner.dim() == 0) return 0.0;
  const Matrix& qi = inner.columns();
  const Matrix& qo = outer.columns();
  const Matrix r = qi - qo * (qo.adjoint() * qi);
  return r.colwise().norm().maxCoeff();
}

Matrix column_space(const Matrix& m, const Tolerance& tol, double reference) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix::Zero(m.rows(), 0);
  Matrix u;
  Eigen::VectorXd sigma;
  if (m.cols() > m.rows()) {
    // m^H = Q R, so m = R^H Q^H and both share column space and spectrum.
    Eigen::HouseholderQR<Matrix> qr(m.adjoint());
    Matrix r = qr.matrixQR().topRows(m.rows()).triangularView<Eigen::Upper>();
    svd_into<Eigen::ComputeThinU>(r.adjoint(), sigma, &u, nullptr);
  } else {
    svd_into<Eigen::ComputeThinU>(m, sigma, &u, nullptr);
  }
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cut = rank_cutoff(smax, static_cast<std::size_t>(m.rows()),
                                 static_cast<std::size_t>(m.cols()), tol, reference);
  return u.leftCols(count_rank(sigma, cut));
}

Matrix null_basis(const Matrix& m, const Tolerance& tol, double reference) {
  require_finite(m, "map matrix");
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  if (m.cols() == 0) return Matrix::Zero(0, 0);
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  if (m.rows() >= 2 * m.cols() && m.cols() > 32) {
    // Tall case: the Gram matrix cheaply separates directions with
    // sigma > 1e-2 sigma_max; the exact SVD is then run on the rest only.
    Matrix gram = Matrix::Zero(m.cols(), m.cols());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram.selfadjointView<Eigen::Lower>());
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double lmax = std::max(lam(lam.size() - 1), 0.0);
    const double smax = std::sqrt(lmax);
    const double cut = rank_cutoff(smax, rows, cols, tol, reference);
    if (lmax > 0.0 && cut < 1e-3 * smax) {
      Eigen::Index keep = 0;
      while (keep < lam.size() && lam(keep) <= 1e-4 * lmax) ++keep;
      if (keep == 0) return Matrix::Zero(m.cols(), 0);
      const Matrix cand = es.eigenvectors().leftCols(keep);
      const RightSvd sub = right_svd(m * cand);
      const Eigen::Index rank = count_rank(sub.sigma, cut);
      return cand * sub.v.rightCols(keep - rank);
    }
  }
  const RightSvd svd = right_svd(m);
  const double smax = svd.sigma.size() > 0 ? svd.sigma(0) : 0.0;
  const double cut = rank_cutoff(smax, static_cast<std::size_t>(m.rows()),
                                 static_cast<std::size_t>(m.cols()), tol, reference);
  const Eigen::Index rank = count_rank(svd.sigma, cut);
  return svd.v.rightCols(m.cols() - rank);
}

OperatorSubspace nullspace(const Matrix& map_matrix, const Tolerance& tol) {
  const std::size_t n = checked_sqrt(map_matrix.cols());
  return OperatorSubspace(n, null_basis(map_matrix, tol));
}

Matrix joint_null_basis(std::size_t count, Eigen::Index cols, Eigen::Index block_rows,
                        const std::function<Matrix(std::size_t, const Matrix&)>& restricted,
                        double reference, const Tolerance& tol) {
  Matrix basis = Matrix::Identity(cols, cols);
  const std::size_t chunk =
      std::max<std::size_t>(1, static_cast<std::size_t>(kTargetChunkRows / std::max<Eigen::Index>(block_rows, 1)));
  for (std::size_t start = 0; start < count && basis.cols() > 0; start += chunk) {
    const std::size_t stop = std::min(count, start + chunk);
    Matrix stacked(static_cast<Eigen::Index>(stop - start) * block_rows, basis.cols());
    for (std::size_t i = start; i < stop; ++i) {
      Matrix block = restricted(i, basis);
      if (block.rows() != block_rows || block.cols() != basis.cols()) {
        throw InvalidInput("joint_null_basis: block has wrong shape");
      }
      stacked.middleRows(static_cast<Eigen::Index>(i - start) * block_rows, block_rows) = block;
    }
    const Matrix coeffs = null_basis(stacked, tol, reference);
    basis = basis * coeffs;
  }
  return basis;
}

OperatorSubspace orthogonal_complement(const OperatorSubspace& s) {
  const auto nn = static_cast<Eigen::Index>(s.ambient_dim() * s.ambient_dim());
  const auto d = static_cast<Eigen::Index>(s.dim());
  if (d == 0) return OperatorSubspace::full(s.ambient_dim());
  Eigen::HouseholderQR<Matrix> qr(s.columns());
  const Matrix q = qr.householderQ() * Matrix::Identity(nn, nn);
  return OperatorSubspace(s.ambient_dim(), q.rightCols(nn - d));
}

OperatorSubspace intersect(const OperatorSubspace& a, const OperatorSubspace& b,
                           const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidInput("intersect: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return OperatorSubspace(a.ambient_dim());
  // x = Q_a c lies in b iff (I - P_b) Q_a c = 0.
  const Matrix& qa = a.columns();
  const Matrix& qb = b.columns();
  const Matrix outside = qa - qb * (qb.adjoint() * qa);
  const Matrix coeffs = null_basis(outside, tol, 1.0);
  return OperatorSubspace(a.ambient_dim(), qa * coeffs);
}

namespace {

struct HermitianSpectrum {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;
};

HermitianSpectrum checked_psd_spectrum(const Matrix& r, const Tolerance& tol) {
  if (r.rows() != r.cols()) throw InvalidInput("expected a square matrix");
  require_finite(r, "PSD operand");
  const double scale = 1.0 + r.norm();
  if ((r - r.adjoint()).norm() > tol.equality_abs * scale) {
    throw InvalidInput("matrix is not Hermitian");
  }
  const Matrix h = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  HermitianSpectrum out{es.eigenvalues(), es.eigenvectors()};
  if (out.values.size() > 0) {
    const double lmin = out.values(0);
    const double lmax = out.values(out.values.size() - 1);
    if (lmin < -tol.equality_abs * std::max(1.0, std::abs(lmax))) {
      std::ostringstream msg;
      msg << "matrix is not positive semidefinite (most negative eigenvalue " << lmin << ")";
      throw InvalidInput(msg.str());
    }
  }
  return out;
}

}  // namespace

SqrtPinv psd_sqrt_pinv(const Matrix& r, const Tolerance& tol) {
  const HermitianSpectrum spec = checked_psd_spectrum(r, tol);
  const Eigen::Index n = r.rows();
  const double lmax = n > 0 ? std::max(spec.values(n - 1), 0.0) : 0.0;
  const double cut = rank_cutoff(lmax, 1, 1, tol);
  Eigen::VectorXd root(n), inv_root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = std::max(spec.values(i), 0.0);
    root(i) = std::sqrt(l);
    inv_root(i) = (l > 0.0 && l >= cut) ? 1.0 / std::sqrt(l) : 0.0;
  }
  const Matrix& u = spec.vectors;
  return {u * root.asDiagonal() * u.adjoint(), u * inv_root.asDiagonal() * u.adjoint()};
}

Matrix support_projection(const Matrix& r, const Tolerance& tol) {
  const HermitianSpectrum spec = checked_psd_spectrum(r, tol);
  const Eigen::Index n = r.rows();
  const double lmax = n > 0 ? std::max(spec.values(n - 1), 0.0) : 0.0;
  const double cut = rank_cutoff(lmax, static_cast<std::size_t>(n), static_cast<std::size_t>(n), tol);
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (spec.values(i) > 0.0 && spec.values(i) >= cut) {
      p += spec.vectors.col(i) * spec.vectors.col(i).adjoint();
    }
  }
  return p;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_symmetric() {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

Matrix random_hermitian_in(const OperatorSubspace& s, std::uint64_t seed, const Tolerance& tol) {
  const auto n = static_cast<Eigen::Index>(s.ambient_dim());
  const std::vector<Matrix> basis = s.basis();
  for (const Matrix& b : basis) {
    if (s.residual(b.adjoint()) > tol.equality_abs * (1.0 + b.norm())) {
      throw InvalidInput("random_hermitian_in: subspace is not closed under adjoint");
    }
  }
  SplitMix64 rng(seed);
  const Complex i_unit(0.0, 1.0);
  Matrix out = Matrix::Zero(n, n);
  for (const Matrix& b : basis) {
    const double a = rng.next_symmetric();
    const double c = rng.next_symmetric();
    out += a * (b + b.adjoint()) + c * (i_unit * (b - b.adjoint()));
  }
  return out;
}

}  // namespace qcomp
