#include "qcomp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcomp {

namespace {

void check_kraus(std::size_t n, std::size_t m, const std::vector<Matrix>& kraus) {
  if (n == 0 || m == 0) throw InvalidInput("channel dimensions must be positive");
  if (kraus.empty()) throw InvalidInput("Kraus list is empty");
  for (const Matrix& k : kraus) {
    if (k.rows() != static_cast<Eigen::Index>(m) || k.cols() != static_cast<Eigen::Index>(n)) {
      std::ostringstream msg;
      msg << "Kraus operator is " << k.rows() << "x" << k.cols() << ", expected " << m << "x"
          << n;
      throw InvalidInput(msg.str());
    }
    require_finite(k, "Kraus operator");
  }
}

// Phase so that the first entry of (near-)maximal modulus is real positive.
void fix_phase(Matrix& k) {
  const double mx = k.cwiseAbs().maxCoeff();
  if (mx == 0.0) return;
  const auto flat = k.reshaped();
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    if (std::abs(flat(i)) >= mx * (1.0 - 1e-9)) {
      k *= std::conj(flat(i)) / std::abs(flat(i));
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// KrausMap

KrausMap::KrausMap(std::size_t dim_in, std::size_t dim_out, std::vector<Matrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  check_kraus(dim_in_, dim_out_, kraus_);
}

Matrix KrausMap::apply(const Matrix& x) const {
  if (x.rows() != static_cast<Eigen::Index>(dim_in_) || x.cols() != x.rows()) {
    throw InvalidInput("apply: operand is not " + std::to_string(dim_in_) + "x" +
                       std::to_string(dim_in_));
  }
  const auto m = static_cast<Eigen::Index>(dim_out_);
  Matrix out = Matrix::Zero(m, m);
  for (const Matrix& v : kraus_) out.noalias() += v * x * v.adjoint();
  return out;
}

KrausMap KrausMap::dual() const {
  std::vector<Matrix> adj;
  adj.reserve(kraus_.size());
  for (const Matrix& v : kraus_) adj.push_back(v.adjoint());
  return KrausMap(dim_out_, dim_in_, std::move(adj));
}

KrausMap KrausMap::compressed(const Matrix& q) const {
  if (q.rows() != static_cast<Eigen::Index>(dim_in_) || q.cols() != q.rows()) {
    throw InvalidInput("compressed: projection has wrong dimension");
  }
  std::vector<Matrix> out;
  out.reserve(kraus_.size());
  for (const Matrix& v : kraus_) out.push_back(v * q);
  return KrausMap(dim_in_, dim_out_, std::move(out));
}

Matrix KrausMap::superoperator() const {
  const auto nn = static_cast<Eigen::Index>(dim_in_ * dim_in_);
  const auto mm = static_cast<Eigen::Index>(dim_out_ * dim_out_);
  Matrix s = Matrix::Zero(mm, nn);
  for (const Matrix& v : kraus_) s += kron(v.conjugate(), v);
  return s;
}

Matrix KrausMap::choi() const {
  const auto nm = static_cast<Eigen::Index>(dim_in_ * dim_out_);
  Matrix c = Matrix::Zero(nm, nm);
  for (const Matrix& v : kraus_) {
    const Vector w = vec(v);
    c.noalias() += w * w.adjoint();
  }
  return c;
}

// ---------------------------------------------------------------------------
// QuantumChannel

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, std::string label, const Tolerance& tol)
    : QuantumChannel(
          [&] {
            if (kraus.empty()) throw InvalidInput("Kraus list is empty");
            const auto n = static_cast<std::size_t>(kraus.front().cols());
            const auto m = static_cast<std::size_t>(kraus.front().rows());
            return KrausMap(n, m, std::move(kraus));
          }(),
          std::move(label), tol) {}

QuantumChannel::QuantumChannel(KrausMap map, std::string label, const Tolerance& tol)
    : map_(std::move(map)), label_(std::move(label)) {
  const double dev = trace_deviation();
  if (dev > tol.equality_abs * static_cast<double>(dim_in())) {
    std::ostringstream msg;
    msg << "Kraus operators are not trace preserving (||sum V*V - I||_F = " << dev << ")";
    throw InvalidInput(msg.str());
  }
  superop_ = map_.superoperator();
  choi_ = ChoiMatrix{map_.choi(), dim_in(), dim_out()};
}

Matrix QuantumChannel::apply(const Matrix& x) const { return map_.apply(x); }

bool QuantumChannel::is_unital(double eps) const {
  if (!is_square()) return false;
  const auto n = static_cast<Eigen::Index>(dim_in());
  return (apply(Matrix::Identity(n, n)) - Matrix::Identity(n, n)).norm() <= eps;
}

double QuantumChannel::trace_deviation() const {
  const auto n = static_cast<Eigen::Index>(dim_in());
  Matrix s = Matrix::Zero(n, n);
  for (const Matrix& v : map_.kraus()) s.noalias() += v.adjoint() * v;
  return (s - Matrix::Identity(n, n)).norm();
}

Matrix apply(const QuantumChannel& channel, const Matrix& x) { return channel.apply(x); }
KrausMap dual(const QuantumChannel& channel) { return channel.map().dual(); }
ChoiMatrix choi(const QuantumChannel& channel) { return channel.choi(); }
Matrix superoperator_matrix(const QuantumChannel& channel) { return channel.superoperator(); }

// ---------------------------------------------------------------------------
// Canonical forms

KrausMap kraus_from_choi(const Matrix& choi, std::size_t dim_in, std::size_t dim_out,
                         const Tolerance& tol) {
  const auto n = static_cast<Eigen::Index>(dim_in);
  const auto m = static_cast<Eigen::Index>(dim_out);
  if (choi.rows() != n * m || choi.cols() != n * m) {
    throw InvalidInput("Choi matrix has wrong dimension");
  }
  require_finite(choi, "Choi matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (choi + choi.adjoint()));
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double lmax = std::max(lam(lam.size() - 1), 0.0);
  const double cut = rank_cutoff(lmax, static_cast<std::size_t>(n * m),
                                 static_cast<std::size_t>(n * m), tol);

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = lam.size() - 1; i >= 0; --i) {
    if (lam(i) > 0.0 && lam(i) >= cut) kept.push_back(i);
  }
  if (kept.empty()) {
    // The zero map; keep a single zero operator so the Kraus list is nonempty.
    return KrausMap(dim_in, dim_out, {Matrix::Zero(m, n)});
  }
  // Eigenvectors of a degenerate eigenvalue are not unique. Each cluster of
  // near-equal weights is replaced by the Gram-Schmidt basis of its
  // projector's columns, taken in index order.
  const double gap = tol.eig_cluster * std::max(1.0, lmax);
  std::vector<Matrix> kraus;
  kraus.reserve(kept.size());
  std::size_t begin = 0;
  while (begin < kept.size()) {
    std::size_t end = begin + 1;
    while (end < kept.size() && lam(kept[end - 1]) - lam(kept[end]) <= gap) ++end;
    const auto c = static_cast<Eigen::Index>(end - begin);
    Matrix e(n * m, c);
    double weight = 0.0;
    for (std::size_t t = begin; t < end; ++t) {
      e.col(static_cast<Eigen::Index>(t - begin)) = es.eigenvectors().col(kept[t]);
      weight += lam(kept[t]);
    }
    weight /= static_cast<double>(c);
    Matrix basis = e;
    if (c > 1) {
      const Matrix proj = e * e.adjoint();
      Eigen::Index found = 0;
      for (Eigen::Index j = 0; j < n * m && found < c; ++j) {
        Vector v = proj.col(j);
        for (Eigen::Index t = 0; t < found; ++t) v -= basis.col(t).dot(v) * basis.col(t);
        for (Eigen::Index t = 0; t < found; ++t) v -= basis.col(t).dot(v) * basis.col(t);
        const double nv = v.norm();
        if (nv > 1e-3) basis.col(found++) = v / nv;
      }
    }
    for (Eigen::Index t = 0; t < c; ++t) {
      const double w = c > 1 ? weight : lam(kept[begin]);
      Matrix k = std::sqrt(w) * unvec(basis.col(t), m, n);
      fix_phase(k);
      kraus.push_back(std::move(k));
    }
    begin = end;
  }
  return KrausMap(dim_in, dim_out, std::move(kraus));
}

KrausMap canonical_kraus(const KrausMap& map, const Tolerance& tol) {
  return kraus_from_choi(map.choi(), map.dim_in(), map.dim_out(), tol);
}

QuantumChannel canonical_kraus(const QuantumChannel& channel, const Tolerance& tol) {
  return QuantumChannel(kraus_from_choi(channel.choi().matrix, channel.dim_in(),
                                        channel.dim_out(), tol),
                        channel.label(), tol);
}

Matrix choi_from_superoperator(const Matrix& superop, std::size_t dim_in, std::size_t dim_out) {
  const auto n = static_cast<Eigen::Index>(dim_in);
  const auto m = static_cast<Eigen::Index>(dim_out);
  if (superop.rows() != m * m || superop.cols() != n * n) {
    throw InvalidInput("superoperator has wrong shape");
  }
  Matrix c(n * m, n * m);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index s = 0; s < m; ++s) c(k * m + r, l * m + s) = superop(r + s * m, k + l * n);
  return c;
}

QuantumChannel channel_from_superoperator(const Matrix& superop, std::size_t dim_in,
                                          std::size_t dim_out, std::string label,
                                          const Tolerance& tol) {
  return QuantumChannel(
      kraus_from_choi(choi_from_superoperator(superop, dim_in, dim_out), dim_in, dim_out, tol),
      std::move(label), tol);
}

// ---------------------------------------------------------------------------
// Complement, kernel

QuantumChannel complement(const QuantumChannel& channel, const Tolerance& tol) {
  const KrausMap canon = canonical_kraus(channel.map(), tol);
  const auto d = static_cast<Eigen::Index>(canon.kraus().size());
  const auto n = static_cast<Eigen::Index>(channel.dim_in());
  const auto m = static_cast<Eigen::Index>(channel.dim_out());
  std::vector<Matrix> comp;
  comp.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) {
    Matrix w(d, n);
    for (Eigen::Index i = 0; i < d; ++i) w.row(i) = canon.kraus()[static_cast<std::size_t>(i)].row(r);
    comp.push_back(std::move(w));
  }
  const std::string label = channel.label().empty() ? "complement" : channel.label() + "^C";
  return QuantumChannel(KrausMap(channel.dim_in(), static_cast<std::size_t>(d), std::move(comp)),
                        label, tol);
}

Matrix complement_entrywise(const QuantumChannel& channel, const Matrix& rho,
                            const Tolerance& tol) {
  if (rho.rows() != static_cast<Eigen::Index>(channel.dim_in()) || rho.cols() != rho.rows()) {
    throw InvalidInput("complement_entrywise: operand has wrong dimension");
  }
  const KrausMap canon = canonical_kraus(channel.map(), tol);
  const auto& v = canon.kraus();
  const auto d = static_cast<Eigen::Index>(v.size());
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out(i, j) = (rho * v[static_cast<std::size_t>(j)].adjoint() * v[static_cast<std::size_t>(i)]).trace();
  return out;
}

OperatorSubspace kernel(const KrausMap& map, const Tolerance& tol) {
  return nullspace(map.superoperator(), tol);
}

OperatorSubspace kernel(const QuantumChannel& channel, const Tolerance& tol) {
  return nullspace(channel.superoperator(), tol);
}

Matrix kraus_gram(const std::vector<Matrix>& kraus) {
  const auto d = static_cast<Eigen::Index>(kraus.size());
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      g(i, j) = (kraus[static_cast<std::size_t>(i)].adjoint() * kraus[static_cast<std::size_t>(j)]).trace();
  return g;
}

std::vector<Matrix> kraus_products(const std::vector<Matrix>& kraus) {
  std::vector<Matrix> out;
  out.reserve(kraus.size() * kraus.size());
  for (const Matrix& a : kraus)
    for (const Matrix& b : kraus) out.push_back(a.adjoint() * b);
  return out;
}

}  // namespace qcomp
