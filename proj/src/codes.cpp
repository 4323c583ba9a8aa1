#include "qcomp/codes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcomp {

namespace {

constexpr double kStructureEps = 1e-8;

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

void check_code_inputs(const QuantumChannel& channel, const MatrixAlgebra& a, const Matrix& q,
                       const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  if (a.ambient_dim() != channel.dim_in()) {
    throw InvalidInput("algebra acts on dimension " + std::to_string(a.ambient_dim()) +
                       " but the channel input has dimension " + std::to_string(n));
  }
  if (q.rows() != n || q.cols() != n) throw InvalidInput("Q has wrong dimension");
  require_finite(q, "Q");
  if (!is_projection(q, tol.equality_abs)) throw InvalidInput("Q is not a projection");
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Matrix b = a.basis().element(i);
    if ((q * b * q - b).norm() > tol.equality_abs * (1.0 + b.norm())) {
      throw InvalidInput("algebra is not supported on the range of Q");
    }
  }
}

std::string format_deviation(const char* what, double dev) {
  std::ostringstream msg;
  msg << what << " (normalized deviation " << dev << ")";
  return msg.str();
}

}  // namespace

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::correctable: return "correctable";
    case VerdictKind::private_: return "private";
    case VerdictKind::neither: return "neither";
  }
  return "neither";
}

CodeVerdict test_correctable(const QuantumChannel& channel, const MatrixAlgebra& a,
                             const Matrix& q, const Tolerance& tol) {
  check_code_inputs(channel, a, q, tol);
  const std::vector<Matrix>& v = channel.kraus();
  const std::vector<Matrix> basis = a.elements();
  double worst = 0.0;
  Matrix witness;
  for (const Matrix& vi : v) {
    for (const Matrix& vj : v) {
      const Matrix prod = vj.adjoint() * vi;
      const Matrix compressed = q * prod * q;
      const double scale = 1.0 + prod.norm();
      for (const Matrix& x : basis) {
        Matrix c = commutator(compressed, x);
        const double dev = c.norm() / scale;
        if (dev > worst) {
          worst = dev;
          witness = std::move(c);
        }
      }
    }
  }
  CodeVerdict out;
  out.deviation = worst;
  if (worst <= tol.equality_abs) {
    out.kind = VerdictKind::correctable;
    out.details = format_deviation("[Q V_j^* V_i Q, X] vanishes on the algebra", worst);
  } else {
    out.kind = VerdictKind::neither;
    out.witness = std::move(witness);
    out.details = format_deviation("some Q V_j^* V_i Q fails to commute with the algebra", worst);
  }
  return out;
}

CodeVerdict test_private(const QuantumChannel& channel, const MatrixAlgebra& a, const Matrix& q,
                         const Tolerance& tol) {
  check_code_inputs(channel, a, q, tol);
  const MatrixAlgebra comm = commutant(a, tol);
  const auto m = as_index(channel.dim_out());
  const std::vector<Matrix>& v = channel.kraus();
  double worst = 0.0;
  Matrix witness;
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = 0; l < m; ++l) {
      // Q Phi^dagger(E_kl) Q = sum_i (Q V_i^* e_k)(e_l^T V_i Q)
      Matrix y = Matrix::Zero(q.rows(), q.cols());
      for (const Matrix& vi : v) {
        y.noalias() += (q * vi.row(k).adjoint()) * (vi.row(l) * q);
      }
      const double dev = comm.basis().residual(y) / (1.0 + y.norm());
      if (dev > worst) {
        worst = dev;
        witness = y - comm.basis().project(y);
      }
    }
  }
  CodeVerdict out;
  out.deviation = worst;
  if (worst <= tol.equality_abs) {
    out.kind = VerdictKind::private_;
    out.details = format_deviation("Q Phi^dagger(L(H)) Q lies in the commutant", worst);
  } else {
    out.kind = VerdictKind::neither;
    out.witness = std::move(witness);
    out.details = format_deviation("Q Phi^dagger(E_kl) Q leaves the commutant", worst);
  }
  return out;
}

CodeVerdict privacy_kernel_test(const QuantumChannel& channel, const MatrixAlgebra& a,
                                const Matrix& q, const Tolerance& tol) {
  check_code_inputs(channel, a, q, tol);
  const KrausMap compressed = channel.map().compressed(q);
  const OperatorSubspace ker = kernel(compressed, tol);
  const OperatorSubspace perp = orthogonal_complement(ker);
  const std::vector<Matrix> sbasis = perp.basis();
  const std::vector<Matrix> abasis = a.elements();
  double worst = 0.0;
  Matrix witness;
  for (const Matrix& s : sbasis) {
    for (const Matrix& x : abasis) {
      Matrix c = commutator(x, s);
      const double dev = c.norm() / (1.0 + s.norm() * x.norm());
      if (dev > worst) {
        worst = dev;
        witness = std::move(c);
      }
    }
  }
  CodeVerdict out;
  out.deviation = worst;
  std::ostringstream info;
  info << "dim ker(Phi o P_Q) = " << ker.dim() << ", dim perp = " << perp.dim();
  if (worst <= tol.equality_abs) {
    out.kind = VerdictKind::private_;
    out.details = format_deviation("algebra commutes with (ker Phi o P_Q)^perp", worst) + "; " +
                  info.str();
  } else {
    out.kind = VerdictKind::neither;
    out.witness = std::move(witness);
    out.details =
        format_deviation("algebra fails to commute with (ker Phi o P_Q)^perp", worst) + "; " +
        info.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicative domains

OperatorSubspace multiplicative_domain_space(const QuantumChannel& channel,
                                             const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  const auto m = as_index(channel.dim_out());
  const KrausMap canon = canonical_kraus(channel.map(), tol);
  const std::vector<Matrix>& w = canon.kraus();
  const Matrix& s = channel.superoperator();
  double reference = 0.0;
  for (const Matrix& wi : w) reference = std::max(reference, wi.norm());

  // Phi(basis) is shared by every block of a chunk.
  Matrix cached_basis;
  Matrix phi_basis;
  const auto restricted = [&](std::size_t idx, const Matrix& basis) {
    if (cached_basis.cols() != basis.cols() || cached_basis.rows() != basis.rows() ||
        cached_basis != basis) {
      cached_basis = basis;
      phi_basis = s * basis;
    }
    const Matrix& wi = w[idx / 2];
    const bool left = idx % 2 == 0;
    Matrix out(n * m, basis.cols());
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      const Matrix x = basis.col(j).reshaped(n, n);
      const Matrix fx = phi_basis.col(j).reshaped(m, m);
      // V A - Phi(A) V  and  A V^* - V^* Phi(A)
      out.col(j) = left ? Matrix(wi * x - fx * wi).reshaped()
                        : Matrix(x * wi.adjoint() - wi.adjoint() * fx).reshaped();
    }
    return out;
  };
  Matrix null = joint_null_basis(2 * w.size(), n * n, n * m, restricted, reference, tol);
  return OperatorSubspace(channel.dim_in(), std::move(null));
}

OperatorSubspace multiplicative_domain_space_literal(const QuantumChannel& channel,
                                                     const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  const auto m = as_index(channel.dim_out());
  const Matrix& s = channel.superoperator();
  const Matrix id_n = Matrix::Identity(n, n);
  const Matrix id_m = Matrix::Identity(m, m);
  std::vector<Matrix> blocks;
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index k = 0; k < n; ++k) {
      Matrix x = Matrix::Zero(n, n);
      x(k, l) = 1.0;
      const Matrix fx = channel.apply(x);
      // Phi(AX) - Phi(A)Phi(X)
      blocks.push_back(s * kron(x.transpose(), id_n) - kron(fx.transpose(), id_m) * s);
      // Phi(XA) - Phi(X)Phi(A)
      blocks.push_back(s * kron(id_n, x) - kron(id_m, fx) * s);
    }
  }
  double reference = 0.0;
  for (const Matrix& b : blocks) reference = std::max(reference, b.norm());
  const auto restricted = [&](std::size_t i, const Matrix& basis) { return Matrix(blocks[i] * basis); };
  Matrix null = joint_null_basis(blocks.size(), n * n, m * m, restricted, reference, tol);
  return OperatorSubspace(channel.dim_in(), std::move(null));
}

MultiplicativeDomainRoutes multiplicative_domain_routes(const QuantumChannel& channel,
                                                        const Tolerance& tol) {
  const auto n = channel.dim_in();
  const auto nn = as_index(n * n);
  OperatorSubspace lin = multiplicative_domain_space(channel, tol);
  const std::vector<Matrix> prods = kraus_products(channel.kraus());
  OperatorSubspace comm = commutant(std::span<const Matrix>(prods), tol).basis();
  const Matrix& s = channel.superoperator();
  const Matrix t = s.adjoint() * s - Matrix::Identity(nn, nn);
  OperatorSubspace fix(n, null_basis(t, tol, 1.0));
  const double d = std::max({projector_distance(lin, comm), projector_distance(lin, fix),
                             projector_distance(comm, fix)});
  return {std::move(lin), std::move(comm), std::move(fix), d};
}

MatrixAlgebra multiplicative_domain(const QuantumChannel& channel, const Tolerance& tol,
                                    MultiplicativeDomainRoutes* routes_out) {
  if (channel.is_square() &&
      channel.is_unital(tol.equality_abs * static_cast<double>(channel.dim_in()))) {
    MultiplicativeDomainRoutes routes = multiplicative_domain_routes(channel, tol);
    if (routes.max_distance > kStructureEps) {
      std::ostringstream msg;
      msg << "multiplicative domain routes disagree (projector distance " << routes.max_distance
          << ")";
      throw StructureError(msg.str());
    }
    MatrixAlgebra out = MatrixAlgebra::from_subspace(routes.linear_system, tol);
    if (routes_out != nullptr) *routes_out = std::move(routes);
    return out;
  }
  return MatrixAlgebra::from_subspace(multiplicative_domain_space(channel, tol), tol);
}

// ---------------------------------------------------------------------------
// Representations

Representation::Representation(MatrixAlgebra domain, std::vector<Matrix> images)
    : domain_(std::move(domain)), images_(std::move(images)) {
  if (images_.size() != domain_.dim()) {
    throw InvalidInput("representation needs one image per basis element");
  }
  for (const Matrix& im : images_) {
    if (im.rows() != im.cols() || im.rows() != images_.front().rows()) {
      throw InvalidInput("representation images must be square and of equal size");
    }
    require_finite(im, "representation image");
  }
}

std::size_t Representation::target_dim() const {
  return images_.empty() ? domain_.ambient_dim() : static_cast<std::size_t>(images_.front().rows());
}

Matrix Representation::operator()(const Matrix& x) const {
  const auto t = as_index(target_dim());
  Matrix out = Matrix::Zero(t, t);
  const Vector c = domain_.basis().coordinates(x);
  for (std::size_t k = 0; k < images_.size(); ++k) out += c(as_index(k)) * images_[k];
  return out;
}

double Representation::multiplicativity_defect() const {
  const std::vector<Matrix> b = domain_.elements();
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      worst = std::max(worst, ((*this)(b[i] * b[j]) - images_[i] * images_[j]).norm());
  return worst;
}

double Representation::adjoint_defect() const {
  const std::vector<Matrix> b = domain_.elements();
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    worst = std::max(worst, ((*this)(b[i].adjoint()) - images_[i].adjoint()).norm());
  return worst;
}

bool Representation::is_valid(double eps) const {
  return multiplicativity_defect() <= eps && adjoint_defect() <= eps;
}

Representation construct_pi(const QuantumChannel& channel, const MatrixAlgebra& a,
                            const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  return construct_pi(channel, a, Matrix::Identity(n, n), tol);
}

Representation construct_pi(const QuantumChannel& channel, const MatrixAlgebra& a,
                            const Matrix& q, const Tolerance& tol) {
  const CodeVerdict verdict = test_correctable(channel, a, q, tol);
  if (!verdict.passed()) {
    throw InvalidInput("construct_pi: algebra is not correctable (" + verdict.details + ")");
  }
  const Matrix r = channel.apply(q);
  const Matrix root_inv = psd_sqrt_pinv(r, tol).pinv_sqrt;
  std::vector<Matrix> images;
  images.reserve(a.dim());
  for (const Matrix& b : a.elements()) images.push_back(root_inv * channel.apply(b) * root_inv);
  Representation pi(a, std::move(images));
  const double mult = pi.multiplicativity_defect();
  const double adj = pi.adjoint_defect();
  if (mult > kStructureEps || adj > kStructureEps) {
    std::ostringstream msg;
    msg << "constructed pi is not a *-homomorphism (multiplicativity " << mult << ", adjoint "
        << adj << ")";
    throw StructureError(msg.str());
  }
  const double rt = pi_round_trip_error(channel, pi, q);
  if (rt > kStructureEps) {
    std::ostringstream msg;
    msg << "round trip P_Q Phi^dagger(pi(A)) = A fails (error " << rt << ")";
    throw StructureError(msg.str());
  }
  return pi;
}

double pi_round_trip_error(const QuantumChannel& channel, const Representation& pi,
                           const Matrix& q) {
  const KrausMap adj = channel.map().dual();
  const std::vector<Matrix> b = pi.domain().elements();
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    worst = std::max(worst, (q * adj.apply(pi.images()[i]) * q - b[i]).norm());
  }
  return worst;
}

Representation representation_from_kraus(const MatrixAlgebra& a,
                                         const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw InvalidInput("representation_from_kraus: empty Kraus family");
  const KrausMap map(a.ambient_dim(), static_cast<std::size_t>(kraus.front().rows()), kraus);
  std::vector<Matrix> images;
  for (const Matrix& b : a.elements()) images.push_back(map.apply(b));
  return Representation(a, std::move(images));
}

OperatorSubspace generalized_mult_domain(const QuantumChannel& channel, const Representation& pi,
                                         const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  return generalized_mult_domain(channel, pi, Matrix::Identity(n, n), tol);
}

OperatorSubspace generalized_mult_domain(const QuantumChannel& channel, const Representation& pi,
                                         const Matrix& q, const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  const auto m = as_index(channel.dim_out());
  if (pi.domain().ambient_dim() != channel.dim_in() || pi.target_dim() != channel.dim_out()) {
    throw InvalidInput("generalized_mult_domain: representation dimensions do not match");
  }
  if (!pi.is_valid(kStructureEps)) {
    throw InvalidInput("generalized_mult_domain: pi is not a *-representation");
  }
  const KrausMap canon = canonical_kraus(channel.map().compressed(q), tol);
  const std::vector<Matrix> b = pi.domain().elements();
  const std::vector<Matrix>& images = pi.images();
  const auto d = as_index(b.size());
  if (d == 0) return OperatorSubspace(channel.dim_in());
  double reference = 0.0;
  for (const Matrix& wi : canon.kraus()) reference = std::max(reference, wi.norm());
  const auto restricted = [&](std::size_t idx, const Matrix& basis) {
    const Matrix& wi = canon.kraus()[idx / 2];
    const bool left = idx % 2 == 0;
    Matrix full(n * m, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const Matrix& bk = b[static_cast<std::size_t>(k)];
      const Matrix& pk = images[static_cast<std::size_t>(k)];
      full.col(k) = left ? Matrix(wi * bk - pk * wi).reshaped()
                         : Matrix(bk * wi.adjoint() - wi.adjoint() * pk).reshaped();
    }
    return Matrix(full * basis);
  };
  const Matrix coeffs =
      joint_null_basis(2 * canon.kraus().size(), d, n * m, restricted, reference, tol);
  return OperatorSubspace(channel.dim_in(), pi.domain().basis().columns() * coeffs);
}

// ---------------------------------------------------------------------------
// Identities

KernelDuality kernel_duality(const QuantumChannel& channel, const Matrix& q,
                             const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  if (q.rows() != n || q.cols() != n || !is_projection(q, tol.equality_abs)) {
    throw InvalidInput("kernel_duality: Q is not a projection of the right size");
  }
  std::vector<Matrix> prods;
  for (const Matrix& p : kraus_products(channel.kraus())) prods.push_back(q * p * q);
  OperatorSubspace span = OperatorSubspace::span(channel.dim_in(), prods, tol);
  const QuantumChannel comp = complement(channel, tol);
  OperatorSubspace perp = orthogonal_complement(kernel(comp.map().compressed(q), tol));
  const double d = projector_distance(span, perp);
  return {std::move(span), std::move(perp), d};
}

ComplementarityIdentity complementarity_identity_check(const QuantumChannel& channel,
                                                       const MatrixAlgebra& a,
                                                       const Tolerance& tol) {
  const auto n = as_index(channel.dim_in());
  const Matrix id = Matrix::Identity(n, n);
  const CodeVerdict verdict = test_correctable(channel, a, id, tol);
  if (!verdict.passed()) {
    throw InvalidInput("complementarity_identity_check: algebra is not correctable with Q = I");
  }
  const Representation pi = construct_pi(channel, a, tol);
  const OperatorSubspace lhs = generalized_mult_domain(channel, pi, tol);

  const QuantumChannel comp = complement(channel, tol);
  const OperatorSubspace perp = orthogonal_complement(kernel(comp, tol));
  const std::vector<Matrix> perp_basis = perp.basis();
  const OperatorSubspace rhs =
      perp_basis.empty() ? OperatorSubspace::full(channel.dim_in())
                         : commutant(std::span<const Matrix>(perp_basis), tol).basis();
  const std::vector<Matrix> prods = kraus_products(channel.kraus());
  const OperatorSubspace kcomm = commutant(std::span<const Matrix>(prods), tol).basis();

  ComplementarityIdentity out;
  out.lhs_dim = lhs.dim();
  out.rhs_dim = rhs.dim();
  out.distance = projector_distance(lhs, rhs);
  out.inclusion_residual = containment_residual(lhs, rhs);
  out.kraus_commutant_dim = kcomm.dim();
  out.commutant_distance = projector_distance(kcomm, rhs);
  out.round_trip_error = pi_round_trip_error(channel, pi, id);
  out.holds = out.distance <= kStructureEps && out.commutant_distance <= kStructureEps;
  return out;
}

UnitalExtras unital_extras(const QuantumChannel& channel, const Tolerance& tol,
                           const MatrixAlgebra* domain) {
  const double unital_eps = tol.equality_abs * static_cast<double>(channel.dim_in());
  if (!channel.is_square() || !channel.is_unital(unital_eps)) {
    throw InvalidInput("unital_extras: channel is not unital");
  }
  const auto n = as_index(channel.dim_in());
  UnitalExtras out;
  const MatrixAlgebra md = domain != nullptr ? *domain : multiplicative_domain(channel, tol);
  out.mult_domain_dim = md.dim();
  out.kernel_dim = kernel(channel, tol).dim();
  out.n_squared = static_cast<std::size_t>(n * n);
  out.sum = out.mult_domain_dim + out.kernel_dim;

  const Matrix& s = channel.superoperator();
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.adjoint() * s, Eigen::EigenvaluesOnly);
  out.is_projection = true;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (std::abs(l) > tol.eig_cluster && std::abs(l - 1.0) > tol.eig_cluster) {
      out.is_projection = false;
    }
  }

  const QuantumChannel comp = complement(channel, tol);
  const Matrix id = Matrix::Identity(n, n);
  const std::vector<Matrix> mbasis = md.elements();
  const std::vector<Matrix>& c = comp.kraus();
  const auto d = as_index(comp.dim_out());
  const auto r_count = as_index(c.size());
  // Phi^C(A E_kl) = sum_r (C_r A e_k)(C_r e_l)^*, Phi^C(E_kl A) = sum_r (C_r e_k)(C_r A^* e_l)^*
  std::vector<Matrix> plain(static_cast<std::size_t>(n), Matrix(d, r_count));
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index r = 0; r < r_count; ++r)
      plain[static_cast<std::size_t>(k)].col(r) = c[static_cast<std::size_t>(r)].col(k);
  for (const Matrix& a : mbasis) {
    std::vector<Matrix> left(static_cast<std::size_t>(n), Matrix(d, r_count));
    std::vector<Matrix> right(static_cast<std::size_t>(n), Matrix(d, r_count));
    for (Eigen::Index r = 0; r < r_count; ++r) {
      const Matrix ca = c[static_cast<std::size_t>(r)] * a;
      const Matrix cas = c[static_cast<std::size_t>(r)] * a.adjoint();
      for (Eigen::Index k = 0; k < n; ++k) {
        left[static_cast<std::size_t>(k)].col(r) = ca.col(k);
        right[static_cast<std::size_t>(k)].col(r) = cas.col(k);
      }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index l = 0; l < n; ++l) {
        const auto ks = static_cast<std::size_t>(k);
        const auto ls = static_cast<std::size_t>(l);
        const double dev = (left[ks] * plain[ls].adjoint() - plain[ks] * right[ls].adjoint()).norm();
        out.complement_symmetry = std::max(out.complement_symmetry, dev);
      }
    }
  }

  const MatrixAlgebra z = center(md, tol);
  out.factor = z.dim() == 1;
  if (out.factor) {
    double worst = 0.0;
    for (const Matrix& a : mbasis) {
      const Matrix traceless = a - (a.trace() / static_cast<double>(n)) * id;
      worst = std::max(worst, comp.apply(traceless).norm());
    }
    out.factor_scalar_deviation = worst;
    const Matrix ci = comp.apply(id);
    const auto d = ci.rows();
    const double off_scalar = (ci - (ci.trace() / static_cast<double>(d)) * Matrix::Identity(d, d)).norm();
    std::ostringstream msg;
    msg << "Phi^C kills the traceless part of M(Phi); Phi^C(I) is "
        << (off_scalar <= tol.equality_abs ? "scalar" : "not scalar (unequal Kraus weights)");
    out.notes = msg.str();
  }

  if (comp.is_square()) {
    const MatrixAlgebra mc = multiplicative_domain(comp, tol);
    double worst = 0.0;
    std::vector<Matrix> img_a, img_x;
    for (const Matrix& a : mbasis) img_a.push_back(comp.apply(a));
    for (const Matrix& x : mc.elements()) img_x.push_back(comp.apply(x));
    for (const Matrix& fa : img_a)
      for (const Matrix& fx : img_x) worst = std::max(worst, commutator(fa, fx).norm());
    out.commutation_defect = worst;
  } else {
    if (!out.notes.empty()) out.notes += "; ";
    out.notes += "complement is not square, commutation check skipped";
  }
  return out;
}

}  // namespace qcomp
