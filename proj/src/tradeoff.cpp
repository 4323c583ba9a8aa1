#include "qcomp/tradeoff.hpp"

#include <cmath>
#include <sstream>

#include "qcomp/codes.hpp"

namespace qcomp {

namespace {

double as_double(std::size_t v) { return static_cast<double>(v); }

std::string dims_note(const char* what, std::size_t value) {
  std::ostringstream out;
  out << what << " = " << value;
  return out.str();
}

}  // namespace

InequalityAudit make_audit(std::string name, double lhs, double rhs, bool applicable,
                           std::string notes, const Tolerance& tol) {
  InequalityAudit out;
  out.name = std::move(name);
  out.lhs = lhs;
  out.rhs = rhs;
  out.holds = lhs <= rhs + tol.equality_abs;
  out.saturated = std::abs(lhs - rhs) <= tol.equality_abs;
  out.applicable = applicable;
  out.notes = std::move(notes);
  return out;
}

Privatization privatized_to_state(const QuantumChannel& channel, const MatrixAlgebra& b,
                                  const Tolerance& tol) {
  if (b.ambient_dim() != channel.dim_in()) {
    throw InvalidInput("privatized_to_state: algebra and channel input dimensions differ");
  }
  Privatization out;
  if (b.dim() == 0) {
    out.privatized = true;
    return out;
  }
  const Matrix& unit = b.unit_projection();
  const Complex tr_unit = unit.trace();
  const Matrix rho = channel.apply(unit) / tr_unit;
  for (const Matrix& x : b.elements()) {
    out.deviation = std::max(out.deviation, (channel.apply(x) - x.trace() * rho).norm());
  }
  out.privatized = out.deviation <= tol.equality_abs;
  if (out.privatized) out.state = rho;
  return out;
}

QuasiorthogonalityReport quasiorthogonality_equivalence_check(const MatrixAlgebra& a,
                                                              const MatrixAlgebra& b,
                                                              const Tolerance& tol) {
  if (!a.is_unital() || !b.is_unital()) {
    throw InvalidInput("quasiorthogonality_equivalence_check: algebras must be unital");
  }
  if (a.ambient_dim() != b.ambient_dim()) throw InvalidInput("ambient dimensions differ");
  QuasiorthogonalityReport out;
  out.test = quasiorthogonal(a, b, tol);
  out.c = complementarity_measure(a, b, tol);
  const QuantumChannel expectation = conditional_expectation(a, tol);
  const auto n = static_cast<Eigen::Index>(a.ambient_dim());
  out.witness_corrects =
      test_correctable(expectation, a, Matrix::Identity(n, n), tol).passed();
  const Privatization priv = privatized_to_state(expectation, b, tol);
  out.witness_privatizes = priv.privatized;
  out.state = priv.state;
  out.consistent = out.test.quasiorthogonal == (out.witness_corrects && out.witness_privatizes);
  return out;
}

MasaFlags masa_flags(const MatrixAlgebra& a, const Tolerance& tol) {
  const std::size_t n = a.ambient_dim();
  const MatrixAlgebra comm = commutant(a, tol);
  const double eps = tol.equality_abs;
  MasaFlags out;
  out.contains_masa = is_abelian(comm, eps) && comm.dim() <= n && a.dim() >= n;
  out.is_masa = is_abelian(a, eps) && a.dim() == n &&
                projector_distance(a.basis(), comm.basis()) <= 1e-8;
  return out;
}

std::vector<InequalityAudit> audit_inequalities(const QuantumChannel& channel,
                                                const MatrixAlgebra* a, const MatrixAlgebra* b,
                                                const Tolerance& tol,
                                                const MatrixAlgebra* domain) {
  const std::size_t n = channel.dim_in();
  const double n2 = as_double(n * n);
  std::vector<InequalityAudit> out;

  bool a_ok = false;
  std::string a_note = "no algebra A supplied";
  if (a != nullptr) {
    const CodeVerdict v = test_correctable(channel, *a, a->unit_projection(), tol);
    a_ok = v.passed();
    a_note = a_ok ? "A correctable with Q = P_A" : "A is not correctable with Q = P_A";
  }
  bool b_ok = false;
  std::string b_note = "no algebra B supplied";
  if (b != nullptr) {
    b_ok = privatized_to_state(channel, *b, tol).privatized;
    b_note = b_ok ? "B privatized to a state" : "B is not privatized to a state";
  }
  const bool a_unital = a != nullptr && a->is_unital();
  const bool b_unital = b != nullptr && b->is_unital();
  const std::size_t dim_a = a != nullptr ? a->dim() : 0;
  const std::size_t dim_b = b != nullptr ? b->dim() : 0;
  const std::size_t dim_a_comm = a != nullptr ? commutant(*a, tol).dim() : 0;
  const std::size_t dim_b_comm = b != nullptr ? commutant(*b, tol).dim() : 0;

  {
    const bool applicable = a_ok && b_ok && b_unital;
    std::string notes = a_note + "; " + b_note;
    if (b != nullptr && !b_unital) notes += "; B is not unital, so the bound does not apply";
    out.push_back(make_audit("dim(A)*dim(B) <= n^2", as_double(dim_a * dim_b), n2, applicable,
                             std::move(notes), tol));
  }
  {
    const bool applicable = a_ok && b_ok && a_unital && b_unital;
    std::string notes = a_note + "; " + b_note;
    if ((a != nullptr && !a_unital) || (b != nullptr && !b_unital)) {
      notes += "; requires unital A and B";
    }
    out.push_back(make_audit("dim(B) <= dim(A')", as_double(dim_b), as_double(dim_a_comm),
                             applicable, notes, tol));
    out.push_back(make_audit("dim(A) <= dim(B')", as_double(dim_a), as_double(dim_b_comm),
                             applicable, notes, tol));
  }
  {
    const std::vector<Matrix> prods = kraus_products(channel.kraus());
    const MatrixAlgebra inner = commutant(std::span<const Matrix>(prods), tol);
    const std::size_t dim_bicomm = commutant(inner, tol).dim();
    std::string notes = b_note;
    if (b != nullptr && !b_unital) notes += "; requires unital B";
    out.push_back(make_audit("dim(B) <= dim({V_i^* V_j}'')", as_double(dim_b),
                             as_double(dim_bicomm), b_ok && b_unital, std::move(notes), tol));
  }
  {
    const bool unital =
        channel.is_square() && channel.is_unital(tol.equality_abs * as_double(n));
    double lhs = 0.0;
    std::string notes = "channel is not unital";
    if (unital) {
      const std::size_t md =
          domain != nullptr ? domain->dim() : multiplicative_domain(channel, tol).dim();
      const std::size_t ker = kernel(channel, tol).dim();
      lhs = as_double(md + ker);
      notes = dims_note("dim M(Phi)", md) + ", " + dims_note("dim ker(Phi)", ker);
    }
    out.push_back(make_audit("dim(M(Phi)) + dim(ker(Phi)) <= n^2", lhs, n2, unital,
                             std::move(notes), tol));
  }
  if (a != nullptr) {
    out.push_back(make_audit("n^2 <= dim(A)*dim(A')", n2, as_double(dim_a * dim_a_comm),
                             a_unital, a_unital ? "" : "A is not unital", tol));
  }
  if (b != nullptr) {
    out.push_back(make_audit("n^2 <= dim(B)*dim(B')", n2, as_double(dim_b * dim_b_comm),
                             b_unital, b_unital ? "" : "B is not unital", tol));
  }
  if (a != nullptr && b != nullptr) {
    const MasaFlags fa = masa_flags(*a, tol);
    const MasaFlags fb = masa_flags(*b, tol);
    const bool conflict = fa.contains_masa && fb.contains_masa && !(fa.is_masa && fb.is_masa);
    std::ostringstream notes;
    notes << std::boolalpha << "A contains MASA: " << fa.contains_masa
          << ", A is MASA: " << fa.is_masa << ", B contains MASA: " << fb.contains_masa
          << ", B is MASA: " << fb.is_masa;
    out.push_back(make_audit("MASA exclusion (violations)", conflict ? 1.0 : 0.0, 0.0,
                             a_ok && b_ok && a_unital && b_unital, notes.str(), tol));
  }
  return out;
}

InequalityAudit complement_rank_bound(const QuantumChannel& channel, const MatrixAlgebra& a,
                                      const Tolerance& tol) {
  const CodeVerdict v = test_correctable(channel, a, a.unit_projection(), tol);
  if (!v.passed()) {
    throw InvalidInput("complement_rank_bound: algebra is not correctable with Q = P_A");
  }
  const QuantumChannel comp = complement(channel, tol);
  const auto d = static_cast<Eigen::Index>(comp.dim_out());
  const std::vector<Matrix> basis = a.elements();
  Matrix images(d * d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    images.col(static_cast<Eigen::Index>(i)) = comp.apply(basis[i]).reshaped();
  }
  const std::size_t rank =
      basis.empty() ? 0 : static_cast<std::size_t>(column_space(images, tol, 1.0).cols());
  const std::size_t centre = center(a, tol).dim();
  return make_audit("rank(Phi^C|_A) <= dim(A cap A')", as_double(rank), as_double(centre), true,
                    dims_note("rank", rank) + ", " + dims_note("center dim", centre), tol);
}

}  // namespace qcomp
