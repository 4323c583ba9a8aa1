// Acceptance checks. Prints one PASS/FAIL line per criterion (with the
// individual measurements indented underneath) and exits non-zero if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcomp/gallery.hpp"
#include "test_support.hpp"

using namespace qcomp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void check(bool ok, const std::string& what) {
    lines_.push_back(std::string(ok ? "      ok   " : "      FAIL ") + what);
    if (!ok) passed_ = false;
  }
  void note(const std::string& what) { lines_.push_back("      note " + what); }
  void fail_with(const std::string& what) { check(false, what); }

  bool finish() const {
    std::cout << (passed_ ? "PASS" : "FAIL") << "  criterion " << id_ << ": " << title_ << "\n";
    for (const std::string& l : lines_) std::cout << l << "\n";
    std::cout.flush();
    return passed_;
  }

 private:
  int id_;
  std::string title_;
  std::vector<std::string> lines_;
  bool passed_ = true;
};

std::string fmt(const char* label, double value) {
  std::ostringstream out;
  out << label << " = " << value;
  return out.str();
}

template <class T, class U>
std::string eq(const char* label, T got, U want) {
  std::ostringstream out;
  out << label << " = " << got << " (expected " << want << ")";
  return out.str();
}

Matrix identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return Matrix::Identity(k, k);
}

MatrixAlgebra full_algebra(std::size_t n, const Tolerance& tol) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return algebra_from_generators(matrix_units_on(n, idx), false, tol);
}

MatrixAlgebra diagonal_algebra(std::size_t n, const Tolerance& tol) {
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(matrix_unit(n, i, i));
  return algebra_from_generators(gens, false, tol);
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Criterion c(1, "4-qubit hybrid code: correctable with Q = P_C, pi round trip, complement private");
  const Tolerance tol;
  const auto t0 = Clock::now();
  try {
    const GalleryCase gc = gallery_case("qubit4-bitflip", tol);
    const QuantumChannel& ch = gc.request.channel;
    const MatrixAlgebra a = build_algebra(gc.request.algebras[0].spec, tol);
    const Matrix q = a.unit_projection();
    c.check(a.dim() == 8, eq("dim A", a.dim(), 8));
    c.check(std::abs(q.trace().real() - 4.0) < 1e-12, eq("rank Q", q.trace().real(), 4));
    const CodeVerdict v = test_correctable(ch, a, q, tol);
    c.check(v.kind == VerdictKind::correctable, "verdict " + to_string(v.kind));
    c.check(v.deviation <= 1e-9, fmt("max commutator deviation", v.deviation));
    const Representation pi = construct_pi(ch, a, q, tol);
    const double rt = pi_round_trip_error(ch, pi, q);
    c.check(rt <= 1e-8, fmt("pi round-trip error", rt));
    const QuantumChannel comp = complement(ch, tol);
    const CodeVerdict p = test_private(comp, a, q, tol);
    c.check(p.kind == VerdictKind::private_, "complement verdict " + to_string(p.kind));
  } catch (const std::exception& e) {
    c.fail_with(std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  c.check(secs <= 10.0, fmt("runtime [s]", secs));
  return c.finish();
}

bool criterion2() {
  Criterion c(2, "M3 counterexample: dimensions, privatized state, non-applicable product bound");
  Tolerance tol;
  tol.equality_abs = 1e-10;
  const auto t0 = Clock::now();
  try {
    const GalleryCase gc = gallery_case("m3-counterexample", tol);
    const QuantumChannel& ch = gc.request.channel;
    const MatrixAlgebra a = build_algebra(gc.request.algebras[0].spec, tol);
    const MatrixAlgebra b = build_algebra(gc.request.algebras[1].spec, tol);
    c.check(test_correctable(ch, a, a.unit_projection(), tol).passed(), "M2+0 correctable");
    const Privatization pr = privatized_to_state(ch, b, tol);
    c.check(pr.privatized, "0+M2 privatized to a state");
    if (pr.state) {
      const double d = (*pr.state - matrix_unit(3, 1, 1)).norm();
      c.check(d <= 1e-10, fmt("||rho - E22||", d));
    }
    c.check(a.dim() == 4, eq("dim A", a.dim(), 4));
    c.check(b.dim() == 4, eq("dim B", b.dim(), 4));
    const std::size_t ac = commutant(a, tol).dim();
    const std::size_t bc = commutant(b, tol).dim();
    c.check(ac == 3, eq("dim A'", ac, 3));
    c.check(bc == 3, eq("dim B'", bc, 3));
    const auto audits = audit_inequalities(ch, &a, &b, tol);
    const InequalityAudit& prod = audits.at(0);
    c.check(prod.lhs == 16.0 && prod.rhs == 9.0,
            "product " + std::to_string(prod.lhs) + " vs n^2 " + std::to_string(prod.rhs));
    c.check(!prod.holds && !prod.applicable, "product bound violated but not applicable");
  } catch (const std::exception& e) {
    c.fail_with(std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  c.check(secs <= 1.0, fmt("runtime [s]", secs));
  return c.finish();
}

bool criterion3() {
  Criterion c(3, "saturation example N = 4, k = 2: dim(A) dim(B) = 256 = n^2");
  const Tolerance tol;
  const auto t0 = Clock::now();
  try {
    const GalleryCase gc = gallery_case("saturation-n4-k2", tol);
    const MatrixAlgebra a = build_algebra(gc.request.algebras[0].spec, tol);
    const MatrixAlgebra b = build_algebra(gc.request.algebras[1].spec, tol);
    const auto audits = audit_inequalities(gc.request.channel, &a, &b, tol);
    const InequalityAudit& prod = audits.at(0);
    const long long lhs = static_cast<long long>(a.dim() * b.dim());
    c.check(lhs == 256, eq("dim(A)*dim(B)", lhs, 256));
    c.check(prod.lhs == 256.0 && prod.rhs == 256.0,
            "audit lhs " + std::to_string(prod.lhs) + ", rhs " + std::to_string(prod.rhs));
    c.check(prod.applicable, "audit applicable");
    c.check(prod.saturated, "audit saturated");
  } catch (const std::exception& e) {
    c.fail_with(std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  c.check(secs <= 10.0, fmt("runtime [s]", secs));
  return c.finish();
}

bool criterion4() {
  Criterion c(4, "diagonal conditional expectation in M4: unital identities");
  const Tolerance tol;
  try {
    const GalleryCase gc = gallery_case("diag-expectation-n4", tol);
    const QuantumChannel& ch = gc.request.channel;
    const MatrixAlgebra md = multiplicative_domain(ch, tol);
    const double dist = projector_distance(md.basis(), diagonal_algebra(4, tol).basis());
    c.check(md.dim() == 4 && dist <= 1e-8, eq("dim M(Phi)", md.dim(), 4) + ", " +
                                               fmt("distance to diagonal", dist));
    const UnitalExtras u = unital_extras(ch, tol, &md);
    c.check(u.kernel_dim == 12, eq("dim ker", u.kernel_dim, 12));
    c.check(u.sum == 16 && u.n_squared == 16, eq("sum", u.sum, 16));
    c.check(u.is_projection, "Phi^dagger Phi is a projection");
    const QuantumChannel comp = complement(ch, tol);
    const double sd = (comp.superoperator() - ch.superoperator()).norm();
    c.check(sd <= 1e-8, fmt("||Phi^C - Phi||", sd));
    c.check(u.complement_symmetry <= 1e-8, fmt("max ||Phi^C(AX) - Phi^C(XA)||", u.complement_symmetry));
  } catch (const std::exception& e) {
    c.fail_with(std::string("exception: ") + e.what());
  }
  return c.finish();
}

// Random channel families for the property sweeps.
QuantumChannel random_channel(int index, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 4);
  const std::size_t n = static_cast<std::size_t>(dim(rng));
  const int kind = index % 5;
  if (kind == 0 || kind == 1) {
    std::uniform_int_distribution<int> kcount(1, 4);
    return QuantumChannel(qtest::random_kraus(n, n, kcount(rng), rng));
  }
  if (kind == 2) {
    // Mixture of diagonal unitaries, optionally rotated: corrects the diagonal.
    std::vector<Matrix> us;
    std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
    for (int k = 0; k < 3; ++k) {
      Matrix d = Matrix::Zero(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = std::polar(1.0, ph(rng));
      us.push_back(d);
    }
    auto kraus = qtest::unitary_mixture(us, rng);
    const Matrix u = qtest::random_unitary(n, rng);
    for (Matrix& k : kraus) k = u * k;
    return QuantumChannel(kraus);
  }
  if (kind == 3) return QuantumChannel({qtest::random_unitary(n, rng)});
  // Noise outside the leading 2x2 block: V_i = U (I_2 (+) K_i).
  const std::size_t rest = n - 2;
  std::vector<Matrix> kraus;
  if (rest == 0) {
    kraus.push_back(qtest::random_unitary(2, rng));
  } else {
    for (const Matrix& k : qtest::random_kraus(rest, rest, 2, rng)) {
      Matrix v = Matrix::Zero(n, n);
      v.topLeftCorner(2, 2) = Matrix::Identity(2, 2) / std::sqrt(2.0);
      v.bottomRightCorner(rest, rest) = k;
      kraus.push_back(v);
    }
  }
  return QuantumChannel(kraus);
}

bool criterion5() {
  Criterion c(5, "correctable for Phi <=> private for Phi^C on 100 random channels");
  const Tolerance tol;
  std::mt19937_64 rng(20240501);
  int cases = 0, disagreements = 0, correctable = 0, errors = 0;
  for (int i = 0; i < 100; ++i) {
    try {
      const QuantumChannel ch = random_channel(i, rng);
      const std::size_t n = ch.dim_in();
      const QuantumChannel comp = complement(ch, tol);
      std::vector<std::pair<std::string, MatrixAlgebra>> algebras;
      algebras.emplace_back("CI", algebra_from_generators(std::vector<Matrix>{identity(n)}, false, tol));
      algebras.emplace_back("diagonal", diagonal_algebra(n, tol));
      algebras.emplace_back("M2+0", algebra_from_generators(matrix_units_on(n, {0, 1}), false, tol));
      algebras.emplace_back("full", full_algebra(n, tol));
      algebras.emplace_back("M(Phi)", multiplicative_domain(ch, tol));
      for (const auto& [name, a] : algebras) {
        const Matrix q = a.dim() > 0 ? a.unit_projection() : identity(n);
        const bool corr = test_correctable(ch, a, q, tol).passed();
        const bool priv = test_private(comp, a, q, tol).passed();
        ++cases;
        if (corr) ++correctable;
        if (corr != priv) {
          ++disagreements;
          c.note("channel " + std::to_string(i) + ", algebra " + name + ": correctable " +
                 std::to_string(corr) + ", complement private " + std::to_string(priv));
        }
      }
    } catch (const std::exception& e) {
      ++errors;
      c.note("channel " + std::to_string(i) + ": " + e.what());
    }
  }
  c.note(std::to_string(cases) + " channel/algebra pairs, " + std::to_string(correctable) +
         " correctable");
  c.check(errors == 0, eq("exceptions", errors, 0));
  c.check(disagreements == 0, eq("disagreements", disagreements, 0));
  return c.finish();
}

QuantumChannel random_unital_channel(int index, std::mt19937_64& rng) {
  const int kind = index % 5;
  std::vector<Matrix> us;
  std::size_t n = 0;
  if (kind == 0) {
    std::uniform_int_distribution<int> dim(2, 4);
    n = static_cast<std::size_t>(dim(rng));
    for (int k = 0; k < 3; ++k) us.push_back(qtest::random_unitary(n, rng));
  } else if (kind == 1) {
    n = 4;
    for (int k = 0; k < 3; ++k)
      us.push_back(kron(Matrix::Identity(2, 2), qtest::random_unitary(2, rng)));
  } else if (kind == 2) {
    std::uniform_int_distribution<int> dim(2, 5);
    n = static_cast<std::size_t>(dim(rng));
    std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
    for (int k = 0; k < 3; ++k) {
      Matrix d = Matrix::Zero(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = std::polar(1.0, ph(rng));
      us.push_back(d);
    }
  } else if (kind == 3) {
    n = 5;
    for (int k = 0; k < 3; ++k) {
      Matrix u = Matrix::Zero(5, 5);
      u.topLeftCorner(2, 2) = qtest::random_unitary(2, rng);
      u.bottomRightCorner(3, 3) = qtest::random_unitary(3, rng);
      us.push_back(u);
    }
  } else {
    std::uniform_int_distribution<int> dim(2, 4);
    n = static_cast<std::size_t>(dim(rng));
    us.push_back(qtest::random_unitary(n, rng));
  }
  auto kraus = us.size() == 1 ? us : qtest::unitary_mixture(us, rng);
  const Matrix w = qtest::random_unitary(n, rng);
  for (Matrix& k : kraus) k = w * k * w.adjoint();
  return QuantumChannel(kraus);
}

bool criterion6() {
  Criterion c(6, "multiplicative domain: nullspace vs {V_i^* V_j}' vs Fix(Phi^dagger Phi), 50 unital channels");
  const Tolerance tol;
  std::mt19937_64 rng(20240502);
  double worst = 0.0;
  int errors = 0;
  std::ostringstream dims;
  for (int i = 0; i < 50; ++i) {
    try {
      const QuantumChannel ch = random_unital_channel(i, rng);
      const MultiplicativeDomainRoutes r = multiplicative_domain_routes(ch, tol);
      worst = std::max(worst, r.max_distance);
      dims << r.linear_system.dim() << (i + 1 < 50 ? "," : "");
      if (r.max_distance > 1e-8) {
        c.note("channel " + std::to_string(i) + ": " + fmt("distance", r.max_distance));
      }
    } catch (const std::exception& e) {
      ++errors;
      c.note("channel " + std::to_string(i) + ": " + e.what());
    }
  }
  c.note("dim M(Phi) per channel: " + dims.str());
  c.check(errors == 0, eq("exceptions", errors, 0));
  c.check(worst <= 1e-8, fmt("max projector distance", worst));
  return c.finish();
}

bool criterion7() {
  Criterion c(7, "span{Q V_j^* V_i Q} = (ker Phi^C o P_Q)^perp across the gallery");
  const Tolerance tol;
  double worst = 0.0;
  int checks = 0;
  try {
    for (const GalleryCase& gc : gallery_cases(tol)) {
      const QuantumChannel& ch = gc.request.channel;
      std::vector<std::pair<std::string, Matrix>> qs{{"I", identity(ch.dim_in())}};
      for (const NamedAlgebra& na : gc.request.algebras) {
        const MatrixAlgebra a = build_algebra(na.spec, tol);
        if (a.dim() > 0 && !a.is_unital()) qs.emplace_back("P_" + na.name, a.unit_projection());
      }
      for (const auto& [name, q] : qs) {
        const double d = kernel_duality(ch, q, tol).distance;
        worst = std::max(worst, d);
        ++checks;
        if (d > 1e-8) c.note(gc.id + " with Q = " + name + ": " + fmt("distance", d));
      }
    }
  } catch (const std::exception& e) {
    c.fail_with(std::string("exception: ") + e.what());
  }
  c.note(std::to_string(checks) + " (channel, Q) pairs");
  c.check(worst <= 1e-8, fmt("max projector distance", worst));
  return c.finish();
}

struct AlgebraPair {
  MatrixAlgebra a;
  MatrixAlgebra b;
  std::string kind;
};

AlgebraPair random_pair(int index, std::mt19937_64& rng, const Tolerance& tol) {
  auto conj = [](const std::vector<Matrix>& ops, const Matrix& u) {
    std::vector<Matrix> out;
    for (const Matrix& x : ops) out.push_back(u * x * u.adjoint());
    return out;
  };
  auto make = [&](const std::vector<Matrix>& gens) {
    return algebra_from_generators(gens, true, tol);
  };
  const int kind = index % 5;
  if (kind == 0) {
    // Tensor factors M_p (x) I and I (x) M_r, rotated.
    const int p = 2;
    const int r = (index / 5) % 2 == 0 ? 2 : 3;
    const Matrix u = qtest::random_unitary(p * r, rng);
    std::vector<Matrix> ga, gb;
    for (const Matrix& e : matrix_units_on(p, {0, 1})) ga.push_back(kron(e, identity(r)));
    std::vector<std::size_t> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    for (const Matrix& e : matrix_units_on(r, idx)) gb.push_back(kron(identity(p), e));
    return {make(conj(ga, u)), make(conj(gb, u)), "tensor factors"};
  }
  std::uniform_int_distribution<int> dim(4, 6);
  const std::size_t n = static_cast<std::size_t>(dim(rng));
  const Matrix u = qtest::random_unitary(n, rng);
  std::vector<Matrix> diag;
  for (std::size_t i = 0; i < n; ++i) diag.push_back(matrix_unit(n, i, i));
  if (kind == 1) {
    // Diagonal vs Fourier-rotated diagonal: mutually unbiased MASAs.
    Matrix f(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k)
        f(r, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                             2.0 * 3.141592653589793 * static_cast<double>(r * k) / static_cast<double>(n));
    return {make(conj(diag, u)), make(conj(conj(diag, f), u)), "mutually unbiased MASAs"};
  }
  if (kind == 2) {
    return {make(conj(diag, u)), make(conj(diag, qtest::random_unitary(n, rng))), "random MASAs"};
  }
  if (kind == 3) {
    const MatrixAlgebra a = make(conj(matrix_units_on(n, {0, 1}), u));
    return {a, make(std::vector<Matrix>{identity(n)}), "block algebra vs scalars"};
  }
  const MatrixAlgebra a = make(conj(matrix_units_on(n, {0, 1, 2}), u));
  return {a, a, "algebra vs itself"};
}

bool criterion8() {
  Criterion c(8, "quasiorthogonal <=> E_A corrects A and privatizes B; c(A,B) = 1; rank bound");
  const Tolerance tol;
  std::mt19937_64 rng(20240503);
  int inconsistent = 0, c_mismatch = 0, rank_violations = 0, quasi = 0, errors = 0;
  for (int i = 0; i < 50; ++i) {
    try {
      const AlgebraPair pair = random_pair(i, rng, tol);
      const QuasiorthogonalityReport r = quasiorthogonality_equivalence_check(pair.a, pair.b, tol);
      if (r.test.quasiorthogonal) ++quasi;
      if (!r.consistent) {
        ++inconsistent;
        c.note("pair " + std::to_string(i) + " (" + pair.kind + "): equivalence fails");
      }
      const bool c_one = std::abs(r.c - 1.0) <= 1e-8;
      if (c_one != r.test.quasiorthogonal) {
        ++c_mismatch;
        c.note("pair " + std::to_string(i) + " (" + pair.kind + "): " + fmt("c", r.c));
      }
      const QuantumChannel e = conditional_expectation(pair.a, tol);
      if (complement_rank_bound(e, pair.a, tol).violated()) {
        ++rank_violations;
        c.note("pair " + std::to_string(i) + ": rank bound violated");
      }
    } catch (const std::exception& e) {
      ++errors;
      c.note("pair " + std::to_string(i) + ": " + e.what());
    }
  }
  c.note(std::to_string(quasi) + " of 50 pairs quasiorthogonal");
  c.check(errors == 0, eq("exceptions", errors, 0));
  c.check(inconsistent == 0, eq("equivalence failures", inconsistent, 0));
  c.check(c_mismatch == 0, eq("c(A,B) = 1 mismatches", c_mismatch, 0));
  c.check(rank_violations == 0, eq("rank bound violations", rank_violations, 0));
  return c.finish();
}

// Restriction of a non-unital algebra to its support P_A H.
MatrixAlgebra on_support(const MatrixAlgebra& a, const Tolerance& tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.unit_projection());
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  Matrix w(es.eigenvectors().rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) w.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cols[k]);
  std::vector<Matrix> compressed;
  for (const Matrix& x : a.elements()) compressed.push_back(w.adjoint() * x * w);
  return MatrixAlgebra::from_subspace(
      OperatorSubspace::span(static_cast<std::size_t>(w.cols()), compressed, tol), tol);
}

bool criterion9() {
  Criterion c(9, "A'' = A, dim(A) dim(A') >= n^2 and block signature identities over gallery algebras");
  const Tolerance tol;
  try {
    for (const GalleryCase& gc : gallery_cases(tol)) {
      for (const NamedAlgebra& na : gc.request.algebras) {
        const MatrixAlgebra a0 = build_algebra(na.spec, tol);
        const std::string tag = gc.id + "/" + na.name;
        const BlockSignature sig = block_signature(a0, tol);
        std::size_t used = sig.annihilated, dim = 0;
        for (const Block& b : sig.blocks) {
          used += b.multiplicity * b.size;
          dim += b.size * b.size;
        }
        const std::size_t comm0 = commutant(a0, tol).dim();
        c.check(used == a0.ambient_dim() && dim == a0.dim() && sig.commutant_dim() == comm0,
                tag + ": sum m_k n_k + K = " + std::to_string(used) + " (n = " +
                    std::to_string(a0.ambient_dim()) + "), sum n_k^2 = " + std::to_string(dim) +
                    " (dim " + std::to_string(a0.dim()) + ")");
        // The double commutant theorem and the dimension bound are about
        // unital algebras; a non-unital one is checked on its support.
        const bool unital = a0.is_unital();
        const MatrixAlgebra a = unital ? a0 : on_support(a0, tol);
        const std::size_t n = a.ambient_dim();
        const MatrixAlgebra comm = commutant(a, tol);
        const MatrixAlgebra bicomm = commutant(comm, tol);
        const double d = projector_distance(bicomm.basis(), a.basis());
        const std::string where = unital ? "" : " (on its support, n = " + std::to_string(n) + ")";
        c.check(d <= 1e-8, tag + where + ": " + fmt("||P_A'' - P_A||", d));
        c.check(a.dim() * comm.dim() >= n * n,
                tag + where + ": dim(A) dim(A') = " + std::to_string(a.dim() * comm.dim()) +
                    " >= " + std::to_string(n * n));
      }
    }
  } catch (const std::exception& e) {
    c.fail_with(std::string("exception: ") + e.what());
  }
  return c.finish();
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(QCOMP_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool criterion10() {
  Criterion c(10, "gallery --check exits 0 and its reports are byte-identical across runs");
  const char* tmp = std::getenv("TMPDIR");
  const std::string dir = tmp != nullptr ? tmp : "/tmp";
  const std::string p1 = dir + "/qcomp_gallery_run1.json";
  const std::string p2 = dir + "/qcomp_gallery_run2.json";
  const CliRun r1 = run_cli("gallery --check --json " + p1);
  const CliRun r2 = run_cli("gallery --check --json " + p2);
  c.check(r1.code == 0, eq("first run exit code", r1.code, 0));
  c.check(r2.code == 0, eq("second run exit code", r2.code, 0));
  const std::string j1 = slurp(p1), j2 = slurp(p2);
  c.check(!j1.empty(), "report size " + std::to_string(j1.size()) + " bytes");
  c.check(j1 == j2, "reports byte-identical");
  c.check(r1.out == r2.out, "console output identical");
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  return c.finish();
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  int failed = 0;
  for (bool (*criterion)() : {criterion1, criterion2, criterion3, criterion4, criterion5,
                              criterion6, criterion7, criterion8, criterion9, criterion10}) {
    if (!criterion()) ++failed;
  }
  std::cout << "\n" << (10 - failed) << " of 10 criteria passed in " << seconds_since(t0)
            << " s\n";
  return failed == 0 ? 0 : 1;
}
