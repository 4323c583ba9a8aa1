#include "qcomp/analysis.hpp"

#include <iomanip>
#include <sstream>

namespace qcomp {

namespace {

Json signature_to_json(const BlockSignature& sig) {
  Json blocks = Json::array();
  for (const Block& b : sig.blocks) blocks.push_back(Json::array({b.multiplicity, b.size}));
  Json out;
  out["blocks"] = std::move(blocks);
  out["annihilated"] = sig.annihilated;
  return out;
}

Json unital_extras_to_json(const UnitalExtras& u) {
  Json out;
  out["mult_domain_dim"] = u.mult_domain_dim;
  out["kernel_dim"] = u.kernel_dim;
  out["n_squared"] = u.n_squared;
  out["sum"] = u.sum;
  out["is_projection"] = u.is_projection;
  out["complement_symmetry"] = u.complement_symmetry;
  out["factor"] = u.factor;
  out["factor_scalar_deviation"] =
      u.factor_scalar_deviation ? Json(*u.factor_scalar_deviation) : Json(nullptr);
  out["commutation_defect"] = u.commutation_defect ? Json(*u.commutation_defect) : Json(nullptr);
  out["notes"] = u.notes;
  return out;
}

Json analyze_algebra(const QuantumChannel& channel, const QuantumChannel& comp,
                     const NamedAlgebra& named, const MatrixAlgebra& a,
                     const std::optional<Matrix>& q_opt, const Tolerance& tol) {
  const auto n = static_cast<Eigen::Index>(channel.dim_in());
  const Matrix q = q_opt ? *q_opt : a.unit_projection();
  const Matrix id = Matrix::Identity(n, n);

  Json out;
  out["name"] = named.name;
  out["dim"] = a.dim();
  out["unital"] = a.is_unital();
  out["signature"] = signature_to_json(block_signature(a, tol));
  out["commutant_dim"] = commutant(a, tol).dim();
  out["center_dim"] = center(a, tol).dim();
  out["q_rank"] = static_cast<long long>(std::llround(q.trace().real()));

  const CodeVerdict corr = test_correctable(channel, a, q, tol);
  const CodeVerdict priv = test_private(channel, a, q, tol);
  const CodeVerdict priv_ker = privacy_kernel_test(channel, a, q, tol);
  const CodeVerdict comp_priv = test_private(comp, a, q, tol);
  out["correctable"] = verdict_to_json(corr);
  out["private"] = verdict_to_json(priv);
  out["private_kernel"] = verdict_to_json(priv_ker);
  out["complement_private"] = verdict_to_json(comp_priv);
  out["consistent"] =
      corr.passed() == comp_priv.passed() && priv.passed() == priv_ker.passed();

  const Privatization st = privatized_to_state(channel, a, tol);
  Json pst;
  pst["privatized"] = st.privatized;
  pst["deviation"] = st.deviation;
  pst["state"] = st.state ? matrix_to_json(*st.state) : Json(nullptr);
  out["privatized_to_state"] = std::move(pst);

  const KernelDuality kd = kernel_duality(channel, q, tol);
  out["kernel_duality_distance"] = kd.distance;

  if (corr.passed()) {
    const Representation pi = construct_pi(channel, a, q, tol);
    Json pj;
    pj["round_trip_error"] = pi_round_trip_error(channel, pi, q);
    pj["multiplicativity_defect"] = pi.multiplicativity_defect();
    pj["adjoint_defect"] = pi.adjoint_defect();
    out["pi"] = std::move(pj);
    const OperatorSubspace gmd = generalized_mult_domain(channel, pi, q, tol);
    Json gj;
    gj["dim"] = gmd.dim();
    gj["distance_to_algebra"] = projector_distance(gmd, a.basis());
    out["generalized_mult_domain"] = std::move(gj);
  } else {
    out["pi"] = nullptr;
    out["generalized_mult_domain"] = nullptr;
  }

  if (test_correctable(channel, a, id, tol).passed()) {
    const ComplementarityIdentity ci = complementarity_identity_check(channel, a, tol);
    Json cj;
    cj["lhs_dim"] = ci.lhs_dim;
    cj["rhs_dim"] = ci.rhs_dim;
    cj["distance"] = ci.distance;
    cj["inclusion_residual"] = ci.inclusion_residual;
    cj["kraus_commutant_dim"] = ci.kraus_commutant_dim;
    cj["commutant_distance"] = ci.commutant_distance;
    cj["holds"] = ci.holds;
    out["complementarity_identity"] = std::move(cj);
  } else {
    out["complementarity_identity"] = nullptr;
  }

  if (test_correctable(channel, a, a.unit_projection(), tol).passed()) {
    out["complement_rank_bound"] = audit_to_json(complement_rank_bound(channel, a, tol));
  } else {
    out["complement_rank_bound"] = nullptr;
  }
  return out;
}

}  // namespace

Json analyze(const AnalysisRequest& request, const Tolerance& tol) {
  tol.validate();
  const QuantumChannel& channel = request.channel;
  const auto n = static_cast<Eigen::Index>(channel.dim_in());
  const bool unital =
      channel.is_square() && channel.is_unital(tol.equality_abs * static_cast<double>(n));

  Json report;
  report["tolerance"] = tolerance_to_json(tol);

  const QuantumChannel canon = canonical_kraus(channel, tol);
  Json cj;
  cj["label"] = channel.label();
  cj["dim_in"] = channel.dim_in();
  cj["dim_out"] = channel.dim_out();
  cj["kraus_count"] = channel.kraus().size();
  cj["choi_rank"] = canon.kraus().size();
  cj["trace_deviation"] = channel.trace_deviation();
  cj["unital"] = unital;
  report["channel"] = std::move(cj);

  const QuantumChannel comp = complement(channel, tol);
  Json comp_j;
  comp_j["dim_out"] = comp.dim_out();
  comp_j["kraus_count"] = comp.kraus().size();
  comp_j["superoperator_distance"] =
      comp.superoperator().rows() == channel.superoperator().rows() &&
              comp.superoperator().cols() == channel.superoperator().cols()
          ? Json((comp.superoperator() - channel.superoperator()).norm())
          : Json(nullptr);
  report["complement"] = std::move(comp_j);

  report["kernel"] = Json{{"dim", kernel(channel, tol).dim()}};

  MultiplicativeDomainRoutes routes;
  const MatrixAlgebra md = multiplicative_domain(channel, tol, &routes);
  Json mj;
  mj["dim"] = md.dim();
  mj["signature"] = signature_to_json(block_signature(md, tol));
  mj["routes_distance"] = unital ? Json(routes.max_distance) : Json(nullptr);
  report["multiplicative_domain"] = std::move(mj);

  const Matrix q_top = request.q ? *request.q : Matrix(Matrix::Identity(n, n));
  report["kernel_duality"] = Json{{"distance", kernel_duality(channel, q_top, tol).distance}};

  report["unital_extras"] =
      unital ? unital_extras_to_json(unital_extras(channel, tol, &md)) : Json(nullptr);

  std::vector<MatrixAlgebra> built;
  Json algebras = Json::array();
  for (const NamedAlgebra& named : request.algebras) {
    if (named.spec.ambient_dim != channel.dim_in()) {
      throw InvalidInput("algebra " + named.name + " does not act on the channel input space");
    }
    built.push_back(build_algebra(named.spec, tol));
    algebras.push_back(analyze_algebra(channel, comp, named, built.back(), request.q, tol));
  }
  report["algebras"] = std::move(algebras);

  const MatrixAlgebra* a = built.size() > 0 ? &built[0] : nullptr;
  const MatrixAlgebra* b = built.size() > 1 ? &built[1] : nullptr;
  Json audits = Json::array();
  for (const InequalityAudit& au : audit_inequalities(channel, a, b, tol, &md)) {
    audits.push_back(audit_to_json(au));
  }
  report["audits"] = std::move(audits);
  return report;
}

namespace {

std::string kind_of(const Json& verdict) { return verdict.at("kind").get<std::string>(); }

}  // namespace

std::string render_report(const Json& report) {
  std::ostringstream out;
  const Json& ch = report.at("channel");
  out << "channel " << ch.at("label").get<std::string>() << ": M_" << ch.at("dim_in") << " -> M_"
      << ch.at("dim_out") << ", " << ch.at("kraus_count") << " Kraus operators, Choi rank "
      << ch.at("choi_rank") << (ch.at("unital").get<bool>() ? ", unital" : "") << "\n";
  out << "complement output dim " << report.at("complement").at("dim_out") << ", kernel dim "
      << report.at("kernel").at("dim") << ", multiplicative domain dim "
      << report.at("multiplicative_domain").at("dim") << "\n";
  const Json& ue = report.at("unital_extras");
  if (!ue.is_null()) {
    out << "dim M + dim ker = " << ue.at("sum") << " of n^2 = " << ue.at("n_squared")
        << (ue.at("is_projection").get<bool>() ? " (Phi^dagger Phi is a projection)" : "")
        << "\n";
  }
  for (const Json& a : report.at("algebras")) {
    out << "\nalgebra " << a.at("name").get<std::string>() << " (dim " << a.at("dim")
        << ", commutant " << a.at("commutant_dim") << ", center " << a.at("center_dim") << ")\n";
    out << "  correctable:        " << kind_of(a.at("correctable")) << "\n";
    out << "  private:            " << kind_of(a.at("private")) << "\n";
    out << "  private (kernel):   " << kind_of(a.at("private_kernel")) << "\n";
    out << "  private for Phi^C:  " << kind_of(a.at("complement_private")) << "\n";
    out << "  privatized to state: " << std::boolalpha
        << a.at("privatized_to_state").at("privatized").get<bool>() << "\n";
  }
  out << "\n" << std::left << std::setw(36) << "inequality" << std::setw(10) << "lhs"
      << std::setw(10) << "rhs" << std::setw(8) << "holds" << std::setw(11) << "saturated"
      << "applicable\n";
  for (const Json& au : report.at("audits")) {
    out << std::left << std::setw(36) << au.at("name").get<std::string>() << std::setw(10)
        << au.at("lhs").get<double>() << std::setw(10) << au.at("rhs").get<double>()
        << std::setw(8) << au.at("holds").get<bool>() << std::setw(11)
        << au.at("saturated").get<bool>() << au.at("applicable").get<bool>() << "\n";
  }
  return out.str();
}

}  // namespace qcomp
