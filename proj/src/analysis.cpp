#include "crn/analysis.hpp"

#include "crn/kinetics.hpp"

#include <sstream>

namespace crn {

bool AnalysisReport::consistent() const {
  return theorem.consistent() && enumeration_agrees.value_or(true);
}

AnalysisReport analyze(const Network& net, const RateAssignment& rates, const AnalysisOptions& options) {
  AnalysisReport r;
  r.summary = summarize(net);
  r.lattice = lattice_decomposition(net);
  r.tree_constants = tree_constants(net, rates, TreeMethod::minor);

  const LinkageClasses lc = linkage_classes(net);
  bool small = true;
  for (const auto& m : lc.members) small = small && static_cast<int>(m.size()) <= kMaxEnumerationClassSize;
  if (small) r.enumeration_agrees = tree_constants(net, rates, TreeMethod::enumeration) == r.tree_constants;

  r.balance = analyze_balance(net, rates, options.steady_state);
  r.theorem = verify_main_theorem(net, rates);
  if (r.balance.steady_state) {
    const Vector<double> kappa = rates.to_double();
    const Vector<double>& c0 = r.balance.steady_state->c0;
    const double scale = max_flux_term(net, kappa, c0);
    const double rhs = mass_action_rhs<double>(net, kappa, c0).cwiseAbs().maxCoeff();
    r.steady_state_rhs = scale > 0 ? rhs / scale : rhs;
  }
  return r;
}

namespace {

nlohmann::ordered_json lattice_vector(const IntVector& v) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).convert_to<long long>());
  return out;
}

nlohmann::ordered_json lattice_witness(const std::optional<LatticeWitness>& w) {
  if (!w) return nullptr;
  return {{"lambda", lattice_vector(w->lambda)}, {"value", to_string(w->value)}};
}

}  // namespace

nlohmann::ordered_json to_json(const Network& net, const AnalysisReport& r) {
  using json = nlohmann::ordered_json;
  json out;
  out["network"] = {{"species", net.species()},
                    {"n", r.summary.n},
                    {"s", r.summary.s},
                    {"e", r.summary.e},
                    {"linkage_classes", r.summary.ell},
                    {"dim_S", r.summary.dim_s},
                    {"deficiency", r.summary.deficiency}};
  json n2 = json::array();
  for (Eigen::Index c = 0; c < r.lattice.n2.cols(); ++c) n2.push_back(lattice_vector(r.lattice.n2.col(c)));
  out["lattice"] = {{"rank_N0", r.lattice.rank_n0()},
                    {"rank_N1", r.lattice.rank_n1()},
                    {"rank_N2", r.lattice.rank_n2()},
                    {"N2_basis", n2}};
  json k = json::array();
  for (Eigen::Index i = 0; i < r.tree_constants.size(); ++i) k.push_back(to_string(r.tree_constants(i)));
  out["tree_constants"] = {{"K", k},
                           {"method", "minor"},
                           {"enumeration_agrees", r.enumeration_agrees ? json(*r.enumeration_agrees) : json(nullptr)}};
  out["formally_balanced"] = r.balance.formal.balanced;
  out["detailed_balanced"] = r.balance.detailed.balanced;
  out["complex_balanced"] = r.balance.complex.balanced;

  json formal = nullptr;
  if (const auto& w = r.balance.formal.witness) {
    json cycle = json::array();
    for (int v : w->cycle.vertices) cycle.push_back(v + 1);
    formal = {{"cycle", cycle},
              {"forward_product", to_string(w->forward_product)},
              {"backward_product", to_string(w->backward_product)}};
  }
  out["witnesses"] = {{"formal", formal},
                      {"detailed", lattice_witness(r.balance.detailed.witness)},
                      {"complex", lattice_witness(r.balance.complex.witness)}};

  if (const auto& ss = r.balance.steady_state) {
    json c0 = json::array();
    for (Eigen::Index i = 0; i < ss->c0.size(); ++i) c0.push_back(ss->c0(i));
    json laws = json::array();
    for (Eigen::Index c = 0; c < ss->s_perp.cols(); ++c) laws.push_back(lattice_vector(ss->s_perp.col(c)));
    out["steady_state"] = {{"c0", c0},
                           {"residual", ss->residual},
                           {"rhs_relative", r.steady_state_rhs.value_or(0.0)},
                           {"conservation_laws", laws}};
  } else {
    out["steady_state"] = nullptr;
  }

  json failures = json::array();
  for (const auto& f : r.theorem.failures) failures.push_back(f);
  out["theorem"] = {{"consistent", r.theorem.consistent()},
                    {"ratios_agree", r.theorem.ratios_agree ? json(*r.theorem.ratios_agree) : json(nullptr)},
                    {"failures", failures}};
  return out;
}

std::string human_summary(const Network& net, const AnalysisReport& r) {
  std::ostringstream out;
  const auto yes = [](bool b) { return b ? "yes" : "no"; };
  out << "complexes n = " << r.summary.n << ", species s = " << r.summary.s << ", reactions e = " << r.summary.e
      << '\n';
  out << "linkage classes = " << r.summary.ell << ", dim S = " << r.summary.dim_s
      << ", deficiency = " << r.summary.deficiency << '\n';
  out << "lattice ranks N0/N1/N2 = " << r.lattice.rank_n0() << '/' << r.lattice.rank_n1() << '/'
      << r.lattice.rank_n2() << '\n';
  out << "tree constants K:";
  for (Eigen::Index i = 0; i < r.tree_constants.size(); ++i) out << ' ' << to_string(r.tree_constants(i));
  out << '\n';
  out << "formally balanced: " << yes(r.balance.formal.balanced);
  if (const auto& w = r.balance.formal.witness) {
    out << " (cycle";
    for (int v : w->cycle.vertices) out << ' ' << v + 1;
    out << ": " << to_string(w->forward_product) << " vs " << to_string(w->backward_product) << ')';
  }
  out << '\n';
  out << "detailed balanced: " << yes(r.balance.detailed.balanced);
  if (const auto& w = r.balance.detailed.witness) out << " (q^lambda = " << to_string(w->value) << ')';
  out << '\n';
  out << "complex balanced:  " << yes(r.balance.complex.balanced);
  if (const auto& w = r.balance.complex.witness) out << " (Q^lambda = " << to_string(w->value) << ')';
  out << '\n';
  if (const auto& ss = r.balance.steady_state) {
    out.precision(10);
    out << "steady state c0:";
    for (Eigen::Index k = 0; k < ss->c0.size(); ++k) out << ' ' << net.species()[static_cast<std::size_t>(k)] << '=' << ss->c0(k);
    out << "\nsteady state residual = " << ss->residual << '\n';
  }
  out << "theorem checks: " << (r.theorem.consistent() ? "consistent" : "VIOLATED") << '\n';
  for (const auto& f : r.theorem.failures) out << "  " << f << '\n';
  return out.str();
}

}  // namespace crn
