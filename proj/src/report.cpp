#include "cmsz/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cmsz/appendix_search.hpp"
#include "cmsz/building.hpp"
#include "cmsz/cmsz_generators.hpp"
#include "cmsz/division_algebra.hpp"
#include "cmsz/finite_unitary.hpp"
#include "cmsz/hermitian_core.hpp"

namespace cmsz {

std::string status_name(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kReportOnly: return "report-only";
  }
  return "fail";
}

bool Suite::passed() const {
  return std::none_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == Status::kFail; });
}

bool all_passed(const std::vector<Suite>& suites) {
  return std::all_of(suites.begin(), suites.end(), [](const Suite& s) { return s.passed(); });
}

const std::vector<std::string>& suite_commands() {
  static const std::vector<std::string> c{"verify-generators", "verify-building",    "verify-reduction",
                                          "verify-unitary",    "classify-subgroups", "verify-torsion",
                                          "appendix-search",   "verify-algebra"};
  return c;
}

namespace {

Json qmat_json(const QMat& g) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(g(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

Json r1mat_json(const R1Mat& g) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(g(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

std::string q_str(const Rational& q) { return q.get_str(); }

class SuiteBuilder {
 public:
  explicit SuiteBuilder(std::string name) { suite_.name = std::move(name); }

  void check(std::string id, std::string citation, bool ok, Json witness = Json::object()) {
    add(std::move(id), std::move(citation), ok ? Status::kPass : Status::kFail, std::move(witness));
  }
  void report(std::string id, std::string citation, Json witness) {
    add(std::move(id), std::move(citation), Status::kReportOnly, std::move(witness));
  }
  template <typename T>
  void equals(std::string id, std::string citation, const T& got, const T& want) {
    Json w;
    w["expected"] = want;
    w["computed"] = got;
    check(std::move(id), std::move(citation), got == want, std::move(w));
  }

  Suite take() { return std::move(suite_); }

 private:
  void add(std::string id, std::string citation, Status s, Json witness) {
    suite_.claims.push_back({std::move(id), std::move(citation), s, std::move(witness)});
  }
  Suite suite_;
};

// Intermediate results shared between suites within one run.
class Pipeline {
 public:
  explicit Pipeline(const RunConfig& cfg) : cfg_(cfg) {}

  const RunConfig& cfg() const { return cfg_; }
  PadicConfig padic() const {
    PadicConfig p;
    p.precision = cfg_.padic_precision;
    return p;
  }

  /// Empty when the construction fails; the error text is kept.
  const GeneratorSet* generators() {
    if (!gen_tried_) {
      gen_tried_ = true;
      try {
        gen_ = derive_generators();
      } catch (const ConstructionError& e) {
        gen_error_ = e.what();
      }
    }
    return gen_ ? &*gen_ : nullptr;
  }
  const std::string& generator_error() const { return gen_error_; }

  const U1Enumeration& enumeration() {
    if (!en_) en_ = enumerate_u1();
    return *en_;
  }
  const ModelImage& model() {
    if (!mi_) mi_ = model_image(enumeration().u0);
    return *mi_;
  }
  const NamedSubgroups& named() {
    if (!ns_) ns_ = named_subgroups(model());
    return *ns_;
  }
  bool has_groups() const { return en_.has_value(); }

  void dump(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const FiniteGroup& g) {
      std::ofstream out(dir / (name + ".txt"));
      out << dump_group(g);
    };
    if (en_) {
      write("u1", en_->u1);
      write("u1_plus", en_->u1_plus);
      write("u0", en_->u0);
    }
    if (mi_) write("image", mi_->image);
    if (ns_) {
      write("p", ns_->p);
      write("p2", ns_->p2);
      write("thp", ns_->thp);
      write("kernel_psi", ns_->kernel_psi);
      for (int i = 0; i < 4; ++i) write("j" + std::to_string(i + 1), ns_->j[i]);
    }
  }

 private:
  const RunConfig& cfg_;
  bool gen_tried_ = false;
  std::optional<GeneratorSet> gen_;
  std::string gen_error_;
  std::optional<U1Enumeration> en_;
  std::optional<ModelImage> mi_;
  std::optional<NamedSubgroups> ns_;
};

// ---------------------------------------------------------------------------

Suite generators_suite(Pipeline& pl) {
  SuiteBuilder s("generators");
  const TwistReport tw = twist_check();
  s.check("twist.det_phi", "det Phi = 28", tw.det_phi_is_28, {{"det", tw.det_phi.str()}});
  Json mism = Json::array();
  for (const auto& m : tw.mismatches)
    mism.push_back({{"row", m.row}, {"col", m.col}, {"computed", m.computed}, {"reference", m.reference}});
  s.check("twist.q_prime", "Phi* Q Phi equals the reference form Q'", tw.mismatches.empty(), {{"mismatches", mism}});

  const auto cp = charpoly(form_q());
  Json coeffs = Json::array();
  for (const auto& c : cp) coeffs.push_back(q_str(c));
  s.check("form.charpoly", "Q has characteristic polynomial t^3 - 30 t^2 + 210 t - 300",
          cp[1] == -30 && cp[2] == 210 && cp[3] == -300, {{"coefficients", coeffs}});
  s.check("form.hermitian", "Q is Hermitian", form_q().is_hermitian());

  const GeneratorSet* gen = pl.generators();
  s.check("generators.derived", "the g_i follow from g_3 = rho and the conjugation and product relations",
          gen != nullptr, gen ? Json{{"rho", qmat_json(gen->rho)}, {"tau", qmat_json(gen->tau)}}
                              : Json{{"error", pl.generator_error()}});
  if (!gen) return s.take();

  auto relation_claim = [&](const std::string& id, const std::string& cite, const std::vector<Relation>& rels) {
    Json failed = Json::array();
    for (const auto& r : rels)
      if (!r.holds) failed.push_back(r.name);
    s.check(id, cite, failed.empty(), {{"checked", rels.size()}, {"failed", failed}});
  };
  relation_claim("generators.conjugation", "tau^-1 g_{2i} tau = g_i for all i in Z/7Z", gen->conjugation_relations);
  relation_claim("generators.products", "the nine listed products g_i g_j g_k are I or (l/2) I",
                 gen->product_relations);

  Json factors = Json::array();
  bool similitudes = true;
  for (const auto& g : gen->g) {
    auto c = similitude_factor(g, form_q());
    similitudes = similitudes && c && sgn(*c) > 0;
    factors.push_back(c ? q_str(*c) : "none");
  }
  s.check("generators.similitudes", "each g_i is a unitary similitude of Q", similitudes, {{"factors", factors}});

  const TrianglePresentation tp = triangle_presentation(*gen);
  s.equals("presentation.size", "the triangle presentation has 21 triples", tp.triples.size(), std::size_t{21});
  bool scalar = true;
  const QMat half = QMat::scalar(QuadInt::half_lambda());
  for (const auto& t : tp.triples) {
    QMat p = triple_product(*gen, t);
    scalar = scalar && (p == QMat::identity() || p == half);
  }
  s.check("presentation.products", "every presentation product is I or (l/2) I", scalar);

  const ChamberStabilizerReport cs = chamber_stabilizer_certificate(*gen);
  Json cases = Json::array();
  for (const auto& c : cs.cases) cases.push_back({{"i", c.i}, {"j", c.j}, {"scalar", c.scalar}});
  s.check("chamber.powers", "(g_1 tau^j)^9 is never scalar; (g_3 tau^j)^9 is scalar only for j = 0", cs.ok,
          {{"cases", cases}});
  return s.take();
}

Suite building_suite(Pipeline& pl) {
  SuiteBuilder s("building");
  const GeneratorSet* gen = pl.generators();
  if (!gen) {
    s.check("building.generators", "generators available", false, {{"error", pl.generator_error()}});
    return s.take();
  }
  const PadicConfig pc = pl.padic();
  const LocalCheckReport lc = local_check(*gen, pc);
  s.equals("local.neighbor_count", "the base vertex has 14 neighbors", lc.neighbor_count, std::size_t{14});
  s.check("local.generator_images", "the neighbors of the base vertex are the g_i^{+-1} images of it",
          lc.neighbors_are_generator_images);
  s.check("local.tau_fixes_base", "tau fixes the base vertex", lc.tau_fixes_base);
  s.check("local.rho_neighbor", "rho moves the base vertex to a neighbor", lc.rho_moves_to_neighbor);
  s.check("local.labels", "the neighbors split 7 + 7 by label", lc.labels_split_7_7);
  s.check("local.cocycle", "label(g v) = label(v) + nu(det g) mod 3 on the radius-2 ball", lc.cocycle_holds,
          {{"checks", lc.cocycle_checks}});
  s.check("local.chambers", "the chambers at the base vertex are the 21 presentation chambers",
          lc.chambers_match_presentation, {{"chambers", lc.chamber_count}});
  s.check("local.chamber_labels", "presentation triples label the chambers bijectively", lc.chamber_labels_bijective);
  s.check("local.shift_rule", "g_i^-1 C(i,j,k) = C(j,k,i)", lc.chamber_shift_rule);
  s.check("local.tau_rule", "tau C(i,j,k) = C(2i,2j,2k)", lc.chamber_tau_rule);

  const unsigned r = pl.cfg().ball_radius;
  auto trans_json = [](const TransitivityReport& t) {
    return Json{{"radius", t.radius},           {"ball_size", t.ball_size},
                {"covered", t.covered},         {"words_explored", t.words_explored},
                {"word_length_used", t.word_length_used}, {"precision_retries", t.precision_retries},
                {"filter_unique", t.filter_unique}, {"tau_cosets_distinct", t.tau_cosets_distinct}};
  };
  const TransitivityReport tr = transitivity_certificate(*gen, r, nullptr, pc, pl.cfg().threads);
  s.check("transitivity.ball", "the integral group reaches every vertex of the radius-" + std::to_string(r) + " ball",
          tr.transitive, trans_json(tr));

  const NamedSubgroups& ns = pl.named();
  for (int i = 0; i < 4; ++i) {
    const TransitivityReport f = transitivity_certificate(*gen, r, &ns.j[i], pc, pl.cfg().threads);
    const std::string name = "J" + std::to_string(i + 1);
    if (i < 2) {
      s.check("transitivity.simple_" + name, "the preimage of " + name + " acts simply transitively on the ball",
              f.ok(), trans_json(f));
    } else {
      Json w = trans_json(f);
      w["simply_transitive"] = f.simply_transitive;
      s.report("transitivity.simple_" + name, "simple transitivity of the preimage of " + name + " on the ball", w);
    }
  }
  return s.take();
}

Suite reduction_suite(Pipeline& pl) {
  SuiteBuilder s("reduction");
  const U1Enumeration& en = pl.enumeration();
  s.equals("order.u0", "|U'_0| = 432", en.u0.order(), std::size_t{432});
  s.equals("order.u1", "|U'_1| = 944784 = 2^4 3^10", en.u1.order(), std::size_t{944784});
  s.equals("order.u1_plus", "|U'_1+| = 472392", en.u1_plus.order(), std::size_t{472392});
  s.check("u1.coset", "U'_1 = U'_1+ and its -I coset", en.coset_matches);
  s.check("u1.parametrized", "the block-form parametrization enumerates U'_1", en.parametrized_matches,
          {{"count", en.parametrized_count}});
  s.check("u1.unitary", "every element of U'_1 is a Q'_1 similitude with factor in F3^x", en.all_unitary);
  s.check("u0.reduction", "U'_0 is the reduction of U'_1 modulo t", en.u0_is_reduction);
  s.check("u0.unitary", "U'_0 preserves Q'_0 up to F3^x", en.u0_unitary);

  const StructureReport sr = structure_check(en);
  for (std::size_t k = 0; k < sr.checks.size(); ++k) {
    const auto& c = sr.checks[k];
    s.check("structure." + std::to_string(k + 1), c.name, c.holds, {{"detail", c.detail}});
  }

  const ModelImage& mi = pl.model();
  s.check("image.rho", "pi'_1(rho) equals the reference matrix", mi.rho_matches_reference,
          {{"rho_bar", r1mat_json(mi.rho_bar)}});
  s.check("image.tau", "pi'_1(tau) equals the reference matrix", mi.tau_matches_reference,
          {{"tau_bar", r1mat_json(mi.tau_bar)}});
  s.equals("order.image", "|pi'_1(I)| = 34992 = 2^4 3^7", mi.image.order(), std::size_t{34992});
  s.check("image.special", "the image is generated by T, H, S, d1 d2 and the scalars", mi.from_special == mi.image,
          {{"order", mi.from_special.order()}});
  s.check("image.level0", "the image modulo t is U'_0", mi.level0_is_u0);
  for (std::size_t k = 0; k < mi.word_identities.size(); ++k) {
    const auto& w = mi.word_identities[k];
    Json wit = Json::object();
    if (!w.erratum.empty()) wit["verified_instead"] = w.erratum;
    s.check("word." + std::to_string(k + 1), w.name, w.holds, wit);
  }
  return s.take();
}

Suite unitary_suite(Pipeline& pl) {
  SuiteBuilder s("unitary");
  const auto rels = relation_suite();
  for (std::size_t k = 0; k < rels.size(); ++k) {
    Json wit = Json::object();
    if (!rels[k].erratum.empty()) wit["verified_instead"] = rels[k].erratum;
    s.check("relation." + std::to_string(k + 1), rels[k].name, rels[k].holds, wit);
  }
  const NamedSubgroups& ns = pl.named();
  s.equals("order.p", "|P| = 8", ns.p.order(), std::size_t{8});
  s.equals("order.p2", "|P2| = 16", ns.p2.order(), std::size_t{16});
  s.equals("order.thp", "|<T, H, P, scalars>| = 3888", ns.thp.order(), std::size_t{3888});
  s.equals("order.kernel_psi", "|ker psi| = 81", ns.kernel_psi.order(), std::size_t{81});
  for (int i = 0; i < 4; ++i)
    s.equals("order.j" + std::to_string(i + 1), "|J" + std::to_string(i + 1) + "| = 11664", ns.j[i].order(),
             std::size_t{11664});
  s.check("psi_h.irreducible", "psi(H) has no P-stable subgroup of order 3", psi_h_irreducible(ns));
  return s.take();
}

Suite classification_suite(Pipeline& pl) {
  SuiteBuilder s("classification");
  const ModelImage& mi = pl.model();
  const NamedSubgroups& ns = pl.named();
  const Index3Classification cl = classify_index3(mi.image, ns.p2, ns);
  Json classes = Json::array();
  bool orders = true;
  for (const auto& c : cl.classes) {
    classes.push_back({{"order", c.subgroup_order}, {"size", c.members.size()}, {"matches_j", c.matches_j + 1}});
    orders = orders && c.subgroup_order == 11664;
  }
  s.equals("classes.count", "the image has 4 conjugacy classes of index-3 subgroups containing P2",
           cl.classes.size(), std::size_t{4});
  s.check("classes.orders", "every class consists of subgroups of order 11664", orders, {{"classes", classes}});
  s.check("classes.match_j", "the classes are the classes of J1, J2, J3, J4", cl.ok,
          {{"overgroups_explored", cl.overgroups_explored}, {"index3_found", cl.index3_found}});
  s.check("membership.rho", "pi'_1(rho) lies in J3", ns.j[2].contains(mi.rho_bar));
  s.check("membership.tau", "pi'_1(tau) lies in J4", ns.j[3].contains(mi.tau_bar));
  return s.take();
}

Suite torsion_suite(Pipeline& pl) {
  SuiteBuilder s("torsion");
  const ModelImage& mi = pl.model();
  const NamedSubgroups& ns = pl.named();
  for (int i = 0; i < 4; ++i) {
    const std::string name = "J" + std::to_string(i + 1);
    const TorsionReport tr = torsion_certificate(ns.j[i], mi, pl.cfg().threads);
    Json w{{"checked", tr.checked}, {"torsion_free", tr.torsion_free}, {"witness", tr.witness}};
    if (i < 2) {
      s.check("torsion_free." + name, name + " has no scalar-twisted conjugate of rho_bar^{+-1} or tau_bar^{+-1}",
              tr.torsion_free, w);
    } else {
      s.check("torsion." + name, name + " contains a scalar-twisted conjugate of rho_bar^{+-1} or tau_bar^{+-1}",
              !tr.torsion_free, w);
    }
  }
  for (int i = 0; i < 4; ++i) {
    const std::string name = "J" + std::to_string(i + 1);
    const DetImageReport d = det_image_check(ns.j[i]);
    Json values = Json::array();
    for (const auto& v : d.det_values) values.push_back(v.str());
    Json w{{"generated_order", d.generated_order}, {"has_one_minus_t", d.has_one_minus_t}, {"det_values", values}};
    if (i < 2) {
      s.check("det_image." + name, "det of the factor-1 part of " + name + " generates R1^x, with 1 - t a value",
              d.ok() && d.has_one_minus_t, w);
    } else {
      s.report("det_image." + name, "det image of the factor-1 part of " + name, w);
    }
  }
  return s.take();
}

Suite appendix_suite() {
  SuiteBuilder s("appendix");
  const EigenBoundReport eb = eigen_bound_certificate();
  s.check("eigen.bound", "the least eigenvalue of Q exceeds 48/25 = 1.92", eb.ok(),
          {{"f(48/25)", q_str(eb.f_at_bound)},
           {"f(2)", q_str(eb.f_at_two)},
           {"f(0)", q_str(eb.f_at_zero)},
           {"min f' on [0, 48/25]", q_str(eb.min_derivative)},
           {"no_negative_roots", eb.no_negative_roots}});

  bool formula = true;
  bool lower = true;
  std::size_t box = 0;
  std::array<int, 6> y{};
  for (int code = 0; code < 15625; ++code) {
    int c = code;
    for (auto& v : y) {
      v = c % 5 - 2;
      c /= 5;
    }
    ++box;
    HalfVec h{{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
    Rational f = form_value(h);
    formula = formula && form_value_formula(y) == f;
    lower = lower && Rational(form_lower_bound(y)) <= f / 10;
  }
  s.check("form.formula", "the closed formula for F agrees with v* Q v", formula, {{"box", "[-2,2]^6"}, {"points", box}});
  s.check("form.lower_bound", "F/10 >= sum y_i^2 - sum_{i<j} |y_i y_j|", lower, {{"points", box}});

  const VReport vr = v_report();
  Json vs = Json::array();
  for (const auto& v : vr.vectors) vs.push_back(v.str());
  s.check("v.size", "|V| = 24, with the four seed vectors, and V = G2 {seeds}", vr.ok(),
          {{"size", vr.vectors.size()},
           {"seeds_present", vr.seeds_present},
           {"union_of_seed_orbits", vr.is_union_of_seed_orbits},
           {"g2_stable", vr.g2_stable},
           {"vectors", vs}});

  const StabilizerResult st = stabilizer_search();
  Json mats = Json::array();
  for (const auto& g : st.matrices) mats.push_back(qmat_json(g));
  s.check("stabilizer.matrices", "the stabilizer of the base lattice is {+-tau^i}", st.matrices == g2_elements(),
          {{"count", st.matrices.size()}, {"triples_checked", st.triples_checked}, {"matrices", mats}});

  const auto cases = case_analyses();
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const CaseReport& c = cases[k];
    const std::string id = "case." + std::to_string(k + 1);
    Json v1 = Json::array();
    Json v3 = Json::array();
    for (const auto& v : c.v1) v1.push_back(v.str());
    for (const auto& v : c.v3) v3.push_back(v.str());
    s.check(id + ".outcome", c.name, c.outcome_matches,
            {{"v1", v1}, {"v3", v3}, {"unitary_invertible", c.unitary_invertible}});
    Json w{{"lists_match", c.lists_match}};
    if (!c.erratum.empty()) w["erratum"] = c.erratum;
    if (c.lists_match)
      s.check(id + ".candidates", "candidate lists for " + c.name, true, w);
    else
      s.report(id + ".candidates", "candidate lists for " + c.name, w);
  }

  const FactorReport fr = factor_normalization();
  Json searches = Json::array();
  for (const auto& r : fr.searches)
    searches.push_back({{"c", q_str(r.factor)}, {"vectors", r.vector_count}, {"found", r.matrices.size()}});
  Json cands = Json::array();
  for (const auto& c : fr.candidates) cands.push_back(q_str(c));
  s.check("factor.normalization", "a stabilizing similitude has factor 1 after scaling by powers of l, lbar",
          fr.only_factor_one && fr.lambda_bar_fixes_base_with_factor_4,
          {{"candidates", cands},
           {"power_of_four", fr.unit_norm_forces_power_of_four},
           {"lambda_bar_factor_4", fr.lambda_bar_fixes_base_with_factor_4},
           {"searches", searches}});

  const EntryDomainReport ed = entry_domain_check(st.matrices);
  s.check("entries.domain", "stabilizer entries lie in Z + (l/2) Z",
          ed.thirty_q_inverse_integral_at_p && ed.lattice_identity_holds && ed.found_entries_in_half_lattice,
          {{"thirty_q_inverse_integral_at_p", ed.thirty_q_inverse_integral_at_p},
           {"lattice_identity", ed.lattice_identity_holds},
           {"box_checked", ed.box_checked},
           {"found_entries", ed.found_entries_in_half_lattice}});
  return s.take();
}

Suite algebra_suite() {
  SuiteBuilder s("algebra");
  const SigmaReport sg = sigma_check();
  s.check("sigma", "sigma: eta -> eta^2 - 2 is an automorphism of L/K of order 3", sg.ok(),
          {{"min_poly", sg.min_poly},
           {"sigma_eta_root", sg.sigma_eta_root},
           {"order_three", sg.order_three},
           {"fixes_k", sg.fixes_k},
           {"multiplicative", sg.multiplicative}});
  const EmbeddingReport em = embed_check();
  s.check("embedding", "Pi^3 = mu and D -> M3(L) is a ring homomorphism", em.ok(),
          {{"pi_cubed_is_mu", em.pi_cubed_is_mu},
           {"twist_rule", em.twist_rule},
           {"lambda_bar_product", em.lambda_bar_product},
           {"associative", em.associative},
           {"homomorphism", em.homomorphism},
           {"nrd_in_k", em.nrd_in_k},
           {"nrd_pi_is_mu", em.nrd_pi_is_mu},
           {"inverse", em.inverse_ok},
           {"trials", em.trials}});
  const StarReport st = involution_check();
  Json minors = Json::array();
  for (const auto& m : st.leading_minors) minors.push_back(q_str(m));
  s.check("involution", "* is an involution of the second kind with positive definite trace form", st.ok(),
          {{"involutive", st.involutive},
           {"anti_multiplicative", st.anti_multiplicative},
           {"pi_star_pi", st.pi_star_pi_is_one},
           {"trace_formula", st.trace_formula},
           {"positive_definite", st.positive_definite},
           {"leading_minors", minors}});
  const BReport b = b_checks();
  s.check("b.anti_hermitian", "b* = -b", b.b_star_is_minus_b);
  s.check("b.norm", "Nrd(b) = -7 (lbar - l), a unit at p and at pbar",
          b.nrd_matches && b.val_p_nrd == 0 && b.val_pbar_nrd == 0,
          {{"nrd", b.nrd_b.str()}, {"val_p", b.val_p_nrd}, {"val_pbar", b.val_pbar_nrd}});
  s.check("psi.alternating", "psi(y, x) = -psi(x, y)", b.psi_alternating, {{"trials", b.trials}});
  s.check("star_b.involution", "x -> b^-1 x* b is an involution", b.star_b_involution && b.star_b_anti_multiplicative,
          {{"trials", b.trials}});
  const OrderReport od = order_and_pairing_checks();
  s.check("order.closed", "O_D = O_L + O_L lbar Pi + O_L lbar Pi^2 is a ring, O_L = Z[l, eta]",
          od.o_l_closed && od.o_l_rank == 6 && od.o_d_closed, {{"witness", od.witness}});
  s.check("psi.perfect", "psi restricted to O_D is perfect at 2", sgn(od.gram_det) != 0 && od.nu2_gram_det == 0,
          {{"det", q_str(od.gram_det)},
           {"nu2_det", od.nu2_gram_det},
           {"nu2_trace_form_det", od.nu2_trace_gram_det},
           {"psi(1,1)", q_str(od.psi_one_one)}});
  const DetSquareReport ds = det_square_check();
  s.check("det.3q", "det(3Q) = 8100 = 90^2", ds.ok(), {{"det", q_str(ds.det_3q)}, {"root", ds.root_3q.get_str()}});
  Json side = Json::array();
  for (const auto& d : ds.b_side)
    side.push_back({{"label", d.label},
                    {"value", d.value.str()},
                    {"rational", d.rational},
                    {"square", d.rational_square},
                    {"squarefree_kernel", d.rational ? d.squarefree_kernel.get_str() : "n/a"}});
  s.report("det.b_side", "determinants on the b side under the two Hermitian normalizations", {{"values", side}});

  auto g_json = [](const std::optional<Rational>& r) { return r ? Json(q_str(*r)) : Json("reject"); };
  const auto g1 = gstar_membership(DElem(1));
  const auto g3 = gstar_membership(DElem(3));
  s.check("gstar.rational", "g^star g = q^2 for rational g = q", g1 && *g1 == 1 && g3 && *g3 == 9,
          {{"1", g_json(g1)}, {"3", g_json(g3)}});
  s.report("gstar.pi", "Pi^star Pi", {{"value", g_json(gstar_membership(DElem::pi()))}});
  return s.take();
}

}  // namespace

std::vector<Suite> run_suites(const std::string& command, const RunConfig& cfg) {
  const auto& cmds = suite_commands();
  std::vector<std::string> selected;
  if (command == "verify-all") {
    selected = cmds;
  } else if (std::find(cmds.begin(), cmds.end(), command) != cmds.end()) {
    selected = {command};
  } else {
    throw std::invalid_argument("unknown subcommand: " + command);
  }
  Pipeline pl(cfg);
  std::vector<Suite> out;
  for (const auto& c : selected) {
    if (c == "verify-generators") out.push_back(generators_suite(pl));
    else if (c == "verify-building") out.push_back(building_suite(pl));
    else if (c == "verify-reduction") out.push_back(reduction_suite(pl));
    else if (c == "verify-unitary") out.push_back(unitary_suite(pl));
    else if (c == "classify-subgroups") out.push_back(classification_suite(pl));
    else if (c == "verify-torsion") out.push_back(torsion_suite(pl));
    else if (c == "appendix-search") out.push_back(appendix_suite());
    else if (c == "verify-algebra") out.push_back(algebra_suite());
  }
  if (!cfg.dump_groups.empty()) {
    if (!pl.has_groups()) pl.named();
    pl.dump(cfg.dump_groups);
  }
  return out;
}

Json report_json(const std::vector<Suite>& suites, const RunConfig& cfg) {
  Json doc;
  Json arr = Json::array();
  for (const auto& s : suites) {
    Json claims = Json::array();
    for (const auto& c : s.claims)
      claims.push_back({{"id", c.id}, {"citation", c.citation}, {"status", status_name(c.status)}, {"witness", c.witness}});
    arr.push_back({{"name", s.name}, {"status", s.passed() ? "pass" : "fail"}, {"claims", claims}});
  }
  doc["suites"] = arr;
  doc["config"] = {{"version", kToolkitVersion},
                   {"padic_precision", cfg.padic_precision},
                   {"ball_radius", cfg.ball_radius},
                   {"dump_groups", cfg.dump_groups}};
  return doc;
}

std::string report_text(const std::vector<Suite>& suites) {
  std::ostringstream os;
  for (const auto& s : suites) {
    os << "== " << s.name << " (" << (s.passed() ? "pass" : "fail") << ")\n";
    for (const auto& c : s.claims) {
      std::string tag = c.status == Status::kPass ? "PASS" : c.status == Status::kFail ? "FAIL" : "INFO";
      os << "  [" << tag << "] " << c.id << ": " << c.citation << "\n";
      if (!c.witness.empty()) os << "         " << c.witness.dump() << "\n";
    }
  }
  std::size_t failed = 0;
  for (const auto& s : suites)
    for (const auto& c : s.claims) failed += c.status == Status::kFail ? 1 : 0;
  os << (failed == 0 ? "all claims pass" : std::to_string(failed) + " claim(s) failed") << "\n";
  return os.str();
}

}  // namespace cmsz
