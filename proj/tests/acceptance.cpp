// Acceptance checks. `cmsz_acceptance N [verify-binary]` runs check N and
// prints one line "criterion N: PASS|FAIL ..."; without N it runs 1-10.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cmsz/appendix_search.hpp"
#include "cmsz/building.hpp"
#include "cmsz/cmsz_generators.hpp"
#include "cmsz/division_algebra.hpp"
#include "cmsz/finite_unitary.hpp"

using namespace cmsz;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  std::ostringstream o;
  o.precision(1);
  o << std::fixed << s << "s";
  return o.str();
}

Outcome group_orders() {
  const auto t0 = Clock::now();
  const U1Enumeration en = enumerate_u1();
  const ModelImage mi = model_image(en.u0);
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "|U'0|=" << en.u0.order() << " |U'1|=" << en.u1.order() << " |U'1+|=" << en.u1_plus.order()
    << " |image|=" << mi.image.order() << " in " << secs(t);
  return {en.u0.order() == 432 && en.u1.order() == 944784 && en.u1_plus.order() == 472392 &&
              mi.image.order() == 34992 && t < 120,
          d.str()};
}

Outcome generators() {
  GeneratorSet gen;
  try {
    gen = derive_generators();
  } catch (const ConstructionError& e) {
    return {false, e.what()};
  }
  std::size_t held = 0;
  std::size_t total = 0;
  for (const auto* rels : {&gen.conjugation_relations, &gen.product_relations})
    for (const auto& r : *rels) {
      ++total;
      held += r.holds;
    }
  const TrianglePresentation tp = triangle_presentation(gen);
  bool scalar = true;
  for (const auto& t : tp.triples) {
    const QMat p = triple_product(gen, t);
    scalar = scalar && (p == QMat::identity() || p == QMat::scalar(QuadInt::half_lambda()));
  }
  std::ostringstream d;
  d << held << "/" << total << " relations, |F|=" << tp.triples.size() << ", products scalar=" << scalar;
  return {held == total && total == 16 && tp.triples.size() == 21 && scalar, d.str()};
}

Outcome building_local() {
  const auto t0 = Clock::now();
  const LocalCheckReport lc = local_check(derive_generators(), PadicConfig{64, Padic2::kDefaultGuard}, 2);
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << lc.neighbor_count << " neighbors, generator images=" << lc.neighbors_are_generator_images
    << ", tau fixes base=" << lc.tau_fixes_base << ", cocycle on " << lc.cocycle_checks
    << " pairs=" << lc.cocycle_holds << " in " << secs(t);
  return {lc.neighbor_count == 14 && lc.neighbors_are_generator_images && lc.tau_fixes_base && lc.cocycle_holds &&
              t < 60,
          d.str()};
}

Outcome relations() {
  const auto rels = relation_suite();
  std::size_t held = 0;
  std::string failed;
  for (const auto& r : rels) {
    if (r.holds) {
      ++held;
    } else {
      failed += " " + r.name;
      if (!r.erratum.empty()) failed += " (holds instead: " + r.erratum + ")";
    }
  }
  const auto& s = special_elements();
  bool orders = element_order(s.w) == 4;
  for (const R1Mat* g : {&s.z, &s.u, &s.b1, &s.b2, &s.c1, &s.c2, &s.d1, &s.d2, &s.d3, &s.d4})
    orders = orders && element_order(*g) == 3;
  std::ostringstream d;
  d << held << "/" << rels.size() << " identities, orders=" << orders;
  if (!failed.empty()) d << "; failing:" << failed;
  return {held == rels.size() && orders, d.str()};
}

Outcome classification() {
  const auto t0 = Clock::now();
  const ModelImage mi = model_image(enumerate_u1().u0);
  const NamedSubgroups ns = named_subgroups(mi);
  const Index3Classification cl = classify_index3(mi.image, ns.p2, ns);
  const bool rho_j3 = ns.j[2].contains(mi.rho_bar);
  const bool tau_j4 = ns.j[3].contains(mi.tau_bar);
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << cl.classes.size() << " classes, match J1-J4=" << cl.ok << ", rho in J3=" << rho_j3 << ", tau in J4=" << tau_j4
    << " in " << secs(t);
  return {cl.classes.size() == 4 && cl.ok && rho_j3 && tau_j4 && t < 600, d.str()};
}

Outcome torsion() {
  const ModelImage mi = model_image(enumerate_u1().u0);
  const NamedSubgroups ns = named_subgroups(mi);
  std::ostringstream d;
  bool pass = true;
  for (int i = 0; i < 4; ++i) {
    const TorsionReport tr = torsion_certificate(ns.j[i], mi, 0);
    const bool want = i < 2;
    pass = pass && tr.torsion_free == want;
    d << "J" << i + 1 << (tr.torsion_free ? " torsion-free" : " has torsion") << (i < 3 ? ", " : "");
  }
  return {pass, d.str()};
}

Outcome appendix() {
  const auto t0 = Clock::now();
  const VReport vr = v_report();
  const StabilizerResult st = stabilizer_search();
  const auto cases = case_analyses();
  bool outcomes = cases.size() == 4;
  std::string lists;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    outcomes = outcomes && cases[k].outcome_matches;
    if (!cases[k].lists_match) lists += " case " + std::to_string(k + 1) + " lists differ (" + cases[k].erratum + ")";
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "|V|=" << vr.vectors.size() << " seeds=" << vr.seeds_present << ", stabilizer " << st.matrices.size()
    << " matrices = {+-tau^i}: " << (st.matrices == g2_elements()) << ", case outcomes=" << outcomes << " in "
    << secs(t);
  if (!lists.empty()) d << "; note:" << lists;
  return {vr.ok() && st.matrices == g2_elements() && outcomes && t < 60, d.str()};
}

Outcome eigen_bound() {
  const EigenBoundReport r = eigen_bound_certificate();
  std::ostringstream d;
  d << "f(48/25)=" << r.f_at_bound.get_str() << " f(2)=" << r.f_at_two.get_str()
    << " min f'=" << r.min_derivative.get_str() << ", smallest eigenvalue > 1.92";
  return {r.ok(), d.str()};
}

Outcome det_image() {
  const ModelImage mi = model_image(enumerate_u1().u0);
  const NamedSubgroups ns = named_subgroups(mi);
  std::ostringstream d;
  bool pass = true;
  for (int i = 0; i < 2; ++i) {
    const DetImageReport r = det_image_check(ns.j[i]);
    pass = pass && r.ok() && r.has_one_minus_t;
    d << "J" << i + 1 << ": generated " << r.generated_order << ", 1-t present=" << r.has_one_minus_t
      << (i == 0 ? "; " : "");
  }
  return {pass, d.str()};
}

Outcome division_algebra() {
  const auto t0 = Clock::now();
  const SigmaReport sr = sigma_check();
  const EmbeddingReport er = embed_check();
  const StarReport st = involution_check();
  const BReport br = b_checks();
  const OrderReport orr = order_and_pairing_checks();
  const DetSquareReport ds = det_square_check();
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "sigma=" << sr.ok() << " embedding(" << er.trials << " pairs)=" << er.ok() << " involution=" << st.ok()
    << " b=" << br.ok() << " Nrd(b)=" << br.nrd_b.str() << " det(3Q)=" << ds.det_3q.get_str()
    << " nu2(psi Gram det)=" << orr.nu2_gram_det << " in " << secs(t);
  return {sr.ok() && er.ok() && st.ok() && br.ok() && orr.ok() && ds.ok() && t < 60, d.str()};
}

std::string run_capture(const std::string& cmd, int* status) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  if (!pipe) {
    *status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
  *status = pclose(pipe.release());
  return out;
}

Outcome determinism(const std::string& verify) {
  if (verify.empty()) return {false, "path to cmsz_verify not given"};
  int s1 = 0;
  int s2 = 0;
  const std::string a = run_capture(verify + " --threads 1 --json verify-all", &s1);
  const std::string b = run_capture(verify + " --threads 4 --json verify-all", &s2);
  std::ostringstream d;
  d << a.size() << " and " << b.size() << " bytes, identical=" << (a == b) << " (exit statuses " << s1 << ", " << s2
    << ")";
  return {!a.empty() && a == b, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string verify = argc > 2 ? argv[2] : "";
  const std::vector<std::function<Outcome()>> checks = {
      group_orders, generators, building_local, relations, classification, torsion,
      appendix,     eigen_bound, det_image,     division_algebra, [&] { return determinism(verify); }};

  std::vector<int> which;
  if (argc > 1) {
    const int n = std::stoi(argv[1]);
    if (n < 1 || n > static_cast<int>(checks.size())) {
      std::cerr << "criterion must be 1.." << checks.size() << "\n";
      return 2;
    }
    which.push_back(n);
  } else {
    for (int n = 1; n <= 10; ++n) which.push_back(n);
  }

  bool all = true;
  for (int n : which) {
    Outcome o;
    try {
      o = checks[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
