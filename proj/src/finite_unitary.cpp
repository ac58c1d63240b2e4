#include "cmsz/finite_unitary.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cmsz/cmsz_generators.hpp"
#include "cmsz/parallel.hpp"

namespace cmsz {

// ---------------------------------------------------------------------------
// Matrix helpers

R1Mat r1_inverse(const R1Mat& g) {
  R1 d = g.det();
  if (!d.is_unit()) throw std::domain_error("R1 matrix is not invertible");
  return d.inverse() * g.adjugate();
}

R1Mat commutator(const R1Mat& a, const R1Mat& b) { return r1_inverse(a) * r1_inverse(b) * a * b; }

R1Mat conjugate(const R1Mat& a, const R1Mat& d) { return r1_inverse(d) * a * d; }

unsigned element_order(const R1Mat& g) {
  const R1Mat one = R1Mat::identity();
  R1Mat x = g;
  for (unsigned n = 1; n <= 1000; ++n) {
    if (x == one) return n;
    x = x * g;
  }
  throw std::runtime_error("element order exceeds 1000");
}

std::optional<R1> r1_similitude_factor(const R1Mat& g, const R1Mat& form) {
  R1Mat p = g.star() * form * g;
  for (R1 c : {R1(1), R1(-1)}) {
    if (p == c * form) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FiniteGroup

std::optional<FiniteGroup> FiniteGroup::try_closure(const std::vector<R1Mat>& gens, std::size_t limit) {
  std::unordered_set<ElemKey> seen;
  seen.reserve(std::min<std::size_t>(limit, 1u << 21) * 2);
  std::vector<R1Mat> queue;
  queue.push_back(R1Mat::identity());
  seen.insert(key_of(queue.front()));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& s : gens) {
      R1Mat y = queue[i] * s;
      if (seen.insert(key_of(y)).second) {
        if (seen.size() > limit) return std::nullopt;
        queue.push_back(y);
      }
    }
  }
  FiniteGroup g;
  g.keys_.assign(seen.begin(), seen.end());
  std::sort(g.keys_.begin(), g.keys_.end());
  g.gens_ = gens;
  return g;
}

FiniteGroup FiniteGroup::closure(const std::vector<R1Mat>& gens) {
  return *try_closure(gens, std::numeric_limits<std::size_t>::max());
}

FiniteGroup FiniteGroup::from_elements(std::vector<ElemKey> keys, std::vector<R1Mat> gens) {
  FiniteGroup g;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  g.keys_ = std::move(keys);
  g.gens_ = std::move(gens);
  return g;
}

bool FiniteGroup::contains(ElemKey k) const { return std::binary_search(keys_.begin(), keys_.end(), k); }

bool FiniteGroup::contains_all(const FiniteGroup& sub) const {
  return std::includes(keys_.begin(), keys_.end(), sub.keys_.begin(), sub.keys_.end());
}

std::uint64_t FiniteGroup::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (ElemKey k : keys_) {
    for (int b = 0; b < 4; ++b) {
      h ^= (k >> (8 * b)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

FiniteGroup FiniteGroup::conjugated(const R1Mat& d) const {
  R1Mat di = r1_inverse(d);
  std::vector<ElemKey> keys;
  keys.reserve(keys_.size());
  for (ElemKey k : keys_) keys.push_back(key_of(di * mat_of(k) * d));
  std::vector<R1Mat> gens;
  for (const auto& g : gens_) gens.push_back(di * g * d);
  return from_elements(std::move(keys), std::move(gens));
}

FiniteGroup FiniteGroup::intersect(const FiniteGroup& o) const {
  std::vector<ElemKey> keys;
  std::set_intersection(keys_.begin(), keys_.end(), o.keys_.begin(), o.keys_.end(), std::back_inserter(keys));
  return from_elements(std::move(keys), {});
}

bool FiniteGroup::centralizes(const FiniteGroup& o) const {
  for (const auto& a : gens_)
    for (const auto& b : o.gens_)
      if (!(a * b == b * a)) return false;
  return true;
}

bool FiniteGroup::normalized_by(const std::vector<R1Mat>& by) const {
  for (const auto& d : by) {
    R1Mat di = r1_inverse(d);
    for (const auto& x : gens_) {
      if (!contains(di * x * d) || !contains(d * x * di)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Special elements

const SpecialElements& special_elements() {
  static const SpecialElements s = [] {
    const R1 t = R1::t();
    const R1 o(1);
    const R1 n(0);
    SpecialElements e;
    e.z = R1Mat::scalar(o + t);
    e.u = R1Mat{{o, o, n}, {n, o, n}, {n, n, o - t}};
    e.w = R1Mat{{n, -o, n}, {o, n, n}, {n, n, o}};
    e.b1 = R1Mat{{o, n, t}, {n, o, n}, {n, n, o}};
    e.b2 = R1Mat{{o, n, n}, {n, o, t}, {n, n, o}};
    e.c1 = R1Mat{{o, t, o}, {n, o, n}, {n, -t, o}};
    e.c2 = R1Mat{{o, n, n}, {-t, o, o}, {t, n, o}};
    e.d1 = R1Mat::diag(o + t, o, o);
    e.d2 = R1Mat::diag(o, o + t, o);
    e.d3 = R1Mat{{o, t, n}, {n, o, n}, {n, n, o}};
    e.d4 = R1Mat{{o, n, n}, {t, o, n}, {n, n, o}};
    return e;
  }();
  return s;
}

namespace {

std::vector<R1Mat> gens_t() { return {special_elements().b1, special_elements().b2}; }
std::vector<R1Mat> gens_h() { return {special_elements().z, special_elements().c1, special_elements().c2}; }
std::vector<R1Mat> gens_m() {
  const auto& e = special_elements();
  return {e.d1, e.d2, e.d3, e.d4};
}
std::vector<R1Mat> gens_s() { return {special_elements().u, special_elements().w}; }

std::vector<R1Mat> concat(std::initializer_list<std::vector<R1Mat>> parts) {
  std::vector<R1Mat> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

R1Mat minus_identity() { return R1Mat::scalar(R1(-1)); }

}  // namespace

std::vector<NamedRelation> relation_suite() {
  const auto& e = special_elements();
  auto inv = r1_inverse;
  std::vector<NamedRelation> out;
  auto add = [&](std::string name, bool ok) { out.push_back({std::move(name), ok, {}}); };

  const std::vector<std::pair<std::string, R1Mat>> order3{
      {"z", e.z},   {"u", e.u},   {"b1", e.b1}, {"b2", e.b2}, {"c1", e.c1},
      {"c2", e.c2}, {"d1", e.d1}, {"d2", e.d2}, {"d3", e.d3}, {"d4", e.d4}};
  for (const auto& [name, g] : order3) add("order(" + name + ") = 3", element_order(g) == 3);
  add("order(w) = 4", element_order(e.w) == 4);

  bool central = true;
  for (const auto& g : concat({gens_t(), gens_h(), gens_m(), gens_s(), {minus_identity()}}))
    central = central && e.z * g == g * e.z;
  add("z is central", central);
  add("[c1,c2] = z", commutator(e.c1, e.c2) == e.z);

  add("[b1,b2] = 1", commutator(e.b1, e.b2) == R1Mat::identity());
  bool m_abelian = true;
  for (const auto& x : gens_m())
    for (const auto& y : gens_m()) m_abelian = m_abelian && (x * y == y * x);
  add("M is abelian", m_abelian);
  bool th = true;
  for (const auto& x : gens_t())
    for (const auto& y : gens_h()) th = th && (x * y == y * x);
  add("[T,H] = 1", th);
  bool tm = true;
  for (const auto& x : gens_t())
    for (const auto& y : gens_m()) tm = tm && (x * y == y * x);
  add("[T,M] = 1", tm);

  add("[u,w^2] = 1", commutator(e.u, e.w * e.w) == R1Mat::identity());
  add("wuw = u^-1 w u^-1", e.w * e.u * e.w == inv(e.u) * e.w * inv(e.u));
  add("wu^-1w = u w^-1 u", e.w * inv(e.u) * e.w == e.u * inv(e.w) * e.u);

  add("b1^u = b1", conjugate(e.b1, e.u) == e.b1);
  add("b2^u = b1^-1 b2", conjugate(e.b2, e.u) == inv(e.b1) * e.b2);
  add("b1^w = b2^-1", conjugate(e.b1, e.w) == inv(e.b2));
  add("b2^w = b1", conjugate(e.b2, e.w) == e.b1);

  add("c1^u = b1^-1 c1", conjugate(e.c1, e.u) == inv(e.b1) * e.c1);
  add("c2^u = b1^-1 c1^-1 c2", conjugate(e.c2, e.u) == inv(e.b1) * inv(e.c1) * e.c2);
  if (!out.back().holds && conjugate(e.c2, e.u) == inv(e.b1) * inv(e.c1) * e.c2 * inv(e.z))
    out.back().erratum = "c2^u = b1^-1 c1^-1 c2 z^-1";
  add("c1^w = c2^-1", conjugate(e.c1, e.w) == inv(e.c2));
  add("c2^w = c1", conjugate(e.c2, e.w) == e.c1);

  add("d1^c1 = b1 d1", conjugate(e.d1, e.c1) == e.b1 * e.d1);
  add("d2^c1 = d2", conjugate(e.d2, e.c1) == e.d2);
  add("d3^c1 = d3", conjugate(e.d3, e.c1) == e.d3);
  add("d4^c1 = b2 d4", conjugate(e.d4, e.c1) == e.b2 * e.d4);
  add("d1^c2 = d1", conjugate(e.d1, e.c2) == e.d1);
  add("d2^c2 = b2 d2", conjugate(e.d2, e.c2) == e.b2 * e.d2);
  add("d3^c2 = b1 d3", conjugate(e.d3, e.c2) == e.b1 * e.d3);
  add("d4^c2 = d4", conjugate(e.d4, e.c2) == e.d4);

  add("d1^u = d1 d3", conjugate(e.d1, e.u) == e.d1 * e.d3);
  add("d2^u = d2 d3^-1", conjugate(e.d2, e.u) == e.d2 * inv(e.d3));
  add("d3^u = d3", conjugate(e.d3, e.u) == e.d3);
  add("d4^u = d1^-1 d2 d3^-1 d4", conjugate(e.d4, e.u) == inv(e.d1) * e.d2 * inv(e.d3) * e.d4);
  add("d1^w = d2", conjugate(e.d1, e.w) == e.d2);
  add("d2^w = d1", conjugate(e.d2, e.w) == e.d1);
  add("d3^w = d4^-1", conjugate(e.d3, e.w) == inv(e.d4));
  add("d4^w = d3^-1", conjugate(e.d4, e.w) == inv(e.d3));
  return out;
}

// ---------------------------------------------------------------------------
// U'_1 and U'_0

namespace {

std::vector<std::array<int, 4>> sl2_f3() {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (((a * d - b * c) % 3 + 3) % 3 == 1) out.push_back({a, b, c, d});
  return out;
}

// Block form [[A, B], [tC, d]] with C^T = -d^{-1} J A^{-1} B mod t and
// J = [[0, -1], [1, 0]].
std::vector<ElemKey> parametrized_u1() {
  std::vector<ElemKey> keys;
  keys.reserve(944784);
  for (const auto& a0 : sl2_f3()) {
    // A0^{-1} for det 1: [[d, -b], [-c, a]]
    const int ai[4] = {a0[3], -a0[1], -a0[2], a0[0]};
    for (int a1 = 0; a1 < 81; ++a1) {
      int t1[4] = {a1 % 3, (a1 / 3) % 3, (a1 / 9) % 3, a1 / 27};
      R1 A[4];
      for (int k = 0; k < 4; ++k) A[k] = R1::make(a0[k], t1[k]);
      for (unsigned bi = 0; bi < 81; ++bi) {
        R1 B0 = R1::from_index(bi % 9);
        R1 B1 = R1::from_index(bi / 9);
        for (R1 d : r1_units()) {
          // v = A0^{-1} B0 (mod t)
          int v0 = ai[0] * B0.x0() + ai[1] * B1.x0();
          int v1 = ai[2] * B0.x0() + ai[3] * B1.x0();
          // J v = (-v1, v0); C^T = -d0^{-1} J v, and d0^{-1} = d0
          int dinv = d.x0();
          int c0 = dinv * v1;
          int c1 = -dinv * v0;
          R1Mat g{{A[0], A[1], B0}, {A[2], A[3], B1}, {R1::make(0, c0), R1::make(0, c1), d}};
          keys.push_back(key_of(g));
        }
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<ElemKey> parametrized_u0() {
  std::vector<ElemKey> keys;
  for (const auto& a : sl2_f3())
    for (int b0 = 0; b0 < 3; ++b0)
      for (int b1 = 0; b1 < 3; ++b1)
        for (int s : {1, -1}) {
          R1Mat g{{R1(a[0]), R1(a[1]), R1(b0)}, {R1(a[2]), R1(a[3]), R1(b1)}, {R1(0), R1(0), R1(s)}};
          keys.push_back(key_of(g));
        }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

U1Enumeration enumerate_u1() {
  U1Enumeration en;
  auto plus_gens = concat({gens_t(), gens_h(), gens_m(), gens_s()});
  en.u1_plus = FiniteGroup::closure(plus_gens);
  en.u1 = FiniteGroup::closure(concat({plus_gens, {minus_identity()}}));

  std::vector<ElemKey> coset = en.u1_plus.elements();
  const R1Mat mi = minus_identity();
  for (ElemKey k : en.u1_plus.elements()) coset.push_back(key_of(mi * mat_of(k)));
  en.coset_matches = FiniteGroup::from_elements(coset, {}) == en.u1;

  auto param = parametrized_u1();
  en.parametrized_count = param.size();
  en.parametrized_matches = param == en.u1.elements();

  en.all_unitary = true;
  for (ElemKey k : en.u1.elements()) {
    if (!r1_similitude_factor(mat_of(k), q1_form())) {
      en.all_unitary = false;
      break;
    }
  }

  en.u0 = FiniteGroup::from_elements(parametrized_u0(), {});
  std::vector<ElemKey> red;
  red.reserve(en.u1.order());
  for (ElemKey k : en.u1.elements()) red.push_back(key_of(mod_t(mat_of(k))));
  en.u0_is_reduction = FiniteGroup::from_elements(red, {}) == en.u0;
  en.u0_unitary = true;
  for (ElemKey k : en.u0.elements())
    en.u0_unitary = en.u0_unitary && r1_similitude_factor(mat_of(k), q0_form()).has_value();
  return en;
}

// ---------------------------------------------------------------------------
// Structure of U'_1

bool StructureReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.holds; });
}

StructureReport structure_check(const U1Enumeration& en) {
  StructureReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const auto& e = special_elements();
  FiniteGroup t = FiniteGroup::closure(gens_t());
  FiniteGroup h = FiniteGroup::closure(gens_h());
  FiniteGroup m = FiniteGroup::closure(gens_m());
  FiniteGroup s = FiniteGroup::closure(gens_s());
  add("|T| = 9", t.order() == 9, std::to_string(t.order()));
  add("|H| = 27", h.order() == 27, std::to_string(h.order()));
  add("|M| = 81", m.order() == 81, std::to_string(m.order()));
  add("|S| = 24", s.order() == 24, std::to_string(s.order()));

  // S -> SL2(F3) via the top-left block modulo t.
  std::set<std::array<int, 4>> blocks;
  bool det_one = true;
  for (ElemKey k : s.elements()) {
    R1Mat g = mat_of(k);
    std::array<int, 4> b{g(0, 0).x0(), g(0, 1).x0(), g(1, 0).x0(), g(1, 1).x0()};
    det_one = det_one && (((b[0] * b[3] - b[1] * b[2]) % 3 + 3) % 3 == 1);
    blocks.insert(b);
  }
  add("S is isomorphic to SL2(F3) via the top-left block", det_one && blocks.size() == 24 && s.order() == 24);

  // H: Heisenberg with center <z>.
  std::size_t center = 0;
  bool center_is_z = true;
  const FiniteGroup zgroup = FiniteGroup::closure({e.z});
  for (ElemKey k : h.elements()) {
    R1Mat x = mat_of(k);
    bool central = std::all_of(h.generators().begin(), h.generators().end(),
                               [&](const R1Mat& y) { return x * y == y * x; });
    if (central) {
      ++center;
      center_is_z = center_is_z && zgroup.contains(k);
    }
  }
  bool h_exp3 = true;
  for (ElemKey k : h.elements()) h_exp3 = h_exp3 && power(mat_of(k), 3) == R1Mat::identity();
  add("H is Heisenberg with center <z>", h.order() == 27 && center == 3 && center_is_z && h_exp3);

  FiniteGroup tm = FiniteGroup::closure(concat({gens_t(), gens_m()}));
  bool tm_abelian = tm.centralizes(tm);
  bool tm_exp3 = true;
  for (ElemKey k : tm.elements()) tm_exp3 = tm_exp3 && power(mat_of(k), 3) == R1Mat::identity();
  add("T x M is elementary abelian of order 729", tm.order() == 729 && tm_abelian && tm_exp3,
      std::to_string(tm.order()));

  const std::pair<const char*, std::pair<const FiniteGroup*, const FiniteGroup*>> pairs[] = {
      {"T", {&t, &m}}, {"T", {&t, &h}}, {"T", {&t, &s}}, {"M", {&m, &h}}, {"M", {&m, &s}}, {"H", {&h, &s}}};
  const char* names[] = {"T^M", "T^H", "T^S", "M^H", "M^S", "H^S"};
  bool trivial = true;
  for (std::size_t i = 0; i < 6; ++i) {
    std::size_t n = pairs[i].second.first->intersect(*pairs[i].second.second).order();
    if (n != 1) {
      trivial = false;
      add(std::string("intersection ") + names[i] + " trivial", false, std::to_string(n));
    }
  }
  add("pairwise intersections of T, M, H, S are trivial", trivial);

  add("[T,H] = 1", t.centralizes(h));
  add("[T,M] = 1", t.centralizes(m));
  FiniteGroup th = FiniteGroup::closure(concat({gens_t(), gens_h()}));
  add("S normalizes T", t.normalized_by(gens_s()));
  add("S normalizes <T,H>", th.normalized_by(gens_s()));
  add("S normalizes M", m.normalized_by(gens_s()));
  add("H normalizes T x M", tm.normalized_by(gens_h()));

  FiniteGroup tmh = FiniteGroup::closure(concat({gens_t(), gens_m(), gens_h()}));
  add("|<T,M,H>| = 9*81*27", tmh.order() == 9 * 81 * 27, std::to_string(tmh.order()));
  add("|U'1+| = 9*81*27*24", en.u1_plus.order() == 9ULL * 81 * 27 * 24, std::to_string(en.u1_plus.order()));
  add("|U'1| = 9*81*27*24*2", en.u1.order() == 944784, std::to_string(en.u1.order()));

  // det mod t: U'_1 -> F3^x is onto with kernel U'_1+.
  std::vector<ElemKey> kernel;
  std::set<int> image;
  for (ElemKey k : en.u1.elements()) {
    int d = mat_of(k).det().x0();
    image.insert(d);
    if (d == 1) kernel.push_back(k);
  }
  add("det mod t is onto F3^x", image == std::set<int>{1, 2});
  add("kernel of det mod t is U'1+", FiniteGroup::from_elements(kernel, {}) == en.u1_plus);
  return rep;
}

// ---------------------------------------------------------------------------
// The image of the integral group

ModelImage model_image(const FiniteGroup& u0) {
  ModelImage mi;
  const auto& e = special_elements();
  auto inv = r1_inverse;
  const R1 t = R1::t();
  const R1 o(1);
  const R1 n(0);
  mi.rho_bar = reduce_matrix(rho());
  mi.tau_bar = reduce_matrix(tau());
  const R1Mat rho_reference{{n, -o + t, -t}, {o - t, -o - t, o + t}, {n, -t, o + t}};
  const R1Mat tau_reference{{o + t, o - t, o + t}, {n, o + t, n}, {n, -t, o + t}};
  mi.rho_matches_reference = mi.rho_bar == rho_reference;
  mi.tau_matches_reference = mi.tau_bar == tau_reference;

  std::vector<R1Mat> scalar_gens;
  for (R1 c : scalar_generator_images()) scalar_gens.push_back(R1Mat::scalar(c));
  FiniteGroup scalars = FiniteGroup::closure(scalar_gens);
  for (ElemKey k : scalars.elements()) mi.scalars.push_back(mat_of(k));

  mi.image = FiniteGroup::closure(concat({{mi.rho_bar, mi.tau_bar}, mi.scalars}));
  const R1Mat d12 = e.d1 * e.d2;
  mi.from_special = FiniteGroup::closure(concat({gens_t(), gens_h(), gens_s(), {d12}, mi.scalars}));

  std::vector<ElemKey> red;
  for (ElemKey k : mi.image.elements()) red.push_back(key_of(mod_t(mat_of(k))));
  mi.level0 = FiniteGroup::from_elements(red, {});
  mi.level0_is_u0 = mi.level0 == u0;

  const R1Mat& r = mi.rho_bar;
  const R1Mat& tb = mi.tau_bar;
  const R1Mat ri = inv(r);
  const R1Mat ti = inv(tb);
  auto add = [&](std::string name, bool ok) { mi.word_identities.push_back({std::move(name), ok, {}}); };
  add("rho = b1^-1 c2 w u^-1 (d1 d2)^-1", r == inv(e.b1) * e.c2 * e.w * inv(e.u) * inv(d12));
  add("tau = z^-1 c1 u (d1 d2)^-1", tb == inv(e.z) * e.c1 * e.u * inv(d12));
  add("z = rho^-3", e.z == power(ri, 3));
  R1Mat x = tb * ri * ti * ri;
  add("w = rho^4 (tau rho^-1 tau^-1 rho^-1)^2", e.w == power(r, 4) * x * x);
  R1Mat left = tb * r * tb * r * r * tb * r * ti;
  R1Mat right = r * tb * r * ti * r * tb * r * tb;
  add("b1 = [tau rho tau rho^2 tau rho tau^-1, rho tau rho tau^-1 rho tau rho tau]", e.b1 == commutator(left, right));
  if (!mi.word_identities.back().holds && inv(e.b1) == commutator(left, right))
    mi.word_identities.back().erratum = "b1^-1 = [tau rho tau rho^2 tau rho tau^-1, rho tau rho tau^-1 rho tau rho tau]";
  add("b2 = w b1 w^-1", e.b2 == e.w * e.b1 * inv(e.w));
  R1Mat inner = ti * r * tb * r * ti;
  R1Mat conj_by = inv(r * tb * r);
  R1Mat tr = tb * r;
  add("c1 = rho^-3 (tau^-1 rho tau rho tau^-1)^((rho tau rho)^-1) (tau rho)^-2 b1 b2^-1",
      e.c1 == power(ri, 3) * conjugate(inner, conj_by) * inv(tr * tr) * e.b1 * inv(e.b2));
  add("c2 = w c1 w^-1", e.c2 == e.w * e.c1 * inv(e.w));
  add("u = tau rho^-1 tau^-1 rho^-1 tau^-1 b1^-1 b2 c2^-1 w^2",
      e.u == tb * ri * ti * ri * ti * inv(e.b1) * e.b2 * inv(e.c2) * e.w * e.w);
  return mi;
}

NamedSubgroups named_subgroups(const ModelImage& mi) {
  const auto& e = special_elements();
  NamedSubgroups ns;
  const R1Mat wu = conjugate(e.w, e.u);
  ns.p = FiniteGroup::closure({e.w, wu});
  ns.p2 = FiniteGroup::closure({e.w, wu, minus_identity()});
  ns.scalars = FiniteGroup::closure(mi.scalars);
  auto thp_gens = concat({gens_t(), gens_h(), {e.w, wu}, mi.scalars});
  ns.thp = FiniteGroup::closure(thp_gens);
  const R1Mat d12 = e.d1 * e.d2;
  ns.kernel_psi = FiniteGroup::closure({e.b1, e.b2, e.z, d12});
  const R1Mat extra[4] = {e.u, d12, e.u * d12, e.u * r1_inverse(d12)};
  for (int i = 0; i < 4; ++i) ns.j[i] = FiniteGroup::closure(concat({thp_gens, {extra[i]}}));
  return ns;
}

bool psi_h_irreducible(const NamedSubgroups& named) {
  FiniteGroup h = FiniteGroup::closure(gens_h());
  std::set<ElemKey> image;
  for (ElemKey k : h.elements()) image.insert(key_of(mod_t(mat_of(k))));
  if (image.size() != 9) return false;
  const ElemKey one = key_of(R1Mat::identity());
  for (ElemKey k : image) {
    if (k == one) continue;
    R1Mat x = mat_of(k);
    std::set<ElemKey> line{one, k, key_of(x * x)};
    bool stable = true;
    for (const auto& p : named.p.generators())
      stable = stable && line.count(key_of(mod_t(conjugate(x, p)))) != 0;
    if (stable) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Index-3 subgroups

namespace {

void mark_double_coset(const std::vector<R1Mat>& gens, const R1Mat& x, std::unordered_set<ElemKey>& covered) {
  std::vector<R1Mat> queue{x};
  covered.insert(key_of(x));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& a : gens) {
      for (const R1Mat& y : {a * queue[i], queue[i] * a}) {
        if (covered.insert(key_of(y)).second) queue.push_back(y);
      }
    }
  }
}

}  // namespace

Index3Classification classify_index3(const FiniteGroup& image, const FiniteGroup& p2, const NamedSubgroups& named,
                                     std::optional<std::uint64_t> shuffle_seed) {
  Index3Classification out;
  const std::size_t limit = image.order() / 3;
  std::vector<ElemKey> candidates = image.elements();
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
  }

  std::vector<FiniteGroup> groups{p2};
  std::multimap<std::uint64_t, std::size_t> index;
  index.emplace(p2.fingerprint(), 0);
  auto find = [&](const FiniteGroup& g) -> bool {
    auto [lo, hi] = index.equal_range(g.fingerprint());
    for (auto it = lo; it != hi; ++it)
      if (groups[it->second] == g) return true;
    return false;
  };

  for (std::size_t q = 0; q < groups.size(); ++q) {
    // Copy: `groups` may reallocate below.
    const std::vector<R1Mat> base_gens = groups[q].generators();
    std::unordered_set<ElemKey> covered(groups[q].elements().begin(), groups[q].elements().end());
    for (ElemKey k : candidates) {
      if (covered.count(k)) continue;
      R1Mat x = mat_of(k);
      mark_double_coset(base_gens, x, covered);
      std::vector<R1Mat> gens = base_gens;
      gens.push_back(x);
      auto b = FiniteGroup::try_closure(gens, limit);
      if (!b || find(*b)) continue;
      index.emplace(b->fingerprint(), groups.size());
      groups.push_back(std::move(*b));
    }
  }
  out.overgroups_explored = groups.size();

  std::vector<const FiniteGroup*> index3;
  for (const auto& g : groups)
    if (g.order() == limit) index3.push_back(&g);
  out.index3_found = index3.size();

  // Orbits under conjugation by the generators of the image.
  std::vector<bool> assigned(index3.size(), false);
  for (std::size_t i = 0; i < index3.size(); ++i) {
    if (assigned[i]) continue;
    std::map<std::uint64_t, FiniteGroup> orbit;
    std::vector<FiniteGroup> queue{*index3[i]};
    orbit.emplace(index3[i]->fingerprint(), *index3[i]);
    for (std::size_t j = 0; j < queue.size(); ++j) {
      for (const auto& d : image.generators()) {
        FiniteGroup c = queue[j].conjugated(d);
        if (orbit.emplace(c.fingerprint(), c).second) queue.push_back(std::move(c));
      }
    }
    for (std::size_t j = i; j < index3.size(); ++j) {
      auto it = orbit.find(index3[j]->fingerprint());
      if (it != orbit.end() && it->second == *index3[j]) assigned[j] = true;
    }
    ConjugacyClass cls;
    cls.subgroup_order = index3[i]->order();
    for (const auto& [fp, g] : orbit) cls.members.push_back(fp);
    for (int jn = 0; jn < 4; ++jn) {
      auto it = orbit.find(named.j[jn].fingerprint());
      if (it != orbit.end() && it->second == named.j[jn]) {
        cls.matches_j = cls.matches_j == -1 ? jn : -2;  // -2: two J's in one class
      }
    }
    out.classes.push_back(std::move(cls));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const ConjugacyClass& a, const ConjugacyClass& b) { return a.matches_j < b.matches_j; });

  std::set<int> matched;
  bool each_one = true;
  for (const auto& c : out.classes) {
    if (c.matches_j < 0) each_one = false;
    matched.insert(c.matches_j);
  }
  out.ok = out.classes.size() == 4 && each_one && matched.size() == 4;
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

TorsionReport torsion_certificate(const FiniteGroup& j, const ModelImage& mi, unsigned threads) {
  const std::vector<R1Mat> xs{mi.rho_bar, r1_inverse(mi.rho_bar), mi.tau_bar, r1_inverse(mi.tau_bar)};
  const auto& elems = mi.image.elements();
  auto witnesses = parallel_map(elems.size(), threads, [&](std::size_t i) -> std::string {
    R1Mat h = mat_of(elems[i]);
    R1Mat hi = r1_inverse(h);
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      R1Mat c = hi * xs[xi] * h;
      for (const auto& s : mi.scalars) {
        if (j.contains(s * c)) {
          static const char* names[] = {"rho", "rho^-1", "tau", "tau^-1"};
          return std::string("s h^-1 ") + names[xi] + " h with h = " + r1mat_str(h) + ", s = " + s(0, 0).str();
        }
      }
    }
    return {};
  });
  TorsionReport rep;
  rep.checked = elems.size() * xs.size() * mi.scalars.size();
  rep.torsion_free = true;
  for (auto& w : witnesses) {
    if (!w.empty()) {
      rep.torsion_free = false;
      rep.witness = std::move(w);
      break;
    }
  }
  return rep;
}

DetImageReport det_image_check(const FiniteGroup& j) {
  DetImageReport rep;
  std::set<unsigned> values;
  for (ElemKey k : j.elements()) {
    R1Mat g = mat_of(k);
    auto c = r1_similitude_factor(g, q1_form());
    if (c && *c == R1(1)) values.insert(g.det().index());
  }
  for (unsigned v : values) rep.det_values.push_back(R1::from_index(v));
  rep.has_one_minus_t = values.count(R1::make(1, -1).index()) != 0;

  std::set<unsigned> sub{R1(1).index()};
  std::vector<R1> gens = rep.det_values;
  gens.push_back(R1(-1));
  std::vector<R1> queue{R1(1)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (R1 g : gens) {
      R1 y = queue[i] * g;
      if (sub.insert(y.index()).second) queue.push_back(y);
    }
  rep.generated_order = sub.size();
  return rep;
}

std::string dump_group(const FiniteGroup& g) {
  std::ostringstream os;
  for (ElemKey k : g.elements()) os << k << '\n';
  return os.str();
}

}  // namespace cmsz
