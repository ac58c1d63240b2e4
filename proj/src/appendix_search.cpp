#include "cmsz/appendix_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "cmsz/building.hpp"
#include "cmsz/cmsz_generators.hpp"

namespace cmsz {

std::array<QuadInt, 3> HalfVec::column() const {
  return {QuadInt(2 * a[0], b[0], 1), QuadInt(2 * a[1], b[1], 1), QuadInt(2 * a[2], b[2], 1)};
}

std::string HalfVec::str() const {
  std::string s = "(";
  for (int i = 0; i < 3; ++i) s += (i ? ", " : "") + column()[i].str();
  return s + ")";
}

bool in_half_lattice(const QuadInt& x) { return x.e() == 0 || (x.e() == 1 && mpz_even_p(x.a().get_mpz_t())); }

std::optional<HalfVec> to_half_vec(const std::array<QuadInt, 3>& col) {
  HalfVec v;
  for (int i = 0; i < 3; ++i) {
    const QuadInt& x = col[i];
    if (!in_half_lattice(x)) return std::nullopt;
    Integer a = x.e() == 0 ? x.a() : Integer(x.a() / 2);
    Integer b = x.e() == 0 ? Integer(2 * x.b()) : x.b();
    if (!a.fits_sint_p() || !b.fits_sint_p()) return std::nullopt;
    v.a[i] = static_cast<int>(a.get_si());
    v.b[i] = static_cast<int>(b.get_si());
  }
  return v;
}

namespace {

std::array<QuadInt, 3> mul_vec(const QMat& g, const std::array<QuadInt, 3>& v) {
  std::array<QuadInt, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = g(i, 0) * v[0] + g(i, 1) * v[1] + g(i, 2) * v[2];
  return out;
}

HalfVec from_coords(const std::array<int, 6>& y) { return HalfVec{{y[0], y[1], y[2]}, {y[3], y[4], y[5]}}; }

QMat from_columns(const HalfVec& v1, const HalfVec& v2, const HalfVec& v3) {
  auto c1 = v1.column();
  auto c2 = v2.column();
  auto c3 = v3.column();
  QMat g;
  for (int i = 0; i < 3; ++i) {
    g(i, 0) = c1[i];
    g(i, 1) = c2[i];
    g(i, 2) = c3[i];
  }
  return g;
}

bool is_padic_unit(const QuadInt& x) {
  auto v = val_p(x);
  return v && *v == 0;
}

// F as an integer quadratic form after scaling by `scale`, obtained by
// polarizing the exact Hermitian form on the six coordinates.
struct ScaledGram {
  std::array<std::array<long, 6>, 6> g{};
  Integer scale;
};

const ScaledGram& scaled_gram() {
  static const ScaledGram sg = [] {
    std::array<std::array<Rational, 6>, 6> q;
    auto unit = [](int i, int j) {
      std::array<int, 6> y{};
      y[i] += 1;
      y[j] += 1;
      return y;
    };
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        std::array<int, 6> ei{};
        ei[i] = 1;
        std::array<int, 6> ej{};
        ej[j] = 1;
        Rational fij = form_value(from_coords(unit(i, j)));
        if (i == j) {
          q[i][j] = form_value(from_coords(ei));
        } else {
          q[i][j] = (fij - form_value(from_coords(ei)) - form_value(from_coords(ej))) / 2;
        }
      }
    Integer den = 1;
    for (const auto& row : q)
      for (const auto& x : row) den = lcm(den, Integer(x.get_den()));
    ScaledGram out;
    out.scale = den;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        Rational x = q[i][j] * den;
        out.g[i][j] = x.get_num().get_si();
      }
    return out;
  }();
  return sg;
}

}  // namespace

QuadInt pairing(const HalfVec& u, const HalfVec& v) {
  auto cu = u.column();
  auto qv = mul_vec(form_q(), v.column());
  return conj(cu[0]) * qv[0] + conj(cu[1]) * qv[1] + conj(cu[2]) * qv[2];
}

Rational form_value(const HalfVec& v) { return pairing(v, v).to_rational(); }

Rational form_value_formula(const std::array<int, 6>& y) {
  const long a1 = y[0], a2 = y[1], a3 = y[2], b1 = y[3], b2 = y[4], b3 = y[5];
  // 4 F / 10
  long s = 4 * (a1 * a1 + a2 * a2 + a3 * a3 + b1 * b1 + b2 * b2 + b3 * b3) - 4 * a1 * a2 - 4 * a2 * a3 +
           2 * a3 * a1 - 4 * b1 * b2 - 4 * b2 * b3 + 2 * b3 * b1 + 2 * a1 * b1 + 2 * a1 * b2 - a1 * b3 -
           4 * a2 * b1 + 2 * a2 * b2 + 2 * a2 * b3 + 2 * a3 * b1 - 4 * a3 * b2 + 2 * a3 * b3;
  Rational f(10 * s, 4);
  f.canonicalize();
  return f;
}

int form_lower_bound(const std::array<int, 6>& y) {
  int s = 0;
  for (int i = 0; i < 6; ++i) {
    s += y[i] * y[i];
    for (int j = i + 1; j < 6; ++j) s -= std::abs(y[i] * y[j]);
  }
  return s;
}

EigenBoundReport eigen_bound_certificate() {
  const auto p = charpoly(form_q());
  auto f = [&](const Rational& t) -> Rational { return ((p[0] * t + p[1]) * t + p[2]) * t + p[3]; };
  auto df = [&](const Rational& t) -> Rational { return (3 * p[0] * t + 2 * p[1]) * t + p[2]; };
  EigenBoundReport rep;
  const Rational bound(48, 25);
  rep.f_at_bound = f(bound);
  rep.f_at_two = f(Rational(2));
  rep.f_at_zero = f(Rational(0));
  // f'' = 6t + 2 p1 is negative on [0, 48/25] when p1 < -144/25, so f' is
  // decreasing there and its minimum is at the right end.
  bool concave_derivative = 6 * bound + 2 * p[1] < 0;
  rep.min_derivative = concave_derivative ? df(bound) : Rational(0);
  rep.no_negative_roots = sgn(p[1]) < 0 && sgn(p[2]) > 0 && sgn(p[3]) < 0;
  return rep;
}

std::vector<HalfVec> enumerate_v(const Rational& c) {
  const ScaledGram& sg = scaled_gram();
  const Rational target = 10 * c;
  Rational scaled_target = target * sg.scale;
  if (scaled_target.get_den() != 1) return {};
  const long t = scaled_target.get_num().get_si();
  // 10 c = v* Q v >= 1.92 |v|^2 >= 1.92 (3/4) sum (a_i^2 + b_i^2).
  Rational bound_q = target * Rational(25, 36);
  Integer bound_z;
  mpz_fdiv_q(bound_z.get_mpz_t(), bound_q.get_num().get_mpz_t(), bound_q.get_den().get_mpz_t());
  const long bound = bound_z.get_si();
  int r = 0;
  while (static_cast<long>(r + 1) * (r + 1) <= bound) ++r;

  const QMat& tau_m = tau();
  const QMat tau_inv = *inverse(tau_m);
  std::vector<HalfVec> out;
  // Lexicographic in (a1, b1, a2, b2, a3, b3); y holds (a1, a2, a3, b1, b2, b3).
  std::array<int, 6> y{};
  const int order[6] = {0, 3, 1, 4, 2, 5};
  auto rec = [&](auto&& self, int depth, long sq) -> void {
    if (sq > bound) return;
    if (depth == 6) {
      if (y[0] == 0 && y[1] == 0 && y[2] == 0) return;
      long f = 0;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) f += sg.g[i][j] * y[i] * y[j];
      if (f != t) return;
      HalfVec v = from_coords(y);
      auto col = v.column();
      for (const QuadInt& x : mul_vec(tau_m, col))
        if (!in_half_lattice(x)) return;
      for (const QuadInt& x : mul_vec(tau_inv, col))
        if (!in_half_lattice(x)) return;
      out.push_back(v);
      return;
    }
    const int k = order[depth];
    for (int val = -r; val <= r; ++val) {
      y[k] = val;
      self(self, depth + 1, sq + static_cast<long>(val) * val);
    }
    y[k] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<QMat> g2_elements() {
  std::vector<QMat> out;
  QMat p = QMat::identity();
  for (int i = 0; i < 3; ++i) {
    out.push_back(p);
    out.push_back(QuadInt(-1) * p);
    p = p * tau();
  }
  std::sort(out.begin(), out.end(), [](const QMat& x, const QMat& y) { return qmat_str(x) < qmat_str(y); });
  return out;
}

VReport v_report() {
  VReport rep;
  rep.vectors = enumerate_v();
  const std::set<HalfVec> vs(rep.vectors.begin(), rep.vectors.end());
  const std::vector<HalfVec> seeds{
      HalfVec{{0, 1, 0}, {1, 0, 0}},    // (l/2, 1, 0)
      HalfVec{{0, 0, 1}, {0, 0, 0}},    // (0, 0, 1)
      HalfVec{{0, 1, 1}, {0, 0, 0}},    // (0, 1, 1)
      HalfVec{{-1, -1, 0}, {0, 0, 0}},  // (-1, -1, 0)
  };
  rep.seeds_present = std::all_of(seeds.begin(), seeds.end(), [&](const HalfVec& s) { return vs.count(s) != 0; });
  std::set<HalfVec> orbits;
  bool all_half = true;
  for (const auto& g : g2_elements())
    for (const auto& s : seeds) {
      auto w = to_half_vec(mul_vec(g, s.column()));
      if (w) orbits.insert(*w);
      else all_half = false;
    }
  rep.is_union_of_seed_orbits = all_half && orbits == vs;
  rep.g2_stable = true;
  for (const auto& g : g2_elements()) {
    std::set<HalfVec> image;
    for (const auto& v : rep.vectors) {
      auto w = to_half_vec(mul_vec(g, v.column()));
      if (w) image.insert(*w);
    }
    rep.g2_stable = rep.g2_stable && image == vs;
  }
  return rep;
}

StabilizerResult stabilizer_search(const Rational& c) {
  StabilizerResult res;
  res.factor = c;
  const auto v = enumerate_v(c);
  res.vector_count = v.size();
  const QMat& q = form_q();
  const KElem kc(c, 0);
  auto target = [&](int i, int j) { return kc * KElem(q(i, j)); };
  const KElem t12 = target(0, 1);
  const KElem t23 = target(1, 2);
  const KElem t13 = target(0, 2);
  std::set<std::string> seen;
  for (const auto& v2 : v) {
    std::vector<const HalfVec*> v1s;
    std::vector<const HalfVec*> v3s;
    for (const auto& w : v) {
      if (KElem(pairing(w, v2)) == t12) v1s.push_back(&w);
      if (KElem(pairing(v2, w)) == t23) v3s.push_back(&w);
    }
    for (const HalfVec* v1 : v1s)
      for (const HalfVec* v3 : v3s) {
        ++res.triples_checked;
        if (!(KElem(pairing(*v1, *v3)) == t13)) continue;
        QMat g = from_columns(*v1, v2, *v3);
        if (!is_padic_unit(g.det())) continue;
        auto f = similitude_factor(g, q);
        if (!f || *f != c) continue;
        if (seen.insert(qmat_str(g)).second) res.matrices.push_back(g);
      }
  }
  std::sort(res.matrices.begin(), res.matrices.end(),
            [](const QMat& x, const QMat& y) { return qmat_str(x) < qmat_str(y); });
  return res;
}

std::vector<CaseReport> case_analyses() {
  const auto v = enumerate_v();
  const QMat& q = form_q();
  const QuadInt t12 = q(0, 1);
  const QuadInt t13 = q(0, 2);
  auto hv = [](std::array<int, 3> a, std::array<int, 3> b) { return HalfVec{a, b}; };
  const HalfVec e1 = hv({1, 0, 0}, {0, 0, 0});
  const HalfVec e2 = hv({0, 1, 0}, {0, 0, 0});
  const HalfVec e3 = hv({0, 0, 1}, {0, 0, 0});
  const HalfVec m011 = hv({0, -1, -1}, {0, 0, 0});
  const HalfVec m110 = hv({-1, -1, 0}, {0, 0, 0});
  const HalfVec h10 = hv({0, 1, 0}, {1, 0, 0});          // (l/2, 1, 0)
  const HalfVec mh1 = hv({0, 0, -1}, {0, -1, 0});        // (0, -l/2, -1)
  const HalfVec h1h1 = hv({0, 1, 1}, {1, 1, 0});         // (l/2, 1 + l/2, 1)
  const HalfVec mlbar = hv({-1, -1, 0}, {2, 0, 0});      // (-lbar, -1, 0)
  const HalfVec mhalf = hv({0, -1, 0}, {-1, 0, 0});      // (-l/2, -1, 0)

  struct CaseData {
    std::string name;
    HalfVec v2;
    std::vector<HalfVec> v1;
    std::vector<HalfVec> v3;
  };
  const std::vector<CaseData> cases_data{
      {"v2 = (l/2, 1, 0): no admissible v1", h10, {}, {}},
      {"v2 = (0, 0, 1): every candidate is singular at p", e3, {e2, mh1}, {m011}},
      {"v2 = (0, -1, -1): every candidate is singular at p", m011, {e3}, {e2, h1h1}},
      {"v2 = (0, 1, 0): only g = I", e2, {e1, m011, mlbar}, {e3, m110}},
  };

  std::vector<CaseReport> out;
  for (std::size_t n = 0; n < cases_data.size(); ++n) {
    const CaseData& s = cases_data[n];
    CaseReport rep;
    rep.name = s.name;
    rep.v2 = s.v2;
    for (const auto& w : v) {
      if (pairing(w, s.v2) == t12) rep.v1.push_back(w);
      if (pairing(s.v2, w) == t12) rep.v3.push_back(w);
    }
    rep.expected_v1 = s.v1;
    rep.expected_v3 = s.v3;
    auto sorted = [](std::vector<HalfVec> x) {
      std::sort(x.begin(), x.end());
      return x;
    };
    if (n == 0) {
      // v3 is not constrained once v1 is empty.
      rep.lists_match = rep.v1.empty();
    } else {
      rep.lists_match = sorted(rep.v1) == sorted(rep.expected_v1) && sorted(rep.v3) == sorted(rep.expected_v3);
    }
    std::size_t invertible = 0;
    std::size_t complete = 0;
    bool only_identity = true;
    for (const auto& v1 : rep.v1)
      for (const auto& v3 : rep.v3) {
        QMat g = from_columns(v1, s.v2, v3);
        if (is_padic_unit(g.det())) ++invertible;
        if (pairing(v1, v3) == t13) {
          ++complete;
          auto f = similitude_factor(g, q);
          if (f && *f == 1 && is_padic_unit(g.det())) {
            ++rep.unitary_invertible;
            only_identity = only_identity && g == QMat::identity();
          }
        }
      }
    rep.identity_only = rep.unitary_invertible == 1 && only_identity;
    switch (n) {
      case 0: rep.outcome_matches = rep.v1.empty(); break;
      case 1:
      case 2: rep.outcome_matches = !rep.v1.empty() && !rep.v3.empty() && invertible == 0; break;
      default: rep.outcome_matches = rep.identity_only && complete == 1; break;
    }
    if (n == 3 && !rep.lists_match) {
      std::vector<HalfVec> corrected = rep.expected_v1;
      std::replace(corrected.begin(), corrected.end(), mlbar, mhalf);
      if (sorted(rep.v1) == sorted(corrected) && sorted(rep.v3) == sorted(rep.expected_v3))
        rep.erratum = "the candidate listed as (-lbar, -1, 0) is (-l/2, -1, 0); (-lbar, -1, 0) has F = " +
                      form_value(mlbar).get_str();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

FactorReport factor_normalization() {
  FactorReport rep;
  // c = m/40 with m | 1600 makes both 10c and 10/c lie in (1/4)Z.
  for (int m = 1; m <= 1600; ++m) {
    if (1600 % m != 0) continue;
    Rational c(m, 40);
    c.canonicalize();
    if (nu2(c) == 0) rep.candidates.push_back(c);
  }
  // Units of O_K[1/2] are generated by -1, l and lbar, all of norm a power of 4;
  // c^3 = N(det g) then forces c in 4^Z.
  bool norms = true;
  for (const QuadInt& u : {QuadInt(-1), QuadInt::lambda(), QuadInt::lambda_bar()}) {
    Rational n = u.norm();
    norms = norms && is_power_of_two(n) && nu2(n) % 2 == 0;
  }
  bool cubes = true;
  for (const auto& g : g2_elements()) {
    auto f = similitude_factor(g, form_q());
    cubes = cubes && f && g.det().norm() == *f * *f * *f;
  }
  rep.unit_norm_forces_power_of_four = norms && cubes;

  const QMat lb = QMat::scalar(QuadInt::lambda_bar());
  auto f = similitude_factor(lb, form_q());
  rep.lambda_bar_fixes_base_with_factor_4 = f && *f == 4 && act(lb, Vertex()) == Vertex();

  bool only_one = true;
  for (const auto& c : rep.candidates) {
    rep.searches.push_back(stabilizer_search(c));
    if (c != 1) only_one = only_one && rep.searches.back().matrices.empty();
  }
  rep.only_factor_one = only_one && rep.unit_norm_forces_power_of_four;
  return rep;
}

EntryDomainReport entry_domain_check(const std::vector<QMat>& found) {
  EntryDomainReport rep;
  KMat inv30 = KElem(30) * inverse(to_kmat(form_q()));
  rep.thirty_q_inverse_integral_at_p = true;
  for (const auto& x : inv30.entries()) {
    auto q = x.to_quadint();
    rep.thirty_q_inverse_integral_at_p = rep.thirty_q_inverse_integral_at_p && q && (q->is_zero() || *val_p(*q) >= 0);
  }

  rep.lattice_identity_holds = true;
  for (int e = 0; e <= 4; ++e)
    for (int a = -16; a <= 16; ++a)
      for (int b = -16; b <= 16; ++b) {
        QuadInt x(a, b, static_cast<unsigned>(e));
        if (x.is_zero()) continue;
        ++rep.box_checked;
        bool lhs = *val_p(x) >= 0 && *val_pbar(QuadInt(30) * x) >= 0;
        rep.lattice_identity_holds = rep.lattice_identity_holds && lhs == in_half_lattice(x);
      }

  rep.found_entries_in_half_lattice = true;
  for (const auto& g : found)
    for (const auto& x : g.entries()) rep.found_entries_in_half_lattice = rep.found_entries_in_half_lattice && in_half_lattice(x);
  return rep;
}

}  // namespace cmsz
