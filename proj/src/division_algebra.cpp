#include "cmsz/division_algebra.hpp"

#include <stdexcept>
#include <utility>

#include "cmsz/hermitian_core.hpp"

namespace cmsz {

// ---------------------------------------------------------------------------
// L

LElem LElem::sigma() const {
  // sigma(eta^2) = (eta^2 - 2)^2 = 4 - eta - eta^2.
  return LElem(c_[0] - KElem(2) * c_[1] + KElem(4) * c_[2], -c_[2], c_[1] - c_[2]);
}

LElem& LElem::operator+=(const LElem& o) {
  for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
  return *this;
}

LElem& LElem::operator-=(const LElem& o) {
  for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
  return *this;
}

LElem operator*(const LElem& x, const LElem& y) {
  std::array<KElem, 5> d{};
  for (int i = 0; i < 3; ++i) {
    if (x.c_[i].is_zero()) continue;
    for (int j = 0; j < 3; ++j) d[i + j] += x.c_[i] * y.c_[j];
  }
  // eta^3 = 3 eta - 1, eta^4 = 3 eta^2 - eta.
  return LElem(d[0] - d[3], d[1] + KElem(3) * d[3] - d[4], d[2] + KElem(3) * d[4]);
}

std::string LElem::str() const {
  return "(" + c_[0].str() + ") + (" + c_[1].str() + ")*eta + (" + c_[2].str() + ")*eta^2";
}

// ---------------------------------------------------------------------------
// D

KElem mu() { return KElem(QuadInt::mu()); }

namespace {

LElem sigma_pow(LElem z, int k) {
  for (int i = 0; i < k; ++i) z = z.sigma();
  return z;
}

const std::array<DElem, 3>& pi_star_powers() {
  static const std::array<DElem, 3> p = [] {
    DElem ps(0, 0, LElem(mu().conj()));
    return std::array<DElem, 3>{DElem(1), ps, ps * ps};
  }();
  return p;
}

KElem lambda_bar_k() { return KElem(QuadInt::lambda_bar()); }

}  // namespace

DElem operator+(const DElem& x, const DElem& y) { return DElem(x.x_[0] + y.x_[0], x.x_[1] + y.x_[1], x.x_[2] + y.x_[2]); }

DElem operator-(const DElem& x, const DElem& y) { return DElem(x.x_[0] - y.x_[0], x.x_[1] - y.x_[1], x.x_[2] - y.x_[2]); }

DElem operator*(const DElem& x, const DElem& y) {
  std::array<LElem, 3> r{};
  const LElem m(mu());
  for (int i = 0; i < 3; ++i) {
    if (x.x_[i].is_zero()) continue;
    for (int j = 0; j < 3; ++j) {
      if (y.x_[j].is_zero()) continue;
      LElem t = x.x_[i] * sigma_pow(y.x_[j], i);
      if (i + j >= 3) t = t * m;
      r[(i + j) % 3] += t;
    }
  }
  return DElem(r[0], r[1], r[2]);
}

DElem DElem::star() const {
  const auto& ps = pi_star_powers();
  DElem r;
  for (int i = 0; i < 3; ++i)
    if (!x_[i].is_zero()) r = r + ps[i] * DElem(x_[i].conj());
  return r;
}

std::string DElem::str() const {
  return "[" + x_[0].str() + "] + [" + x_[1].str() + "]*Pi + [" + x_[2].str() + "]*Pi^2";
}

const DElem& element_b() {
  static const DElem b = [] {
    const KElem lb = lambda_bar_k();
    return DElem(LElem(lb - KElem::lambda()), LElem(-lb), LElem(lb));
  }();
  return b;
}

LMat embed(const DElem& x) {
  LMat p;
  p(0, 2) = LElem(mu());
  p(1, 0) = LElem(1);
  p(2, 1) = LElem(1);
  LMat r;
  LMat pi_pow = LMat::identity();
  for (int i = 0; i < 3; ++i) {
    const LElem& z = x[i];
    if (!z.is_zero()) r = r + LMat::diag(z, sigma_pow(z, 2), z.sigma()) * pi_pow;
    pi_pow = pi_pow * p;
  }
  return r;
}

DElem unembed(const LMat& m) { return DElem(m(0, 0), m(1, 0).sigma(), sigma_pow(m(2, 0), 2)); }

KElem nrd(const DElem& x) {
  LElem d = embed(x).det();
  if (!d.in_k()) throw std::logic_error("reduced norm outside K");
  return d[0];
}

KElem trd(const DElem& x) {
  LElem t = x[0] + x[0].sigma() + sigma_pow(x[0], 2);
  if (!t.in_k()) throw std::logic_error("reduced trace outside K");
  return t[0];
}

std::optional<DElem> inverse(const DElem& x) {
  if (x.is_zero()) return std::nullopt;
  LMat m = embed(x);
  KElem n = m.det()[0];
  return DElem(LElem(n.inverse())) * unembed(m.adjugate());
}

std::array<Rational, 18> q_coordinates(const DElem& x) {
  std::array<Rational, 18> out;
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c) {
      out[6 * i + 2 * c] = x[i][c].a();
      out[6 * i + 2 * c + 1] = x[i][c].b();
    }
  return out;
}

DElem q_basis(std::size_t index) {
  const std::size_t i = index / 6;
  const std::size_t c = (index % 6) / 2;
  const KElem k = index % 2 == 0 ? KElem(1) : KElem::lambda();
  std::array<KElem, 3> coeff{};
  coeff[c] = k;
  std::array<LElem, 3> x{};
  x[i] = LElem(coeff[0], coeff[1], coeff[2]);
  return DElem(x[0], x[1], x[2]);
}

Rational trace_dq(const DElem& x) {
  Rational t = 0;
  for (std::size_t idx = 0; idx < 18; ++idx) t += q_coordinates(x * q_basis(idx))[idx];
  return t;
}

Rational trace_via_trd(const DElem& x) { return 3 * trd(x).trace(); }

bool trace_formula_on_basis() {
  for (std::size_t idx = 0; idx < 18; ++idx)
    if (trace_dq(q_basis(idx)) != trace_via_trd(q_basis(idx))) return false;
  return true;
}

Rational psi(const DElem& x, const DElem& y) { return trace_via_trd(x.star() * element_b() * y); }

DElem star_b(const DElem& x) {
  static const DElem b_inv = *inverse(element_b());
  return b_inv * x.star() * element_b();
}

std::optional<Rational> gstar_membership(const DElem& g) {
  if (g.is_zero()) return std::nullopt;
  DElem r = star_b(g) * g;
  if (!r.in_l() || !r[0].in_k() || !r[0][0].is_rational() || r[0][0].is_zero()) return std::nullopt;
  return r[0][0].a();
}

DElem order_basis(std::size_t index) {
  DElem e = q_basis(index);
  return index < 6 ? e : DElem(LElem(lambda_bar_k())) * e;
}

std::array<Rational, 18> order_coordinates(const DElem& x) {
  const LElem lb_inv(lambda_bar_k().inverse());
  return q_coordinates(DElem(x[0], lb_inv * x[1], lb_inv * x[2]));
}

int DElemGenerator::next() {
  const auto span = static_cast<std::uint64_t>(2 * bound_ + 1);
  return static_cast<int>(rng_() % span) - bound_;
}

LElem DElemGenerator::l_elem() {
  std::array<KElem, 3> c;
  for (auto& x : c) {
    const int a = next();
    const int b = next();
    x = KElem(a, b);
  }
  return LElem(c[0], c[1], c[2]);
}

DElem DElemGenerator::operator()() {
  LElem x0 = l_elem();
  LElem x1 = l_elem();
  LElem x2 = l_elem();
  return DElem(x0, x1, x2);
}

// ---------------------------------------------------------------------------
// Linear algebra over Q

Rational rational_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::vector<Rational> leading_minors(const std::vector<std::vector<Rational>>& m) {
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
    out.push_back(rational_det(std::move(sub)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

SigmaReport sigma_check(std::size_t trials, std::uint64_t seed) {
  SigmaReport rep;
  const LElem eta = LElem::eta();
  auto cubic = [](const LElem& x) { return x * x * x - LElem(3) * x + LElem(1); };
  rep.min_poly = cubic(eta).is_zero();
  const LElem s = eta.sigma();
  rep.sigma_eta_root = cubic(s).is_zero();
  rep.sigma_eta_value = s == eta * eta - LElem(2);
  const LElem eta2 = eta * eta;
  rep.order_three = !(s == eta) && sigma_pow(eta, 3) == eta && sigma_pow(eta2, 3) == eta2;
  rep.fixes_k = LElem(KElem::lambda()).sigma() == LElem(KElem::lambda());
  DElemGenerator gen(seed);
  rep.multiplicative = true;
  for (std::size_t t = 0; t < trials && rep.multiplicative; ++t) {
    LElem x = gen.l_elem();
    LElem y = gen.l_elem();
    rep.multiplicative = (x * y).sigma() == x.sigma() * y.sigma();
  }
  return rep;
}

EmbeddingReport embed_check(std::size_t trials, std::uint64_t seed) {
  EmbeddingReport rep;
  rep.trials = trials;
  const DElem pi = DElem::pi();
  rep.pi_cubed_is_mu = pi * pi * pi == DElem(LElem(mu()));
  rep.twist_rule = pi * DElem(LElem::eta()) == DElem(0, LElem(-2, 0, 1), 0);
  const LElem lb(lambda_bar_k());
  rep.lambda_bar_product = DElem(0, lb, 0) * DElem(0, 0, lb) == DElem(4);
  rep.nrd_pi_is_mu = nrd(pi) == mu();

  DElemGenerator gen(seed);
  rep.associative = rep.homomorphism = rep.nrd_in_k = rep.inverse_ok = true;
  for (std::size_t t = 0; t < trials; ++t) {
    DElem x = gen();
    DElem y = gen();
    DElem z = gen();
    rep.associative = rep.associative && (x * y) * z == x * (y * z);
    LMat mx = embed(x);
    rep.homomorphism = rep.homomorphism && embed(x * y) == mx * embed(y) && unembed(mx) == x;
    LElem d = mx.det();
    rep.nrd_in_k = rep.nrd_in_k && d.in_k() && d.sigma() == d;
    if (!x.is_zero()) {
      DElem xi = *inverse(x);
      rep.inverse_ok = rep.inverse_ok && x * xi == DElem(1) && xi * x == DElem(1);
    }
  }
  return rep;
}

StarReport involution_check(std::size_t trials, std::uint64_t seed) {
  StarReport rep;
  rep.trials = trials;
  rep.pi_star_pi_is_one = DElem::pi().star() * DElem::pi() == DElem(1);
  rep.eta_fixed = DElem(LElem::eta()).star() == DElem(LElem::eta());
  DElemGenerator gen(seed);
  rep.involutive = rep.anti_multiplicative = true;
  for (std::size_t t = 0; t < trials; ++t) {
    DElem x = gen();
    DElem y = gen();
    rep.involutive = rep.involutive && x.star().star() == x;
    rep.anti_multiplicative = rep.anti_multiplicative && (x * y).star() == y.star() * x.star();
  }

  std::vector<std::vector<Rational>> gram(18, std::vector<Rational>(18));
  rep.trace_formula = trace_formula_on_basis();
  for (std::size_t i = 0; i < 18; ++i)
    for (std::size_t j = i; j < 18; ++j) {
      gram[i][j] = trace_dq(q_basis(i) * q_basis(j).star());
      gram[j][i] = gram[i][j];
    }
  rep.leading_minors = leading_minors(gram);
  rep.positive_definite = true;
  for (const auto& m : rep.leading_minors) rep.positive_definite = rep.positive_definite && sgn(m) > 0;
  return rep;
}

BReport b_checks(std::size_t trials, std::uint64_t seed) {
  BReport rep;
  rep.trials = trials;
  const DElem& b = element_b();
  rep.b_star_is_minus_b = b.star() == -b;
  rep.nrd_b = nrd(b);
  const KElem diff = lambda_bar_k() - KElem::lambda();
  rep.nrd_matches = rep.nrd_b == KElem(-7) * diff;
  if (auto q = rep.nrd_b.to_quadint(); q && !q->is_zero()) {
    rep.val_p_nrd = *val_p(*q);
    rep.val_pbar_nrd = *val_pbar(*q);
  }
  DElemGenerator gen(seed);
  rep.psi_alternating = rep.star_b_involution = rep.star_b_anti_multiplicative = true;
  for (std::size_t t = 0; t < trials; ++t) {
    DElem x = gen();
    DElem y = gen();
    rep.psi_alternating = rep.psi_alternating && psi(y, x) == -psi(x, y);
    rep.star_b_involution = rep.star_b_involution && star_b(star_b(x)) == x;
    rep.star_b_anti_multiplicative = rep.star_b_anti_multiplicative && star_b(x * y) == star_b(y) * star_b(x);
  }
  return rep;
}

namespace {

bool integral(const Rational& q) { return q.get_den() == 1; }

std::string integrality_witness(const std::array<Rational, 18>& c) {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!integral(c[k])) return "coordinate " + std::to_string(k) + " = " + c[k].get_str();
  return {};
}

}  // namespace

OrderReport order_and_pairing_checks() {
  OrderReport rep;
  // O_L = Z[l, eta]: basis l^k eta^c, the first six order basis vectors.
  rep.o_l_closed = true;
  std::vector<std::vector<Rational>> coords;
  for (std::size_t i = 0; i < 6; ++i) {
    auto ci = order_coordinates(order_basis(i));
    coords.emplace_back(ci.begin(), ci.begin() + 6);
    for (std::size_t j = 0; j < 6; ++j) {
      auto c = order_coordinates(order_basis(i) * order_basis(j));
      for (std::size_t k = 6; k < 18; ++k) rep.o_l_closed = rep.o_l_closed && sgn(c[k]) == 0;
      if (!integrality_witness(c).empty()) rep.o_l_closed = false;
    }
  }
  rep.o_l_rank = sgn(rational_det(coords)) != 0 ? 6 : 0;

  rep.o_d_closed = true;
  for (std::size_t i = 0; i < 18 && rep.o_d_closed; ++i)
    for (std::size_t j = 0; j < 18; ++j) {
      std::string w = integrality_witness(order_coordinates(order_basis(i) * order_basis(j)));
      if (!w.empty()) {
        rep.o_d_closed = false;
        rep.witness = "e" + std::to_string(i) + " * e" + std::to_string(j) + ": " + w;
        break;
      }
    }

  rep.psi_one_one = psi(DElem(1), DElem(1));
  std::vector<std::vector<Rational>> gram(18, std::vector<Rational>(18));
  std::vector<DElem> star_b_basis;
  for (std::size_t i = 0; i < 18; ++i) star_b_basis.push_back(order_basis(i).star() * element_b());
  for (std::size_t i = 0; i < 18; ++i)
    for (std::size_t j = 0; j < 18; ++j) gram[i][j] = trace_dq(star_b_basis[i] * order_basis(j));
  rep.gram_det = rational_det(gram);
  rep.nu2_gram_det = sgn(rep.gram_det) != 0 ? nu2(rep.gram_det) : 0;
  for (std::size_t i = 0; i < 18; ++i)
    for (std::size_t j = 0; j < 18; ++j) gram[i][j] = trace_dq(order_basis(i) * order_basis(j));
  const Rational trace_det = rational_det(gram);
  rep.nu2_trace_gram_det = sgn(trace_det) != 0 ? nu2(trace_det) : 0;
  return rep;
}

namespace {

Integer squarefree_part(Integer n) {
  const int sign = sgn(n);
  n = abs(n);
  Integer out = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  out *= n;
  return sign < 0 ? Integer(-out) : out;
}

DetValue classify(std::string label, const KElem& v) {
  DetValue d;
  d.label = std::move(label);
  d.value = v;
  d.rational = v.is_rational();
  if (d.rational && !v.is_zero()) {
    const Rational& q = v.a();
    d.squarefree_kernel = squarefree_part(Integer(q.get_num() * q.get_den()));
    d.rational_square = d.squarefree_kernel == 1;
  }
  return d;
}

}  // namespace

DetSquareReport det_square_check() {
  DetSquareReport rep;
  rep.det_3q = (QuadInt(3) * form_q()).det().to_rational();
  rep.det_3q_is_8100 = rep.det_3q == 8100;
  if (rep.det_3q.get_den() == 1 && sgn(rep.det_3q) > 0) {
    rep.root_3q = sqrt(rep.det_3q.get_num());
    rep.det_3q_square = rep.root_3q * rep.root_3q == rep.det_3q.get_num();
  }
  const DElem m7b = DElem(-7) * element_b();
  const KElem diff = lambda_bar_k() - KElem::lambda();
  rep.b_side.push_back(classify("det(-7b)", nrd(m7b)));
  rep.b_side.push_back(classify("det((lbar - l)^-1 (-7b))", nrd(DElem(LElem(diff.inverse())) * m7b)));
  rep.b_side.push_back(classify("det((lbar - l) (-7b))", nrd(DElem(LElem(diff)) * m7b)));
  return rep;
}

}  // namespace cmsz
