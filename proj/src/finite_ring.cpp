#include "cmsz/finite_ring.hpp"

#include <stdexcept>

namespace cmsz {

R1 R1::inverse() const {
  if (!is_unit()) throw std::domain_error("R1: inverse of a non-unit");
  // (x0 + x1 t)^{-1} = x0^{-1} - x1 x0^{-2} t, and x0^{-1} = x0 in F3.
  return make(x0(), -x1());
}

std::string R1::str() const {
  auto bal = [](int x) { return x == 2 ? -1 : x; };
  int a = bal(x0());
  int b = bal(x1());
  return std::to_string(a) + (b < 0 ? "-" : "+") + std::to_string(b < 0 ? -b : b) + "*t";
}

const std::array<R1, 6>& r1_units() {
  static const std::array<R1, 6> u{R1::make(1, 0), R1::make(1, 1), R1::make(1, 2),
                                   R1::make(2, 0), R1::make(2, 1), R1::make(2, 2)};
  return u;
}

namespace {

int mod3(const Integer& n) { return static_cast<int>(mpz_fdiv_ui(n.get_mpz_t(), 3)); }

int mod3_rational(const Rational& q) {
  int d = mod3(q.get_den());
  if (d == 0) throw std::domain_error("reduction mod 3 of a rational with denominator divisible by 3");
  // d^{-1} = d in F3
  return (mod3(q.get_num()) * d) % 3;
}

}  // namespace

R1 reduce_lambda() {
  // 1 - 2l = t  =>  l = (1 - t) / 2 = 2 (1 - t) = 2 + t
  return R1::make(2, 1);
}

R1 reduce(const QuadInt& x) {
  R1 v = R1(mod3(x.a())) + R1(mod3(x.b())) * reduce_lambda();
  // 2^{-e} = 2^e = (-1)^e modulo 3
  return (x.e() % 2 == 0) ? v : -v;
}

R1 reduce(const KElem& x) { return R1(mod3_rational(x.a())) + R1(mod3_rational(x.b())) * reduce_lambda(); }

R1Mat reduce_entrywise(const QMat& g, int level) {
  R1Mat r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      R1 v = reduce(g(i, j));
      r(i, j) = level == 0 ? v.mod_t() : v;
    }
  return r;
}

R1Mat mod_t(const R1Mat& g) {
  return g.map([](const R1& x) { return x.mod_t(); });
}

R1Mat reduce_matrix(const QMat& g, int level) {
  if (level != 0 && level != 1) throw std::invalid_argument("reduce_matrix: level must be 0 or 1");
  static const R1Mat phi = reduce_entrywise(twist_phi());
  static const R1Mat phi_inv = [] {
    const QMat& p = twist_phi();
    R1 det_inv = reduce(p.det()).inverse();
    return det_inv * reduce_entrywise(p.adjugate());
  }();
  R1Mat r = phi_inv * reduce_entrywise(g) * phi;
  return level == 0 ? mod_t(r) : r;
}

const R1Mat& q1_form() {
  static const R1Mat q{
      {R1(0), R1::t(), R1(0)},
      {-R1::t(), R1(0), R1(0)},
      {R1(0), R1(0), R1(1)},
  };
  return q;
}

const R1Mat& q0_form() {
  static const R1Mat q = R1Mat::diag(R1(0), R1(0), R1(1));
  return q;
}

std::array<R1, 3> scalar_generator_images() {
  return {reduce(QuadInt(-1)), reduce(QuadInt(2)), reduce(QuadInt::half_lambda())};
}

ElemKey key_of(const R1Mat& g) {
  ElemKey k = 0;
  const auto& e = g.entries();
  for (std::size_t i = 9; i-- > 0;) k = k * 9 + e[i].index();
  return k;
}

R1Mat mat_of(ElemKey k) {
  R1Mat g;
  for (std::size_t i = 0; i < 9; ++i) {
    g(i / 3, i % 3) = R1::from_index(k % 9);
    k /= 9;
  }
  return g;
}

std::string r1mat_str(const R1Mat& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < 3; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < 3; ++j) s += (j ? ", " : "") + g(i, j).str();
    s += "]";
  }
  return s + "]";
}

}  // namespace cmsz
