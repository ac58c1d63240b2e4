#include "cmsz/exact_ring.hpp"

#include <sstream>

namespace cmsz {

int nu2(const Integer& n) {
  if (n == 0) throw std::domain_error("nu2 of zero");
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

int nu2(const Rational& q) {
  return nu2(q.get_num()) - nu2(q.get_den());
}

bool is_power_of_two(const Rational& q) {
  if (sgn(q) <= 0) return false;
  const Integer& n = q.get_num();
  const Integer& d = q.get_den();
  return mpz_popcount(n.get_mpz_t()) == 1 && mpz_popcount(d.get_mpz_t()) == 1;
}

// ---------------------------------------------------------------------------
// QuadInt

QuadInt::QuadInt(Integer a, Integer b, unsigned e) : a_(std::move(a)), b_(std::move(b)), e_(e) {
  normalize();
}

QuadInt QuadInt::mu() { return QuadInt(-4, 1, 2); }  // l^2/4 = (l - 4)/4

void QuadInt::normalize() {
  if (a_ == 0 && b_ == 0) {
    e_ = 0;
    return;
  }
  while (e_ > 0 && mpz_even_p(a_.get_mpz_t()) && mpz_even_p(b_.get_mpz_t())) {
    a_ >>= 1;
    b_ >>= 1;
    --e_;
  }
}

Rational QuadInt::to_rational() const {
  if (!is_rational()) throw std::domain_error("QuadInt is not rational");
  Rational q(a_, Integer(1) << e_);
  q.canonicalize();
  return q;
}

QuadInt QuadInt::conj() const { return QuadInt(a_ + b_, -b_, e_); }

Rational QuadInt::norm() const {
  Integer n = a_ * a_ + a_ * b_ + 4 * b_ * b_;
  Rational q(n, Integer(1) << (2 * e_));
  q.canonicalize();
  return q;
}

Rational QuadInt::trace() const {
  Rational q(2 * a_ + b_, Integer(1) << e_);
  q.canonicalize();
  return q;
}

bool QuadInt::is_unit() const { return !is_zero() && is_power_of_two(norm()); }

std::optional<QuadInt> QuadInt::inverse() const {
  if (!is_unit()) return std::nullopt;
  // x^{-1} = conj(x) / N(x) with N(x) = 2^k.
  return conj().shifted(-nu2(norm()));
}

bool QuadInt::in_c() const {
  // 2 is invertible modulo c, and a + b*l = (a - b) + b*(l + 1).
  return mpz_divisible_ui_p(Integer(a_ - b_).get_mpz_t(), 3) != 0;
}

QuadInt QuadInt::operator-() const { return QuadInt(-a_, -b_, e_); }

QuadInt& QuadInt::operator+=(const QuadInt& o) {
  if (e_ >= o.e_) {
    unsigned d = e_ - o.e_;
    a_ += o.a_ << d;
    b_ += o.b_ << d;
  } else {
    unsigned d = o.e_ - e_;
    a_ = (a_ << d) + o.a_;
    b_ = (b_ << d) + o.b_;
    e_ = o.e_;
  }
  normalize();
  return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& o) { return *this += -o; }

QuadInt& QuadInt::operator*=(const QuadInt& o) {
  // (a + b l)(c + d l) = ac - 4bd + (ad + bc + bd) l
  Integer bd = b_ * o.b_;
  Integer na = a_ * o.a_ - 4 * bd;
  Integer nb = a_ * o.b_ + b_ * o.a_ + bd;
  a_ = std::move(na);
  b_ = std::move(nb);
  e_ += o.e_;
  normalize();
  return *this;
}

QuadInt QuadInt::shifted(int k) const {
  if (k >= 0) {
    if (static_cast<unsigned>(k) <= e_) return QuadInt(a_, b_, e_ - k);
    unsigned extra = static_cast<unsigned>(k) - e_;
    return QuadInt(a_ << extra, b_ << extra, 0);
  }
  return QuadInt(a_, b_, e_ + static_cast<unsigned>(-k));
}

std::string QuadInt::str() const {
  std::ostringstream os;
  os << a_.get_str() << (b_ < 0 ? "-" : "+") << Integer(abs(b_)).get_str() << "*l/2^" << e_;
  return os.str();
}

std::optional<int> val_p(const QuadInt& x) {
  if (x.is_zero()) return std::nullopt;
  // nu_p(a + b l) <= nu_2(N(a + b l)), so this many bits always suffice.
  Integer n = x.a() * x.a() + x.a() * x.b() + 4 * x.b() * x.b();
  unsigned bits = static_cast<unsigned>(nu2(n)) + 2;
  Integer r = embed_residue(QuadInt(x.a(), x.b(), 0), bits, 0);
  return nu2(r) - static_cast<int>(x.e());
}

std::optional<int> val_pbar(const QuadInt& x) { return val_p(x.conj()); }

// ---------------------------------------------------------------------------
// KElem

KElem::KElem(const QuadInt& x) {
  Integer den = Integer(1) << x.e();
  a_ = Rational(x.a(), den);
  b_ = Rational(x.b(), den);
  a_.canonicalize();
  b_.canonicalize();
}

KElem KElem::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw std::domain_error("inverse of zero in K");
  KElem c = conj();
  return KElem(c.a_ / n, c.b_ / n);
}

std::optional<QuadInt> KElem::to_quadint() const {
  const Integer& da = a_.get_den();
  const Integer& db = b_.get_den();
  if (mpz_popcount(da.get_mpz_t()) != 1 || mpz_popcount(db.get_mpz_t()) != 1) return std::nullopt;
  unsigned ea = static_cast<unsigned>(nu2(da));
  unsigned eb = static_cast<unsigned>(nu2(db));
  unsigned e = std::max(ea, eb);
  return QuadInt(a_.get_num() << (e - ea), b_.get_num() << (e - eb), e);
}

KElem& KElem::operator+=(const KElem& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

KElem& KElem::operator-=(const KElem& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

KElem& KElem::operator*=(const KElem& o) {
  Rational bd = b_ * o.b_;
  Rational na = a_ * o.a_ - 4 * bd;
  Rational nb = a_ * o.b_ + b_ * o.a_ + bd;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

std::string KElem::str() const {
  std::ostringstream os;
  os << a_.get_str() << (sgn(b_) < 0 ? "-" : "+") << Rational(abs(b_)).get_str() << "*l";
  return os.str();
}

// ---------------------------------------------------------------------------
// 2-adic embedding

Integer lambda_2adic(unsigned bits) {
  // Newton iteration for f(X) = X^2 - X + 4; f'(X) = 2X - 1 is a 2-adic unit,
  // and X = 0 is a root modulo 4 with positive valuation.
  Integer mod = Integer(1) << (bits + 2);
  Integer x = 0;
  for (unsigned known = 2; known < bits + 2; known *= 2) {
    Integer f = x * x - x + 4;
    Integer df = 2 * x - 1;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), df.get_mpz_t(), mod.get_mpz_t());
    x = x - f * inv;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  }
  Integer m = Integer(1) << bits;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return x;
}

Integer embed_residue(const QuadInt& x, unsigned bits, unsigned shift) {
  if (shift < x.e()) throw std::invalid_argument("embed_residue: shift below denominator exponent");
  Integer m = Integer(1) << bits;
  Integer r = ((x.a() + x.b() * lambda_2adic(bits)) << (shift - x.e()));
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

Padic2::Padic2(Integer unit, int valuation, unsigned precision)
    : unit_(std::move(unit)), valuation_(valuation), precision_(precision), zero_(false) {
  if (precision_ == 0) throw PrecisionError("Padic2 with no significant bits");
  Integer m = Integer(1) << precision_;
  mpz_fdiv_r(unit_.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t());
  if (mpz_even_p(unit_.get_mpz_t())) throw std::invalid_argument("Padic2 unit part must be odd");
}

int Padic2::valuation() const {
  if (zero_) throw std::domain_error("valuation of 2-adic zero");
  return valuation_;
}

Padic2 Padic2::operator*(const Padic2& o) const {
  if (zero_ || o.zero_) return Padic2::zero();
  return Padic2(unit_ * o.unit_, valuation_ + o.valuation_, std::min(precision_, o.precision_));
}

Padic2 Padic2::operator-() const {
  if (zero_) return *this;
  return Padic2(-unit_, valuation_, precision_);
}

Padic2 Padic2::operator+(const Padic2& o) const {
  if (zero_) return o;
  if (o.zero_) return *this;
  const Padic2& lo = valuation_ <= o.valuation_ ? *this : o;
  const Padic2& hi = valuation_ <= o.valuation_ ? o : *this;
  int gap = hi.valuation_ - lo.valuation_;
  // Absolute precision of the sum, measured from lo.valuation_.
  unsigned rel = std::min<long>(lo.precision_, static_cast<long>(hi.precision_) + gap);
  Integer s = lo.unit_ + (hi.unit_ << gap);
  Integer m = Integer(1) << rel;
  mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
  if (s == 0) throw PrecisionError("2-adic sum vanishes to working precision");
  int k = nu2(s);
  return Padic2(s >> k, lo.valuation_ + k, rel - static_cast<unsigned>(k));
}

bool Padic2::agrees_with(const Padic2& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  if (valuation_ != o.valuation_) return false;
  unsigned p = std::min(precision_, o.precision_);
  Integer m = Integer(1) << p;
  Integer d = unit_ - o.unit_;
  return mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) != 0;
}

void Padic2::check_guard(unsigned guard) const {
  if (!zero_ && precision_ < guard) {
    throw PrecisionError("2-adic precision below guard (" + std::to_string(precision_) + " < " +
                         std::to_string(guard) + " bits)");
  }
}

Padic2 embed_2adic(const QuadInt& x, unsigned precision) {
  if (precision < 8) throw std::invalid_argument("embed_2adic: precision must be at least 8");
  if (x.is_zero()) return Padic2::zero();
  int v = *val_p(QuadInt(x.a(), x.b(), 0));
  unsigned bits = precision + static_cast<unsigned>(v);
  Integer r = embed_residue(QuadInt(x.a(), x.b(), 0), bits, 0);
  return Padic2(r >> v, v - static_cast<int>(x.e()), precision);
}

}  // namespace cmsz
