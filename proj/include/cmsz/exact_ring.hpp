#pragma once

// Exact arithmetic in O_K[1/2] and K for K = Q(sqrt(-15)), together with the
// 2-adic embedding attached to the prime p = 2Z + lZ.
//
// Throughout, l denotes the generator (1 - sqrt(-15))/2 of O_K = Z[l]; it
// satisfies l^2 = l - 4, and its conjugate is 1 - l.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cmsz {

using Integer = mpz_class;
using Rational = mpq_class;

/// 2-adic valuation of a non-zero integer.
int nu2(const Integer& n);
/// 2-adic valuation of a non-zero rational.
int nu2(const Rational& q);
/// True iff q = 2^k for some integer k (k may be negative).
bool is_power_of_two(const Rational& q);

/// Element (a + b*l) / 2^e of O_K[1/2].
///
/// Stored normalized: either e = 0, or a and b are not both even. Zero is
/// always (0, 0, 0).
class QuadInt {
 public:
  QuadInt() = default;
  QuadInt(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  QuadInt(Integer a, Integer b, unsigned e = 0);

  static QuadInt lambda() { return QuadInt(0, 1); }
  static QuadInt lambda_bar() { return QuadInt(1, -1); }
  /// l/2, the uniformizer at p.
  static QuadInt half_lambda() { return QuadInt(0, 1, 1); }
  /// sqrt(-15) = 1 - 2l.
  static QuadInt sqrt_m15() { return QuadInt(1, -2); }
  /// mu = l / conj(l) = l^2 / 4.
  static QuadInt mu();

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  unsigned e() const { return e_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  /// The value as a rational; requires is_rational().
  Rational to_rational() const;

  QuadInt conj() const;
  /// x * conj(x), a non-negative rational whose denominator is a power of 4.
  Rational norm() const;
  /// x + conj(x).
  Rational trace() const;

  /// Multiplicative inverse inside O_K[1/2], if x is a unit there.
  std::optional<QuadInt> inverse() const;
  bool is_unit() const;

  /// Membership in the prime c = 3Z + (l+1)Z of O_K[1/2] above 3.
  bool in_c() const;

  QuadInt operator-() const;
  QuadInt& operator+=(const QuadInt& o);
  QuadInt& operator-=(const QuadInt& o);
  QuadInt& operator*=(const QuadInt& o);
  friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
  friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
  friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }
  friend bool operator==(const QuadInt& x, const QuadInt& y) {
    return x.e_ == y.e_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// Multiply by 2^k (k may be negative).
  QuadInt shifted(int k) const;

  /// Text form "a+b*l/2^e"; the value is (a + b*l) / 2^e.
  std::string str() const;

 private:
  void normalize();

  Integer a_{0};
  Integer b_{0};
  unsigned e_{0};
};

inline QuadInt conj(const QuadInt& x) { return x.conj(); }

/// Valuation at p (the prime with l/2 as uniformizer). Empty for zero.
std::optional<int> val_p(const QuadInt& x);
/// Valuation at conj(p).
std::optional<int> val_pbar(const QuadInt& x);

/// Element a + b*l of K with rational coefficients.
class KElem {
 public:
  KElem() = default;
  KElem(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  KElem(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  KElem(const QuadInt& x);  // NOLINT(google-explicit-constructor)

  static KElem lambda() { return KElem(0, 1); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  KElem conj() const { return KElem(a_ + b_, -b_); }
  Rational norm() const { return a_ * a_ + a_ * b_ + 4 * b_ * b_; }
  Rational trace() const { return 2 * a_ + b_; }
  KElem inverse() const;
  /// Back to O_K[1/2] when the coefficients have 2-power denominators.
  std::optional<QuadInt> to_quadint() const;

  KElem operator-() const { return KElem(-a_, -b_); }
  KElem& operator+=(const KElem& o);
  KElem& operator-=(const KElem& o);
  KElem& operator*=(const KElem& o);
  KElem& operator/=(const KElem& o) { return *this *= o.inverse(); }
  friend KElem operator+(KElem x, const KElem& y) { return x += y; }
  friend KElem operator-(KElem x, const KElem& y) { return x -= y; }
  friend KElem operator*(KElem x, const KElem& y) { return x *= y; }
  friend KElem operator/(KElem x, const KElem& y) { return x /= y; }
  friend bool operator==(const KElem& x, const KElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string str() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

inline KElem conj(const KElem& x) { return x.conj(); }

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root of X^2 - X + 4 in Z_2 with positive valuation, modulo 2^bits.
Integer lambda_2adic(unsigned bits);

/// 2-adic number 2^valuation * unit, unit odd and known modulo 2^precision.
class Padic2 {
 public:
  static constexpr unsigned kDefaultPrecision = 64;
  static constexpr unsigned kDefaultGuard = 8;

  Padic2() = default;
  /// The exact zero.
  static Padic2 zero() { return Padic2(); }
  Padic2(Integer unit, int valuation, unsigned precision);

  bool is_zero() const { return zero_; }
  int valuation() const;
  const Integer& unit() const { return unit_; }
  unsigned precision() const { return precision_; }

  Padic2 operator*(const Padic2& o) const;
  Padic2 operator+(const Padic2& o) const;
  Padic2 operator-() const;
  Padic2 operator-(const Padic2& o) const { return *this + (-o); }

  /// Equality up to the smaller of the two precisions.
  bool agrees_with(const Padic2& o) const;

  /// Throws PrecisionError when fewer than `guard` bits of unit remain.
  void check_guard(unsigned guard) const;

 private:
  Integer unit_{0};
  int valuation_{0};
  unsigned precision_{0};
  bool zero_{true};
};

/// Image of x under K -> Q_2 (completion at p), with `precision` bits of
/// relative precision. Requires precision >= 8.
Padic2 embed_2adic(const QuadInt& x, unsigned precision = Padic2::kDefaultPrecision);

/// Residue of 2^shift * x in Z/2^bits via the p-adic embedding; requires
/// shift >= x.e().
Integer embed_residue(const QuadInt& x, unsigned bits, unsigned shift);

}  // namespace cmsz
