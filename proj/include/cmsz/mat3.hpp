#pragma once

// 3x3 matrices over a commutative ring with involution.
//
// The ring type R must be constructible from `long` (0 and 1 at least),
// provide +, -, * and ==, and have a free function conj(R) found by ADL.

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>

namespace cmsz {

template <typename R>
class Mat3 {
 public:
  Mat3() : m_{R(0), R(0), R(0), R(0), R(0), R(0), R(0), R(0), R(0)} {}
  Mat3(std::initializer_list<std::initializer_list<R>> rows) : Mat3() {
    if (rows.size() != 3) throw std::invalid_argument("Mat3 needs 3 rows");
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != 3) throw std::invalid_argument("Mat3 needs 3 columns");
      std::size_t j = 0;
      for (const auto& x : row) m_[3 * i + j++] = x;
      ++i;
    }
  }

  static Mat3 identity() { return scalar(R(1)); }
  static Mat3 scalar(const R& c) {
    Mat3 s;
    s(0, 0) = c;
    s(1, 1) = c;
    s(2, 2) = c;
    return s;
  }
  static Mat3 diag(const R& x, const R& y, const R& z) {
    Mat3 s;
    s(0, 0) = x;
    s(1, 1) = y;
    s(2, 2) = z;
    return s;
  }

  R& operator()(std::size_t i, std::size_t j) { return m_[3 * i + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return m_[3 * i + j]; }
  const std::array<R, 9>& entries() const { return m_; }

  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
    return r;
  }
  friend Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m_[k] = x.m_[k] + y.m_[k];
    return r;
  }
  friend Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m_[k] = x.m_[k] - y.m_[k];
    return r;
  }
  friend Mat3 operator*(const R& c, const Mat3& x) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m_[k] = c * x.m_[k];
    return r;
  }
  Mat3& operator*=(const Mat3& o) { return *this = *this * o; }
  friend bool operator==(const Mat3& x, const Mat3& y) { return x.m_ == y.m_; }

  /// Conjugate transpose.
  Mat3 star() const {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r(i, j) = conj((*this)(j, i));
    return r;
  }
  Mat3 transpose() const {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  Mat3 map(const std::function<R(const R&)>& f) const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.m_[k] = f(m_[k]);
    return r;
  }

  R trace() const { return m_[0] + m_[4] + m_[8]; }
  R det() const {
    const Mat3& a = *this;
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }
  /// Classical adjugate: adj(a) * a = det(a) * I.
  Mat3 adjugate() const {
    const Mat3& a = *this;
    Mat3 r;
    r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    r(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    r(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    r(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    r(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    r(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    r(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return r;
  }
  /// Sum of the principal 2x2 minors.
  R principal_minor_sum() const {
    const Mat3& a = *this;
    return (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) + (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) +
           (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1));
  }

  bool is_scalar() const {
    return m_[1] == R(0) && m_[2] == R(0) && m_[3] == R(0) && m_[5] == R(0) && m_[6] == R(0) &&
           m_[7] == R(0) && m_[0] == m_[4] && m_[4] == m_[8];
  }
  bool is_hermitian() const { return star() == *this; }

 private:
  std::array<R, 9> m_;
};

template <typename R>
Mat3<R> power(Mat3<R> base, unsigned n) {
  Mat3<R> r = Mat3<R>::identity();
  while (n > 0) {
    if (n & 1U) r = r * base;
    base = base * base;
    n >>= 1U;
  }
  return r;
}

}  // namespace cmsz
