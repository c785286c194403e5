#pragma once

#include <stdexcept>

namespace testsupport {

// Exact fraction arithmetic over __int128 for formula oracles. Inputs stay
// small, so normalized intermediates fit comfortably.
class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}
  Fraction(long long num, long long den = 1) : num_(num), den_(den) { normalize(); }

  Fraction operator+(const Fraction& o) const {
    return Fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Fraction operator-(const Fraction& o) const {
    return Fraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Fraction operator*(const Fraction& o) const {
    return Fraction(num_ * o.num_, den_ * o.den_);
  }
  Fraction operator/(const Fraction& o) const {
    if (o.num_ == 0) throw std::domain_error("Fraction: division by zero");
    return Fraction(num_ * o.den_, den_ * o.num_);
  }

  bool positive() const { return num_ > 0; }
  bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  Fraction(__int128 num, __int128 den) : num_(num), den_(den) { normalize(); }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Fraction: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    __int128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  __int128 num_;
  __int128 den_;
};

// Exact evaluation of the condition margin c - 4C/r - C/r^2 where r is the
// rational square root of the oversampling factor a = r^2.
inline Fraction exact_margin(const Fraction& c, const Fraction& C, const Fraction& r) {
  Fraction a = r * r;
  return c - Fraction(4) * C / r - C / a;
}

// Exact evaluation of (1/a + 4/sqrt(a) + 1) / margin with sqrt(a) = r.
inline Fraction exact_c1(const Fraction& c, const Fraction& C, const Fraction& r) {
  Fraction a = r * r;
  Fraction numerator = Fraction(1) / a + Fraction(4) / r + Fraction(1);
  return numerator / exact_margin(c, C, r);
}

}  // namespace testsupport
