#pragma once

#include <cstdint>
#include <string>

namespace monolap {

// Exact rational with 64-bit numerator and denominator, always reduced, den > 0.
// Arithmetic overflow throws std::overflow_error.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return num_ == 0; }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend int compare(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// p + q*sqrt(5) with rational p, q.
struct Surd {
  Rational p;
  Rational q;

  Surd() = default;
  Surd(Rational p_) : p(p_) {}  // NOLINT(implicit)
  Surd(std::int64_t n) : p(n) {}  // NOLINT(implicit)
  Surd(Rational p_, Rational q_) : p(p_), q(q_) {}

  double value() const;
  int sign() const;  // exact
  bool is_zero() const { return p.is_zero() && q.is_zero(); }
  bool is_rational() const { return q.is_zero(); }
  std::string str() const;

  Surd operator-() const { return Surd(-p, -q); }
  friend Surd operator+(const Surd& a, const Surd& b) { return Surd(a.p + b.p, a.q + b.q); }
  friend Surd operator-(const Surd& a, const Surd& b) { return Surd(a.p - b.p, a.q - b.q); }
  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator/(const Surd& a, const Surd& b);
  friend bool operator==(const Surd& a, const Surd& b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(const Surd& a, const Surd& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const Surd& a, const Surd& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const Surd& a, const Surd& b) { return (a - b).sign() > 0; }
  friend bool operator>=(const Surd& a, const Surd& b) { return (a - b).sign() >= 0; }
  Surd& operator+=(const Surd& b) { return *this = *this + b; }
  Surd& operator-=(const Surd& b) { return *this = *this - b; }
  Surd& operator*=(const Surd& b) { return *this = *this * b; }
};

// shorthand: (a + b*sqrt5) / d
inline Surd surd(std::int64_t a, std::int64_t b, std::int64_t d = 1) { return Surd(Rational(a, d), Rational(b, d)); }

}  // namespace monolap
