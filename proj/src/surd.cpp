#include "monolap/surd.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace monolap {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(narrow(n), narrow(d));
}

// sign of a^2 - 5 b^2; exact unless the cross products exceed 2^62
int sign_of_square_diff(const Rational& a, const Rational& b) {
  // compare a^2 with 5 b^2, i.e. (an*bd)^2 vs 5 (bn*ad)^2
  i128 l = static_cast<i128>(a.num()) * b.den();
  i128 r = static_cast<i128>(b.num()) * a.den();
  if (l < 0) l = -l;
  if (r < 0) r = -r;
  const i128 lim = static_cast<i128>(1) << 62;
  if (l < lim && r < lim) {
    i128 L = l * l, R = 5 * r * r;
    return (L > R) - (L < R);
  }
  long double L = static_cast<long double>(l), R = static_cast<long double>(r);
  long double d = L * L - 5.0L * R * R;
  return (d > 0) - (d < 0);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("division by zero");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  num_ = narrow(nn);
  den_ = narrow(dd);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

int compare(const Rational& a, const Rational& b) { return (a - b).sign(); }

double Surd::value() const {
  return p.value() + q.value() * std::sqrt(5.0);
}

int Surd::sign() const {
  int sp = p.sign(), sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // opposite signs: magnitude comparison of |p| vs |q| sqrt5
  int d = sign_of_square_diff(p, q);
  return d > 0 ? sp : (d < 0 ? sq : 0);
}

std::string Surd::str() const {
  if (q.is_zero()) return p.str();
  std::string qs = q.str();
  if (p.is_zero()) return qs + "*sqrt5";
  return p.str() + (q.sign() > 0 ? "+" : "") + qs + "*sqrt5";
}

Surd operator*(const Surd& a, const Surd& b) {
  return Surd(a.p * b.p + Rational(5) * a.q * b.q, a.p * b.q + a.q * b.p);
}

Surd operator/(const Surd& a, const Surd& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (b.q.is_zero()) return Surd(a.p / b.p, a.q / b.p);
  Rational n = b.p * b.p - Rational(5) * b.q * b.q;
  Surd conj(b.p, -b.q);
  Surd t = a * conj;
  return Surd(t.p / n, t.q / n);
}

}  // namespace monolap
