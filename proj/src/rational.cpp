#include "bc/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace bc {

namespace {

using i128 = __int128;

long long narrow(i128 v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<long long>(v);
}

Rat make_reduced(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n;
  i128 b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    n /= a;
    d /= a;
  } else {
    d = 1;
  }
  Rat r;
  r.num = narrow(n);
  r.den = narrow(d);
  return r;
}

}  // namespace

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

long long checked_mul(long long a, long long b) { return narrow(i128(a) * i128(b)); }

Rat::Rat(long long n, long long d) { *this = make_reduced(n, d); }

Rat Rat::parse(const std::string& text) {
  size_t slash = text.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(text), 1);
  long long n = std::stoll(text.substr(0, slash));
  long long d = std::stoll(text.substr(slash + 1));
  return Rat(n, d);
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

long long Rat::floor() const {
  long long q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Rat Rat::mod(long long m) const {
  // num/den - m*floor(num/(den*m)), always in [0, m)
  i128 md = i128(m) * den;
  i128 r = i128(num) % md;
  if (r < 0) r += md;
  return make_reduced(r, den);
}

Rat operator+(const Rat& a, const Rat& b) {
  return make_reduced(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}

Rat operator-(const Rat& a, const Rat& b) {
  return make_reduced(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
}

Rat operator*(const Rat& a, const Rat& b) {
  return make_reduced(i128(a.num) * b.num, i128(a.den) * b.den);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.num == 0) throw std::domain_error("division by zero rational");
  return make_reduced(i128(a.num) * b.den, i128(a.den) * b.num);
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  i128 lhs = i128(a.num) * b.den;
  i128 rhs = i128(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace bc
