#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace bc {

/**
 * Reduced fraction num/den with den > 0. All arithmetic is exact; products
 * and sums run through 128-bit intermediates and throw std::overflow_error
 * if a reduced result leaves the 64-bit range.
 */
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}  // NOLINT: implicit on purpose
  Rat(long long n, long long d);

  static Rat parse(const std::string& text);  // "a/b" or "a"
  std::string str() const;

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  // representative of the class mod m, in [0, m)
  Rat mod(long long m) const;
  Rat mod1() const { return mod(1); }

  long long floor() const;

  Rat operator-() const { return Rat(-num, den); }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) = default;
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

long long checked_mul(long long a, long long b);
long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);

struct RatHash {
  size_t operator()(const Rat& r) const {
    size_t h = std::hash<long long>{}(r.num);
    return h ^ (std::hash<long long>{}(r.den) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

}  // namespace bc
