#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>
#include <vector>

#include "bc/errors.hpp"
#include "bc/rational.hpp"

namespace bc {

using BigRat = boost::multiprecision::cpp_rational;

BigRat to_bigrat(const Rat& r);
double bigrat_to_double(const BigRat& v);

int euler_phi(int n);

// Coefficients of the n-th cyclotomic polynomial, ascending degree, monic.
// Computed by dividing x^n - 1 by the product of the lower-level factors;
// results are memoized behind an internal lock.
const std::vector<long long>& cyclotomic_poly(int n);

/**
 * Exact element of the cyclotomic field Q(zeta_N), stored in the power basis
 * 1, z, ..., z^{phi(N)-1} modulo the N-th cyclotomic polynomial. Mixed-level
 * arithmetic promotes both operands to the lcm level, so values created at
 * different levels compare correctly.
 */
class Cyclo {
 public:
  Cyclo() : level_(1), c_(1, BigRat(0)) {}

  static Cyclo from_rat(const Rat& r);
  static Cyclo from_bigrat(const BigRat& r);
  // e^{2 pi i t} for t = a/b; requires b | level
  static Cyclo root(int level, const Rat& t);

  int level() const { return level_; }
  const std::vector<BigRat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;  // all coordinates beyond the constant vanish
  BigRat rational_part() const { return c_[0]; }

  Cyclo at_level(int m) const;  // requires level | m

  Cyclo operator-() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  Cyclo scaled(const BigRat& f) const;
  Cyclo pow(long long e) const;  // e >= 0

  // multiplicative inverse; throws std::domain_error on zero
  Cyclo inverse() const;
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

  std::complex<double> to_complex() const;
  std::string str() const;

 private:
  Cyclo(int level, std::vector<BigRat> c) : level_(level), c_(std::move(c)) {}
  static std::vector<BigRat> reduce_mod_phi(int level, std::vector<BigRat> poly);

  int level_;
  std::vector<BigRat> c_;  // size phi(level_)
};

}  // namespace bc
