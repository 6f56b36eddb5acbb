#pragma once

#include <map>

#include "bc/rational.hpp"

namespace bc {

/**
 * Multiplicative weight n -> g(n) > 0 determined by its values on primes.
 * Primes without an explicit entry weigh as themselves, so the empty map is
 * the homomorphism g(n) = n.  All listed values must exceed 1, which keeps
 * log g positive away from n = 1.
 */
struct GHom {
  std::map<long long, double> lambda;

  double value(long long n) const;
  double log_value(long long n) const;
  // extension to positive rationals: g(p/q) = g(p) / g(q)
  double log_value_rat(const Rat& r) const;
  bool is_builtin_n() const { return lambda.empty(); }
};

GHom g_builtin_n();
GHom g_from_primes(std::map<long long, double> lambda);

}  // namespace bc
