#pragma once

#include <complex>
#include <cstdint>

#include "bc/ghom.hpp"

namespace bc {

// compensated accumulator; streams terms in descending magnitude
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

/**
 * Value of a convergent series with an explicit error certificate: the true
 * value differs from `value` by at most `tail_bound` in absolute value, with
 * `terms` summed terms behind it.
 */
struct SeriesResult {
  std::complex<double> value{0.0, 0.0};
  double tail_bound = 0.0;
  long long terms = 0;

  double real() const { return value.real(); }
};

// sum n^{-beta} for beta > 1; integral-test tail bound aimed at tol
SeriesResult riemann_zeta(double beta, double tol = 1e-10);

// sum z^n n^{-beta} for |z| <= 1; geometric tail inside the disc, zeta-type
// tail on the circle (where beta > 1 is required)
SeriesResult polylog(double beta, std::complex<double> z, double tol = 1e-10);

/**
 * Euler product over the declared primes of gh against the Dirichlet sum
 * over the integers supported on those primes.  The two routes agree up to
 * series_tail; their difference is the multiplicativity cross-check.
 */
struct EulerCheck {
  double product = 0.0;
  double series = 0.0;
  double series_tail = 0.0;
  long long terms = 0;
};
EulerCheck euler_partition(const GHom& gh, double beta, double tol = 1e-12);

}  // namespace bc
