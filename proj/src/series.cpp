#include "bc/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bc/errors.hpp"

namespace bc {

namespace {

constexpr long long kMaxTerms = 200'000'000;

// smallest N with N^{1-beta} / (beta - 1) <= tol, capped
long long zeta_cutoff(double beta, double tol) {
  const double exponent = 1.0 / (1.0 - beta);
  const double n = std::pow(tol * (beta - 1.0), exponent);
  if (!std::isfinite(n) || n >= static_cast<double>(kMaxTerms)) return kMaxTerms;
  return std::max<long long>(8, static_cast<long long>(std::ceil(n)));
}

double zeta_tail(double beta, long long n) {
  return std::pow(static_cast<double>(n), 1.0 - beta) / (beta - 1.0);
}

}  // namespace

SeriesResult riemann_zeta(double beta, double tol) {
  if (!(beta > 1.0)) throw DivergentParameter("riemann_zeta: requires beta > 1");
  const long long cutoff = zeta_cutoff(beta, tol);
  KahanSum acc;
  for (long long n = 1; n <= cutoff; ++n) acc.add(std::pow(static_cast<double>(n), -beta));
  SeriesResult r;
  r.value = {acc.sum, 0.0};
  r.tail_bound = zeta_tail(beta, cutoff);
  r.terms = cutoff;
  return r;
}

SeriesResult polylog(double beta, std::complex<double> z, double tol) {
  const double az = std::abs(z);
  if (az == 0.0) return SeriesResult{{0.0, 0.0}, 0.0, 0};
  if (az > 1.0 + 1e-12) throw DivergentParameter("polylog: requires |z| <= 1");

  SeriesResult r;
  KahanSum re, im;
  if (az >= 1.0 - 1e-12) {
    // unit circle: absolute convergence needs beta > 1, zeta-type tail
    if (!(beta > 1.0)) throw DivergentParameter("polylog: |z| = 1 requires beta > 1");
    const long long cutoff = zeta_cutoff(beta, tol);
    // track the angle in long double so incremental rotation cannot drift;
    // real arguments rotate by exactly +-1 and need no correction
    const bool refresh = z.imag() != 0.0;
    const long double theta = std::atan2(static_cast<long double>(z.imag()),
                                          static_cast<long double>(z.real()));
    std::complex<double> zn = z;
    for (long long n = 1; n <= cutoff; ++n) {
      if (refresh && (n & 4095) == 1 && n > 1) {
        const long double a = theta * static_cast<long double>(n);
        zn = {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
      }
      const double w = std::pow(static_cast<double>(n), -beta);
      re.add(zn.real() * w);
      im.add(zn.imag() * w);
      zn *= z;
    }
    r.value = {re.sum, im.sum};
    r.tail_bound = zeta_tail(beta, cutoff);
    r.terms = cutoff;
    return r;
  }

  // interior: once the term ratio az (1+1/n)^{max(0,-beta)} stays below
  // rho < 1 the remainder is dominated by a geometric series
  const double growth = std::max(0.0, -beta);
  const double rho = 0.5 * (1.0 + az);
  std::complex<double> zn = z;
  long long n = 1;
  double tail = az / (1.0 - az);
  for (; n <= kMaxTerms; ++n) {
    const double w = (beta == 0.0) ? 1.0 : std::pow(static_cast<double>(n), -beta);
    re.add(zn.real() * w);
    im.add(zn.imag() * w);
    const double ratio_next = az * std::pow(1.0 + 1.0 / static_cast<double>(n), growth);
    if (ratio_next <= rho) {
      const double head = std::abs(zn) * az * std::pow(static_cast<double>(n + 1), -beta);
      tail = head / (1.0 - rho);
      if (tail <= tol && n >= 4) break;
    }
    zn *= z;
  }
  r.value = {re.sum, im.sum};
  r.tail_bound = tail;
  r.terms = std::min(n, kMaxTerms);
  return r;
}

EulerCheck euler_partition(const GHom& gh, double beta, double tol) {
  if (!(beta > 0.0)) throw DivergentParameter("euler_partition: requires beta > 0");

  std::vector<long long> primes;
  std::vector<double> lam;
  for (const auto& [p, l] : gh.lambda) {
    primes.push_back(p);
    lam.push_back(l);
  }

  EulerCheck out;
  if (primes.empty()) {
    out.product = 1.0;
    out.series = 1.0;
    out.terms = 1;
    return out;
  }

  // route one: the product of geometric factors
  double prod = 1.0;
  for (double l : lam) prod *= 1.0 / (1.0 - std::pow(l, -beta));
  out.product = prod;

  // route two: enumerate the smooth integers with per-prime exponent caps
  // chosen so the omitted mass, bounded by the full product minus the capped
  // one, stays under tol
  const std::size_t R = primes.size();
  std::vector<int> cap(R, 0);
  std::vector<double> partial(R, 0.0);
  double capped_prod = 1.0;
  for (std::size_t r = 0; r < R; ++r) {
    const double x = std::pow(lam[r], -beta);
    // geometric remainder x^{A+1}/(1-x) <= tol / (R * prod)
    const double budget = tol / (static_cast<double>(R) * prod);
    int a = 1;
    double rem = x * x / (1.0 - x);
    while (rem > budget && a < 4000) {
      rem *= x;
      ++a;
    }
    cap[r] = a;
    double geo = 0.0;
    for (int j = a; j >= 0; --j) geo += std::pow(x, j);
    partial[r] = geo;
    capped_prod *= geo;
  }
  out.series_tail = std::max(0.0, prod - capped_prod);

  KahanSum acc;
  long long count = 0;
  // depth-first over exponent tuples, factor weights carried down
  auto walk = [&](auto&& self, std::size_t r, double logg) -> void {
    if (r == R) {
      acc.add(std::exp(-beta * logg));
      ++count;
      return;
    }
    double lg = logg;
    const double step = std::log(lam[r]);
    for (int a = 0; a <= cap[r]; ++a) {
      self(self, r + 1, lg);
      lg += step;
    }
  };
  walk(walk, 0, 0.0);
  out.series = acc.sum;
  out.terms = count;
  return out;
}

}  // namespace bc
