#include "bc/ghom.hpp"

#include <cmath>
#include <stdexcept>

namespace bc {

double GHom::log_value(long long n) const {
  if (n < 1) throw std::invalid_argument("weights are defined on positive integers");
  if (lambda.empty()) return std::log(static_cast<double>(n));
  double acc = 0.0;
  long long rest = n;
  for (long long p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e == 0) continue;
    auto it = lambda.find(p);
    const double lam = it != lambda.end() ? it->second : static_cast<double>(p);
    acc += e * std::log(lam);
  }
  if (rest > 1) {
    auto it = lambda.find(rest);
    const double lam = it != lambda.end() ? it->second : static_cast<double>(rest);
    acc += std::log(lam);
  }
  return acc;
}

double GHom::value(long long n) const { return std::exp(log_value(n)); }

double GHom::log_value_rat(const Rat& r) const {
  if (!(r > Rat(0))) throw std::invalid_argument("weights are defined on positive rationals");
  return log_value(r.num) - log_value(r.den);
}

GHom g_builtin_n() { return GHom{}; }

GHom g_from_primes(std::map<long long, double> lambda) {
  for (const auto& [p, lam] : lambda) {
    if (p < 2) throw std::invalid_argument("weight keys must be primes");
    for (long long d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw std::invalid_argument("weight keys must be primes");
    }
    if (!(lam > 1.0)) throw std::invalid_argument("prime weights must exceed 1");
  }
  return GHom{std::move(lambda)};
}

}  // namespace bc
