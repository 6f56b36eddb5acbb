#include "bc/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace bc {

BigRat to_bigrat(const Rat& r) { return BigRat(r.num, r.den); }

double bigrat_to_double(const BigRat& v) { return v.convert_to<double>(); }

int euler_phi(int n) {
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<long long> poly_div_exact(std::vector<long long> num, const std::vector<long long>& den) {
  std::vector<long long> quot(num.size() - den.size() + 1, 0);
  for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
    long long c = num[i + den.size() - 1] / den.back();
    quot[i] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j) num[i + j] -= checked_mul(c, den[j]);
  }
  for (long long c : num)
    if (c != 0) throw std::logic_error("cyclotomic division left a remainder");
  return quot;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<long long> poly;
  if (n == 1) {
    poly = {-1, 1};
  } else {
    std::vector<long long> xn1(n + 1, 0);  // x^n - 1
    xn1[0] = -1;
    xn1[n] = 1;
    poly = std::move(xn1);
    for (int d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      // inline recursion through the cache; lock is already held
      auto sub = cache.find(d);
      if (sub == cache.end()) {
        // compute lower levels bottom-up so they are always present
        std::vector<long long> base = {-1, 1};
        cache.emplace(1, base);
        for (int e = 2; e <= d; ++e) {
          if (cache.count(e) || d % e != 0) continue;
          std::vector<long long> acc(e + 1, 0);
          acc[0] = -1;
          acc[e] = 1;
          for (int f = 1; f < e; ++f)
            if (e % f == 0) acc = poly_div_exact(std::move(acc), cache.at(f));
          cache.emplace(e, std::move(acc));
        }
        sub = cache.find(d);
      }
      poly = poly_div_exact(std::move(poly), sub->second);
    }
  }
  return cache.emplace(n, std::move(poly)).first->second;
}

std::vector<BigRat> Cyclo::reduce_mod_phi(int level, std::vector<BigRat> poly) {
  const auto& phi = cyclotomic_poly(level);
  const size_t deg = phi.size() - 1;  // phi(level)
  for (int i = static_cast<int>(poly.size()) - 1; i >= static_cast<int>(deg); --i) {
    BigRat c = poly[i];  // phi is monic
    if (c == 0) continue;
    poly[i] = 0;
    for (size_t j = 0; j < deg; ++j) poly[i - deg + j] -= c * phi[j];
  }
  poly.resize(deg);
  return poly;
}

Cyclo Cyclo::from_rat(const Rat& r) { return from_bigrat(to_bigrat(r)); }

Cyclo Cyclo::from_bigrat(const BigRat& r) {
  std::vector<BigRat> c(1, r);
  return Cyclo(1, std::move(c));
}

Cyclo Cyclo::root(int level, const Rat& t) {
  Rat u = t.mod1();
  if (level % u.den != 0)
    throw LevelTooSmall("root of order " + std::to_string(u.den) + " needs level divisible by it, have " +
                        std::to_string(level));
  long long e = (u.num * (level / u.den)) % level;
  std::vector<BigRat> poly(static_cast<size_t>(e) + 1, BigRat(0));
  poly[static_cast<size_t>(e)] = 1;
  return Cyclo(level, reduce_mod_phi(level, std::move(poly)));
}

bool Cyclo::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Cyclo Cyclo::at_level(int m) const {
  if (m == level_) return *this;
  if (m % level_ != 0) throw LevelTooSmall("cannot lower cyclotomic level");
  const int stride = m / level_;
  std::vector<BigRat> poly(static_cast<size_t>((c_.size() - 1) * stride) + 1, BigRat(0));
  for (size_t i = 0; i < c_.size(); ++i) poly[i * stride] = c_[i];
  return Cyclo(m, reduce_mod_phi(m, std::move(poly)));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  int m = static_cast<int>(lcm_ll(a.level_, b.level_));
  Cyclo x = a.at_level(m), y = b.at_level(m);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  int m = static_cast<int>(lcm_ll(a.level_, b.level_));
  Cyclo x = a.at_level(m), y = b.at_level(m);
  std::vector<BigRat> prod(x.c_.size() + y.c_.size() - 1, BigRat(0));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (size_t j = 0; j < y.c_.size(); ++j) {
      if (y.c_[j] == 0) continue;
      prod[i + j] += x.c_[i] * y.c_[j];
    }
  }
  return Cyclo(m, Cyclo::reduce_mod_phi(m, std::move(prod)));
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  int m = static_cast<int>(lcm_ll(a.level_, b.level_));
  Cyclo x = a.at_level(m), y = b.at_level(m);
  return x.c_ == y.c_;
}

Cyclo Cyclo::scaled(const BigRat& f) const {
  Cyclo r = *this;
  for (auto& v : r.c_) v *= f;
  return r;
}

Cyclo Cyclo::pow(long long e) const {
  if (e < 0) throw std::domain_error("negative cyclotomic exponent");
  Cyclo acc = Cyclo::from_rat(Rat(1));
  Cyclo base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in a cyclotomic field");
  // solve (this) * x = 1 in the power basis: columns are this * z^j reduced
  const int deg = static_cast<int>(c_.size());
  std::vector<std::vector<BigRat>> aug(static_cast<size_t>(deg));
  for (int j = 0; j < deg; ++j) {
    std::vector<BigRat> shifted(c_.size() + static_cast<size_t>(j), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) shifted[i + static_cast<size_t>(j)] = c_[i];
    auto col = reduce_mod_phi(level_, std::move(shifted));
    for (int i = 0; i < deg; ++i) {
      if (j == 0) aug[static_cast<size_t>(i)].assign(static_cast<size_t>(deg) + 1, BigRat(0));
      aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    }
  }
  for (int i = 0; i < deg; ++i) aug[static_cast<size_t>(i)][static_cast<size_t>(deg)] = BigRat(i == 0 ? 1 : 0);

  for (int col = 0, row = 0; col < deg && row < deg; ++col) {
    int piv = -1;
    for (int r = row; r < deg; ++r) {
      if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(aug[static_cast<size_t>(piv)], aug[static_cast<size_t>(row)]);
    const BigRat p = aug[static_cast<size_t>(row)][static_cast<size_t>(col)];
    for (int j = col; j <= deg; ++j) aug[static_cast<size_t>(row)][static_cast<size_t>(j)] /= p;
    for (int r = 0; r < deg; ++r) {
      if (r == row) continue;
      const BigRat f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int j = col; j <= deg; ++j) {
        aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * aug[static_cast<size_t>(row)][static_cast<size_t>(j)];
      }
    }
    ++row;
  }
  std::vector<BigRat> x(static_cast<size_t>(deg), BigRat(0));
  for (int i = 0; i < deg; ++i) {
    // reduced row echelon with full pivoting across rows: row i has pivot at column i
    if (aug[static_cast<size_t>(i)][static_cast<size_t>(i)] == 0) {
      throw std::domain_error("singular multiplication matrix in a field");
    }
    x[static_cast<size_t>(i)] = aug[static_cast<size_t>(i)][static_cast<size_t>(deg)];
  }
  return Cyclo(level_, std::move(x));
}

std::complex<double> Cyclo::to_complex() const {
  std::complex<double> sum = 0;
  const double tau = 2.0 * std::numbers::pi / static_cast<double>(level_);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    double x = bigrat_to_double(c_[i]);
    sum += x * std::complex<double>(std::cos(tau * static_cast<double>(i)), std::sin(tau * static_cast<double>(i)));
  }
  return sum;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  os << "[" << level_ << ";";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i];
  }
  os << "]";
  return os.str();
}

}  // namespace bc
