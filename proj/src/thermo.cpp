#include "bc/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bc/algebra.hpp"
#include "bc/errors.hpp"

namespace bc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::complex<double> unit_phase(const Rat& v) {
  const double a = kTwoPi * v.to_double();
  return {std::cos(a), std::sin(a)};
}

// g(n) >= n^c with c = min(1, min_p log lambda_p / log p); every Dirichlet
// tail below is certified through this exponent
double g_lower_exponent(const GHom& g) {
  double c = 1.0;
  for (const auto& [p, l] : g.lambda)
    c = std::min(c, std::log(l) / std::log(static_cast<double>(p)));
  return c;
}

// bound on sum_{n > N} g(n)^{-beta}; infinite when not certifiable
double dirichlet_tail(const GHom& g, double beta, long long n) {
  const double e = beta * g_lower_exponent(g);
  if (!(e > 1.0)) return kInf;
  return std::pow(static_cast<double>(n), 1.0 - e) / (e - 1.0);
}

long long dirichlet_cutoff(const GHom& g, double beta, double tol) {
  const double e = beta * g_lower_exponent(g);
  if (!(e > 1.0))
    throw DivergentParameter("dirichlet_cutoff: tail not certifiable at this beta");
  const double n = std::pow(tol * (e - 1.0), 1.0 / (1.0 - e));
  if (!std::isfinite(n) || n > 5e6) return 5'000'000;
  return std::max<long long>(8, static_cast<long long>(std::ceil(n)));
}

// zeta(s) <= 1 + 2^{-s} + 2^{1-s}/(s-1) for s > 1
double zeta_upper(double s) {
  return 1.0 + std::pow(2.0, -s) + std::pow(2.0, 1.0 - s) / (s - 1.0);
}

// sum_n g(n)^{-s} = zeta(s) prod_{p} (1 - p^{-s})/(1 - lambda_p^{-s})
SeriesResult dirichlet_g(const GHom& g, double s, double tol) {
  double corr = 1.0;
  for (const auto& [p, l] : g.lambda)
    corr *= (1.0 - std::pow(static_cast<double>(p), -s)) / (1.0 - std::pow(l, -s));
  SeriesResult z = riemann_zeta(s, tol / corr);
  z.value *= corr;
  z.tail_bound *= corr;
  return z;
}

// product over the lattice generators of 1/(1 - gen^{-beta n})
double lattice_factor(const std::vector<double>& logs, double beta, long long n) {
  double f = 1.0;
  for (double lg : logs) f *= 1.0 / (1.0 - std::exp(-beta * static_cast<double>(n) * lg));
  return f;
}

// raw pairing of a grid element against the diagonal direction
Rat grid_pair_sum(const GroupElem& s) {
  if (const auto* p = std::get_if<PairElem>(&s)) return p->a + p->b;
  if (const auto* h = std::get_if<WeilHatElem>(&s)) return h->zeta + h->r * Rat(1, 2);
  throw KindMismatch("grid_pair_sum: not a grid element");
}

SeriesResult ratio_result(std::complex<double> num, double num_tail, double den, double den_tail,
                          long long terms) {
  SeriesResult r;
  r.value = num / den;
  r.terms = terms;
  if (den - den_tail > 0.0)
    r.tail_bound = (num_tail + std::abs(r.value) * den_tail) / (den - den_tail);
  else
    r.tail_bound = kInf;
  return r;
}

// shared generic route: num = sum_n e^{2 pi i n v} g(n)^{-beta} F(n),
// den the same with v = 0, both over one loop so the identity element gives
// exactly 1; F is the lattice factor (empty logs mean F = 1)
SeriesResult dirichlet_pair(const GHom& g, const Rat& v, double beta,
                            const std::vector<double>& logs, double tol) {
  const double fmax = logs.empty() ? 1.0 : lattice_factor(logs, beta, 1);
  const long long cutoff = dirichlet_cutoff(g, beta, tol / (2.0 * fmax));
  KahanSum num_re, num_im, den;
  const bool trivial = v.is_zero();
  for (long long n = 1; n <= cutoff; ++n) {
    double w = std::exp(-beta * g.log_value(n));
    if (!logs.empty()) w *= lattice_factor(logs, beta, n);
    den.add(w);
    if (trivial) {
      num_re.add(w);
      num_im.add(0.0 * w);
    } else {
      const std::complex<double> ph = unit_phase((Rat(n) * v).mod1());
      num_re.add(ph.real() * w);
      num_im.add(ph.imag() * w);
    }
  }
  const double tail = (logs.empty() ? 1.0 : lattice_factor(logs, beta, cutoff + 1)) *
                      dirichlet_tail(g, beta, cutoff);
  return ratio_result({num_re.sum, num_im.sum}, tail, den.sum, tail, cutoff);
}

bool word_has_w(const GenWord& w) {
  for (const auto& gen : w)
    if (std::holds_alternative<GenW>(gen)) return true;
  return false;
}

RepIdx vacuum_idx(const Datum& d) {
  switch (rep_family(d)) {
    case RepFamily::Chain:
      return ChainIdx{1, std::vector<int>(static_cast<std::size_t>(lattice_rank(d)), 0)};
    case RepFamily::Grid:
      return GridIdx{1, 1};
    case RepFamily::Germ:
      return RatIdx{Rat(1)};
  }
  throw std::logic_error("vacuum_idx: unreachable");
}

// bound on the trace mass outside the window, infinite when not certifiable
double trace_missing_bound(const Datum& d, const GHom& g, double beta, const TruncSpec& t) {
  switch (rep_family(d)) {
    case RepFamily::Chain: {
      const auto logs = lattice_log_gens(d);
      if (logs.empty()) return dirichlet_tail(g, beta, t.n_max);
      double missing = lattice_factor(logs, beta, t.n_max + 1) * dirichlet_tail(g, beta, t.n_max);
      for (long long n = 1; n <= t.n_max; ++n) {
        const double base = std::exp(-beta * g.log_value(n));
        double pf = 1.0, pp = 1.0;
        for (double lg : logs) {
          const double x = std::exp(-beta * static_cast<double>(n) * lg);
          pf *= 1.0 / (1.0 - x);
          pp *= (1.0 - std::pow(x, t.depth + 1)) / (1.0 - x);
        }
        missing += base * std::max(0.0, pf - pp);
      }
      return missing;
    }
    case RepFamily::Grid:
      return dirichlet_tail(g, 2.0 * beta, t.n_max);
    case RepFamily::Germ:
      return kInf;
  }
  throw std::logic_error("trace_missing_bound: unreachable");
}

}  // namespace

double beta0_estimate(const GHom& g) {
  if (g.lambda.empty()) return 1.0;
  // dyadic block sums of g(n)^{-b} scale like 2^{j (beta0 - b)}, so the
  // ratio of consecutive blocks recovers the convergence exponent
  const double b = 2.0;
  const long long lo = 1LL << 14, mid = 1LL << 15, hi = 1LL << 16;
  KahanSum s1, s2;
  for (long long n = lo + 1; n <= mid; ++n) s1.add(std::exp(-b * g.log_value(n)));
  for (long long n = mid + 1; n <= hi; ++n) s2.add(std::exp(-b * g.log_value(n)));
  return b + std::log2(s2.sum / s1.sum);
}

SeriesResult partition_closed(const Datum& d, const GHom& g, double beta, double tol,
                              double beta0) {
  const double b0 = beta0 < 0.0 ? beta0_estimate(g) : beta0;
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: {
      if (!(beta > b0 + kBetaMargin))
        throw DivergentParameter("partition_closed: beta at or below the convergence exponent");
      return dirichlet_g(g, beta, tol);
    }
    case Kind::Weil: {
      if (!(beta > b0 + kBetaMargin))
        throw DivergentParameter("partition_closed: beta at or below the convergence exponent");
      return partition_function_form(d, g, beta, tol);
    }
    case Kind::AlgNumModel: {
      if (!(beta > std::max(b0, 1.5) + kBetaMargin))
        throw DivergentParameter("partition_closed: requires beta > max(beta0, 3/2)");
      // sum_n g(n)^{-beta} zeta(beta n); the zeta factors tend to 1, so the
      // outer tail is a plain Dirichlet tail with a uniform zeta bound
      KahanSum acc;
      double tails = 0.0;
      long long terms = 0;
      for (long long n = 1;; ++n) {
        const double w = std::exp(-beta * g.log_value(n));
        const double term_tol = 0.3 * tol / (static_cast<double>(n) * (n + 1.0));
        const SeriesResult z = riemann_zeta(beta * static_cast<double>(n),
                                            term_tol / std::max(w, 1e-300));
        acc.add(w * z.value.real());
        tails += w * z.tail_bound;
        terms += z.terms;
        if (n >= 2) {
          const double outer =
              zeta_upper(beta * static_cast<double>(n + 1)) * dirichlet_tail(g, beta, n);
          if (outer <= 0.4 * tol) {
            tails += outer;
            break;
          }
          if (n > 100'000)
            throw DivergentParameter("partition_closed: outer tail not certifiable");
        }
      }
      return {{acc.sum, 0.0}, tails, terms};
    }
    case Kind::PairSwitch:
    case Kind::RankTwo:
    case Kind::WeilHat: {
      if (!(2.0 * beta > b0 + kBetaMargin))
        throw DivergentParameter("partition_closed: beta at or below half the convergence exponent");
      return dirichlet_g(g, 2.0 * beta, tol);
    }
    case Kind::GermAlphaOne:
      throw DivergentParameter("partition_closed: the scale family has no convergent partition function");
  }
  throw std::logic_error("partition_closed: unreachable");
}

SeriesResult partition_function_form(const Datum& d, const GHom& g, double beta, double tol,
                                     long long n_limit) {
  if (d.kind != Kind::Weil && d.kind != Kind::AlgNumModel)
    throw KindMismatch("partition_function_form: needs a lattice chain");
  if (!(beta > 0.0)) throw DivergentParameter("partition_function_form: requires beta > 0");
  const std::vector<double> logs = lattice_log_gens(d);
  if (n_limit == 0 && !(beta * g_lower_exponent(g) > 1.0))
    throw DivergentParameter("partition_function_form: tail not certifiable at this beta");

  KahanSum acc;
  double tail = 0.0;
  long long n = 1;
  for (;; ++n) {
    if (n_limit > 0 && n > n_limit) {
      n = n_limit;
      break;
    }
    acc.add(std::exp(-beta * g.log_value(n)) * lattice_factor(logs, beta, n));
    if (n_limit == 0) {
      // the lattice factors decrease in n, so the one past the cutoff
      // dominates the whole remainder
      tail = lattice_factor(logs, beta, n + 1) * dirichlet_tail(g, beta, n);
      if (tail <= tol && n >= 4) break;
      if (n >= 50'000'000) break;
    }
  }
  if (n_limit > 0) tail = lattice_factor(logs, beta, n_limit + 1) * dirichlet_tail(g, beta, n_limit);
  return {{acc.sum, 0.0}, tail, n};
}

SeriesResult partition_polylog_form(const Datum& d, double beta, double tol) {
  if (d.kind != Kind::Weil) throw KindMismatch("partition_polylog_form: Weil kind only");
  if (!(beta > 1.0)) throw DivergentParameter("partition_polylog_form: requires beta > 1");
  const double x = std::pow(static_cast<double>(d.q), -beta / 2.0);
  KahanSum acc;
  double tails = 0.0;
  long long terms = 0;
  double xj = 1.0;
  for (int j = 0;; ++j) {
    const double inner_tol = 0.25 * tol * (j == 0 ? 1.0 : (1.0 - x) * xj);
    const SeriesResult li = polylog(beta, {xj, 0.0}, inner_tol);
    acc.add(li.value.real());
    tails += li.tail_bound;
    terms += li.terms;
    xj *= x;
    const double outer = zeta_upper(beta) * xj / (1.0 - x);
    if (outer <= 0.5 * tol) {
      tails += outer;
      break;
    }
  }
  return {{acc.sum, 0.0}, tails, terms};
}

SeriesResult partition_trace(const Datum& d, const GHom& g, double beta, const TruncSpec& t) {
  if (!(beta > 0.0)) throw DivergentParameter("partition_trace: requires beta > 0");
  KahanSum acc;
  long long cols = 0;
  switch (rep_family(d)) {
    case RepFamily::Chain: {
      const auto logs = lattice_log_gens(d);
      for (long long n = 1; n <= t.n_max; ++n) {
        const double base = std::exp(-beta * g.log_value(n));
        if (logs.empty()) {
          acc.add(base);
          ++cols;
          continue;
        }
        auto rec = [&](auto&& self, std::size_t r, double w) -> void {
          if (r == logs.size()) {
            acc.add(w);
            ++cols;
            return;
          }
          const double x = std::exp(-beta * static_cast<double>(n) * logs[r]);
          double cur = w;
          for (int j = 0; j <= t.depth; ++j) {
            self(self, r + 1, cur);
            cur *= x;
          }
        };
        rec(rec, 0, base);
      }
      break;
    }
    case RepFamily::Grid: {
      // the thermal sector is the diagonal cyclic subspace
      for (long long k = 1; k <= t.n_max; ++k) {
        acc.add(std::exp(-2.0 * beta * g.log_value(k)));
        ++cols;
      }
      break;
    }
    case RepFamily::Germ: {
      for_each_basis(d, t, [&](const RepIdx& idx) {
        acc.add(std::exp(-beta * g.log_value_rat(std::get<RatIdx>(idx).r)));
        ++cols;
      });
      break;
    }
  }
  return {{acc.sum, 0.0}, trace_missing_bound(d, g, beta, t), cols};
}

double partition_trace_factored(const Datum& d, const GHom& g, double beta, const TruncSpec& t) {
  if (rep_family(d) != RepFamily::Chain)
    throw KindMismatch("partition_trace_factored: chain families only");
  const auto logs = lattice_log_gens(d);
  KahanSum acc;
  for (long long n = 1; n <= t.n_max; ++n) {
    double w = std::exp(-beta * g.log_value(n));
    for (double lg : logs) {
      const double x = std::exp(-beta * static_cast<double>(n) * lg);
      double geo = 0.0, xk = 1.0;
      for (int j = 0; j <= t.depth; ++j) {
        geo += xk;
        xk *= x;
      }
      w *= geo;
    }
    acc.add(w);
  }
  return acc.sum;
}

SeriesResult gibbs_closed(const Datum& d, const GHom& g, const GroupElem& s, double beta,
                          double tol) {
  if (!elem_matches(d, s)) throw KindMismatch("gibbs_closed: element of a different group");
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: {
      const Rat v = iota_phase(d, s);
      if (g.lambda.empty()) {
        if (!(beta > 1.0 + kBetaMargin))
          throw DivergentParameter("gibbs_closed: requires beta > 1");
        const SeriesResult num = polylog(beta, unit_phase(v), 0.5 * tol);
        const SeriesResult den = polylog(beta, {1.0, 0.0}, 0.5 * tol);
        return ratio_result(num.value, num.tail_bound, den.value.real(), den.tail_bound,
                            num.terms + den.terms);
      }
      return dirichlet_pair(g, v, beta, {}, tol);
    }
    case Kind::Weil: {
      const auto& w = std::get<WeilElem>(s);
      if (w.m != 0) return {{0.0, 0.0}, 0.0, 0};
      const Rat v = iota_phase(d, s);
      if (!g.lambda.empty()) return dirichlet_pair(g, v, beta, lattice_log_gens(d), tol);
      if (!(beta > 1.0 + kBetaMargin))
        throw DivergentParameter("gibbs_closed: requires beta > 1");
      // paired ladders: num_j = Li_beta(iota q^{-j beta/2}), den_j at iota = 1
      const double x = std::pow(static_cast<double>(d.q), -beta / 2.0);
      const std::complex<double> iota = unit_phase(v);
      KahanSum num_re, num_im, den;
      double num_tail = 0.0, den_tail = 0.0;
      long long terms = 0;
      double xj = 1.0;
      for (int j = 0;; ++j) {
        const double inner_tol = 0.25 * tol * (j == 0 ? 1.0 : (1.0 - x) * xj);
        const SeriesResult nj = polylog(beta, iota * xj, inner_tol);
        const SeriesResult dj = polylog(beta, {xj, 0.0}, inner_tol);
        num_re.add(nj.value.real());
        num_im.add(nj.value.imag());
        den.add(dj.value.real());
        num_tail += nj.tail_bound;
        den_tail += dj.tail_bound;
        terms += nj.terms + dj.terms;
        xj *= x;
        const double outer = zeta_upper(beta) * xj / (1.0 - x);
        if (outer <= 0.25 * tol) {
          num_tail += outer;
          den_tail += outer;
          break;
        }
      }
      return ratio_result({num_re.sum, num_im.sum}, num_tail, den.sum, den_tail, terms);
    }
    case Kind::AlgNumModel: {
      const auto& a = std::get<AlgNumElem>(s);
      for (const Rat& e : a.exps)
        if (!e.is_zero()) return {{0.0, 0.0}, 0.0, 0};
      const double b0 = beta0_estimate(g);
      if (!(beta > std::max(b0, 1.5) + kBetaMargin))
        throw DivergentParameter("gibbs_closed: requires beta > max(beta0, 3/2)");
      // num = sum_n iota(s)^n g(n)^{-beta} zeta(beta n), den the same at s = 0,
      // sharing the zeta factors so the identity element is exact
      const Rat v = a.zeta;
      KahanSum num_re, num_im, den;
      double num_tail = 0.0, den_tail = 0.0;
      long long terms = 0;
      for (long long n = 1;; ++n) {
        const double w = std::exp(-beta * g.log_value(n));
        const double term_tol = 0.15 * tol / (static_cast<double>(n) * (n + 1.0));
        const SeriesResult z =
            riemann_zeta(beta * static_cast<double>(n), term_tol / std::max(w, 1e-300));
        const double wz = w * z.value.real();
        den.add(wz);
        den_tail += w * z.tail_bound;
        if (v.is_zero()) {
          num_re.add(wz);
          num_im.add(0.0 * wz);
        } else {
          const std::complex<double> ph = unit_phase((Rat(n) * v).mod1());
          num_re.add(ph.real() * wz);
          num_im.add(ph.imag() * wz);
        }
        num_tail += w * z.tail_bound;
        terms += z.terms;
        if (n >= 2) {
          const double outer =
              zeta_upper(beta * static_cast<double>(n + 1)) * dirichlet_tail(g, beta, n);
          if (outer <= 0.2 * tol) {
            num_tail += outer;
            den_tail += outer;
            break;
          }
          if (n > 100'000) throw DivergentParameter("gibbs_closed: outer tail not certifiable");
        }
      }
      return ratio_result({num_re.sum, num_im.sum}, num_tail, den.sum, den_tail, terms);
    }
    case Kind::PairSwitch:
    case Kind::RankTwo:
    case Kind::WeilHat: {
      const Rat v = grid_pair_sum(s).mod1();
      if (g.lambda.empty()) {
        if (!(2.0 * beta > 1.0 + kBetaMargin))
          throw DivergentParameter("gibbs_closed: requires beta > 1/2");
        const SeriesResult num = polylog(2.0 * beta, unit_phase(v), 0.5 * tol);
        const SeriesResult den = polylog(2.0 * beta, {1.0, 0.0}, 0.5 * tol);
        return ratio_result(num.value, num.tail_bound, den.value.real(), den.tail_bound,
                            num.terms + den.terms);
      }
      return dirichlet_pair(g, v, 2.0 * beta, {}, tol);
    }
    case Kind::GermAlphaOne:
      throw DivergentParameter("gibbs_closed: the scale family has no Gibbs states");
  }
  throw std::logic_error("gibbs_closed: unreachable");
}

SeriesResult gibbs_trace(const Datum& d, const GHom& g, const GenWord& w, double beta,
                         const TruncSpec& t, const EmbedSpec& emb) {
  if (!(beta > 0.0)) throw DivergentParameter("gibbs_trace: requires beta > 0");
  KahanSum num_re, num_im, den;
  long long cols = 0;
  const auto visit = [&](const RepIdx& idx) {
    const double weight = std::exp(-beta * ham_eigenvalue(d, g, idx));
    den.add(weight);
    ++cols;
    const ColResult c = apply_word(d, emb, t, w, idx);
    if (c.status == ColStatus::Hit && c.idx == idx) {
      const std::complex<double> m = c.mono.to_complex(d);
      num_re.add(m.real() * weight);
      num_im.add(m.imag() * weight);
    }
  };
  if (rep_family(d) == RepFamily::Grid) {
    for (long long k = 1; k <= t.n_max; ++k) visit(GridIdx{k, k});
  } else {
    for_each_basis(d, t, visit);
  }
  // isometric words have unit-bounded diagonal entries; W words do not, so
  // their truncation error is left unbounded
  const double missing = trace_missing_bound(d, g, beta, t);
  const double num_tail = word_has_w(w) ? kInf : missing;
  return ratio_result({num_re.sum, num_im.sum}, num_tail, den.sum, missing, cols);
}

SeriesResult gibbs_trace_elem(const Datum& d, const GHom& g, const GroupElem& s, double beta,
                              const TruncSpec& t) {
  return gibbs_trace(d, g, GenWord{GenS{s}}, beta, t, EmbedSpec{});
}

std::complex<double> ground_value(const Datum& d, const GroupElem& s, const EmbedSpec& emb) {
  if (!elem_matches(d, s)) throw KindMismatch("ground_value: element of a different group");
  const TruncSpec vac{1, 0};
  const RepIdx v = vacuum_idx(d);
  const ColResult c = apply_gen(d, emb, vac, GenS{s}, v);
  if (c.status != ColStatus::Hit || !(c.idx == v)) return {0.0, 0.0};
  return c.mono.to_complex(d);
}

double galois_pullback_check(const Datum& d, const GHom& g, const GaloisElem& gamma, double beta,
                             const TruncSpec& t, long long den_bound, int samples,
                             std::uint64_t seed) {
  const auto elems = sample_elements(d, den_bound, samples, seed);
  const EmbedSpec twisted{gamma, Rat(1)};
  // chains with free generators have no same-window closed form, so they are
  // compared trace against trace; everything else crosses the two routes
  const bool trace_both = d.kind == Kind::AlgNumModel || d.kind == Kind::GermAlphaOne;
  double dev = 0.0;
  for (const auto& s : elems) {
    const GroupElem gs = galois_apply(d, gamma, s);
    std::complex<double> lhs;
    if (trace_both)
      lhs = gibbs_trace(d, g, GenWord{GenS{gs}}, beta, t, EmbedSpec{}).value;
    else
      lhs = gibbs_closed(d, g, gs, beta, 1e-12).value;
    const std::complex<double> rhs = gibbs_trace(d, g, GenWord{GenS{s}}, beta, t, twisted).value;
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  return dev;
}

bool galois_ground_exact(const Datum& d, const GaloisElem& gamma, const GroupElem& s) {
  const TruncSpec vac{1, 0};
  const RepIdx v = vacuum_idx(d);
  const ColResult a = apply_gen(d, EmbedSpec{}, vac, GenS{galois_apply(d, gamma, s)}, v);
  const ColResult b = apply_gen(d, EmbedSpec{gamma, Rat(1)}, vac, GenS{s}, v);
  if (a.status != b.status) return false;
  if (a.status != ColStatus::Hit) return true;
  return a.idx == b.idx && a.mono == b.mono;
}

}  // namespace bc
