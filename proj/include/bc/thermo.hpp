#pragma once

#include <complex>
#include <cstdint>

#include "bc/datum.hpp"
#include "bc/ghom.hpp"
#include "bc/rep.hpp"
#include "bc/series.hpp"

namespace bc {

// strict thresholds on beta carry this safety margin
inline constexpr double kBetaMargin = 1e-3;

/**
 * Convergence exponent of sum_n g(n)^{-beta}, estimated by a doubling test
 * on dyadic block sums.  The arithmetic weight returns exactly 1.  A caller
 * with sharper knowledge can pass its own value to the partition routines.
 */
double beta0_estimate(const GHom& g);

// closed partition function of the datum at inverse temperature beta;
// beta0 < 0 means estimate it internally
SeriesResult partition_closed(const Datum& d, const GHom& g, double beta, double tol = 1e-10,
                              double beta0 = -1.0);

// sum_n g(n)^{-beta} prod_r 1/(1 - lambda_r^{-beta n}) for the lattice chains;
// n_limit > 0 sums exactly that many terms and reports the remainder bound
SeriesResult partition_function_form(const Datum& d, const GHom& g, double beta,
                                     double tol = 1e-10, long long n_limit = 0);

// sum_{j>=0} Li_beta(q^{-j beta/2}) for the Weil kind with arithmetic weight
SeriesResult partition_polylog_form(const Datum& d, double beta, double tol = 1e-10);

// Tr e^{-beta H} over the truncated basis; tail_bound covers the mass the
// window cannot see when that is certifiable, infinity otherwise
SeriesResult partition_trace(const Datum& d, const GHom& g, double beta, const TruncSpec& t);

// same window as partition_trace with the lattice directions factored into
// per-generator geometric partial sums
double partition_trace_factored(const Datum& d, const GHom& g, double beta, const TruncSpec& t);

// Gibbs state on the group element s via the per-kind closed formula
SeriesResult gibbs_closed(const Datum& d, const GHom& g, const GroupElem& s, double beta,
                          double tol = 1e-8);

// Tr(R(w) e^{-beta H}) / Tr(e^{-beta H}) over the truncated basis
SeriesResult gibbs_trace(const Datum& d, const GHom& g, const GenWord& w, double beta,
                         const TruncSpec& t, const EmbedSpec& emb = {});

SeriesResult gibbs_trace_elem(const Datum& d, const GHom& g, const GroupElem& s, double beta,
                              const TruncSpec& t);

// vacuum expectation of S(s): iota(s) when the scale part is trivial, else 0
std::complex<double> ground_value(const Datum& d, const GroupElem& s, const EmbedSpec& emb = {});

/**
 * Max over sampled s of |phi(tau_gamma(s)) - phi_gamma(s)| where the left
 * side goes through the closed formula on gamma(s) and the right through the
 * trace with the embedding twisted by gamma.  The lattice chains with free
 * generators compare trace against trace at the same window instead, since
 * their closed form sums over all primes at once.
 */
double galois_pullback_check(const Datum& d, const GHom& g, const GaloisElem& gamma, double beta,
                             const TruncSpec& t, long long den_bound, int samples,
                             std::uint64_t seed);

// zero-temperature version: exact equality of vacuum phases as rationals
bool galois_ground_exact(const Datum& d, const GaloisElem& gamma, const GroupElem& s);

}  // namespace bc
