#pragma once

#include <complex>
#include <compare>
#include <functional>
#include <variant>

#include "bc/algebra.hpp"
#include "bc/ghom.hpp"

namespace bc {

/**
 * Truncation window for the concrete Hilbert spaces.  Chain bases keep the
 * semigroup coordinate in [1, n_max] and every lattice coordinate in
 * [-depth, 0]; grid bases keep both coordinates in [1, n_max]; the scale
 * basis keeps numerator and denominator of the index in [1, n_max].
 */
struct TruncSpec {
  long long n_max = 16;
  int depth = 8;
};

// embedding data: a unit pre-twist applied to group elements before the
// canonical character, plus the character slope for the scale family
struct EmbedSpec {
  GaloisElem twist{1, 1, +1};
  Rat theta{1, 1};
};

enum class RepFamily { Chain, Grid, Germ };
RepFamily rep_family(const Datum& d);

// number of lattice coordinates carried by a chain basis vector
int lattice_rank(const Datum& d);
// natural logarithms of the progression generator values, one per coordinate
std::vector<double> lattice_log_gens(const Datum& d);
// norm shift of s in generator units; entries may be non-integral
std::vector<Rat> norm_shift(const Datum& d, const GroupElem& s);

struct ChainIdx {
  long long n = 1;
  std::vector<int> k;
  friend auto operator<=>(const ChainIdx&, const ChainIdx&) = default;
};

struct GridIdx {
  long long a = 1, b = 1;
  friend auto operator<=>(const GridIdx&, const GridIdx&) = default;
};

struct RatIdx {
  Rat r{1, 1};
  friend auto operator<=>(const RatIdx&, const RatIdx&) = default;
};

using RepIdx = std::variant<ChainIdx, GridIdx, RatIdx>;
bool idx_less(const RepIdx& x, const RepIdx& y);
std::string idx_str(const RepIdx& i);

/**
 * Exact scalar attached to one basis-to-basis matrix entry: a rational
 * coefficient, a root-of-unity phase, and a monomial in the progression
 * generators with rational exponents.
 */
struct Mono {
  BigRat coeff{1};
  Rat phase{0, 1};
  std::vector<Rat> fexp;

  // exponent vectors compare as finitely supported sequences
  friend bool operator==(const Mono& a, const Mono& b);
  std::complex<double> to_complex(const Datum& d) const;
};

// one-generator words of the represented algebra
struct GenS {
  GroupElem s;
};
struct GenMu {
  long long n = 1;
};
struct GenMuStar {
  long long n = 1;
};
// W(lambda) with lambda = prod of generator^{fexp_r}
struct GenW {
  std::vector<Rat> fexp;
};
struct GenGridMu {
  long long n = 1, m = 1;
};
struct GenGridMuStar {
  long long n = 1, m = 1;
};
// invertible scale shift, index in Q_{>0}; the scale family only
struct GenMuRat {
  Rat s{1, 1};
};

using Gen = std::variant<GenS, GenMu, GenMuStar, GenW, GenGridMu, GenGridMuStar, GenMuRat>;
using GenWord = std::vector<Gen>;
std::string word_str(const GenWord& w);

enum class ColStatus { Hit, Zero, OutOfBounds };

struct ColResult {
  ColStatus status = ColStatus::Zero;
  RepIdx idx{};
  Mono mono{};
};

// action of one generator on one basis vector, exact
ColResult apply_gen(const Datum& d, const EmbedSpec& emb, const TruncSpec& t, const Gen& g,
                    const RepIdx& idx);

// generators compose right to left; Zero and OutOfBounds short-circuit
ColResult apply_word(const Datum& d, const EmbedSpec& emb, const TruncSpec& t, const GenWord& w,
                     const RepIdx& idx);

// full truncated basis, ordered; throws std::length_error over the cap
std::vector<RepIdx> enumerate_basis(const Datum& d, const TruncSpec& t,
                                    std::size_t cap = 4'000'000);

// streaming enumeration without materializing the basis
void for_each_basis(const Datum& d, const TruncSpec& t,
                    const std::function<void(const RepIdx&)>& f);

// energy of a basis vector: chain log g(n) - n sum_r k_r log gen_r,
// grid log g(a) + log g(b), scale log g(num) - log g(den)
double ham_eigenvalue(const Datum& d, const GHom& g, const RepIdx& idx);

// indices of exact energy zero; one-dimensional in every concrete family
std::vector<RepIdx> ham_kernel(const Datum& d, const GHom& g, const TruncSpec& t);

// W-eigenvalue exponent of a basis vector: alpha(n), a*b, or the scale index
Rat w_exponent(const Datum& d, const RepIdx& idx);

struct RelationReport {
  long long interior = 0;
  long long boundary = 0;
  long long instances = 0;
  long long skipped = 0;  // relation instances never started before the budget ran out
  std::vector<std::string> failures;

  bool ok() const { return failures.empty() && interior > 0 && skipped == 0; }
};

// defining relations on every interior column of the truncation, exact;
// budget_seconds > 0 stops starting new relation instances past the deadline
RelationReport check_relations(const Datum& d, const EmbedSpec& emb, const TruncSpec& t,
                               long long gen_bound, long long den_bound, std::uint64_t seed,
                               double budget_seconds = 0.0);

// range and support projections: mu mu* and mu* mu act as 0/1 diagonals with
// the kind's support pattern
RelationReport check_projections(const Datum& d, const EmbedSpec& emb, const TruncSpec& t,
                                 long long gen_bound);

/**
 * One generator of the algebra together with its behavior under the time
 * flow: sigma_t multiplies the generator by e^{i t log_scalar} and by the
 * target-dependent factor e^{-i t w_exponent(target) * log_norm}.
 */
struct EvolvedGen {
  Gen atom;
  double log_scalar = 0.0;
  double log_norm = 0.0;
};

std::vector<EvolvedGen> time_evolve(const Datum& d, const GHom& g, const GenWord& w);

// columns of the represented sigma_t(w), numeric
struct EvolvedCol {
  ColStatus status = ColStatus::Zero;
  RepIdx idx{};
  std::complex<double> value{0.0, 0.0};
};
EvolvedCol apply_evolved(const Datum& d, const EmbedSpec& emb, const TruncSpec& t,
                         const std::vector<EvolvedGen>& ew, double time, const RepIdx& idx);

// max |R(sigma_t(w)) - e^{itH} R(w) e^{-itH}| over interior columns
double covariance_max_dev(const Datum& d, const EmbedSpec& emb, const TruncSpec& t,
                          const GHom& g, const GenWord& w, double time);

// R restricted to words in the diagonal subalgebra never leaves the diagonal
RelationReport check_diagonal_preserved(const Datum& d, const EmbedSpec& emb, const TruncSpec& t,
                                        long long gen_bound, long long den_bound,
                                        std::uint64_t seed);

// push a word through a symmetry: group elements move, everything else stays
GenWord galois_word(const Datum& d, const GaloisElem& g, const GenWord& w);

// composite embedding: first apply g, then the embedding twist
EmbedSpec embed_compose(const EmbedSpec& emb, const GaloisElem& g);

// R_emb(tau_g(w)) equals R_{emb o g}(w) column by column, exactly
bool check_symmetry_conjugate(const Datum& d, const EmbedSpec& emb, const GaloisElem& g,
                              const TruncSpec& t, const GenWord& w);

}  // namespace bc
