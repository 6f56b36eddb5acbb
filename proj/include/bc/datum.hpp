#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bc/errors.hpp"
#include "bc/group_elem.hpp"

namespace bc {

/**
 * One Bost-Connes datum: an abelian group Sigma together with the
 * semigroup action sigma_n and its kernel-size character alpha.
 *
 * The group itself is implicit in `kind`; the remaining fields hold the
 * per-kind parameters.  `q` is the base for the Weil-style kinds and must
 * be a prime power >= 2 there (it is ignored elsewhere).  `generators`
 * lists the free multiplicative generators lambda_r > 1 for AlgNumModel;
 * its length is the rank R.
 */
struct Datum {
  Kind kind = Kind::QmodZ;
  long long q = 0;
  std::vector<Rat> generators;

  int rank() const { return static_cast<int>(generators.size()); }
};

// unit u acting on level-N torsion, plus a sign on sqrt(q) for Weil kinds
struct GaloisElem {
  long long level = 1;
  long long unit = 1;
  int sqrtq_sign = +1;
};

struct CheckReport {
  long long checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool ok() const { return failures.empty(); }
};

Datum make_datum(Kind kind, long long q = 0, std::vector<Rat> generators = {});

bool elem_matches(const Datum& d, const GroupElem& s);
GroupElem identity_elem(const Datum& d);
bool is_identity(const Datum& d, const GroupElem& s);
GroupElem group_mul(const Datum& d, const GroupElem& x, const GroupElem& y);
GroupElem group_inv(const Datum& d, const GroupElem& x);

// sigma_n: endomorphism of Sigma, n >= 1
GroupElem sigma_apply(const Datum& d, long long n, const GroupElem& s);

// alpha(n) = #ker(sigma_n); multiplicative in n
long long alpha_of(const Datum& d, long long n);

// membership in Sigma_n = image(sigma_n)
bool in_image(const Datum& d, long long n, const GroupElem& s);

// full preimage sigma_n^{-1}(s), sorted; throws NotInImage when empty
std::vector<GroupElem> rho_fiber(const Datum& d, long long n, const GroupElem& s);

// true when q is an even power of a prime, so sqrt(q) is rational
bool is_even_prime_power(long long q);

GroupElem galois_apply(const Datum& d, const GaloisElem& g, const GroupElem& s);

WeilElem weil_pack(const Rat& zeta, long long m, long long q);
std::pair<Rat, long long> weil_unpack(const WeilElem& w);

// datum laws for all n, m <= n_max on deterministically sampled elements
CheckReport check_datum(const Datum& d, long long n_max);

// deterministic sample of group elements with torsion denominators <= den_bound
std::vector<GroupElem> sample_elements(const Datum& d, long long den_bound, int count,
                                       std::uint64_t seed);

long long mod_inverse(long long u, long long n);

}  // namespace bc
