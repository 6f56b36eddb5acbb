#pragma once

#include <map>

#include "bc/cyclotomic.hpp"
#include "bc/datum.hpp"

namespace bc {

/**
 * Element of the rational group algebra Q[Sigma]: a finite formal sum of
 * group elements with rational coefficients.  Zero coefficients are never
 * stored, so equality of the term maps is equality in the algebra.
 */
struct AlgebraElem {
  std::map<GroupElem, Rat, GroupLess> terms;

  void add_term(const GroupElem& s, const Rat& c);
  AlgebraElem& operator+=(const AlgebraElem& other);
  friend AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b) {
    a += b;
    return a;
  }
  AlgebraElem scaled(const Rat& c) const;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const AlgebraElem&, const AlgebraElem&) = default;
};

AlgebraElem algebra_unit(const Datum& d, const GroupElem& s);

// convolution product induced by the group law
AlgebraElem algebra_mul(const Datum& d, const AlgebraElem& a, const AlgebraElem& b);

// pushforward along sigma_n
AlgebraElem sigma_lin(const Datum& d, long long n, const AlgebraElem& a);

// additive section: [s] -> sum over the fiber of sigma_n; throws NotInImage
AlgebraElem rho_lin(const Datum& d, long long n, const AlgebraElem& a);

// sigma_n o rho_n = alpha(n) * id
bool check_sigma_rho(const Datum& d, long long n, const AlgebraElem& a);

AlgebraElem galois_push(const Datum& d, const GaloisElem& g, const AlgebraElem& a);

// torsion phase t with iota(s) = e^{2 pi i t} * (free part); chain kinds only
Rat iota_phase(const Datum& d, const GroupElem& s);

// exponents of the free part of iota(s) over the datum's generator lattice
std::vector<Rat> iota_norm_exps(const Datum& d, const GroupElem& s);

struct ZeroSumResult {
  Cyclo lhs;  // (1/alpha(n)) * sum of iota(s')^{alpha(m)} over the fiber
  Cyclo rhs;  // iota(s)^{alpha(m)/alpha(n)} when alpha(n) | alpha(m), else 0
  bool norms_match = false;

  bool holds() const { return norms_match && lhs == rhs; }
};

// averaged character sum over a sigma_n fiber, exact in a cyclotomic field
ZeroSumResult zero_sum_identity(const Datum& d, long long n, long long m, const GroupElem& s);

}  // namespace bc
