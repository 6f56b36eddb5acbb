#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bc/algebra.hpp"

namespace bc {

/**
 * Finite-dimensional Sigma-graded vector space, recorded by the dimension of
 * each weight piece.  Zero dimensions are never stored.
 */
struct GradedSpace {
  std::map<GroupElem, int, GroupLess> dims;

  void add(const GroupElem& s, int dim);
  int total_dim() const;
  GradedSpace scaled(int factor) const;
  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;
};

// pushforward on gradings: the weight-s piece lands in weight sigma_n(s)
GradedSpace functor_sigma_cat(const Datum& d, long long n, const GradedSpace& v);

// pullback on gradings: each fiber point receives the full downstairs piece
GradedSpace functor_rho_cat(const Datum& d, long long n, const GradedSpace& v);

/**
 * Graded automorphism presented concretely: a dim x dim matrix over a
 * cyclotomic field together with the declared eigenvalue list, one group
 * element per basis vector, eigenvalue iota(eig).
 */
struct AutPair {
  int dim = 0;
  std::vector<Cyclo> mat;  // row-major, dim * dim entries
  std::vector<GroupElem> eigs;
};

// diagonal automorphism acting by iota(s) on each graded piece
AutPair grading_to_aut(const Datum& d, const GradedSpace& v);

// recover the grading as eigenspace dimensions, exactly; NotDiagonalizable
// when the declared eigenvalues do not fill the space
GradedSpace eig_to_grading(const Datum& d, const AutPair& a);

// floating-point route through a dense eigensolver, tolerance on eigenvalue
// matching and rank decisions
GradedSpace eig_to_grading_float(const Datum& d, const AutPair& a, double tol = 1e-10);

// n-th power map on the automorphism, sigma_n on the grading
AutPair frobenius(const Datum& d, long long n, const AutPair& a);

// block companion construction splitting the eigenvalues into n-th roots
AutPair verschiebung(const Datum& d, long long n, const AutPair& a);

// monic characteristic polynomial, ascending coefficients, exact
std::vector<Cyclo> char_poly(const std::vector<Cyclo>& mat, int dim);

Cyclo eval_poly(const std::vector<Cyclo>& coeffs, const Cyclo& x);

// the companion block over a single weight s has characteristic polynomial
// lambda^n - iota(s), with the fiber phases as its n distinct roots
bool check_verschiebung_diag(const Datum& d, long long n, const GroupElem& s);

// Hom dimension between integer-graded orbit sums: direct shift pairing vs
// residue-class folding; both counts are returned and must agree
std::pair<long long, long long> orbit_hom_dim(long long n, const std::map<long long, int>& v,
                                              const std::map<long long, int>& w);

// exact rank over the cyclotomic field
int cyclo_rank(std::vector<Cyclo> mat, int rows, int cols);

}  // namespace bc
