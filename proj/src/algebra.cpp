#include "bc/algebra.hpp"

#include <stdexcept>

namespace bc {

void AlgebraElem::add_term(const GroupElem& s, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

AlgebraElem& AlgebraElem::operator+=(const AlgebraElem& other) {
  for (const auto& [s, c] : other.terms) add_term(s, c);
  return *this;
}

AlgebraElem AlgebraElem::scaled(const Rat& c) const {
  AlgebraElem out;
  if (c.is_zero()) return out;
  for (const auto& [s, x] : terms) out.terms.emplace(s, x * c);
  return out;
}

AlgebraElem algebra_unit(const Datum& d, const GroupElem& s) {
  if (!elem_matches(d, s)) throw KindMismatch("element does not belong to this datum");
  AlgebraElem a;
  a.add_term(s, Rat(1));
  return a;
}

AlgebraElem algebra_mul(const Datum& d, const AlgebraElem& a, const AlgebraElem& b) {
  AlgebraElem out;
  for (const auto& [s, cs] : a.terms) {
    for (const auto& [t, ct] : b.terms) out.add_term(group_mul(d, s, t), cs * ct);
  }
  return out;
}

AlgebraElem sigma_lin(const Datum& d, long long n, const AlgebraElem& a) {
  AlgebraElem out;
  for (const auto& [s, c] : a.terms) out.add_term(sigma_apply(d, n, s), c);
  return out;
}

AlgebraElem rho_lin(const Datum& d, long long n, const AlgebraElem& a) {
  AlgebraElem out;
  for (const auto& [s, c] : a.terms) {
    for (const auto& f : rho_fiber(d, n, s)) out.add_term(f, c);
  }
  return out;
}

bool check_sigma_rho(const Datum& d, long long n, const AlgebraElem& a) {
  return sigma_lin(d, n, rho_lin(d, n, a)) == a.scaled(Rat(alpha_of(d, n)));
}

AlgebraElem galois_push(const Datum& d, const GaloisElem& g, const AlgebraElem& a) {
  AlgebraElem out;
  for (const auto& [s, c] : a.terms) out.add_term(galois_apply(d, g, s), c);
  return out;
}

namespace {

bool has_power_action(const Datum& d) {
  // sigma_n multiplies by n and alpha(n) = n exactly for these kinds
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero:
    case Kind::Weil:
    case Kind::AlgNumModel: return true;
    default: return false;
  }
}

Cyclo phase_root(const Rat& t) {
  const Rat r = t.mod1();
  return Cyclo::root(r.den, r);
}

}  // namespace

Rat iota_phase(const Datum& d, const GroupElem& s) {
  if (!elem_matches(d, s)) throw KindMismatch("element does not belong to this datum");
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: return std::get<QmodZElem>(s).v;
    case Kind::Weil: return std::get<WeilElem>(s).zeta;
    case Kind::AlgNumModel: return std::get<AlgNumElem>(s).zeta;
    default:
      throw KindMismatch("no distinguished torsion phase for kind " + kind_name(d.kind));
  }
}

std::vector<Rat> iota_norm_exps(const Datum& d, const GroupElem& s) {
  if (!elem_matches(d, s)) throw KindMismatch("element does not belong to this datum");
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: return {};
    case Kind::Weil:
      // |iota(zeta, m)| = q^{m/2}, exponent m in units of the progression
      // generator sqrt(q)
      return {Rat(std::get<WeilElem>(s).m)};
    case Kind::AlgNumModel: return std::get<AlgNumElem>(s).exps;
    default:
      throw KindMismatch("no distinguished torsion phase for kind " + kind_name(d.kind));
  }
}

ZeroSumResult zero_sum_identity(const Datum& d, long long n, long long m, const GroupElem& s) {
  if (!has_power_action(d)) {
    throw KindMismatch("identity requires sigma_n to act as the alpha(n)-th power map");
  }
  if (n < 1 || m < 1) throw std::invalid_argument("indices must be >= 1");
  const long long an = alpha_of(d, n);
  const long long am = alpha_of(d, m);
  const auto fiber = rho_fiber(d, n, s);

  ZeroSumResult res;
  Cyclo sum;  // level-1 zero
  bool norms_ok = true;
  std::vector<Rat> expect_norm = iota_norm_exps(d, s);
  for (auto& e : expect_norm) e = e * Rat(am) / Rat(an);
  for (const auto& f : fiber) {
    sum += phase_root(iota_phase(d, f) * Rat(am));
    auto ne = iota_norm_exps(d, f);
    for (auto& e : ne) e *= Rat(am);
    if (ne != expect_norm) norms_ok = false;
  }
  res.lhs = sum.scaled(BigRat(1) / BigRat(an));
  if (am % an == 0) {
    res.rhs = phase_root(iota_phase(d, s) * Rat(am / an));
  } else {
    res.rhs = Cyclo{};
  }
  res.norms_match = norms_ok;
  return res;
}

}  // namespace bc
