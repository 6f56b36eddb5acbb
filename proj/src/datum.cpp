#include "bc/datum.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bc {

namespace {

bool is_prime_power(long long q, long long* prime_out = nullptr) {
  if (q < 2) return false;
  for (long long p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      if (prime_out) *prime_out = p;
      return q == 1;
    }
  }
  if (prime_out) *prime_out = q;
  return true;
}

Rat mod2(const Rat& x) { return x.mod(2); }

std::vector<Rat> torsion_fiber(const Rat& v, long long n, long long modulus) {
  // preimages of v under multiplication by n inside Q/(modulus Z)
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long long j = 0; j < n; ++j) {
    out.push_back(((v + Rat(modulus) * Rat(j)) / Rat(n)).mod(modulus));
  }
  return out;
}

[[noreturn]] void wrong_elem(const Datum& d) {
  throw KindMismatch("element does not belong to the " + kind_name(d.kind) + " datum");
}

void require_level(const Rat& t, long long modulus, long long level) {
  // unit action on x mod modulus is defined when modulus*den(x) divides level
  long long need = checked_mul(modulus, t.den);
  if (need == 0) need = 1;
  if (level % need != 0) {
    std::ostringstream os;
    os << "torsion element " << t.str() << " (mod " << modulus << ") needs level divisible by "
       << need << ", got " << level;
    throw LevelTooSmall(os.str());
  }
}

Rat unit_act(const Rat& t, long long modulus, const GaloisElem& g) {
  require_level(t, modulus, g.level);
  return (Rat(g.unit) * t).mod(modulus);
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::QmodZ: return "qmodz";
    case Kind::PairSwitch: return "pair_switch";
    case Kind::AlgNumModel: return "algnum_model";
    case Kind::WeilZero: return "weil_zero";
    case Kind::Weil: return "weil";
    case Kind::WeilHat: return "weil_hat";
    case Kind::GermAlphaOne: return "germ_alpha_one";
    case Kind::RankTwo: return "rank_two";
  }
  throw std::logic_error("unknown kind");
}

Kind kind_from_name(const std::string& name) {
  if (name == "qmodz") return Kind::QmodZ;
  if (name == "pair_switch") return Kind::PairSwitch;
  if (name == "algnum_model") return Kind::AlgNumModel;
  if (name == "weil_zero") return Kind::WeilZero;
  if (name == "weil") return Kind::Weil;
  if (name == "weil_hat") return Kind::WeilHat;
  if (name == "germ_alpha_one") return Kind::GermAlphaOne;
  if (name == "rank_two") return Kind::RankTwo;
  throw std::invalid_argument("unknown datum kind: " + name);
}

bool GroupLess::operator()(const GroupElem& x, const GroupElem& y) const {
  if (x.index() != y.index()) return x.index() < y.index();
  return std::visit(
      [&y](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(y);
        if constexpr (std::is_same_v<T, QmodZElem>) {
          return a.v < b.v;
        } else if constexpr (std::is_same_v<T, PairElem>) {
          if (a.a != b.a) return a.a < b.a;
          return a.b < b.b;
        } else if constexpr (std::is_same_v<T, WeilElem>) {
          if (a.q != b.q) return a.q < b.q;
          if (a.m != b.m) return a.m < b.m;
          return a.zeta < b.zeta;
        } else if constexpr (std::is_same_v<T, WeilHatElem>) {
          if (a.q != b.q) return a.q < b.q;
          if (a.zeta != b.zeta) return a.zeta < b.zeta;
          return a.r < b.r;
        } else if constexpr (std::is_same_v<T, AlgNumElem>) {
          if (a.zeta != b.zeta) return a.zeta < b.zeta;
          return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(),
                                              b.exps.end());
        } else {
          return a.a < b.a;
        }
      },
      x);
}

std::string elem_str(const GroupElem& s) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, QmodZElem>) {
          return e.v.str();
        } else if constexpr (std::is_same_v<T, PairElem>) {
          return "(" + e.a.str() + ";" + e.b.str() + ")";
        } else if constexpr (std::is_same_v<T, WeilElem>) {
          return "(" + e.zeta.str() + ";" + std::to_string(e.m) + ")";
        } else if constexpr (std::is_same_v<T, WeilHatElem>) {
          return "(" + e.zeta.str() + ";" + e.r.str() + ")";
        } else if constexpr (std::is_same_v<T, AlgNumElem>) {
          std::string out = "(" + e.zeta.str();
          for (const auto& x : e.exps) out += ";" + x.str();
          return out + ")";
        } else {
          return e.a.str();
        }
      },
      s);
}

Datum make_datum(Kind kind, long long q, std::vector<Rat> generators) {
  Datum d;
  d.kind = kind;
  d.q = q;
  d.generators = std::move(generators);
  switch (kind) {
    case Kind::Weil:
    case Kind::WeilZero:
    case Kind::WeilHat:
      if (!is_prime_power(q)) {
        throw std::invalid_argument("base q must be a prime power >= 2, got " +
                                    std::to_string(q));
      }
      break;
    case Kind::AlgNumModel:
      if (d.generators.empty()) throw std::invalid_argument("rank must be >= 1");
      for (const auto& lam : d.generators) {
        if (!(lam > Rat(1))) {
          throw std::invalid_argument("free generators must exceed 1, got " + lam.str());
        }
      }
      break;
    default:
      break;
  }
  return d;
}

bool elem_matches(const Datum& d, const GroupElem& s) {
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: {
      const auto* e = std::get_if<QmodZElem>(&s);
      return e && Rat(0) <= e->v && e->v < Rat(1);
    }
    case Kind::PairSwitch:
    case Kind::RankTwo: {
      const auto* e = std::get_if<PairElem>(&s);
      return e && Rat(0) <= e->a && e->a < Rat(1) && Rat(0) <= e->b && e->b < Rat(1);
    }
    case Kind::Weil: {
      const auto* e = std::get_if<WeilElem>(&s);
      return e && e->q == d.q && Rat(0) <= e->zeta && e->zeta < Rat(1);
    }
    case Kind::WeilHat: {
      const auto* e = std::get_if<WeilHatElem>(&s);
      return e && e->q == d.q && Rat(0) <= e->zeta && e->zeta < Rat(1) && Rat(0) <= e->r &&
             e->r < Rat(2);
    }
    case Kind::AlgNumModel: {
      const auto* e = std::get_if<AlgNumElem>(&s);
      return e && static_cast<int>(e->exps.size()) == d.rank() && Rat(0) <= e->zeta &&
             e->zeta < Rat(1);
    }
    case Kind::GermAlphaOne:
      return std::holds_alternative<GermElem>(s);
  }
  return false;
}

GroupElem identity_elem(const Datum& d) {
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: return QmodZElem{Rat(0)};
    case Kind::PairSwitch:
    case Kind::RankTwo: return PairElem{Rat(0), Rat(0)};
    case Kind::Weil: return WeilElem{Rat(0), 0, d.q};
    case Kind::WeilHat: return WeilHatElem{Rat(0), Rat(0), d.q};
    case Kind::AlgNumModel:
      return AlgNumElem{Rat(0), std::vector<Rat>(static_cast<std::size_t>(d.rank()), Rat(0))};
    case Kind::GermAlphaOne: return GermElem{Rat(0)};
  }
  throw std::logic_error("unknown kind");
}

bool is_identity(const Datum& d, const GroupElem& s) {
  if (!elem_matches(d, s)) wrong_elem(d);
  return s == identity_elem(d);
}

GroupElem group_mul(const Datum& d, const GroupElem& x, const GroupElem& y) {
  if (!elem_matches(d, x) || !elem_matches(d, y)) wrong_elem(d);
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero:
      return QmodZElem{(std::get<QmodZElem>(x).v + std::get<QmodZElem>(y).v).mod1()};
    case Kind::PairSwitch:
    case Kind::RankTwo: {
      const auto& a = std::get<PairElem>(x);
      const auto& b = std::get<PairElem>(y);
      return PairElem{(a.a + b.a).mod1(), (a.b + b.b).mod1()};
    }
    case Kind::Weil: {
      const auto& a = std::get<WeilElem>(x);
      const auto& b = std::get<WeilElem>(y);
      return WeilElem{(a.zeta + b.zeta).mod1(), a.m + b.m, d.q};
    }
    case Kind::WeilHat: {
      const auto& a = std::get<WeilHatElem>(x);
      const auto& b = std::get<WeilHatElem>(y);
      return WeilHatElem{(a.zeta + b.zeta).mod1(), mod2(a.r + b.r), d.q};
    }
    case Kind::AlgNumModel: {
      const auto& a = std::get<AlgNumElem>(x);
      const auto& b = std::get<AlgNumElem>(y);
      AlgNumElem out{(a.zeta + b.zeta).mod1(), a.exps};
      for (std::size_t i = 0; i < out.exps.size(); ++i) out.exps[i] += b.exps[i];
      return out;
    }
    case Kind::GermAlphaOne:
      return GermElem{std::get<GermElem>(x).a + std::get<GermElem>(y).a};
  }
  throw std::logic_error("unknown kind");
}

GroupElem group_inv(const Datum& d, const GroupElem& x) {
  if (!elem_matches(d, x)) wrong_elem(d);
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: return QmodZElem{(-std::get<QmodZElem>(x).v).mod1()};
    case Kind::PairSwitch:
    case Kind::RankTwo: {
      const auto& a = std::get<PairElem>(x);
      return PairElem{(-a.a).mod1(), (-a.b).mod1()};
    }
    case Kind::Weil: {
      const auto& a = std::get<WeilElem>(x);
      return WeilElem{(-a.zeta).mod1(), -a.m, d.q};
    }
    case Kind::WeilHat: {
      const auto& a = std::get<WeilHatElem>(x);
      return WeilHatElem{(-a.zeta).mod1(), mod2(-a.r), d.q};
    }
    case Kind::AlgNumModel: {
      const auto& a = std::get<AlgNumElem>(x);
      AlgNumElem out{(-a.zeta).mod1(), a.exps};
      for (auto& e : out.exps) e = -e;
      return out;
    }
    case Kind::GermAlphaOne: return GermElem{-std::get<GermElem>(x).a};
  }
  throw std::logic_error("unknown kind");
}

GroupElem sigma_apply(const Datum& d, long long n, const GroupElem& s) {
  if (n < 1) throw std::invalid_argument("sigma index must be >= 1");
  if (!elem_matches(d, s)) wrong_elem(d);
  const Rat nn(n);
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: return QmodZElem{(nn * std::get<QmodZElem>(s).v).mod1()};
    case Kind::PairSwitch:
    case Kind::RankTwo: {
      const auto& e = std::get<PairElem>(s);
      return PairElem{(nn * e.a).mod1(), (nn * e.b).mod1()};
    }
    case Kind::Weil: {
      const auto& e = std::get<WeilElem>(s);
      return WeilElem{(nn * e.zeta).mod1(), checked_mul(n, e.m), d.q};
    }
    case Kind::WeilHat: {
      const auto& e = std::get<WeilHatElem>(s);
      return WeilHatElem{(nn * e.zeta).mod1(), mod2(nn * e.r), d.q};
    }
    case Kind::AlgNumModel: {
      const auto& e = std::get<AlgNumElem>(s);
      AlgNumElem out{(nn * e.zeta).mod1(), e.exps};
      for (auto& x : out.exps) x *= nn;
      return out;
    }
    case Kind::GermAlphaOne: return GermElem{nn * std::get<GermElem>(s).a};
  }
  throw std::logic_error("unknown kind");
}

long long alpha_of(const Datum& d, long long n) {
  if (n < 1) throw std::invalid_argument("sigma index must be >= 1");
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero:
    case Kind::Weil:
    case Kind::AlgNumModel: return n;
    case Kind::PairSwitch:
    case Kind::RankTwo:
    case Kind::WeilHat: return checked_mul(n, n);
    case Kind::GermAlphaOne: return 1;
  }
  throw std::logic_error("unknown kind");
}

bool in_image(const Datum& d, long long n, const GroupElem& s) {
  if (n < 1) throw std::invalid_argument("sigma index must be >= 1");
  if (!elem_matches(d, s)) wrong_elem(d);
  if (d.kind == Kind::Weil) return std::get<WeilElem>(s).m % n == 0;
  return true;
}

std::vector<GroupElem> rho_fiber(const Datum& d, long long n, const GroupElem& s) {
  if (n < 1) throw std::invalid_argument("sigma index must be >= 1");
  if (!elem_matches(d, s)) wrong_elem(d);
  std::vector<GroupElem> out;
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: {
      for (const auto& t : torsion_fiber(std::get<QmodZElem>(s).v, n, 1)) {
        out.push_back(QmodZElem{t});
      }
      break;
    }
    case Kind::PairSwitch:
    case Kind::RankTwo: {
      const auto& e = std::get<PairElem>(s);
      for (const auto& ta : torsion_fiber(e.a, n, 1)) {
        for (const auto& tb : torsion_fiber(e.b, n, 1)) out.push_back(PairElem{ta, tb});
      }
      break;
    }
    case Kind::Weil: {
      const auto& e = std::get<WeilElem>(s);
      if (e.m % n != 0) {
        throw NotInImage("weight " + std::to_string(e.m) + " is not a multiple of " +
                         std::to_string(n));
      }
      for (const auto& t : torsion_fiber(e.zeta, n, 1)) {
        out.push_back(WeilElem{t, e.m / n, d.q});
      }
      break;
    }
    case Kind::WeilHat: {
      const auto& e = std::get<WeilHatElem>(s);
      for (const auto& tz : torsion_fiber(e.zeta, n, 1)) {
        for (const auto& tr : torsion_fiber(e.r, n, 2)) {
          out.push_back(WeilHatElem{tz, tr, d.q});
        }
      }
      break;
    }
    case Kind::AlgNumModel: {
      const auto& e = std::get<AlgNumElem>(s);
      std::vector<Rat> exps = e.exps;
      for (auto& x : exps) x /= Rat(n);
      for (const auto& t : torsion_fiber(e.zeta, n, 1)) {
        out.push_back(AlgNumElem{t, exps});
      }
      break;
    }
    case Kind::GermAlphaOne: {
      out.push_back(GermElem{std::get<GermElem>(s).a / Rat(n)});
      break;
    }
  }
  std::sort(out.begin(), out.end(), GroupLess{});
  return out;
}

bool is_even_prime_power(long long q) {
  long long p = 0;
  if (!is_prime_power(q, &p)) return false;
  int e = 0;
  while (q > 1) {
    q /= p;
    ++e;
  }
  return e % 2 == 0;
}

GroupElem galois_apply(const Datum& d, const GaloisElem& g, const GroupElem& s) {
  if (g.level < 1) throw std::invalid_argument("level must be >= 1");
  if (std::gcd(g.unit, g.level) != 1) {
    throw std::invalid_argument("unit must be coprime to the level");
  }
  if (!elem_matches(d, s)) wrong_elem(d);
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero:
      return QmodZElem{unit_act(std::get<QmodZElem>(s).v, 1, g)};
    case Kind::PairSwitch:
    case Kind::RankTwo: {
      // the sign bit is read as the component switch here
      auto e = std::get<PairElem>(s);
      if (g.sqrtq_sign == -1) std::swap(e.a, e.b);
      return PairElem{unit_act(e.a, 1, g), unit_act(e.b, 1, g)};
    }
    case Kind::Weil: {
      const auto& e = std::get<WeilElem>(s);
      Rat z = unit_act(e.zeta, 1, g);
      const int effective = is_even_prime_power(d.q) ? +1 : g.sqrtq_sign;
      if (effective == -1 && e.m % 2 != 0) {
        // sending sqrt(q) to -sqrt(q) twists odd weights by a half turn
        if (g.level % 2 != 0) {
          throw LevelTooSmall("sign twist on odd weights needs an even level");
        }
        z = (z + Rat(1, 2)).mod1();
      }
      return WeilElem{z, e.m, d.q};
    }
    case Kind::WeilHat: {
      const int effective = is_even_prime_power(d.q) ? +1 : g.sqrtq_sign;
      if (effective == -1) {
        throw NotAdmissible(
            "sign -1 does not act on the divisible weight group; no parity character survives");
      }
      const auto& e = std::get<WeilHatElem>(s);
      return WeilHatElem{unit_act(e.zeta, 1, g), unit_act(e.r, 2, g), d.q};
    }
    case Kind::AlgNumModel: {
      const auto& e = std::get<AlgNumElem>(s);
      return AlgNumElem{unit_act(e.zeta, 1, g), e.exps};
    }
    case Kind::GermAlphaOne:
      return s;
  }
  throw std::logic_error("unknown kind");
}

WeilElem weil_pack(const Rat& zeta, long long m, long long q) {
  if (!is_prime_power(q)) {
    throw std::invalid_argument("base q must be a prime power >= 2, got " + std::to_string(q));
  }
  return WeilElem{zeta.mod1(), m, q};
}

std::pair<Rat, long long> weil_unpack(const WeilElem& w) { return {w.zeta, w.m}; }

std::vector<GroupElem> sample_elements(const Datum& d, long long den_bound, int count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> den_dist(1, den_bound);
  auto torsion = [&](long long modulus) {
    long long den = den_dist(rng);
    std::uniform_int_distribution<long long> num_dist(0, modulus * den - 1);
    return Rat(num_dist(rng), den);
  };
  std::uniform_int_distribution<long long> weight_dist(-3, 3);

  std::vector<GroupElem> out;
  out.push_back(identity_elem(d));
  while (static_cast<int>(out.size()) < count) {
    switch (d.kind) {
      case Kind::QmodZ:
      case Kind::WeilZero: out.push_back(QmodZElem{torsion(1)}); break;
      case Kind::PairSwitch:
      case Kind::RankTwo: out.push_back(PairElem{torsion(1), torsion(1)}); break;
      case Kind::Weil: out.push_back(WeilElem{torsion(1), weight_dist(rng), d.q}); break;
      case Kind::WeilHat: out.push_back(WeilHatElem{torsion(1), torsion(2), d.q}); break;
      case Kind::AlgNumModel: {
        std::vector<Rat> exps(static_cast<std::size_t>(d.rank()));
        std::uniform_int_distribution<long long> exp_num(-4, 4);
        std::uniform_int_distribution<long long> exp_den(1, 2);
        for (auto& x : exps) x = Rat(exp_num(rng), exp_den(rng));
        out.push_back(AlgNumElem{torsion(1), exps});
        break;
      }
      case Kind::GermAlphaOne: {
        std::uniform_int_distribution<long long> num_dist(-2 * den_bound, 2 * den_bound);
        out.push_back(GermElem{Rat(num_dist(rng), den_dist(rng))});
        break;
      }
    }
  }
  return out;
}

long long mod_inverse(long long u, long long n) {
  long long r0 = n, r1 = ((u % n) + n) % n, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long qq = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - qq * r1);
    std::tie(s0, s1) = std::make_tuple(s1, s0 - qq * s1);
  }
  if (r0 != 1) throw std::invalid_argument("unit is not invertible at this level");
  return ((s0 % n) + n) % n;
}

CheckReport check_datum(const Datum& d, long long n_max) {
  CheckReport rep;
  auto fail = [&rep](const std::string& msg) { rep.failures.push_back(msg); };
  const auto samples = sample_elements(d, 12, 8, 20260819ULL);

  // alpha is multiplicative
  for (long long n = 1; n <= n_max; ++n) {
    for (long long m = 1; m <= n_max; ++m) {
      ++rep.checks;
      if (alpha_of(d, n * m) != checked_mul(alpha_of(d, n), alpha_of(d, m))) {
        fail("alpha(" + std::to_string(n) + "*" + std::to_string(m) + ") is not multiplicative");
      }
    }
  }

  // sigma is a semigroup action by endomorphisms
  for (long long n = 1; n <= n_max; ++n) {
    for (const auto& s : samples) {
      for (long long m = 1; m <= n_max; ++m) {
        ++rep.checks;
        if (sigma_apply(d, n, sigma_apply(d, m, s)) != sigma_apply(d, n * m, s)) {
          fail("sigma_" + std::to_string(n) + " o sigma_" + std::to_string(m) +
               " != sigma_" + std::to_string(n * m) + " at " + elem_str(s));
        }
      }
      for (const auto& t : samples) {
        ++rep.checks;
        if (sigma_apply(d, n, group_mul(d, s, t)) !=
            group_mul(d, sigma_apply(d, n, s), sigma_apply(d, n, t))) {
          fail("sigma_" + std::to_string(n) + " is not a homomorphism at " + elem_str(s) +
               ", " + elem_str(t));
        }
      }
    }
  }

  // group laws
  for (const auto& s : samples) {
    ++rep.checks;
    if (!is_identity(d, group_mul(d, s, group_inv(d, s)))) {
      fail("inverse law fails at " + elem_str(s));
    }
    ++rep.checks;
    if (group_mul(d, identity_elem(d), s) != s) fail("identity law fails at " + elem_str(s));
    for (const auto& t : samples) {
      for (const auto& u : samples) {
        ++rep.checks;
        if (group_mul(d, group_mul(d, s, t), u) != group_mul(d, s, group_mul(d, t, u))) {
          fail("associativity fails");
        }
      }
    }
  }

  // fibers of sigma_n over its image have exactly alpha(n) points
  for (long long n = 1; n <= n_max; ++n) {
    for (const auto& s : samples) {
      const GroupElem img = sigma_apply(d, n, s);
      const auto fiber = rho_fiber(d, n, img);
      ++rep.checks;
      if (static_cast<long long>(fiber.size()) != alpha_of(d, n)) {
        fail("fiber size over sigma_" + std::to_string(n) + "(" + elem_str(s) +
             ") != alpha(n)");
      }
      ++rep.checks;
      bool all_map_back = true;
      for (const auto& f : fiber) {
        if (sigma_apply(d, n, f) != img) all_map_back = false;
      }
      if (!all_map_back) fail("fiber member does not map back under sigma_" + std::to_string(n));
      ++rep.checks;
      if (std::adjacent_find(fiber.begin(), fiber.end()) != fiber.end()) {
        fail("fiber has repeated members at n=" + std::to_string(n));
      }
    }
  }

  // units commute with sigma_n and act bijectively
  {
    long long level = std::lcm(2 * 27720LL, d.q >= 2 ? d.q : 1);
    for (long long unit : {1LL, 13LL, 17LL, 19LL, 23LL}) {
      if (std::gcd(unit, level) != 1) continue;
      for (int sign : {+1, -1}) {
        if (sign == -1 &&
            (d.kind == Kind::WeilHat && !is_even_prime_power(d.q))) {
          ++rep.checks;
          bool threw = false;
          try {
            galois_apply(d, GaloisElem{level, unit, sign}, identity_elem(d));
          } catch (const NotAdmissible&) {
            threw = true;
          }
          if (!threw) fail("expected NotAdmissible for sign -1 on a divisible weight group");
          continue;
        }
        const GaloisElem g{level, unit, sign};
        const GaloisElem ginv{level, mod_inverse(unit, level), sign};
        for (const auto& s : samples) {
          for (long long n = 1; n <= n_max; ++n) {
            ++rep.checks;
            if (galois_apply(d, g, sigma_apply(d, n, s)) !=
                sigma_apply(d, n, galois_apply(d, g, s))) {
              fail("unit action does not commute with sigma_" + std::to_string(n));
            }
          }
          ++rep.checks;
          if (galois_apply(d, ginv, galois_apply(d, g, s)) != s) {
            fail("unit action is not inverted by the inverse unit at " + elem_str(s));
          }
        }
      }
    }
  }

  if (d.kind == Kind::GermAlphaOne) {
    rep.notes.push_back(
        "alpha is identically 1: the datum is abstract, not concrete (sigma_n has no fixed "
        "eigenbasis kernel)");
  }
  return rep;
}

}  // namespace bc
