#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bc/rational.hpp"

namespace bc {

enum class Kind {
  QmodZ,
  PairSwitch,
  AlgNumModel,
  WeilZero,
  Weil,
  WeilHat,
  GermAlphaOne,
  RankTwo,
};

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

// torsion element of Q/Z, value in [0,1)
struct QmodZElem {
  Rat v;
  friend bool operator==(const QmodZElem&, const QmodZElem&) = default;
};

// element of Q/Z x Q/Z; carries both the switch-symmetric and the rank-two case
struct PairElem {
  Rat a, b;
  friend bool operator==(const PairElem&, const PairElem&) = default;
};

// zeta * q^{m/2}: root-of-unity part in [0,1), integer weight m, base q
struct WeilElem {
  Rat zeta;
  long long m = 0;
  long long q = 0;
  friend bool operator==(const WeilElem&, const WeilElem&) = default;
};

// (pi, r) with pi a root of unity and r in Q/2Z, value of r in [0,2)
struct WeilHatElem {
  Rat zeta;
  Rat r;
  long long q = 0;
  friend bool operator==(const WeilHatElem&, const WeilHatElem&) = default;
};

// zeta * prod_r lambda_r^{exps_r}; exponents are exact rationals
struct AlgNumElem {
  Rat zeta;
  std::vector<Rat> exps;
  friend bool operator==(const AlgNumElem&, const AlgNumElem&) = default;
};

// element of (Q, +)
struct GermElem {
  Rat a;
  friend bool operator==(const GermElem&, const GermElem&) = default;
};

using GroupElem = std::variant<QmodZElem, PairElem, WeilElem, WeilHatElem, AlgNumElem, GermElem>;

// deterministic total order, usable as a map key comparator
struct GroupLess {
  bool operator()(const GroupElem& x, const GroupElem& y) const;
};

std::string elem_str(const GroupElem& s);

}  // namespace bc
