#include "bc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bc/datum_json.hpp"
#include "bc/tannaka.hpp"
#include "bc/thermo.hpp"

namespace bc {

namespace {

constexpr double kCovarianceBound = 1e-9;
constexpr long long kConjugationLevel = 27720;  // lcm(1..12)

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_complex(const std::complex<double>& z) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

// cells never carry the separator; chain indices print their lattice
// coordinates with semicolons instead
std::string csv_safe(std::string cell) {
  std::replace(cell.begin(), cell.end(), ',', ';');
  return cell;
}

struct Options {
  std::string datum_file;
  std::string trunc = "64,24";
  std::string betas = "2";
  std::string g_spec = "builtin:n";
  std::string gammas;
  std::string format = "csv";
  double tol = 1e-6;
  std::uint64_t seed = 20260819;
  int samples = 5;
  long long limit = 64;
  bool inject_fault = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> parse_beta_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("--beta: not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("--beta: empty list");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long long> parse_unit_list(const std::string& text) {
  std::vector<long long> out;
  if (text.empty()) return out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size() || out.back() == 0) throw std::invalid_argument("zero unit");
    } catch (const std::exception&) {
      throw ConfigError("--gamma: not a nonzero integer: '" + item + "'");
    }
  }
  return out;
}

// n_max,depth[,R]; R keeps only the first R free generators of a lattice datum
TruncSpec parse_trunc(const std::string& text, Datum& d) {
  const auto parts = split_list(text);
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("--trunc: expected n_max,depth[,R]");
  }
  long long vals[3] = {0, 0, -1};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      vals[i] = std::stoll(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("--trunc: not an integer: '" + parts[i] + "'");
    }
  }
  if (vals[0] < 1) throw ConfigError("--trunc: n_max must be >= 1");
  if (vals[1] < 0) throw ConfigError("--trunc: depth must be >= 0");
  if (parts.size() == 3 && d.kind == Kind::AlgNumModel && vals[2] < d.rank()) {
    if (vals[2] < 1) throw ConfigError("--trunc: R must be >= 1 for a lattice datum");
    d = make_datum(d.kind, d.q,
                   std::vector<Rat>(d.generators.begin(), d.generators.begin() + vals[2]));
  }
  return TruncSpec{vals[0], static_cast<int>(vals[1])};
}

GHom parse_ghom(const std::string& spec) {
  if (spec == "builtin:n") return GHom{};
  if (spec.rfind("builtin:", 0) == 0) {
    throw ConfigError("--g: unknown builtin weight '" + spec + "'");
  }
  return ghom_from_file(spec);
}

using Row = std::vector<std::pair<std::string, std::string>>;

void emit_rows(std::ostream& out, const std::string& format, const std::vector<Row>& rows) {
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (const auto& [key, cell] : row) obj[key] = cell;
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  if (rows.empty()) return;
  std::string line;
  for (const auto& [key, cell] : rows.front()) {
    if (!line.empty()) line += ',';
    line += key;
  }
  out << line << '\n';
  for (const auto& row : rows) {
    line.clear();
    for (const auto& [key, cell] : row) {
      if (!line.empty()) line += ',';
      line += cell;
    }
    out << line << '\n';
  }
}

long long torsion_level(const GroupElem& s) {
  return std::visit(
      [](const auto& e) -> long long {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, QmodZElem>) {
          return e.v.den;
        } else if constexpr (std::is_same_v<T, PairElem>) {
          return lcm_ll(e.a.den, e.b.den);
        } else if constexpr (std::is_same_v<T, WeilElem>) {
          return e.zeta.den;
        } else if constexpr (std::is_same_v<T, WeilHatElem>) {
          return lcm_ll(e.zeta.den, checked_mul(2, e.r.den));
        } else if constexpr (std::is_same_v<T, AlgNumElem>) {
          return e.zeta.den;
        } else {
          return 1;
        }
      },
      s);
}

// a signed unit list entry acting at the given torsion level; negative
// entries flip the sqrt(q) sign and need an even level
std::optional<GaloisElem> unit_at_level(long long u, long long level) {
  const int sign = u < 0 ? -1 : +1;
  long long uu = u < 0 ? -u : u;
  if (sign < 0) level = lcm_ll(level, 2);
  uu %= level;
  if (level == 1) uu = 1;  // the trivial residue class
  if (uu == 0 || std::gcd(uu, level) != 1) return std::nullopt;
  return GaloisElem{level, uu, sign};
}

// covariance and conjugation sweep the full window; large lattice ranks get
// a reduced box so the exhaustive column scan stays interactive
TruncSpec scan_window(const Datum& d, const TruncSpec& t) {
  TruncSpec c = t;
  if (rep_family(d) == RepFamily::Chain) {
    const int r = lattice_rank(d);
    if (r >= 2) {
      c.n_max = std::min<long long>(c.n_max, 12);
      c.depth = std::min(c.depth, 3);
    } else if (r == 1) {
      c.n_max = std::min<long long>(c.n_max, 32);
      c.depth = std::min(c.depth, 8);
    }
  } else {
    c.n_max = std::min<long long>(c.n_max, 48);
  }
  return c;
}

std::vector<GenWord> generator_words(const Datum& d, const std::vector<GroupElem>& samples) {
  const GroupElem s0 = samples.empty() ? identity_elem(d) : samples.front();
  std::vector<GenWord> words;
  words.push_back({GenS{s0}});
  switch (rep_family(d)) {
    case RepFamily::Grid:
      words.push_back({GenGridMu{2, 2}});
      words.push_back({GenGridMuStar{3, 3}});
      words.push_back({GenS{s0}, GenGridMu{2, 2}});
      break;
    case RepFamily::Germ:
      words.push_back({GenMuRat{Rat(2)}});
      words.push_back({GenMuRat{Rat(1, 3)}});
      words.push_back({GenS{s0}, GenMuRat{Rat(2, 3)}});
      break;
    case RepFamily::Chain:
      words.push_back({GenMu{2}});
      words.push_back({GenMuStar{3}});
      words.push_back({GenS{s0}, GenMu{2}});
      if (lattice_rank(d) > 0) {
        words.push_back({GenW{std::vector<Rat>(lattice_rank(d), Rat(1))}});
      }
      break;
  }
  return words;
}

struct Suite {
  std::string name;
  std::string detail{};
  long long failures = 0;
  std::vector<std::string> witnesses{};
};

void print_suites(std::ostream& out, const std::vector<Suite>& suites) {
  for (const auto& s : suites) {
    std::string name = s.name;
    if (name.size() < 26) name.resize(26, ' ');
    out << name << s.detail << '\n';
    std::size_t shown = 0;
    for (const auto& w : s.witnesses) {
      out << "  witness: " << w << '\n';
      if (++shown == 5) break;
    }
  }
}

std::string count_detail(long long checks, long long failures) {
  return "checks=" + std::to_string(checks) + " failures=" + std::to_string(failures);
}

Suite relation_suite(std::string name, const RelationReport& r) {
  Suite s{std::move(name)};
  s.detail = "instances=" + std::to_string(r.instances) +
             " interior=" + std::to_string(r.interior) +
             " boundary=" + std::to_string(r.boundary) +
             " failures=" + std::to_string(r.failures.size());
  s.failures = static_cast<long long>(r.failures.size());
  s.witnesses = r.failures;
  if (!r.ok() && r.failures.empty()) {
    s.failures = 1;
    s.witnesses.push_back("no interior columns at this window");
  }
  return s;
}

int cmd_verify(const Datum& d, const TruncSpec& t, const GHom& g,
               const std::vector<long long>& gammas, std::uint64_t seed, bool inject_fault,
               std::ostream& out) {
  const EmbedSpec emb{};
  const auto samples = sample_elements(d, 12, 24, seed);
  std::vector<Suite> suites;

  {
    const CheckReport r = check_datum(d, 12);
    Suite s{"datum laws"};
    s.detail = count_detail(r.checks, static_cast<long long>(r.failures.size()));
    s.failures = static_cast<long long>(r.failures.size());
    s.witnesses = r.failures;
    suites.push_back(std::move(s));
  }

  {
    // random algebra elements with support premapped into the image
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
    std::uniform_int_distribution<long long> coef(1, 5);
    Suite s{"sigma-rho composition"};
    long long checks = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const long long n = 1 + trial % 12;
      AlgebraElem a;
      const int terms = 1 + trial % 3;
      for (int j = 0; j < terms; ++j) {
        a.add_term(sigma_apply(d, n, samples[pick(rng)]), Rat(coef(rng), coef(rng)));
      }
      ++checks;
      if (!check_sigma_rho(d, n, a)) {
        ++s.failures;
        if (s.witnesses.size() < 5) {
          s.witnesses.push_back("n=" + std::to_string(n) + " on " + elem_str(a.terms.begin()->first));
        }
      }
    }
    s.detail = count_detail(checks, s.failures);
    suites.push_back(std::move(s));
  }

  if (rep_family(d) == RepFamily::Chain) {
    Suite s{"fiber character sums"};
    long long checks = 0;
    for (long long n = 1; n <= 6; ++n) {
      for (long long m = 1; m <= 6; ++m) {
        for (std::size_t i = 0; i < samples.size() && i < 4; ++i) {
          const GroupElem sp = sigma_apply(d, n, samples[i]);
          ++checks;
          if (!zero_sum_identity(d, n, m, sp).holds()) {
            ++s.failures;
            if (s.witnesses.size() < 5) {
              s.witnesses.push_back("n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                    " s=" + elem_str(sp));
            }
          }
        }
      }
    }
    s.detail = count_detail(checks, s.failures);
    suites.push_back(std::move(s));
  }

  suites.push_back(relation_suite("operator relations", check_relations(d, emb, t, 4, 12, seed)));
  suites.push_back(relation_suite("range projections", check_projections(d, emb, t, 4)));

  {
    Suite s{"time covariance"};
    const TruncSpec ct = scan_window(d, t);
    double worst = 0.0;
    for (const auto& w : generator_words(d, samples)) {
      for (const double time : {0.0, 1.0, std::numbers::pi}) {
        worst = std::max(worst, covariance_max_dev(d, emb, ct, g, w, time));
      }
    }
    s.detail = "max_dev=" + fmt_double(worst) + " bound=" + fmt_double(kCovarianceBound);
    if (!(worst <= kCovarianceBound)) {
      s.failures = 1;
      s.witnesses.push_back("covariance deviation above bound");
    }
    suites.push_back(std::move(s));
  }

  {
    Suite s{"symmetry conjugation"};
    const TruncSpec ct = scan_window(d, t);
    long long checks = 0;
    const std::vector<long long> units = gammas.empty() ? std::vector<long long>{13, 17, 19}
                                                        : gammas;
    for (const long long u : units) {
      const auto ge = unit_at_level(u, kConjugationLevel);
      if (!ge) {
        s.witnesses.push_back(std::to_string(u) + " is not a unit at level " +
                              std::to_string(kConjugationLevel) + "; skipped");
        continue;
      }
      for (const auto& w : generator_words(d, samples)) {
        ++checks;
        bool same = false;
        try {
          same = check_symmetry_conjugate(d, emb, *ge, ct, w);
        } catch (const NotAdmissible&) {
          continue;  // the sign refuses to act on this kind; nothing to compare
        }
        if (!same) {
          ++s.failures;
          if (s.witnesses.size() < 5) {
            s.witnesses.push_back("unit " + std::to_string(u) + " on " + word_str(w));
          }
        }
      }
    }
    s.detail = count_detail(checks, s.failures);
    suites.push_back(std::move(s));
  }

  if (rep_family(d) == RepFamily::Grid) {
    suites.push_back(relation_suite("diagonal subalgebra",
                                    check_diagonal_preserved(d, emb, t, 4, 12, seed)));
  }

  if (inject_fault) {
    // a deliberately sign-flipped expectation; the comparison must notice
    Suite s{"fault injection"};
    s.failures = 1;
    bool twisted = false;
    for (const auto& sm : samples) {
      const std::complex<double> truth = ground_value(d, sm);
      if (std::abs(truth.imag()) < 0.1) continue;
      s.witnesses.push_back("ground value of " + elem_str(sm) + " is " + fmt_complex(truth) +
                            ", sign-flipped table expected " + fmt_complex(std::conj(truth)));
      twisted = true;
      break;
    }
    if (!twisted) s.witnesses.push_back("no twisted sample available to corrupt");
    s.detail = count_detail(1, s.failures);
    suites.push_back(std::move(s));
  }

  print_suites(out, suites);
  long long failures = 0;
  for (const auto& s : suites) failures += s.failures;
  if (failures > 0) {
    out << "VERIFY FAIL (" << failures << " failing check" << (failures == 1 ? "" : "s") << ")\n";
    return 1;
  }
  out << "VERIFY PASS\n";
  return 0;
}

int cmd_partition(const Datum& d, const GHom& g, const TruncSpec& t,
                  const std::vector<double>& betas, double tol, const std::string& format,
                  std::ostream& out, std::ostream& err) {
  std::vector<Row> rows;
  long long bad = 0;
  for (const double beta : betas) {
    Row row{{"case", kind_name(d.kind)}, {"s", ""}, {"beta", fmt_double(beta)}};
    bool divergent = false;
    std::string status = "ok";
    try {
      // a free lattice datum keeps the closed route at the same rank; the
      // all-generators limit differs from any finite window by a model gap
      SeriesResult closed;
      if (d.kind == Kind::AlgNumModel) {
        closed.value = partition_trace_factored(d, g, beta, t);
        closed.tail_bound = 0.0;
      } else {
        closed = partition_closed(d, g, beta, tol);
      }
      const SeriesResult trace = partition_trace(d, g, beta, t);
      const double dev = std::abs(closed.value - trace.value);
      const double tails = closed.tail_bound + trace.tail_bound;
      row.emplace_back("closed_value", fmt_double(closed.real()));
      row.emplace_back("trace_value", fmt_double(trace.real()));
      row.emplace_back("deviation", fmt_double(dev));
      row.emplace_back("tail_bound", fmt_double(tails));
      if (!(dev <= tol + tails)) {
        status = "DEVIATION";
        ++bad;
      }
    } catch (const DivergentParameter&) {
      divergent = true;
    }
    if (divergent) {
      row.emplace_back("closed_value", "");
      row.emplace_back("trace_value", "");
      row.emplace_back("deviation", "");
      row.emplace_back("tail_bound", "");
      status = "divergent";
    }
    row.emplace_back("status", status);
    rows.push_back(std::move(row));
  }
  emit_rows(out, format, rows);
  if (bad > 0) err << bad << " partition row(s) deviate beyond the certified tails\n";
  return bad > 0 ? 1 : 0;
}

int cmd_gibbs(const Datum& d, const GHom& g, const TruncSpec& t, const std::vector<double>& betas,
              const std::vector<long long>& gammas, int nsamples, double tol,
              const std::string& format, std::uint64_t seed, std::ostream& out,
              std::ostream& err) {
  const auto elems = sample_elements(d, 12, nsamples, seed);
  const double closed_tol = std::min(tol * 0.1, 1e-7);
  std::vector<Row> rows;
  long long bad = 0;
  for (const double beta : betas) {
    for (const auto& s : elems) {
      Row row{{"case", kind_name(d.kind)},
              {"s", csv_safe(elem_str(s))},
              {"beta", fmt_double(beta)}};
      bool divergent = false;
      std::string status = "ok";
      try {
        const SeriesResult closed = gibbs_closed(d, g, s, beta, closed_tol);
        const SeriesResult trace = gibbs_trace(d, g, {GenS{s}}, beta, t);
        const double dev = std::abs(closed.value - trace.value);
        const double tails = closed.tail_bound + trace.tail_bound;
        row.emplace_back("closed_value", fmt_complex(closed.value));
        row.emplace_back("trace_value", fmt_complex(trace.value));
        row.emplace_back("deviation", fmt_double(dev));
        row.emplace_back("tail_bound", fmt_double(tails));
        if (!(dev <= tol + tails)) {
          status = "DEVIATION";
          ++bad;
        }
      } catch (const DivergentParameter&) {
        divergent = true;
      }
      if (divergent) {
        row.emplace_back("closed_value", "");
        row.emplace_back("trace_value", "");
        row.emplace_back("deviation", "");
        row.emplace_back("tail_bound", "");
        status = "divergent";
      }
      row.emplace_back("ground_state", fmt_complex(ground_value(d, s)));
      for (const long long u : gammas) {
        std::string cell = "n/a";
        if (const auto ge = unit_at_level(u, torsion_level(s))) {
          if (divergent) {
            cell = "";
          } else {
            try {
              const GroupElem ts = galois_apply(d, *ge, s);
              cell = fmt_complex(gibbs_closed(d, g, ts, beta, closed_tol).value);
            } catch (const std::exception&) {
              cell = "n/a";  // the unit or sign refuses to act on this element
            }
          }
        }
        row.emplace_back("gamma_" + std::to_string(u), cell);
      }
      row.emplace_back("status", status);
      rows.push_back(std::move(row));
    }
  }
  emit_rows(out, format, rows);
  if (bad > 0) err << bad << " gibbs row(s) deviate beyond the certified tails\n";
  return bad > 0 ? 1 : 0;
}

int cmd_spectrum(const Datum& d, const GHom& g, const TruncSpec& t,
                 const std::vector<double>& betas, long long limit, const std::string& format,
                 std::ostream& out) {
  std::vector<RepIdx> basis;
  try {
    basis = enumerate_basis(d, t);
  } catch (const std::length_error&) {
    throw ConfigError("--trunc: window too large to enumerate; lower n_max or depth");
  }
  const double beta = betas.front();
  std::vector<Row> rows;
  for (const auto& idx : basis) {
    if (static_cast<long long>(rows.size()) == limit) break;
    const double energy = ham_eigenvalue(d, g, idx);
    rows.push_back(Row{{"case", kind_name(d.kind)},
                       {"index", csv_safe(idx_str(idx))},
                       {"energy", fmt_double(energy)},
                       {"weight", fmt_double(std::exp(-beta * energy))}});
  }
  emit_rows(out, format, rows);
  return 0;
}

// pure torsion slice of a chain kind, used by the splitting checks
GroupElem torsion_elem(const Datum& d, const Rat& z) {
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero:
      return QmodZElem{z.mod1()};
    case Kind::Weil:
      return WeilElem{z.mod1(), 0, d.q};
    case Kind::AlgNumModel:
      return AlgNumElem{z.mod1(), std::vector<Rat>(d.generators.size(), Rat(0))};
    default:
      throw KindMismatch("no torsion slice for this kind");
  }
}

int cmd_tannaka(const Datum& d, std::uint64_t seed, std::ostream& out) {
  const auto samples = sample_elements(d, 12, 6, seed);
  std::vector<Suite> suites;

  {
    // pushing the pullback multiplies every dimension by alpha(n)
    Suite s{"sigma-rho functors"};
    long long checks = 0;
    for (long long n = 1; n <= 8; ++n) {
      GradedSpace v;
      int dim = 0;
      for (const auto& e : samples) v.add(sigma_apply(d, n, e), 1 + (dim++ % 3));
      ++checks;
      if (!(functor_sigma_cat(d, n, functor_rho_cat(d, n, v)) == v.scaled(alpha_of(d, n)))) {
        ++s.failures;
        if (s.witnesses.size() < 5) s.witnesses.push_back("n=" + std::to_string(n));
      }
    }
    s.detail = count_detail(checks, s.failures);
    suites.push_back(std::move(s));
  }

  if (alpha_of(d, 2) == 2 && lattice_rank(d) == 0) {
    // splitting the eigenvalue of a one-dimensional grading into n-th roots
    Suite s{"verschiebung splitting"};
    long long checks = 0;
    for (long long n = 1; n <= 4; ++n) {
      for (const long long den : {1LL, 3LL, 4LL, 12LL}) {
        ++checks;
        if (!check_verschiebung_diag(d, n, torsion_elem(d, Rat(1, den)))) {
          ++s.failures;
          if (s.witnesses.size() < 5) {
            s.witnesses.push_back("n=" + std::to_string(n) + " den=" + std::to_string(den));
          }
        }
      }
    }
    s.detail = count_detail(checks, s.failures);
    suites.push_back(std::move(s));
  } else {
    Suite s{"verschiebung splitting"};
    s.detail = lattice_rank(d) > 0 ? "skipped: eigenvalues with a free part do not split"
                                   : "skipped: kernel size is not n for this kind";
    suites.push_back(std::move(s));
  }

  {
    // integer-graded orbit sums, direct shift pairing against residue folding
    Suite s{"orbit hom dimensions"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> wt(-10, 10);
    std::uniform_int_distribution<int> dim(0, 3);
    std::uniform_int_distribution<long long> nn(1, 6);
    long long checks = 0;
    for (int trial = 0; trial < 50; ++trial) {
      std::map<long long, int> v, w;
      for (int i = 0; i < 4; ++i) {
        if (const int dv = dim(rng); dv > 0) v[wt(rng)] += dv;
        if (const int dw = dim(rng); dw > 0) w[wt(rng)] += dw;
      }
      const auto [direct, folded] = orbit_hom_dim(nn(rng), v, w);
      ++checks;
      if (direct != folded) {
        ++s.failures;
        if (s.witnesses.size() < 5) s.witnesses.push_back("trial " + std::to_string(trial));
      }
    }
    s.detail = count_detail(checks, s.failures);
    suites.push_back(std::move(s));
  }

  print_suites(out, suites);
  long long failures = 0;
  for (const auto& s : suites) failures += s.failures;
  if (failures > 0) {
    out << "TANNAKA FAIL (" << failures << " failing check" << (failures == 1 ? "" : "s")
        << ")\n";
    return 1;
  }
  out << "TANNAKA PASS\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"exact and thermodynamic checks for Bost-Connes systems"};
  app.name("bctool");
  app.require_subcommand(1);

  const auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--datum", opt.datum_file,
                    "datum JSON file (default: the rational torsion datum)");
    sub->add_option("--trunc", opt.trunc,
                    "basis window n_max,depth[,R]; R keeps the first R lattice generators");
    sub->add_option("--beta", opt.betas, "comma separated inverse temperatures");
    sub->add_option("--g", opt.g_spec, "weight: builtin:n or a JSON file {\"prime\": lambda}");
    sub->add_option("--gamma", opt.gammas,
                    "comma separated symmetry units; negative entries flip the sqrt(q) sign");
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", opt.tol, "comparison tolerance");
    sub->add_option("--seed", opt.seed, "deterministic sampling seed");
    return sub;
  };

  CLI::App* verify =
      add_common(app.add_subcommand("verify", "run the exact relation and law checks"));
  verify->add_flag("--inject-fault", opt.inject_fault,
                   "corrupt one expected value to prove the harness catches it");
  CLI::App* partition = add_common(
      app.add_subcommand("partition", "partition function, closed form against the trace"));
  CLI::App* gibbs =
      add_common(app.add_subcommand("gibbs", "gibbs states over sampled group elements"));
  gibbs->add_option("--samples", opt.samples, "number of sampled group elements");
  CLI::App* tannaka = add_common(app.add_subcommand("tannaka", "graded category checks"));
  CLI::App* spectrum = add_common(
      app.add_subcommand("spectrum", "energies and weights of the truncated window"));
  spectrum->add_option("--limit", opt.limit, "maximum number of rows");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    Datum d = opt.datum_file.empty() ? make_datum(Kind::QmodZ) : datum_from_file(opt.datum_file);
    const TruncSpec t = parse_trunc(opt.trunc, d);
    const GHom g = parse_ghom(opt.g_spec);
    const auto betas = parse_beta_list(opt.betas);
    const auto gammas = parse_unit_list(opt.gammas);

    if (verify->parsed()) {
      return cmd_verify(d, t, g, gammas, opt.seed, opt.inject_fault, out);
    }
    if (partition->parsed()) {
      return cmd_partition(d, g, t, betas, opt.tol, opt.format, out, err);
    }
    if (gibbs->parsed()) {
      return cmd_gibbs(d, g, t, betas, gammas, opt.samples, opt.tol, opt.format, opt.seed, out,
                       err);
    }
    if (tannaka->parsed()) return cmd_tannaka(d, opt.seed, out);
    if (spectrum->parsed()) return cmd_spectrum(d, g, t, betas, opt.limit, opt.format, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace bc
