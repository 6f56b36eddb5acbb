#include "bc/tannaka.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace bc {

namespace {

Cyclo iota_root(const Datum& d, const GroupElem& s) {
  switch (d.kind) {
    case Kind::QmodZ:
    case Kind::WeilZero: break;
    default:
      throw KindMismatch("automorphism eigenvalues must be roots of unity; kind " +
                         kind_name(d.kind) + " has a free part");
  }
  const Rat t = iota_phase(d, s);
  return Cyclo::root(static_cast<int>(t.den), t);
}

std::vector<Cyclo> mat_mul(const std::vector<Cyclo>& a, const std::vector<Cyclo>& b, int n) {
  std::vector<Cyclo> out(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Cyclo& aik = a[static_cast<size_t>(i) * n + k];
      if (aik.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const Cyclo& bkj = b[static_cast<size_t>(k) * n + j];
        if (bkj.is_zero()) continue;
        out[static_cast<size_t>(i) * n + j] += aik * bkj;
      }
    }
  }
  return out;
}

Cyclo mat_trace(const std::vector<Cyclo>& a, int n) {
  Cyclo t;
  for (int i = 0; i < n; ++i) t += a[static_cast<size_t>(i) * n + i];
  return t;
}

void check_aut(const AutPair& a) {
  if (a.dim < 0 || a.mat.size() != static_cast<size_t>(a.dim) * a.dim ||
      a.eigs.size() != static_cast<size_t>(a.dim)) {
    throw std::invalid_argument("automorphism data sizes do not match its dimension");
  }
}

}  // namespace

void GradedSpace::add(const GroupElem& s, int dim) {
  if (dim < 0) throw std::invalid_argument("graded dimensions must be >= 0");
  if (dim == 0) return;
  dims[s] += dim;
}

int GradedSpace::total_dim() const {
  int t = 0;
  for (const auto& [s, d] : dims) t += d;
  return t;
}

GradedSpace GradedSpace::scaled(int factor) const {
  GradedSpace out;
  for (const auto& [s, d] : dims) out.add(s, d * factor);
  return out;
}

GradedSpace functor_sigma_cat(const Datum& d, long long n, const GradedSpace& v) {
  GradedSpace out;
  for (const auto& [s, dim] : v.dims) out.add(sigma_apply(d, n, s), dim);
  return out;
}

GradedSpace functor_rho_cat(const Datum& d, long long n, const GradedSpace& v) {
  GradedSpace out;
  for (const auto& [s, dim] : v.dims) {
    for (const auto& f : rho_fiber(d, n, s)) out.add(f, dim);
  }
  return out;
}

AutPair grading_to_aut(const Datum& d, const GradedSpace& v) {
  AutPair a;
  a.dim = v.total_dim();
  a.mat.assign(static_cast<size_t>(a.dim) * a.dim, Cyclo{});
  int pos = 0;
  for (const auto& [s, dim] : v.dims) {
    const Cyclo lam = iota_root(d, s);
    for (int i = 0; i < dim; ++i, ++pos) {
      a.mat[static_cast<size_t>(pos) * a.dim + pos] = lam;
      a.eigs.push_back(s);
    }
  }
  return a;
}

int cyclo_rank(std::vector<Cyclo> mat, int rows, int cols) {
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (!mat[static_cast<size_t>(r) * cols + col].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j < cols; ++j) {
      std::swap(mat[static_cast<size_t>(piv) * cols + j],
                mat[static_cast<size_t>(rank) * cols + j]);
    }
    const Cyclo inv = mat[static_cast<size_t>(rank) * cols + col].inverse();
    for (int j = col; j < cols; ++j) {
      mat[static_cast<size_t>(rank) * cols + j] *= inv;
    }
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const Cyclo f = mat[static_cast<size_t>(r) * cols + col];
      if (f.is_zero()) continue;
      for (int j = col; j < cols; ++j) {
        mat[static_cast<size_t>(r) * cols + j] =
            mat[static_cast<size_t>(r) * cols + j] - f * mat[static_cast<size_t>(rank) * cols + j];
      }
    }
    ++rank;
  }
  return rank;
}

GradedSpace eig_to_grading(const Datum& d, const AutPair& a) {
  check_aut(a);
  std::vector<GroupElem> distinct = a.eigs;
  std::sort(distinct.begin(), distinct.end(), GroupLess{});
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  GradedSpace out;
  int total = 0;
  for (const auto& s : distinct) {
    const Cyclo lam = iota_root(d, s);
    std::vector<Cyclo> shifted = a.mat;
    for (int i = 0; i < a.dim; ++i) {
      shifted[static_cast<size_t>(i) * a.dim + i] =
          shifted[static_cast<size_t>(i) * a.dim + i] - lam;
    }
    const int null_dim = a.dim - cyclo_rank(std::move(shifted), a.dim, a.dim);
    out.add(s, null_dim);
    total += null_dim;
  }
  if (total != a.dim) {
    throw NotDiagonalizable("declared eigenvalues span " + std::to_string(total) + " of " +
                            std::to_string(a.dim) + " dimensions");
  }
  return out;
}

GradedSpace eig_to_grading_float(const Datum& d, const AutPair& a, double tol) {
  check_aut(a);
  Eigen::MatrixXcd m(a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i) {
    for (int j = 0; j < a.dim; ++j) {
      m(i, j) = a.mat[static_cast<size_t>(i) * a.dim + j].to_complex();
    }
  }
  std::vector<GroupElem> distinct = a.eigs;
  std::sort(distinct.begin(), distinct.end(), GroupLess{});
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  GradedSpace out;
  int total = 0;
  for (const auto& s : distinct) {
    const std::complex<double> lam = iota_root(d, s).to_complex();
    Eigen::MatrixXcd shifted = m - lam * Eigen::MatrixXcd::Identity(a.dim, a.dim);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(shifted);
    qr.setThreshold(tol);
    const int null_dim = a.dim - static_cast<int>(qr.rank());
    out.add(s, null_dim);
    total += null_dim;
  }
  if (total != a.dim) {
    throw NotDiagonalizable("declared eigenvalues span " + std::to_string(total) + " of " +
                            std::to_string(a.dim) + " dimensions");
  }
  return out;
}

AutPair frobenius(const Datum& d, long long n, const AutPair& a) {
  check_aut(a);
  if (n < 1) throw std::invalid_argument("index must be >= 1");
  AutPair out;
  out.dim = a.dim;
  std::vector<Cyclo> acc(static_cast<size_t>(a.dim) * a.dim);
  for (int i = 0; i < a.dim; ++i) acc[static_cast<size_t>(i) * a.dim + i] = Cyclo::from_rat(Rat(1));
  std::vector<Cyclo> base = a.mat;
  long long e = n;
  while (e > 0) {
    if (e & 1) acc = mat_mul(acc, base, a.dim);
    base = mat_mul(base, base, a.dim);
    e >>= 1;
  }
  out.mat = std::move(acc);
  for (const auto& s : a.eigs) out.eigs.push_back(sigma_apply(d, n, s));
  return out;
}

AutPair verschiebung(const Datum& d, long long n, const AutPair& a) {
  check_aut(a);
  if (n < 1) throw std::invalid_argument("index must be >= 1");
  const int dim = a.dim;
  const int big = static_cast<int>(n) * dim;
  AutPair out;
  out.dim = big;
  out.mat.assign(static_cast<size_t>(big) * big, Cyclo{});
  // block top right carries the original map, identity blocks sit below the diagonal
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      out.mat[static_cast<size_t>(i) * big + (static_cast<size_t>(n - 1) * dim + j)] =
          a.mat[static_cast<size_t>(i) * dim + j];
    }
  }
  for (long long b = 1; b < n; ++b) {
    for (int i = 0; i < dim; ++i) {
      out.mat[(static_cast<size_t>(b) * dim + i) * big + (static_cast<size_t>(b - 1) * dim + i)] =
          Cyclo::from_rat(Rat(1));
    }
  }
  for (const auto& s : a.eigs) {
    for (const auto& f : rho_fiber(d, n, s)) out.eigs.push_back(f);
  }
  return out;
}

std::vector<Cyclo> char_poly(const std::vector<Cyclo>& mat, int dim) {
  if (mat.size() != static_cast<size_t>(dim) * dim) {
    throw std::invalid_argument("matrix size does not match its dimension");
  }
  // Faddeev-LeVerrier: exact over any field of characteristic zero
  std::vector<Cyclo> coeffs(static_cast<size_t>(dim) + 1);
  coeffs[static_cast<size_t>(dim)] = Cyclo::from_rat(Rat(1));
  std::vector<Cyclo> m(static_cast<size_t>(dim) * dim);  // M_0 = 0
  Cyclo c = Cyclo::from_rat(Rat(1));
  for (int k = 1; k <= dim; ++k) {
    for (int i = 0; i < dim; ++i) m[static_cast<size_t>(i) * dim + i] += c;
    m = mat_mul(mat, m, dim);
    c = mat_trace(m, dim).scaled(BigRat(-1) / BigRat(k));
    coeffs[static_cast<size_t>(dim - k)] = c;
  }
  return coeffs;
}

Cyclo eval_poly(const std::vector<Cyclo>& coeffs, const Cyclo& x) {
  Cyclo acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool check_verschiebung_diag(const Datum& d, long long n, const GroupElem& s) {
  GradedSpace v;
  v.add(s, 1);
  const AutPair a = grading_to_aut(d, v);
  const AutPair vn = verschiebung(d, n, a);
  const auto p = char_poly(vn.mat, vn.dim);

  // p must be exactly lambda^n - iota(s)
  if (static_cast<long long>(p.size()) != n + 1) return false;
  if (p[static_cast<size_t>(n)] != Cyclo::from_rat(Rat(1))) return false;
  if (p[0] != -iota_root(d, s)) return false;
  for (long long i = 1; i < n; ++i) {
    if (!p[static_cast<size_t>(i)].is_zero()) return false;
  }

  // the fiber phases are n distinct roots
  const auto fiber = rho_fiber(d, n, s);
  if (static_cast<long long>(fiber.size()) != n) return false;
  std::vector<Cyclo> roots;
  for (const auto& f : fiber) {
    const Cyclo r = iota_root(d, f);
    if (!eval_poly(p, r).is_zero()) return false;
    for (const auto& seen : roots) {
      if (seen == r) return false;
    }
    roots.push_back(r);
  }
  return true;
}

std::pair<long long, long long> orbit_hom_dim(long long n, const std::map<long long, int>& v,
                                              const std::map<long long, int>& w) {
  if (n < 1) throw std::invalid_argument("index must be >= 1");
  long long direct = 0;
  for (const auto& [s, dv] : v) {
    for (const auto& [t, dw] : w) {
      if ((t - s) % n == 0) direct += static_cast<long long>(dv) * dw;
    }
  }
  long long folded = 0;
  for (long long c = 0; c < n; ++c) {
    long long sv = 0, sw = 0;
    for (const auto& [s, dv] : v) {
      if (((s % n) + n) % n == c) sv += dv;
    }
    for (const auto& [t, dw] : w) {
      if (((t % n) + n) % n == c) sw += dw;
    }
    folded += sv * sw;
  }
  return {direct, folded};
}

}  // namespace bc
