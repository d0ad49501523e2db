#include "hminlag/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "hminlag/error.hpp"

namespace hminlag {
namespace {

std::int64_t checked(Int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::Overflow, "integer elimination overflow");
  return static_cast<std::int64_t>(v);
}

// g = a*x + b*y
std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<RationalVector> to_rational_rows(const IntMatrix& m) {
  std::vector<RationalVector> rows(m.rows(), RationalVector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = Rational(m(r, c));
  return rows;
}

std::size_t rank_of(const IntMatrix& m) { return hermite_normal_form(m).rows(); }

}  // namespace

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "ragged integer matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ExponentMatrix::ExponentMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.cols() == 0 || entries_.cols() > entries_.rows())
    throw Error(ErrorKind::DimensionMismatch,
                "exponent matrix must be n x (n-k) with n >= 1 and 1 <= n-k <= n, got " +
                    std::to_string(entries_.rows()) + " x " + std::to_string(entries_.cols()));
  std::size_t rank = rank_of(entries_);
  if (rank < entries_.cols())
    throw Error(ErrorKind::RankDeficient, "rows e_j span rank " + std::to_string(rank) + " < n-k = " +
                                              std::to_string(entries_.cols()));
}

IntMatrix hermite_normal_form(const IntMatrix& generators) {
  const std::size_t rows = generators.rows();
  const std::size_t cols = generators.cols();
  std::vector<IntVector> a(rows, IntVector(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = generators(r, c);

  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    for (std::size_t i = pivot_row + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      std::int64_t x = 0, y = 0;
      const std::int64_t p = a[pivot_row][c];
      const std::int64_t q = a[i][c];
      const std::int64_t g = extended_gcd(p, q, x, y);
      const std::int64_t pg = p / g, qg = q / g;
      for (std::size_t col = 0; col < cols; ++col) {
        const Int128 top = a[pivot_row][col];
        const Int128 bottom = a[i][col];
        a[pivot_row][col] = checked(x * top + y * bottom);
        a[i][col] = checked(qg * top - pg * bottom);
      }
    }
    if (a[pivot_row][c] == 0) {
      // column has no pivot among remaining rows
      continue;
    }
    if (a[pivot_row][c] < 0)
      for (auto& v : a[pivot_row]) v = -v;
    const std::int64_t pivot = a[pivot_row][c];
    for (std::size_t i = 0; i < pivot_row; ++i) {
      const std::int64_t f = floor_div(a[i][c], pivot);
      if (f == 0) continue;
      for (std::size_t col = 0; col < cols; ++col)
        a[i][col] = checked(static_cast<Int128>(a[i][col]) - static_cast<Int128>(f) * a[pivot_row][col]);
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }
  IntMatrix hnf(pivot_row, cols);
  for (std::size_t r = 0; r < pivot_row; ++r)
    for (std::size_t c = 0; c < cols; ++c) hnf(r, c) = a[r][c];
  return hnf;
}

LatticeBasis lattice_basis_from_generators(const ExponentMatrix& exponents) {
  IntMatrix hnf = hermite_normal_form(exponents.matrix());
  if (hnf.rows() < exponents.codim())
    throw Error(ErrorKind::RankDeficient, "generators do not span a full-rank lattice");
  return LatticeBasis{to_rational_rows(hnf)};
}

Rational determinant(const std::vector<RationalVector>& rows) {
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  auto a = rows;
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

LatticeBasis dual_basis(const LatticeBasis& basis) {
  const std::size_t n = basis.dim();
  for (const auto& r : basis.rows)
    if (r.size() != n) throw Error(ErrorKind::DimensionMismatch, "lattice basis must be square");
  // Gauss-Jordan on [B | I] gives B^{-1}; the dual rows are the columns of B^{-1}.
  std::vector<RationalVector> a(n, RationalVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = basis.rows[i][j];
    a[i][n + i] = Rational(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw Error(ErrorKind::SingularBasis, "lattice basis has zero determinant");
    std::swap(a[p], a[c]);
    const Rational inv = Rational(1) / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  LatticeBasis dual;
  dual.rows.assign(n, RationalVector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) dual.rows[j][i] = a[i][n + j];
  return dual;
}

GammaGroup gamma_representatives(const LatticeBasis& dual) {
  const std::size_t r = dual.dim();
  if (r >= 62) throw Error(ErrorKind::Overflow, "Gamma too large to enumerate");
  GammaGroup g;
  const std::size_t count = std::size_t{1} << r;
  g.elements.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    RationalVector v(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (!((mask >> i) & 1U)) continue;
      for (std::size_t c = 0; c < r; ++c) v[c] += dual.rows[i][c];
    }
    g.elements.push_back(std::move(v));
  }
  return g;
}

Rational pairing(std::span<const Rational> gamma, std::span<const std::int64_t> e) {
  if (gamma.size() != e.size())
    throw Error(ErrorKind::DimensionMismatch, "pairing of vectors of length " + std::to_string(gamma.size()) +
                                                  " and " + std::to_string(e.size()));
  Rational s(0);
  for (std::size_t i = 0; i < e.size(); ++i) s += gamma[i] * Rational(e[i]);
  return s;
}

FreeActionResult verify_free_action(const ExponentMatrix& exponents, const GammaGroup& gamma) {
  FreeActionResult result;
  result.free = true;
  result.witnesses.resize(gamma.size());
  for (std::size_t g = 0; g < gamma.size(); ++g) {
    const auto& el = gamma.elements[g];
    if (std::all_of(el.begin(), el.end(), [](const Rational& v) { return v.is_zero(); })) continue;
    for (std::size_t j = 0; j < exponents.n(); ++j) {
      const Rational p = pairing(el, exponents.row(j));
      if (!p.is_integer()) throw Error(ErrorKind::DimensionMismatch, "gamma does not pair integrally with e_j");
      if (p.num() % 2 != 0) {
        result.witnesses[g] = j;
        break;
      }
    }
    if (!result.witnesses[g]) result.free = false;
  }
  return result;
}

IntVector sum_vector(const ExponentMatrix& exponents) {
  IntVector e(exponents.codim(), 0);
  for (std::size_t i = 0; i < exponents.n(); ++i)
    for (std::size_t j = 0; j < exponents.codim(); ++j) e[j] += exponents(i, j);
  return e;
}

std::vector<double> LatticePack::dual_coordinates(std::span<const double> y) const {
  std::vector<double> c(lattice.dim(), 0.0);
  for (std::size_t i = 0; i < lattice.dim(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) c[i] += lattice.rows[i][j].to_double() * y[j];
  return c;
}

std::vector<double> LatticePack::from_dual_coordinates(std::span<const double> c) const {
  std::vector<double> y(dual.dim(), 0.0);
  for (std::size_t i = 0; i < dual.dim(); ++i)
    for (std::size_t j = 0; j < dual.dim(); ++j) y[j] += c[i] * dual.rows[i][j].to_double();
  return y;
}

std::vector<double> LatticePack::gamma_as_double(std::size_t index) const {
  std::vector<double> v;
  for (const auto& r : gamma.elements.at(index)) v.push_back(r.to_double());
  return v;
}

LatticePack make_lattice_pack(const ExponentMatrix& exponents) {
  const std::size_t n = exponents.n();
  const std::size_t r = exponents.codim();
  LatticePack pack;
  LatticeBasis hnf = lattice_basis_from_generators(exponents);
  Rational covolume = determinant(hnf.rows);
  if (covolume < Rational(0)) covolume = -covolume;

  // Lexicographic walk over r-subsets of generator rows, bounded so that
  // large systems fall back to the HNF immediately.
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t visited = 0;
  bool found = false;
  while (!found && visited < 20000) {
    ++visited;
    std::vector<RationalVector> rows;
    for (auto i : idx) {
      RationalVector row;
      for (auto v : exponents.row(i)) row.emplace_back(v);
      rows.push_back(std::move(row));
    }
    Rational det = determinant(rows);
    if (det < Rational(0)) det = -det;
    if (det == covolume) {
      pack.lattice.rows = std::move(rows);
      found = true;
      break;
    }
    std::size_t pos = r;
    while (pos > 0 && idx[pos - 1] == n - r + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < r; ++q) idx[q] = idx[q - 1] + 1;
  }
  if (!found) pack.lattice = std::move(hnf);

  pack.dual = dual_basis(pack.lattice);
  pack.gamma = gamma_representatives(pack.dual);
  pack.sum = sum_vector(exponents);
  pack.free_action = verify_free_action(exponents, pack.gamma);
  return pack;
}

}  // namespace hminlag
