#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hminlag/rational.hpp"

namespace hminlag {

using IntVector = std::vector<std::int64_t>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const std::int64_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector row_vector(std::size_t r) const { auto s = row(r); return {s.begin(), s.end()}; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// The exponents e_{ij} of a quadric system. Row i is the vector e_i in
/// Z^{n-k}; column j holds the coefficients of the j-th equation.
///
/// Construction enforces n >= 1, 1 <= n-k <= n and full column rank (the
/// rows generate a lattice of maximal rank); violations throw
/// Error(RankDeficient) or Error(DimensionMismatch).
class ExponentMatrix {
 public:
  explicit ExponentMatrix(IntMatrix entries);

  std::size_t n() const noexcept { return entries_.rows(); }
  std::size_t codim() const noexcept { return entries_.cols(); }
  std::size_t k() const noexcept { return n() - codim(); }

  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  std::span<const std::int64_t> row(std::size_t i) const { return entries_.row(i); }
  const IntMatrix& matrix() const noexcept { return entries_; }

 private:
  IntMatrix entries_;
};

/// Square basis of a lattice in R^{n-k}; rows are the basis vectors.
struct LatticeBasis {
  std::vector<RationalVector> rows;

  std::size_t dim() const noexcept { return rows.size(); }
  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

/// Coset representatives of Lambda*/2Lambda*, ordered by the bitmask m whose
/// bit i selects dual basis row i. The zero vector is always first.
struct GammaGroup {
  std::vector<RationalVector> elements;

  std::size_t size() const noexcept { return elements.size(); }
};

struct FreeActionResult {
  bool free = false;
  /// witnesses[g] is an index j with (e_j, gamma_g) odd; empty for gamma = 0
  /// and for elements that fix every parity.
  std::vector<std::optional<std::size_t>> witnesses;
};

/// Row-style Hermite normal form of the lattice generated by the rows of
/// `generators`: upper echelon, positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& generators);

LatticeBasis lattice_basis_from_generators(const ExponentMatrix& exponents);
LatticeBasis dual_basis(const LatticeBasis& basis);
GammaGroup gamma_representatives(const LatticeBasis& dual);

Rational pairing(std::span<const Rational> gamma, std::span<const std::int64_t> e);
Rational determinant(const std::vector<RationalVector>& rows);

FreeActionResult verify_free_action(const ExponentMatrix& exponents, const GammaGroup& gamma);
IntVector sum_vector(const ExponentMatrix& exponents);

/// Everything downstream modules need about Lambda, Lambda* and Gamma.
///
/// The Lambda basis is taken from the generators themselves when some
/// (n-k)-subset of the rows e_j already has the lattice covolume (first such
/// subset in lexicographic index order); otherwise the Hermite normal form is
/// used. Both are bases of the same lattice, the former simply reproduces the
/// hand-picked bases one writes down for small examples.
struct LatticePack {
  LatticeBasis lattice;
  LatticeBasis dual;
  GammaGroup gamma;
  IntVector sum;
  FreeActionResult free_action;

  /// Coordinates of y in the dual basis: c_i = (b_i, y), so y = sum c_i b*_i.
  std::vector<double> dual_coordinates(std::span<const double> y) const;
  /// Inverse of dual_coordinates.
  std::vector<double> from_dual_coordinates(std::span<const double> c) const;
  std::vector<double> gamma_as_double(std::size_t index) const;
};

LatticePack make_lattice_pack(const ExponentMatrix& exponents);

}  // namespace hminlag
