#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdiag/rational.hpp"

namespace cdiag {

/// Exact complex-rational scalar.
struct CRat {
  Rat re;
  Rat im;

  CRat() : re(0), im(0) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit CRat(long v) : re(v), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  CRat conj() const { return CRat(re, -im); }
  bool operator==(const CRat&) const = default;

  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

/// Shape of a finite-dimensional C*-algebra ⊕_j M_{n_j}.
struct AlgebraShape {
  std::vector<long long> sizes;

  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<long long> s);

  int summands() const { return static_cast<int>(sizes.size()); }
  long long total_dim() const;
  bool operator==(const AlgebraShape&) const = default;
};

/// Reference to the matrix unit e^j_{pq}.  Summand is 0-based; row and
/// column are 1-based, matching the usual matrix-unit notation.
struct MatrixUnitRef {
  int summand = 0;
  long long row = 1;
  long long col = 1;

  bool operator==(const MatrixUnitRef&) const = default;
};

/// Sparse exact element of ⊕_j M_{n_j}.  Entries are stored per summand in
/// row-major order; zeros are never stored.
class BlockMatrix {
 public:
  explicit BlockMatrix(AlgebraShape shape);

  static BlockMatrix zero(const AlgebraShape& shape) { return BlockMatrix(shape); }
  static BlockMatrix identity(const AlgebraShape& shape);
  /// Single matrix unit.  Throws std::out_of_range on a bad index.
  static BlockMatrix unit(const AlgebraShape& shape, const MatrixUnitRef& ref);

  const AlgebraShape& shape() const { return shape_; }
  CRat entry(int summand, long long row, long long col) const;
  void set(int summand, long long row, long long col, const CRat& value);

  const std::map<std::pair<long long, long long>, CRat>& block(int summand) const {
    return blocks_[static_cast<std::size_t>(summand)];
  }

  bool operator==(const BlockMatrix&) const = default;

 private:
  AlgebraShape shape_;
  std::vector<std::map<std::pair<long long, long long>, CRat>> blocks_;

  void check_index(int summand, long long row, long long col) const;
};

BlockMatrix add(const BlockMatrix& a, const BlockMatrix& b);
/// Blockwise product.  Throws std::invalid_argument on shape mismatch.
BlockMatrix mul(const BlockMatrix& a, const BlockMatrix& b);
/// Conjugate transpose.
BlockMatrix adjoint(const BlockMatrix& a);

/// True iff every summand block has at most one nonzero entry per row and
/// per column (generalized permutation matrix).
bool is_in_normalizer(const BlockMatrix& a);
bool is_unitary(const BlockMatrix& a);
/// u a u*.  Throws std::invalid_argument if u is not unitary.
BlockMatrix ad(const BlockMatrix& u, const BlockMatrix& a);

/// Sum of the diagonal entries of one summand block.
CRat block_trace(const BlockMatrix& a, int summand);

bool is_diagonal(const BlockMatrix& a);

/// Per-summand triplet listing (row, col, re, im) with fraction strings.
std::string debug_serialize(const BlockMatrix& a);

}  // namespace cdiag
