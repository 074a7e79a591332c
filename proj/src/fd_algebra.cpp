#include "cdiag/fd_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace cdiag {

AlgebraShape::AlgebraShape(std::vector<long long> s) : sizes(std::move(s)) {
  if (sizes.empty()) throw std::invalid_argument("AlgebraShape: no summands");
  for (long long n : sizes) {
    if (n < 1) throw std::invalid_argument("AlgebraShape: summand size must be positive");
  }
}

long long AlgebraShape::total_dim() const {
  long long t = 0;
  for (long long n : sizes) t += n;
  return t;
}

BlockMatrix::BlockMatrix(AlgebraShape shape)
    : shape_(std::move(shape)), blocks_(static_cast<std::size_t>(shape_.summands())) {}

BlockMatrix BlockMatrix::identity(const AlgebraShape& shape) {
  BlockMatrix m(shape);
  for (int j = 0; j < shape.summands(); ++j) {
    for (long long p = 1; p <= shape.sizes[static_cast<std::size_t>(j)]; ++p) {
      m.set(j, p, p, CRat(1));
    }
  }
  return m;
}

BlockMatrix BlockMatrix::unit(const AlgebraShape& shape, const MatrixUnitRef& ref) {
  BlockMatrix m(shape);
  m.check_index(ref.summand, ref.row, ref.col);
  m.set(ref.summand, ref.row, ref.col, CRat(1));
  return m;
}

void BlockMatrix::check_index(int summand, long long row, long long col) const {
  if (summand < 0 || summand >= shape_.summands()) {
    throw std::out_of_range("BlockMatrix: summand index out of range");
  }
  const long long n = shape_.sizes[static_cast<std::size_t>(summand)];
  if (row < 1 || row > n || col < 1 || col > n) {
    throw std::out_of_range("BlockMatrix: entry index out of range");
  }
}

CRat BlockMatrix::entry(int summand, long long row, long long col) const {
  check_index(summand, row, col);
  const auto& b = blocks_[static_cast<std::size_t>(summand)];
  const auto it = b.find({row, col});
  return it == b.end() ? CRat() : it->second;
}

void BlockMatrix::set(int summand, long long row, long long col, const CRat& value) {
  check_index(summand, row, col);
  auto& b = blocks_[static_cast<std::size_t>(summand)];
  if (value.is_zero()) {
    b.erase({row, col});
  } else {
    b[{row, col}] = value;
  }
}

BlockMatrix add(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.shape() != b.shape()) throw std::invalid_argument("add: shape mismatch");
  BlockMatrix out = a;
  for (int j = 0; j < b.shape().summands(); ++j) {
    for (const auto& [rc, v] : b.block(j)) {
      out.set(j, rc.first, rc.second, out.entry(j, rc.first, rc.second) + v);
    }
  }
  return out;
}

BlockMatrix mul(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.shape() != b.shape()) throw std::invalid_argument("mul: shape mismatch");
  BlockMatrix out(a.shape());
  for (int j = 0; j < a.shape().summands(); ++j) {
    // Bucket the right factor's entries by row for sparse accumulation.
    std::map<long long, std::vector<std::pair<long long, CRat>>> by_row;
    for (const auto& [rc, v] : b.block(j)) by_row[rc.first].push_back({rc.second, v});
    std::map<std::pair<long long, long long>, CRat> acc;
    for (const auto& [rc_a, va] : a.block(j)) {
      const auto it = by_row.find(rc_a.second);
      if (it == by_row.end()) continue;
      for (const auto& [col, vb] : it->second) {
        auto& slot = acc[{rc_a.first, col}];
        slot = slot + va * vb;
      }
    }
    for (const auto& [rc, v] : acc) out.set(j, rc.first, rc.second, v);
  }
  return out;
}

BlockMatrix adjoint(const BlockMatrix& a) {
  BlockMatrix out(a.shape());
  for (int j = 0; j < a.shape().summands(); ++j) {
    for (const auto& [rc, v] : a.block(j)) {
      out.set(j, rc.second, rc.first, v.conj());
    }
  }
  return out;
}

bool is_in_normalizer(const BlockMatrix& a) {
  for (int j = 0; j < a.shape().summands(); ++j) {
    std::map<long long, int> per_row, per_col;
    for (const auto& [rc, v] : a.block(j)) {
      (void)v;
      if (++per_row[rc.first] > 1) return false;
      if (++per_col[rc.second] > 1) return false;
    }
  }
  return true;
}

bool is_unitary(const BlockMatrix& a) {
  const BlockMatrix id = BlockMatrix::identity(a.shape());
  const BlockMatrix star = adjoint(a);
  return mul(a, star) == id && mul(star, a) == id;
}

BlockMatrix ad(const BlockMatrix& u, const BlockMatrix& a) {
  if (!is_unitary(u)) throw std::invalid_argument("ad: conjugator is not unitary");
  return mul(mul(u, a), adjoint(u));
}

CRat block_trace(const BlockMatrix& a, int summand) {
  CRat t;
  for (const auto& [rc, v] : a.block(summand)) {
    if (rc.first == rc.second) t = t + v;
  }
  return t;
}

bool is_diagonal(const BlockMatrix& a) {
  for (int j = 0; j < a.shape().summands(); ++j) {
    for (const auto& [rc, v] : a.block(j)) {
      (void)v;
      if (rc.first != rc.second) return false;
    }
  }
  return true;
}

std::string debug_serialize(const BlockMatrix& a) {
  std::ostringstream os;
  for (int j = 0; j < a.shape().summands(); ++j) {
    os << "summand " << j + 1 << " (M_" << a.shape().sizes[static_cast<std::size_t>(j)] << "):";
    if (a.block(j).empty()) os << " 0";
    os << "\n";
    for (const auto& [rc, v] : a.block(j)) {
      os << "  (" << rc.first << "," << rc.second << ") " << format_fraction(v.re) << " "
         << format_fraction(v.im) << "\n";
    }
  }
  return os.str();
}

}  // namespace cdiag
