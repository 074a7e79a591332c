#include "cdiag/cartan_hom.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cdiag {

bool is_unital_multiplicity(const AlgebraShape& source, const AlgebraShape& target,
                            const MultiplicityMatrix& mult) {
  if (static_cast<int>(mult.k.size()) != target.summands()) return false;
  for (int i = 0; i < target.summands(); ++i) {
    const auto& row = mult.k[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != source.summands()) return false;
    long long total = 0;
    for (int j = 0; j < source.summands(); ++j) {
      if (row[static_cast<std::size_t>(j)] < 0) return false;
      total += row[static_cast<std::size_t>(j)] * source.sizes[static_cast<std::size_t>(j)];
    }
    if (total != target.sizes[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

MatrixUnitHom::MatrixUnitHom(AlgebraShape source, AlgebraShape target, MultiplicityMatrix mult,
                             SlotPartition partition)
    : source_(std::move(source)),
      target_(std::move(target)),
      mult_(std::move(mult)),
      partition_(std::move(partition)) {
  if (!is_unital_multiplicity(source_, target_, mult_)) {
    throw std::invalid_argument("MatrixUnitHom: multiplicity matrix is not unital");
  }
  if (static_cast<int>(partition_.size()) != target_.summands()) {
    throw std::invalid_argument("MatrixUnitHom: partition has wrong summand count");
  }
  for (int i = 0; i < target_.summands(); ++i) {
    const auto& per_target = partition_[static_cast<std::size_t>(i)];
    if (static_cast<int>(per_target.size()) != source_.summands()) {
      throw std::invalid_argument("MatrixUnitHom: partition row has wrong source count");
    }
    std::vector<bool> used(static_cast<std::size_t>(target_.sizes[static_cast<std::size_t>(i)]),
                           false);
    long long covered = 0;
    for (int j = 0; j < source_.summands(); ++j) {
      const auto& per_source = per_target[static_cast<std::size_t>(j)];
      const long long nj = source_.sizes[static_cast<std::size_t>(j)];
      const long long kij = mult_.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (static_cast<long long>(per_source.size()) != nj) {
        throw std::invalid_argument("MatrixUnitHom: partition must list every source slot");
      }
      for (const auto& slots : per_source) {
        if (static_cast<long long>(slots.size()) != kij) {
          throw std::invalid_argument("MatrixUnitHom: slot set size must equal multiplicity");
        }
        long long prev = 0;
        for (long long u : slots) {
          if (u < 1 || u > target_.sizes[static_cast<std::size_t>(i)]) {
            throw std::invalid_argument("MatrixUnitHom: slot index out of range");
          }
          if (u <= prev) {
            throw std::invalid_argument("MatrixUnitHom: slot sets must be strictly ascending");
          }
          prev = u;
          if (used[static_cast<std::size_t>(u - 1)]) {
            throw std::invalid_argument("MatrixUnitHom: slot sets must be disjoint");
          }
          used[static_cast<std::size_t>(u - 1)] = true;
          ++covered;
        }
      }
    }
    if (covered != target_.sizes[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("MatrixUnitHom: slot sets must cover the target diagonal");
    }
  }
}

MatrixUnitHom MatrixUnitHom::canonical(AlgebraShape source, AlgebraShape target,
                                       MultiplicityMatrix mult) {
  if (!is_unital_multiplicity(source, target, mult)) {
    throw std::invalid_argument("canonical hom: multiplicity matrix is not unital");
  }
  SlotPartition partition(static_cast<std::size_t>(target.summands()));
  for (int i = 0; i < target.summands(); ++i) {
    auto& per_target = partition[static_cast<std::size_t>(i)];
    per_target.resize(static_cast<std::size_t>(source.summands()));
    long long next = 1;
    for (int j = 0; j < source.summands(); ++j) {
      const long long nj = source.sizes[static_cast<std::size_t>(j)];
      const long long kij = mult.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      auto& per_source = per_target[static_cast<std::size_t>(j)];
      per_source.resize(static_cast<std::size_t>(nj));
      for (long long p = 0; p < nj; ++p) {
        for (long long s = 0; s < kij; ++s) {
          per_source[static_cast<std::size_t>(p)].push_back(next++);
        }
      }
    }
  }
  return MatrixUnitHom(std::move(source), std::move(target), std::move(mult),
                       std::move(partition));
}

BlockMatrix MatrixUnitHom::image_of_unit(const MatrixUnitRef& ref) const {
  if (ref.summand < 0 || ref.summand >= source_.summands() || ref.row < 1 ||
      ref.row > source_.sizes[static_cast<std::size_t>(ref.summand)] || ref.col < 1 ||
      ref.col > source_.sizes[static_cast<std::size_t>(ref.summand)]) {
    throw std::out_of_range("image_of_unit: bad matrix unit reference");
  }
  BlockMatrix out(target_);
  for (int i = 0; i < target_.summands(); ++i) {
    const auto& rows = partition_[static_cast<std::size_t>(i)][static_cast<std::size_t>(ref.summand)]
                                 [static_cast<std::size_t>(ref.row - 1)];
    const auto& cols = partition_[static_cast<std::size_t>(i)][static_cast<std::size_t>(ref.summand)]
                                 [static_cast<std::size_t>(ref.col - 1)];
    for (std::size_t s = 0; s < rows.size(); ++s) {
      out.set(i, rows[s], cols[s], CRat(1));
    }
  }
  return out;
}

BlockMatrix MatrixUnitHom::apply(const BlockMatrix& a) const {
  if (a.shape() != source_) throw std::invalid_argument("apply: shape mismatch");
  BlockMatrix out(target_);
  for (int j = 0; j < source_.summands(); ++j) {
    for (const auto& [rc, v] : a.block(j)) {
      for (int i = 0; i < target_.summands(); ++i) {
        const auto& rows = partition_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                     [static_cast<std::size_t>(rc.first - 1)];
        const auto& cols = partition_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                     [static_cast<std::size_t>(rc.second - 1)];
        for (std::size_t s = 0; s < rows.size(); ++s) {
          out.set(i, rows[s], cols[s], out.entry(i, rows[s], cols[s]) + v);
        }
      }
    }
  }
  return out;
}

MatrixUnitHom compose(const MatrixUnitHom& g, const MatrixUnitHom& f) {
  if (f.target() != g.source()) throw std::invalid_argument("compose: shapes do not chain");
  const int M = g.target().summands();
  const int N = f.source().summands();
  const int L = f.target().summands();
  MultiplicityMatrix mult;
  mult.k.assign(static_cast<std::size_t>(M), std::vector<long long>(static_cast<std::size_t>(N), 0));
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < N; ++j) {
      for (int l = 0; l < L; ++l) {
        mult.k[i][j] += g.mult().k[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                        f.mult().k[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
      }
    }
  }
  // Composite slot sets: push each f-slot through g's partition; the pairing
  // of two source slots composes f's ascending pairing with g's, so the
  // composite pairing lists are built in f-enumeration order and must agree
  // with their own ascending sort for the result to be a partition hom.
  SlotPartition partition(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    partition[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
      const long long nj = f.source().sizes[static_cast<std::size_t>(j)];
      auto& per_source = partition[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      per_source.resize(static_cast<std::size_t>(nj));
      for (long long p = 0; p < nj; ++p) {
        std::vector<long long> slots;
        for (int l = 0; l < L; ++l) {
          const auto& mid =
              f.partition()[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(p)];
          for (long long a : mid) {
            const auto& deep =
                g.partition()[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)]
                             [static_cast<std::size_t>(a - 1)];
            slots.insert(slots.end(), deep.begin(), deep.end());
          }
        }
        if (!std::is_sorted(slots.begin(), slots.end())) {
          throw std::invalid_argument(
              "compose: composite pairing is not ascending; compose with a canonical right "
              "factor");
        }
        per_source[static_cast<std::size_t>(p)] = std::move(slots);
      }
    }
  }
  return MatrixUnitHom(f.source(), g.target(), std::move(mult), std::move(partition));
}

namespace {

std::vector<MatrixUnitRef> all_units(const AlgebraShape& shape) {
  std::vector<MatrixUnitRef> out;
  for (int j = 0; j < shape.summands(); ++j) {
    const long long n = shape.sizes[static_cast<std::size_t>(j)];
    for (long long p = 1; p <= n; ++p) {
      for (long long q = 1; q <= n; ++q) out.push_back({j, p, q});
    }
  }
  return out;
}

std::vector<MatrixUnitRef> generator_units(const AlgebraShape& shape) {
  std::vector<MatrixUnitRef> out;
  for (int j = 0; j < shape.summands(); ++j) {
    const long long n = shape.sizes[static_cast<std::size_t>(j)];
    for (long long p = 1; p <= n; ++p) out.push_back({j, p, p});
    for (long long p = 1; p < n; ++p) {
      out.push_back({j, p, p + 1});
      out.push_back({j, p + 1, p});
    }
  }
  return out;
}

}  // namespace

HomReport verify_hom(const MatrixUnitHom& hom, VerifyScope scope) {
  HomReport r;
  const AlgebraShape& A = hom.source();
  const AlgebraShape& B = hom.target();
  const auto units = all_units(A);

  if (scope == VerifyScope::Auto) {
    long long unit_count = 0;
    for (long long n : A.sizes) unit_count += n * n;
    scope = unit_count <= 144 ? VerifyScope::Exhaustive : VerifyScope::Generators;
  }
  // Pair list for the multiplicativity check.  Exhaustive takes all pairs of
  // matrix units.  Generators takes all product-compatible generator pairs
  // plus, per generator, a few deterministic zero-product probes; failures on
  // incompatible pairs manifest there.
  std::vector<std::pair<MatrixUnitRef, MatrixUnitRef>> pairs;
  if (scope == VerifyScope::Exhaustive) {
    for (const auto& a : units) {
      for (const auto& b : units) pairs.emplace_back(a, b);
    }
  } else {
    const auto gens = generator_units(A);
    for (std::size_t idx = 0; idx < gens.size(); ++idx) {
      const MatrixUnitRef& a = gens[idx];
      const long long n = A.sizes[static_cast<std::size_t>(a.summand)];
      for (long long c : {a.col - 1, a.col, a.col + 1}) {
        if (c >= 1 && c <= n) pairs.emplace_back(a, MatrixUnitRef{a.summand, a.col, c});
      }
      for (std::size_t off : {std::size_t{1}, std::size_t{7}, gens.size() / 2}) {
        pairs.emplace_back(a, gens[(idx + off) % gens.size()]);
      }
    }
  }

  r.multiplicative = true;
  for (const auto& [a, b] : pairs) {
    const BlockMatrix product = mul(hom.image_of_unit(a), hom.image_of_unit(b));
    BlockMatrix expected(B);
    if (a.summand == b.summand && a.col == b.row) {
      expected = hom.image_of_unit({a.summand, a.row, b.col});
    }
    if (product != expected) {
      r.multiplicative = false;
      break;
    }
  }

  r.adjoint_ok = true;
  for (const auto& a : units) {
    if (adjoint(hom.image_of_unit(a)) != hom.image_of_unit({a.summand, a.col, a.row})) {
      r.adjoint_ok = false;
      break;
    }
  }

  BlockMatrix unit_sum(B);
  for (int j = 0; j < A.summands(); ++j) {
    for (long long p = 1; p <= A.sizes[static_cast<std::size_t>(j)]; ++p) {
      unit_sum = add(unit_sum, hom.image_of_unit({j, p, p}));
    }
  }
  r.unital = (unit_sum == BlockMatrix::identity(B));

  r.diagonal_preserved = true;
  r.normalizer_preserved = true;
  for (const auto& a : units) {
    const BlockMatrix img = hom.image_of_unit(a);
    if (a.row == a.col && !is_diagonal(img)) r.diagonal_preserved = false;
    if (!is_in_normalizer(img)) r.normalizer_preserved = false;
  }

  r.k0_matches = true;
  for (int i = 0; i < B.summands(); ++i) {
    for (int j = 0; j < A.summands(); ++j) {
      const CRat tr = block_trace(hom.image_of_unit({j, 1, 1}), i);
      const CRat want(static_cast<long>(
          hom.mult().k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
      if (!(tr == want)) r.k0_matches = false;
    }
  }
  return r;
}

std::string HomReport::text() const {
  std::ostringstream os;
  auto line = [&](const char* name, bool ok) {
    os << (ok ? "pass" : "FAIL") << "  " << name << "\n";
  };
  line("multiplicativity", multiplicative);
  line("adjoint compatibility", adjoint_ok);
  line("unitality", unital);
  line("diagonal preservation", diagonal_preserved);
  line("normalizer preservation", normalizer_preserved);
  line("induced K0 equals multiplicity", k0_matches);
  return os.str();
}

BlockMatrix conjugating_unitary(const MatrixUnitHom& phi, const MatrixUnitHom& psi) {
  if (phi.source() != psi.source() || phi.target() != psi.target()) {
    throw std::invalid_argument("conjugating_unitary: shape mismatch");
  }
  if (phi.mult() != psi.mult()) {
    throw std::invalid_argument("conjugating_unitary: multiplicity mismatch");
  }
  const AlgebraShape& B = phi.target();
  BlockMatrix u(B);
  for (int i = 0; i < B.summands(); ++i) {
    for (int j = 0; j < phi.source().summands(); ++j) {
      const long long nj = phi.source().sizes[static_cast<std::size_t>(j)];
      for (long long p = 0; p < nj; ++p) {
        const auto& from = phi.partition()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                          [static_cast<std::size_t>(p)];
        const auto& to = psi.partition()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                        [static_cast<std::size_t>(p)];
        for (std::size_t s = 0; s < from.size(); ++s) {
          u.set(i, to[s], from[s], CRat(1));
        }
      }
    }
  }
  return u;
}

std::string serialize_hom(const MatrixUnitHom& hom) {
  std::ostringstream os;
  os << "source:";
  for (long long n : hom.source().sizes) os << " " << n;
  os << "\ntarget:";
  for (long long n : hom.target().sizes) os << " " << n;
  os << "\nmult:\n";
  for (const auto& row : hom.mult().k) {
    os << " ";
    for (long long v : row) os << " " << v;
    os << "\n";
  }
  os << "partition:\n";
  for (int i = 0; i < hom.target().summands(); ++i) {
    for (int j = 0; j < hom.source().summands(); ++j) {
      const auto& per_source =
          hom.partition()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (std::size_t p = 0; p < per_source.size(); ++p) {
        os << "  H[" << i + 1 << "," << j + 1 << "," << p + 1 << "] =";
        for (long long u : per_source[p]) os << " " << u;
        os << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace cdiag
