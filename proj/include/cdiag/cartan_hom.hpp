#pragma once

#include <string>
#include <vector>

#include "cdiag/fd_algebra.hpp"

namespace cdiag {

/// Embedding multiplicities k[i][j] of source summand j into target summand
/// i.  A unital homomorphism exists iff sum_j k[i][j] n_j = m_i per row.
struct MultiplicityMatrix {
  std::vector<std::vector<long long>> k;

  bool operator==(const MultiplicityMatrix&) const = default;
};

/// True iff the multiplicity matrix is nonnegative and column-unital for the
/// given shapes.
bool is_unital_multiplicity(const AlgebraShape& source, const AlgebraShape& target,
                            const MultiplicityMatrix& mult);

/// Slot partition for target summand i: partition[i][j][p-1] is the ascending
/// set H^{ij}_p of diagonal slots of M_{m_i} carrying the p-th diagonal unit
/// of source summand j.
using SlotPartition = std::vector<std::vector<std::vector<std::vector<long long>>>>;

/// Unital *-homomorphism between finite-dimensional algebras presented by a
/// multiplicity matrix and a slot partition; maps the diagonal into the
/// diagonal and matrix units to sums of matrix units.
class MatrixUnitHom {
 public:
  /// Validates the partition against the multiplicity data; throws
  /// std::invalid_argument on any violation.
  MatrixUnitHom(AlgebraShape source, AlgebraShape target, MultiplicityMatrix mult,
                SlotPartition partition);

  /// Canonical contiguous layout: within target summand i, slots are
  /// assigned in order of (source summand ascending, then p ascending).
  /// Throws std::invalid_argument if mult is not unital for the shapes.
  static MatrixUnitHom canonical(AlgebraShape source, AlgebraShape target,
                                 MultiplicityMatrix mult);

  const AlgebraShape& source() const { return source_; }
  const AlgebraShape& target() const { return target_; }
  const MultiplicityMatrix& mult() const { return mult_; }
  const SlotPartition& partition() const { return partition_; }

  /// Image of e^j_{pq}: the sum over target summands of
  /// f^{ij}_{pq} = sum_s h^i_{u_s v_s}, pairing the ascending enumerations
  /// of H^{ij}_p and H^{ij}_q.
  BlockMatrix image_of_unit(const MatrixUnitRef& ref) const;

  /// Linear extension to an arbitrary element.
  BlockMatrix apply(const BlockMatrix& a) const;

  bool operator==(const MatrixUnitHom&) const = default;

 private:
  AlgebraShape source_;
  AlgebraShape target_;
  MultiplicityMatrix mult_;
  SlotPartition partition_;
};

/// g after f.  Throws std::invalid_argument if shapes do not chain.
MatrixUnitHom compose(const MatrixUnitHom& g, const MatrixUnitHom& f);

/// Per-axiom verification report, computed by exhaustive matrix-unit
/// arithmetic.
struct HomReport {
  bool multiplicative = false;
  bool adjoint_ok = false;
  bool unital = false;
  bool diagonal_preserved = false;
  bool normalizer_preserved = false;
  bool k0_matches = false;

  bool all() const {
    return multiplicative && adjoint_ok && unital && diagonal_preserved &&
           normalizer_preserved && k0_matches;
  }
  std::string text() const;
};

/// Multiplicativity check scope.  Exhaustive covers all pairs of matrix
/// units; Generators covers all pairs drawn from the diagonal units and the
/// adjacent off-diagonal units e_{p,p+1}, e_{p+1,p}, which generate each
/// summand.  Auto picks Exhaustive for small total dimension.
enum class VerifyScope { Auto, Exhaustive, Generators };

HomReport verify_hom(const MatrixUnitHom& hom, VerifyScope scope = VerifyScope::Auto);

/// The normalizer unitary U with psi = Ad(U) ∘ phi, built by pairing the
/// slot enumerations of the two partitions.  Requires equal shapes and
/// multiplicities; throws std::invalid_argument otherwise.
BlockMatrix conjugating_unitary(const MatrixUnitHom& phi, const MatrixUnitHom& psi);

/// Hom serialization: multiplicity matrix plus partition table.
std::string serialize_hom(const MatrixUnitHom& hom);

}  // namespace cdiag
