#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cdiag/cartan_hom.hpp"
#include "cdiag/k_theory.hpp"

namespace cdiag {

/// Finite-depth witness of the AF zigzag: stage indices into the two
/// (materialized) towers, the down and up homomorphisms, and the normalizer
/// unitaries correcting each triangle.
struct IntertwiningCertificate {
  std::vector<int> stagesA;              // n_1 < ... < n_depth (0-based levels)
  std::vector<int> stagesB;              // m_1 < ... < m_depth
  std::vector<MatrixUnitHom> downs;      // f_k : A_{n_k} -> B_{m_k}
  std::vector<MatrixUnitHom> ups;        // g_k : B_{m_k} -> A_{n_{k+1}}
  std::vector<BlockMatrix> unitariesA;   // U_{k+1} with g_k f_k = Ad(U_{k+1}) phi
  std::vector<BlockMatrix> unitariesB;   // V_{k+1} with f_{k+1} g_k = Ad(V_{k+1}) psi

  int depth() const { return static_cast<int>(downs.size()); }
};

/// Bounded refutation: the zigzag step at which no positive unit-preserving
/// factorization exists up to the search bound.  Explicitly not a proof of
/// non-isomorphism.
struct Refutation {
  int failed_step = 0;     // 1-based zigzag step
  char failed_side = 'B';  // 'B': no down factorization, 'A': no up factorization
  int bound = 0;
  std::string detail;
};

using IntertwiningResult = std::variant<IntertwiningCertificate, Refutation>;

/// Builds the K0 zigzag by repeated factorization, lifts it to matrix-unit
/// homomorphisms and corrects each triangle with a normalizer unitary.
/// Both diagrams must be valid point-base (AF) towers; throws
/// std::invalid_argument otherwise.  A seed, when given, is used as the
/// first down map and must be positive and unit preserving into some stage
/// of B.
IntertwiningResult build_intertwining(const Diagram& A, const Diagram& B,
                                      const std::optional<IntMatrix>& seed, int depth,
                                      int search_bound);

struct CertificateReport {
  bool ok = false;
  std::vector<std::string> failures;
  std::string text;
};

/// Re-checks every certificate invariant by exact computation: each hom
/// passes verify_hom, each unitary is a normalizer unitary, and both
/// triangle identities hold on matrix units at every stage.
CertificateReport verify_certificate(const IntertwiningCertificate& cert, const Diagram& A,
                                     const Diagram& B);

struct Decision {
  bool isomorphic_witnessed = false;
  std::optional<IntertwiningCertificate> certificate;
  std::optional<Refutation> refutation;
  std::optional<SupernaturalNumber> supernaturalA;
  std::optional<SupernaturalNumber> supernaturalB;
  std::string text;
};

Decision decide_af_pair_isomorphic(const Diagram& A, const Diagram& B, int depth,
                                   int search_bound);

/// Stable text serialization (stages, matrices, partitions, unitary
/// permutation tables).
std::string serialize_certificate(const IntertwiningCertificate& cert);

}  // namespace cdiag
