#pragma once

#include <string>
#include <vector>

#include "cdiag/interval_map.hpp"

namespace cdiag {

enum class Base { Point, Interval };

/// One summand p(C(Z) ⊗ M_r)p at a level of the diagram.  Projections are
/// full, so rank coincides with the matrix size.
struct SummandShape {
  Base base = Base::Point;
  long long size = 1;

  long long rank() const { return size; }
  bool operator==(const SummandShape&) const = default;
};

/// All labeled edges from summand `source` at level `level` to summand
/// `target` at level `level + 1`.  Indices are 0-based.  The label count is
/// the multiplicity s of the embedding.
struct EdgeBundle {
  int level = 0;
  int source = 0;
  int target = 0;
  std::vector<PLMap> labels;

  bool operator==(const EdgeBundle&) const = default;
};

using IntMatrix = std::vector<std::vector<long long>>;

/// Finite labeled Bratteli diagram, optionally extended by a repetition rule
/// (the final transition's bundles repeat indefinitely, with summand sizes
/// propagated by the size constraint).
struct Diagram {
  std::vector<std::vector<SummandShape>> levels;
  std::vector<EdgeBundle> bundles;
  bool repeat_last = false;

  int depth() const { return static_cast<int>(levels.size()); }

  /// Bundle between (level, source) and (level+1, target), or nullptr.
  const EdgeBundle* bundle(int level, int source, int target) const;

  /// Bundles out of `level`, sorted by (source, target).
  std::vector<const EdgeBundle*> bundles_at(int level) const;

  bool operator==(const Diagram&) const = default;
};

/// Every violated invariant, with coordinates; empty means valid.
std::vector<std::string> validate(const Diagram& d);

/// Throws std::invalid_argument listing all violations.
void require_valid(const Diagram& d);

/// Summand sizes at a level.
std::vector<long long> size_vector(const Diagram& d, int level);

/// Label-count matrix S_n, dimensions N_{n+1} x N_n.  Throws
/// std::out_of_range for the last level.
IntMatrix multiplicity_matrix(const Diagram& d, int level);

/// Ordinary matrix product S_{to-1} ... S_{from} of the transition matrices;
/// the identity when from == to.
IntMatrix composite_multiplicity(const Diagram& d, int from, int to);

/// Subsequence diagram: level k of the result is level stages[k] of d, with
/// composite labels along all intermediate chains.  Stages are 0-based,
/// strictly increasing and nonempty; throws std::invalid_argument otherwise.
Diagram telescope(const Diagram& d, const std::vector<int>& stages);

/// Expands the repetition rule until the diagram has target_depth levels.
/// Diagrams without a repetition rule are returned unchanged.
Diagram materialize(const Diagram& d, int target_depth);

/// Deterministic DOT rendering.  Throws std::invalid_argument on an invalid
/// diagram.
std::string export_dot(const Diagram& d);

}  // namespace cdiag
