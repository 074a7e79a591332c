#pragma once

#include <string>
#include <vector>

#include "cdiag/diagram.hpp"

namespace cdiag {

/// Slot-consistent path: a starting diagonal slot at level 1 together with a
/// choice of (target summand, label index) per transition; the arrival slots
/// are derived from the block layout and threaded through the levels.
struct SlotPath {
  int start_summand = 0;
  long long start_slot = 1;  // 1-based within the summand rank
  std::vector<std::pair<int, int>> steps;           // (target summand, label index)
  std::vector<std::pair<int, long long>> arrivals;  // (summand, slot) per level, incl. start

  bool operator==(const SlotPath&) const = default;
};

/// Block layout of the connecting map into (level+1, target): blocks ordered
/// by (source summand ascending, label index ascending), each of source
/// rank.  Returns the 1-based arrival slot.
long long arrival_slot(const Diagram& d, int level, int target, int source, int label_index,
                       long long source_slot);

/// Inverse of the block layout: which (source summand, label index, source
/// slot) feeds the given slot of (level+1, target).
struct SlotOrigin {
  int source = 0;
  int label_index = 0;
  long long slot = 1;
  bool operator==(const SlotOrigin&) const = default;
};
SlotOrigin decompose_slot(const Diagram& d, int level, int target, long long slot);

/// All slot-consistent paths with `depth` steps, in deterministic order
/// (start summand, start slot, then steps lexicographic).  Throws
/// std::out_of_range if depth exceeds the diagram depth.
std::vector<SlotPath> enumerate_paths(const Diagram& d, int depth);

/// Number of connected components of the diagonal's spectrum seen at this
/// depth (= number of cylinder classes = slot-consistent path count).
long long count_components(const Diagram& d, int depth);

enum class Verdict { Singleton, Arc, NotArc, Unknown };

struct PathClassification {
  Verdict verdict = Verdict::Unknown;
  std::string reason;    // rule applied, or the NotArc reason tag
  std::string evidence;  // finite evidence recorded for the verdict

  bool operator==(const PathClassification&) const = default;
};

std::string verdict_name(Verdict v);

/// Eventually periodic label sequence along a path: an explicit finite
/// prefix followed by a repeating cycle, plus a point-base flag.
struct PathTail {
  std::vector<PLMap> prefix;
  std::vector<PLMap> cycle;
  bool point_base = false;
};

/// Sound partial classification of the inverse limit along the tail:
/// point bases or cofinal constants give Singleton; all-homeomorphism tails
/// give Arc; cofinal full-tent labels give NotArc; everything else is
/// Unknown.  Throws std::invalid_argument when no tail data is present.
PathClassification classify_path(const PathTail& tail);

struct PathClassEntry {
  std::string description;
  PathClassification cls;
};

/// Classifies the cylinder classes of the diagram's paths by tail pattern:
/// one entry per distinct cofinal label, plus a mixed-cycle entry.  The
/// cofinal label set is the repeated transition's labels (last transition
/// when no repetition rule is declared).
std::vector<PathClassEntry> path_census(const Diagram& d);

/// Finite truncation of one inverse-limit component: exact thread tuples
/// (x_1, ..., x_depth) with x_n = labels[n-1](x_{n+1}), parametrized by a
/// uniform rational grid below level depth.
struct ThreadCloud {
  int depth = 0;
  std::vector<std::vector<Rat>> samples;
};

ThreadCloud approximate_component(const std::vector<PLMap>& labels, int depth, int sample_count);

/// Single-summand Goodearl-type tower over [0,1]: each transition's labels
/// cycle through {identity, constant x_n}.  Sizes must divide successively.
Diagram build_goodearl(const std::vector<long long>& sizes, const std::vector<Rat>& constants,
                       bool repeat = true);

/// AH model of a dynamical system on [0,1]: labels are identities with a
/// final copy of the homeomorphism sigma per transition.
Diagram build_ah_model(const std::vector<long long>& sizes, const PLMap& sigma,
                       bool repeat = true);

/// Sufficient simplicity surrogate: passes iff from every start level up to
/// the horizon, composite label chains of length <= horizon land inside
/// every cell of the 1/epsilon grid.  A false result means "not
/// established", never "not simple".
bool check_simplicity_sufficient(const Diagram& d, const Rat& epsilon, int horizon);

/// Spectral-incompleteness witness construction: telescopes the input tower
/// until the per-step multiplicities grow fast enough, then replaces three
/// labels per transition by gamma, t/2 and (t+1)/2.
struct WitnessReport {
  Diagram witness;
  std::vector<int> stages;  // telescope stages into the (materialized) input
  bool surjective_levels = false;
  bool simplicity_ok = false;
  PathClassification gamma_class;
  std::vector<PathClassEntry> original_census;
  bool witnessed = false;
  std::string text;
};

/// gammas: one map per transition of the telescoped tower, a single map to
/// use everywhere, or empty for the default tent map.  Throws
/// std::invalid_argument when the growth conditions are unattainable.
WitnessReport incompleteness_witness(const Diagram& d, const std::vector<PLMap>& gammas = {});

/// Human-readable spectrum report with a mirrored machine-readable block.
std::string spectrum_report(const Diagram& d, int max_depth);

}  // namespace cdiag
