#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cdiag/diagram.hpp"

namespace cdiag {

/// Ordered K0 of one diagram stage: Z^rank with the size vector as order
/// unit.
struct StageK0 {
  int rank = 0;
  std::vector<long long> order_unit;

  bool operator==(const StageK0&) const = default;
};

StageK0 stage_k0(const Diagram& d, int level);

/// Scalar stage Z with unit 1, used to seed the intertwining.
StageK0 scalar_stage();

struct OrderedGroupMap {
  IntMatrix matrix;  // rows: target rank, cols: source rank
  StageK0 source;
  StageK0 target;
};

struct MapCheck {
  bool positive = false;
  bool unit_preserving = false;

  bool operator==(const MapCheck&) const = default;
};

/// Entrywise positivity and order-unit preservation.  Throws
/// std::invalid_argument on dimension mismatch.
MapCheck check_map(const OrderedGroupMap& m);

std::vector<long long> mat_vec(const IntMatrix& m, const std::vector<long long>& v);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

struct FactorFound {
  int stage;       // stage of the target diagram (0-based level)
  IntMatrix matrix;
};

struct NotFoundUpTo {
  int bound;
};

using FactorResult = std::variant<FactorFound, NotFoundUpTo>;

/// The Elliott factorization step.  Looks for the smallest stage m with
/// start <= m <= search_bound and a nonnegative integer matrix X such that
///   X * anchor_map = composite multiplicity of `target` from anchor_stage
///                    to m, and
///   X * source.order_unit = order unit of target at m.
/// anchor_stage = -1 denotes the scalar stage Z in front of the tower, whose
/// composite into level m is the column of stage sizes.  Within a stage,
/// candidate matrices are enumerated in lexicographic order (entries bounded
/// by the order units), so the result is deterministic.
FactorResult factor_through(const StageK0& source, const IntMatrix& anchor_map, int anchor_stage,
                            const Diagram& target, int start, int search_bound);

/// Truncated supernatural number: prime exponents of the top stage size,
/// flagged unbounded when the repetition rule keeps multiplying that prime.
struct SupernaturalNumber {
  struct Power {
    long long exponent = 0;
    bool unbounded = false;
    bool operator==(const Power&) const = default;
  };
  std::map<long long, Power> factors;

  bool operator==(const SupernaturalNumber&) const = default;
  std::string str() const;
};

/// Supernatural invariant of a single-summand point-base tower, computed to
/// the given depth (materializing the repetition rule).  Throws
/// std::invalid_argument on multi-summand or interval-base input.
SupernaturalNumber supernatural_invariant(const Diagram& d, int depth);

}  // namespace cdiag
