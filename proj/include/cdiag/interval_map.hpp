#pragma once

#include <string>
#include <vector>

#include "cdiag/rational.hpp"

namespace cdiag {

/// Closed rational subinterval of [0,1].
struct Interval {
  Rat lo;
  Rat hi;

  bool operator==(const Interval&) const = default;
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool degenerate() const { return lo == hi; }
};

/// Exact piecewise-linear self-map of [0,1].
///
/// Stored as strictly increasing rational breakpoints 0 = x_0 < ... < x_k = 1
/// with ordinates in [0,1], interpolated affinely between consecutive
/// breakpoints.  Instances are always in canonical form: no interior
/// breakpoint is collinear with its neighbours, so structural equality is
/// pointwise equality.
class PLMap {
 public:
  /// Identity map.
  PLMap();

  /// Validates the invariants and canonicalizes.  Throws
  /// std::invalid_argument if the data does not describe a PL self-map.
  PLMap(std::vector<Rat> breakpoints, std::vector<Rat> values);

  static PLMap identity();
  static PLMap constant(const Rat& c);
  /// Tent map: breakpoints 0, 1/2, 1 with values 0, 1, 0.
  static PLMap tent();
  /// t -> t/2.
  static PLMap lower_half();
  /// t -> (t+1)/2.
  static PLMap upper_half();

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& values() const { return ys_; }

  /// Exact evaluation.  Throws std::domain_error if t is outside [0,1].
  Rat operator()(const Rat& t) const;

  bool operator==(const PLMap&) const = default;

 private:
  std::vector<Rat> xs_;
  std::vector<Rat> ys_;

  void canonicalize();
};

/// f after g, i.e. t -> f(g(t)), in canonical form.
PLMap compose(const PLMap& f, const PLMap& g);

/// Structural profile of a PL map, read off its canonical breakpoint data.
struct MapProfile {
  bool constant;
  bool monotone;       // weakly monotone
  bool injective;      // strictly monotone
  bool surjective;     // image is all of [0,1]
  bool homeomorphism;  // injective and surjective
  Interval image;

  bool operator==(const MapProfile&) const = default;
};

MapProfile analyze(const PLMap& f);

/// Exact image of a subinterval of [0,1] under f.
Interval image_on(const PLMap& f, const Interval& domain);

/// Short label name used by reports and DOT export: "id", "const(1/2)",
/// "tent", "g", "h", or "pl<breakpoint count>".
std::string describe_label(const PLMap& f);

}  // namespace cdiag
