#include "cdiag/k_theory.hpp"

#include <sstream>
#include <stdexcept>

namespace cdiag {

StageK0 stage_k0(const Diagram& d, int level) {
  if (level < 0 || level >= d.depth()) throw std::out_of_range("stage_k0: level out of range");
  StageK0 k;
  k.rank = static_cast<int>(d.levels[level].size());
  k.order_unit = size_vector(d, level);
  return k;
}

StageK0 scalar_stage() { return StageK0{1, {1}}; }

MapCheck check_map(const OrderedGroupMap& m) {
  if (static_cast<int>(m.matrix.size()) != m.target.rank) {
    throw std::invalid_argument("check_map: row count does not match target rank");
  }
  MapCheck out;
  out.positive = true;
  for (const auto& row : m.matrix) {
    if (static_cast<int>(row.size()) != m.source.rank) {
      throw std::invalid_argument("check_map: column count does not match source rank");
    }
    for (long long v : row) {
      if (v < 0) out.positive = false;
    }
  }
  out.unit_preserving = (mat_vec(m.matrix, m.source.order_unit) == m.target.order_unit);
  return out;
}

std::vector<long long> mat_vec(const IntMatrix& m, const std::vector<long long>& v) {
  std::vector<long long> out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  }
  return out;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mat_mul: empty matrix");
  IntMatrix out(a.size(), std::vector<long long>(b[0].size(), 0));
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b.size()) throw std::invalid_argument("mat_mul: dimension mismatch");
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t c = 0; c < b[0].size(); ++c) out[r][c] += a[r][k] * b[k][c];
    }
  }
  return out;
}

namespace {

// Lexicographically first nonnegative row x with
//   sum_j x[j] * unit[j] = unit_budget   and
//   sum_j x[j] * anchor[j][a] = want[a] for all a.
bool first_row_solution(const std::vector<long long>& unit, long long unit_budget,
                        const IntMatrix& anchor, const std::vector<long long>& want,
                        std::vector<long long>& x, std::size_t j,
                        std::vector<long long>& partial) {
  if (j == unit.size()) {
    if (unit_budget != 0) return false;
    return partial == want;
  }
  const long long bound = unit_budget / unit[j];
  for (long long v = 0; v <= bound; ++v) {
    bool feasible = true;
    for (std::size_t a = 0; a < want.size(); ++a) {
      partial[a] += v * anchor[j][a];
      if (partial[a] > want[a]) feasible = false;
    }
    if (feasible) {
      x[j] = v;
      if (first_row_solution(unit, unit_budget - v * unit[j], anchor, want, x, j + 1, partial)) {
        return true;
      }
    }
    for (std::size_t a = 0; a < want.size(); ++a) partial[a] -= v * anchor[j][a];
  }
  x[j] = 0;
  return false;
}

}  // namespace

FactorResult factor_through(const StageK0& source, const IntMatrix& anchor_map, int anchor_stage,
                            const Diagram& target, int start, int search_bound) {
  if (static_cast<int>(anchor_map.size()) != source.rank) {
    throw std::invalid_argument("factor_through: anchor map rows must match source rank");
  }
  const int anchor_rank = anchor_stage < 0
                              ? 1
                              : static_cast<int>(target.levels[static_cast<std::size_t>(
                                                                  anchor_stage)].size());
  for (const auto& row : anchor_map) {
    if (static_cast<int>(row.size()) != anchor_rank) {
      throw std::invalid_argument("factor_through: anchor map columns must match anchor rank");
    }
    for (long long v : row) {
      // The search prunes with partial sums, which needs a positive anchor;
      // positivity is part of the ordered-group setting anyway.
      if (v < 0) throw std::invalid_argument("factor_through: anchor map must be positive");
    }
  }
  const int limit = std::min(search_bound, target.depth() - 1);
  for (int m = std::max(start, 0); m <= limit; ++m) {
    // Required composite of the target tower from the anchor into stage m.
    IntMatrix required;
    if (anchor_stage < 0) {
      for (long long s : size_vector(target, m)) required.push_back({s});
    } else {
      required = composite_multiplicity(target, anchor_stage, m);
    }
    const std::vector<long long> unit_m = size_vector(target, m);
    IntMatrix x(unit_m.size(), std::vector<long long>(static_cast<std::size_t>(source.rank), 0));
    bool ok = true;
    for (std::size_t i = 0; i < unit_m.size() && ok; ++i) {
      // Row constraints: x_i . order_unit = unit_m[i] and
      // x_i . anchor_map = required[i].
      std::vector<long long> partial(static_cast<std::size_t>(anchor_rank), 0);
      ok = first_row_solution(source.order_unit, unit_m[i], anchor_map, required[i], x[i], 0,
                              partial);
    }
    if (ok) return FactorFound{m, std::move(x)};
  }
  return NotFoundUpTo{search_bound};
}

std::string SupernaturalNumber::str() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [prime, power] : factors) {
    if (!first) os << " * ";
    first = false;
    os << prime << "^";
    if (power.unbounded) {
      os << "inf";
    } else {
      os << power.exponent;
    }
  }
  return os.str();
}

SupernaturalNumber supernatural_invariant(const Diagram& d, int depth) {
  const Diagram full = materialize(d, depth);
  for (const auto& level : full.levels) {
    if (level.size() != 1) {
      throw std::invalid_argument("supernatural_invariant: diagram must be single-summand");
    }
    if (level[0].base != Base::Point) {
      throw std::invalid_argument("supernatural_invariant: diagram must have point bases");
    }
  }
  auto factorize = [](long long n) {
    std::map<long long, long long> out;
    for (long long p = 2; p * p <= n; ++p) {
      while (n % p == 0) {
        ++out[p];
        n /= p;
      }
    }
    if (n > 1) ++out[n];
    return out;
  };
  const long long top = full.levels.back()[0].size;
  SupernaturalNumber s;
  for (const auto& [p, e] : factorize(top)) s.factors[p] = {e, false};
  if (d.repeat_last) {
    const EdgeBundle* rep = full.bundle(full.depth() - 2, 0, 0);
    const long long ratio = static_cast<long long>(rep->labels.size());
    for (const auto& [p, e] : factorize(ratio)) {
      (void)e;
      s.factors[p].unbounded = true;
    }
  }
  return s;
}

}  // namespace cdiag
