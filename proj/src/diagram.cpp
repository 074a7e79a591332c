#include "cdiag/diagram.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cdiag {

const EdgeBundle* Diagram::bundle(int level, int source, int target) const {
  for (const EdgeBundle& b : bundles) {
    if (b.level == level && b.source == source && b.target == target) return &b;
  }
  return nullptr;
}

std::vector<const EdgeBundle*> Diagram::bundles_at(int level) const {
  std::vector<const EdgeBundle*> out;
  for (const EdgeBundle& b : bundles) {
    if (b.level == level) out.push_back(&b);
  }
  std::sort(out.begin(), out.end(), [](const EdgeBundle* a, const EdgeBundle* b) {
    return std::pair(a->source, a->target) < std::pair(b->source, b->target);
  });
  return out;
}

std::vector<std::string> validate(const Diagram& d) {
  std::vector<std::string> errs;
  if (d.levels.empty()) {
    errs.push_back("diagram has no levels");
    return errs;
  }
  for (std::size_t n = 0; n < d.levels.size(); ++n) {
    if (d.levels[n].empty()) {
      errs.push_back("level " + std::to_string(n + 1) + " has no summands");
    }
    for (std::size_t i = 0; i < d.levels[n].size(); ++i) {
      if (d.levels[n][i].size < 1) {
        errs.push_back("summand (" + std::to_string(n + 1) + "," + std::to_string(i + 1) +
                       ") has non-positive size");
      }
    }
  }

  std::set<std::tuple<int, int, int>> seen;
  for (const EdgeBundle& b : d.bundles) {
    const std::string where = "bundle (" + std::to_string(b.level + 1) + "," +
                              std::to_string(b.source + 1) + "->" + std::to_string(b.target + 1) +
                              ")";
    if (b.level < 0 || b.level + 1 >= d.depth()) {
      errs.push_back(where + ": level out of range");
      continue;
    }
    if (b.source < 0 || b.source >= static_cast<int>(d.levels[b.level].size()) || b.target < 0 ||
        b.target >= static_cast<int>(d.levels[b.level + 1].size())) {
      errs.push_back(where + ": summand index out of range");
      continue;
    }
    if (b.labels.empty()) errs.push_back(where + ": empty label list");
    if (!seen.insert({b.level, b.source, b.target}).second) {
      errs.push_back(where + ": duplicate bundle");
    }
    const bool point_end = d.levels[b.level][b.source].base == Base::Point ||
                           d.levels[b.level + 1][b.target].base == Base::Point;
    if (point_end) {
      for (const PLMap& f : b.labels) {
        if (f != PLMap::identity()) {
          errs.push_back(where + ": point-base bundle label must be the point map");
          break;
        }
      }
    }
  }
  if (!errs.empty()) return errs;

  for (int n = 0; n + 1 < d.depth(); ++n) {
    const auto Nn = static_cast<int>(d.levels[n].size());
    const auto Nn1 = static_cast<int>(d.levels[n + 1].size());
    for (int j = 0; j < Nn1; ++j) {
      long long expected = 0;
      bool incoming = false;
      for (int i = 0; i < Nn; ++i) {
        if (const EdgeBundle* b = d.bundle(n, i, j)) {
          expected += d.levels[n][i].size * static_cast<long long>(b->labels.size());
          incoming = true;
        }
      }
      if (!incoming) {
        errs.push_back("no incoming bundle at (" + std::to_string(n + 2) + "," +
                       std::to_string(j + 1) + ")");
      } else if (expected != d.levels[n + 1][j].size) {
        errs.push_back("size violation at level " + std::to_string(n + 2) + " summand " +
                       std::to_string(j + 1) + ": expected " +
                       std::to_string(d.levels[n + 1][j].size) + ", got " +
                       std::to_string(expected));
      }
    }
    for (int i = 0; i < Nn; ++i) {
      bool outgoing = false;
      for (int j = 0; j < Nn1; ++j) {
        if (d.bundle(n, i, j)) outgoing = true;
      }
      if (!outgoing) {
        errs.push_back("no outgoing bundle at (" + std::to_string(n + 1) + "," +
                       std::to_string(i + 1) + ")");
      }
    }
  }

  if (d.repeat_last) {
    if (d.depth() < 2) {
      errs.push_back("repetition rule requires at least two levels");
    } else {
      const auto& prev = d.levels[d.depth() - 2];
      const auto& last = d.levels[d.depth() - 1];
      if (prev.size() != last.size()) {
        errs.push_back("repetition rule requires matching summand counts at the last two levels");
      } else {
        for (std::size_t i = 0; i < last.size(); ++i) {
          if (prev[i].base != last[i].base) {
            errs.push_back("repetition rule requires matching bases at the last two levels");
            break;
          }
        }
      }
    }
  }
  return errs;
}

void require_valid(const Diagram& d) {
  const auto errs = validate(d);
  if (errs.empty()) return;
  std::string msg = "invalid diagram:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw std::invalid_argument(msg);
}

std::vector<long long> size_vector(const Diagram& d, int level) {
  if (level < 0 || level >= d.depth()) throw std::out_of_range("size_vector: level out of range");
  std::vector<long long> out;
  for (const SummandShape& s : d.levels[level]) out.push_back(s.size);
  return out;
}

IntMatrix multiplicity_matrix(const Diagram& d, int level) {
  if (level < 0 || level + 1 >= d.depth()) {
    throw std::out_of_range("multiplicity_matrix: level has no successor");
  }
  const auto rows = d.levels[level + 1].size();
  const auto cols = d.levels[level].size();
  IntMatrix m(rows, std::vector<long long>(cols, 0));
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < cols; ++i) {
      if (const EdgeBundle* b = d.bundle(level, static_cast<int>(i), static_cast<int>(j))) {
        m[j][i] = static_cast<long long>(b->labels.size());
      }
    }
  }
  return m;
}

IntMatrix composite_multiplicity(const Diagram& d, int from, int to) {
  if (from > to) throw std::invalid_argument("composite_multiplicity: from > to");
  IntMatrix acc(d.levels[from].size(), std::vector<long long>(d.levels[from].size(), 0));
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i][i] = 1;
  for (int n = from; n < to; ++n) {
    const IntMatrix s = multiplicity_matrix(d, n);
    IntMatrix next(s.size(), std::vector<long long>(acc[0].size(), 0));
    for (std::size_t r = 0; r < s.size(); ++r) {
      for (std::size_t c = 0; c < acc[0].size(); ++c) {
        for (std::size_t k = 0; k < acc.size(); ++k) next[r][c] += s[r][k] * acc[k][c];
      }
    }
    acc = std::move(next);
  }
  return acc;
}

namespace {

// Composite labels of all chains from (level `from`, summand `src`) to
// (level `to`, summand `dst`), in lexicographic step order: at each level the
// next summand ascending, then the label index ascending, with the earliest
// step most significant.
void collect_chains(const Diagram& d, int level, int to, int current, int dst, const PLMap& acc,
                    std::vector<PLMap>& out) {
  if (level == to) {
    if (current == dst) out.push_back(acc);
    return;
  }
  const auto next_count = static_cast<int>(d.levels[level + 1].size());
  for (int next = 0; next < next_count; ++next) {
    const EdgeBundle* b = d.bundle(level, current, next);
    if (!b) continue;
    for (const PLMap& label : b->labels) {
      collect_chains(d, level + 1, to, next, dst, compose(acc, label), out);
    }
  }
}

}  // namespace

Diagram telescope(const Diagram& d, const std::vector<int>& stages) {
  if (stages.empty()) throw std::invalid_argument("telescope: empty stage list");
  for (std::size_t k = 0; k < stages.size(); ++k) {
    if (stages[k] < 0 || stages[k] >= d.depth()) {
      throw std::invalid_argument("telescope: stage index out of range");
    }
    if (k > 0 && stages[k] <= stages[k - 1]) {
      throw std::invalid_argument("telescope: stages must be strictly increasing");
    }
  }
  Diagram out;
  for (int s : stages) out.levels.push_back(d.levels[s]);
  for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
    const int from = stages[k];
    const int to = stages[k + 1];
    const auto src_count = static_cast<int>(d.levels[from].size());
    const auto dst_count = static_cast<int>(d.levels[to].size());
    for (int src = 0; src < src_count; ++src) {
      for (int dst = 0; dst < dst_count; ++dst) {
        std::vector<PLMap> labels;
        collect_chains(d, from, to, src, dst, PLMap::identity(), labels);
        if (!labels.empty()) {
          out.bundles.push_back(
              {static_cast<int>(k), src, dst, std::move(labels)});
        }
      }
    }
  }
  return out;
}

Diagram materialize(const Diagram& d, int target_depth) {
  if (!d.repeat_last || d.depth() >= target_depth) return d;
  require_valid(d);
  Diagram out = d;
  while (out.depth() < target_depth) {
    const int n = out.depth() - 1;        // new transition starts here
    const int pattern = out.depth() - 2;  // transition being repeated
    const auto& last = out.levels[n];
    std::vector<long long> next_sizes(last.size(), 0);
    std::vector<EdgeBundle> new_bundles;
    for (const EdgeBundle* b : out.bundles_at(pattern)) {
      new_bundles.push_back({n, b->source, b->target, b->labels});
      next_sizes[b->target] +=
          last[b->source].size * static_cast<long long>(b->labels.size());
    }
    std::vector<SummandShape> next_level;
    for (std::size_t j = 0; j < last.size(); ++j) {
      next_level.push_back({last[j].base, next_sizes[j]});
    }
    out.levels.push_back(std::move(next_level));
    for (auto& b : new_bundles) out.bundles.push_back(std::move(b));
  }
  return out;
}

std::string export_dot(const Diagram& d) {
  require_valid(d);
  std::ostringstream os;
  os << "digraph bratteli {\n";
  os << "  rankdir=TB;\n";
  for (int n = 0; n < d.depth(); ++n) {
    for (std::size_t i = 0; i < d.levels[n].size(); ++i) {
      os << "  \"n" << n + 1 << "_s" << i + 1 << "\" [label=\"(" << n + 1 << "," << i + 1
         << ") [r=" << d.levels[n][i].size << "]\"];\n";
    }
  }
  for (int n = 0; n + 1 < d.depth(); ++n) {
    for (const EdgeBundle* b : d.bundles_at(n)) {
      const bool point_end = d.levels[n][b->source].base == Base::Point ||
                             d.levels[n + 1][b->target].base == Base::Point;
      os << "  \"n" << n + 1 << "_s" << b->source + 1 << "\" -> \"n" << n + 2 << "_s"
         << b->target + 1 << "\" [label=\"" << b->labels.size() << "×"
         << d.levels[n][b->source].rank() << ": ";
      for (std::size_t k = 0; k < b->labels.size(); ++k) {
        if (k) os << ",";
        os << (point_end ? std::string("pt") : describe_label(b->labels[k]));
      }
      os << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace cdiag
