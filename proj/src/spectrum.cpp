#include "cdiag/spectrum.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cdiag {

namespace {

const Interval kFullInterval{Rat(0), Rat(1)};

void push_distinct(std::vector<PLMap>& out, const PLMap& f) {
  if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
}

std::string join_labels(const std::vector<PLMap>& labels) {
  std::ostringstream os;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) os << ", ";
    os << describe_label(labels[i]);
  }
  return os.str();
}

}  // namespace

long long arrival_slot(const Diagram& d, int level, int target, int source, int label_index,
                       long long source_slot) {
  const EdgeBundle* chosen = d.bundle(level, source, target);
  if (!chosen) throw std::out_of_range("arrival_slot: no bundle between the given summands");
  if (label_index < 0 || label_index >= static_cast<int>(chosen->labels.size())) {
    throw std::out_of_range("arrival_slot: label index out of range");
  }
  const long long source_rank = d.levels[static_cast<std::size_t>(level)]
                                        [static_cast<std::size_t>(source)].rank();
  if (source_slot < 1 || source_slot > source_rank) {
    throw std::out_of_range("arrival_slot: source slot out of range");
  }
  // Blocks into (level+1, target), ordered by (source, label index).
  long long offset = 0;
  for (int i = 0; i < static_cast<int>(d.levels[static_cast<std::size_t>(level)].size()); ++i) {
    const EdgeBundle* b = d.bundle(level, i, target);
    if (!b) continue;
    const long long rank_i =
        d.levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)].rank();
    if (i == source) {
      return offset + static_cast<long long>(label_index) * rank_i + source_slot;
    }
    offset += static_cast<long long>(b->labels.size()) * rank_i;
  }
  throw std::out_of_range("arrival_slot: source summand out of range");
}

SlotOrigin decompose_slot(const Diagram& d, int level, int target, long long slot) {
  if (level < 0 || level + 1 >= d.depth()) {
    throw std::out_of_range("decompose_slot: level out of range");
  }
  long long offset = 0;
  for (int i = 0; i < static_cast<int>(d.levels[static_cast<std::size_t>(level)].size()); ++i) {
    const EdgeBundle* b = d.bundle(level, i, target);
    if (!b) continue;
    const long long rank_i =
        d.levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)].rank();
    for (int y = 0; y < static_cast<int>(b->labels.size()); ++y) {
      if (slot <= offset + rank_i) return SlotOrigin{i, y, slot - offset};
      offset += rank_i;
    }
  }
  throw std::out_of_range("decompose_slot: slot out of range for the target summand");
}

std::vector<SlotPath> enumerate_paths(const Diagram& d, int depth) {
  const Diagram full = d.repeat_last ? materialize(d, depth + 1) : d;
  if (depth < 0 || depth + 1 > full.depth()) {
    throw std::out_of_range("enumerate_paths: depth out of range");
  }
  std::vector<SlotPath> out;
  std::function<void(SlotPath&, int)> extend = [&](SlotPath& path, int level) {
    if (level == depth) {
      out.push_back(path);
      return;
    }
    const auto [cur_summand, cur_slot] = path.arrivals.back();
    const int targets =
        static_cast<int>(full.levels[static_cast<std::size_t>(level) + 1].size());
    for (int j = 0; j < targets; ++j) {
      const EdgeBundle* b = full.bundle(level, cur_summand, j);
      if (!b) continue;
      for (int y = 0; y < static_cast<int>(b->labels.size()); ++y) {
        path.steps.emplace_back(j, y);
        path.arrivals.emplace_back(j, arrival_slot(full, level, j, cur_summand, y, cur_slot));
        extend(path, level + 1);
        path.steps.pop_back();
        path.arrivals.pop_back();
      }
    }
  };
  for (int i = 0; i < static_cast<int>(full.levels[0].size()); ++i) {
    for (long long u = 1; u <= full.levels[0][static_cast<std::size_t>(i)].rank(); ++u) {
      SlotPath path;
      path.start_summand = i;
      path.start_slot = u;
      path.arrivals.emplace_back(i, u);
      extend(path, 0);
    }
  }
  return out;
}

long long count_components(const Diagram& d, int depth) {
  return static_cast<long long>(enumerate_paths(d, depth).size());
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Singleton: return "Singleton";
    case Verdict::Arc: return "Arc";
    case Verdict::NotArc: return "NotArc";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

PathClassification classify_path(const PathTail& tail) {
  if (tail.point_base) {
    return {Verdict::Singleton, "point bases",
            "an inverse limit over singleton spaces is a singleton"};
  }
  if (tail.cycle.empty()) {
    throw std::invalid_argument("classify_path: classification needs cofinal tail data");
  }
  for (const PLMap& f : tail.cycle) {
    if (analyze(f).constant) {
      return {Verdict::Singleton, "cofinal constant labels",
              "label " + describe_label(f) +
                  " recurs cofinally; each occurrence fixes every deeper coordinate"};
    }
  }
  bool all_homeo = true;
  for (const PLMap& f : tail.cycle) {
    if (!analyze(f).homeomorphism) all_homeo = false;
  }
  if (all_homeo) {
    return {Verdict::Arc, "eventually homeomorphic bonding maps",
            "cycle labels {" + join_labels(tail.cycle) +
                "} are all homeomorphisms; the inverse limit is an arc"};
  }
  for (const PLMap& f : tail.cycle) {
    if (f == PLMap::tent()) {
      return {Verdict::NotArc, "indecomposable continuum",
              "full tent label recurs cofinally (non-monotone, surjective); the inverse limit "
              "is the classical indecomposable tent continuum"};
    }
  }
  return {Verdict::Unknown, "no sound rule applies",
          "cycle labels {" + join_labels(tail.cycle) + "} match no decidable rule"};
}

std::vector<PathClassEntry> path_census(const Diagram& d) {
  require_valid(d);
  bool all_point = true;
  for (const auto& level : d.levels) {
    for (const auto& s : level) {
      if (s.base != Base::Point) all_point = false;
    }
  }
  if (all_point) {
    PathTail tail;
    tail.point_base = true;
    return {{"all paths (point bases)", classify_path(tail)}};
  }
  if (d.depth() < 2) {
    throw std::invalid_argument("path_census: no transition to read a cofinal pattern from");
  }
  // Cofinal label set: the repeated transition, i.e. the last one.
  std::vector<PLMap> distinct;
  for (const EdgeBundle* b : d.bundles_at(d.depth() - 2)) {
    for (const PLMap& f : b->labels) push_distinct(distinct, f);
  }
  std::vector<PathClassEntry> out;
  for (const PLMap& f : distinct) {
    PathTail tail;
    tail.cycle = {f};
    out.push_back({"cofinal label " + describe_label(f), classify_path(tail)});
  }
  if (distinct.size() > 1) {
    PathTail tail;
    tail.cycle = distinct;
    out.push_back({"mixed cycle {" + join_labels(distinct) + "}", classify_path(tail)});
  }
  return out;
}

ThreadCloud approximate_component(const std::vector<PLMap>& labels, int depth, int sample_count) {
  if (depth < 1) throw std::invalid_argument("approximate_component: depth must be at least 1");
  if (sample_count < 1) {
    throw std::invalid_argument("approximate_component: sample_count must be at least 1");
  }
  if (static_cast<int>(labels.size()) < depth) {
    throw std::invalid_argument("approximate_component: need one label per level up to depth");
  }
  ThreadCloud cloud;
  cloud.depth = depth;
  for (int i = 0; i < sample_count; ++i) {
    const Rat t = sample_count == 1 ? Rat(0) : Rat(i) / Rat(sample_count - 1);
    std::vector<Rat> x(static_cast<std::size_t>(depth));
    x[static_cast<std::size_t>(depth) - 1] = labels[static_cast<std::size_t>(depth) - 1](t);
    for (int n = depth - 2; n >= 0; --n) {
      x[static_cast<std::size_t>(n)] =
          labels[static_cast<std::size_t>(n)](x[static_cast<std::size_t>(n) + 1]);
    }
    cloud.samples.push_back(std::move(x));
  }
  return cloud;
}

namespace {

Diagram build_single_summand(const std::vector<long long>& sizes, Base base, bool repeat) {
  if (sizes.empty()) throw std::invalid_argument("tower sizes must be nonempty");
  Diagram d;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    if (sizes[n] < 1) throw std::invalid_argument("tower sizes must be positive");
    if (n > 0 && sizes[n] % sizes[n - 1] != 0) {
      throw std::invalid_argument("tower sizes must multiply successively (level " +
                                  std::to_string(n + 1) + ")");
    }
    d.levels.push_back({SummandShape{base, sizes[n]}});
  }
  d.repeat_last = repeat && sizes.size() >= 2;
  return d;
}

}  // namespace

Diagram build_goodearl(const std::vector<long long>& sizes, const std::vector<Rat>& constants,
                       bool repeat) {
  Diagram d = build_single_summand(sizes, Base::Interval, repeat);
  std::vector<Rat> cs = constants;
  if (cs.empty()) cs.assign(1, Rat(1, 2));
  if (cs.size() != 1 && cs.size() + 1 != sizes.size()) {
    throw std::invalid_argument("build_goodearl: need one constant per transition, or one");
  }
  for (const Rat& c : cs) {
    if (c < 0 || c > 1) throw std::invalid_argument("build_goodearl: constants must be in [0,1]");
  }
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n) {
    const long long k = sizes[n + 1] / sizes[n];
    const Rat& c = cs.size() == 1 ? cs[0] : cs[n];
    // Label family {id, const c} fills the multiplicity by cycling.
    EdgeBundle b;
    b.level = static_cast<int>(n);
    for (long long m = 0; m < k; ++m) {
      b.labels.push_back(m % 2 == 0 ? PLMap::identity() : PLMap::constant(c));
    }
    d.bundles.push_back(std::move(b));
  }
  require_valid(d);
  return d;
}

Diagram build_ah_model(const std::vector<long long>& sizes, const PLMap& sigma, bool repeat) {
  if (!analyze(sigma).homeomorphism) {
    throw std::invalid_argument("build_ah_model: sigma must be a homeomorphism");
  }
  Diagram d = build_single_summand(sizes, Base::Interval, repeat);
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n) {
    const long long k = sizes[n + 1] / sizes[n];
    // k-1 identities, then one copy of the dynamics.
    EdgeBundle b;
    b.level = static_cast<int>(n);
    for (long long m = 0; m + 1 < k; ++m) b.labels.push_back(PLMap::identity());
    b.labels.push_back(sigma);
    d.bundles.push_back(std::move(b));
  }
  require_valid(d);
  return d;
}

bool check_simplicity_sufficient(const Diagram& d, const Rat& epsilon, int horizon) {
  require_valid(d);
  if (epsilon <= 0 || epsilon > 1) {
    throw std::invalid_argument("check_simplicity_sufficient: epsilon must be in (0,1]");
  }
  if (horizon < 1) {
    throw std::invalid_argument("check_simplicity_sufficient: horizon must be at least 1");
  }
  const Diagram full = materialize(d, std::max(d.depth(), 2 * horizon + 1));
  std::vector<Interval> cells;
  for (Rat lo(0); lo < 1; lo += epsilon) {
    cells.push_back(Interval{lo, std::min(Rat(lo + epsilon), Rat(1))});
  }
  const int max_start = std::min(horizon, full.depth() - 1);
  for (int start = 0; start < max_start; ++start) {
    const int summands = static_cast<int>(full.levels[static_cast<std::size_t>(start)].size());
    for (int i = 0; i < summands; ++i) {
      if (full.levels[static_cast<std::size_t>(start)][static_cast<std::size_t>(i)].base !=
          Base::Interval) {
        continue;
      }
      std::vector<bool> covered(cells.size(), false);
      std::size_t remaining = cells.size();
      // Composite chains out of (start, i): the composite maps the deeper
      // level's interval into level `start`.
      std::function<void(int, int, const PLMap*, int)> walk = [&](int level, int src,
                                                                  const PLMap* acc, int len) {
        if (remaining == 0 || len == horizon || level + 1 >= full.depth()) return;
        const int targets =
            static_cast<int>(full.levels[static_cast<std::size_t>(level) + 1].size());
        for (int j = 0; j < targets && remaining > 0; ++j) {
          const EdgeBundle* b = full.bundle(level, src, j);
          if (!b) continue;
          std::vector<PLMap> distinct;
          for (const PLMap& f : b->labels) push_distinct(distinct, f);
          for (const PLMap& f : distinct) {
            const PLMap comp = acc ? compose(*acc, f) : f;
            const Interval image = image_on(comp, kFullInterval);
            if (!image.degenerate()) {
              for (std::size_t c = 0; c < cells.size(); ++c) {
                if (!covered[c] && cells[c].contains(image)) {
                  covered[c] = true;
                  --remaining;
                }
              }
            }
            walk(level + 1, j, &comp, len + 1);
            if (remaining == 0) return;
          }
        }
      };
      walk(start, i, nullptr, 0);
      if (remaining != 0) return false;
    }
  }
  return true;
}

WitnessReport incompleteness_witness(const Diagram& d, const std::vector<PLMap>& gammas) {
  require_valid(d);
  for (const auto& level : d.levels) {
    if (level.size() != 1 || level[0].base != Base::Interval) {
      throw std::invalid_argument(
          "incompleteness_witness: input must be a single-summand interval tower");
    }
  }
  const Diagram full = materialize(d, d.depth() + 12);
  // Greedy stage selection: the n-th retained step must multiply the size by
  // more than 2^n, which also forces at least 3 labels per step.
  std::vector<int> stages{0};
  long long needed = 2;  // 2^n for the next step
  while (static_cast<int>(stages.size()) <= 6) {
    const long long base_size = full.levels[static_cast<std::size_t>(stages.back())][0].size;
    int next = -1;
    for (int s = stages.back() + 1; s < full.depth(); ++s) {
      if (full.levels[static_cast<std::size_t>(s)][0].size / base_size > needed) {
        next = s;
        break;
      }
    }
    if (next < 0) break;
    stages.push_back(next);
    needed *= 2;
  }
  if (stages.size() < 2) {
    throw std::invalid_argument(
        "incompleteness_witness: growth conditions unattainable at the available depth");
  }
  const Diagram original = telescope(full, stages);
  const std::size_t transitions = stages.size() - 1;
  std::vector<PLMap> gs;
  if (gammas.empty()) {
    gs.assign(transitions, PLMap::tent());
  } else if (gammas.size() == 1) {
    gs.assign(transitions, gammas[0]);
  } else if (gammas.size() == transitions) {
    gs = gammas;
  } else {
    throw std::invalid_argument(
        "incompleteness_witness: need one gamma per telescoped transition, or one");
  }

  WitnessReport rep;
  rep.stages = stages;
  rep.witness = original;
  for (std::size_t t = 0; t < transitions; ++t) {
    auto& labels = rep.witness.bundles[t].labels;
    if (labels.size() < 3) {
      throw std::invalid_argument("incompleteness_witness: fewer than 3 labels at level " +
                                  std::to_string(t + 1));
    }
    labels[0] = gs[t];
    labels[1] = PLMap::lower_half();
    labels[2] = PLMap::upper_half();
  }
  // The witness stands for the infinite tower continuing with the same
  // pattern, so it carries the repetition rule.
  rep.witness.repeat_last = true;
  require_valid(rep.witness);

  rep.surjective_levels = true;
  for (std::size_t t = 0; t < transitions; ++t) {
    std::vector<Interval> images;
    for (const PLMap& f : rep.witness.bundles[t].labels) images.push_back(analyze(f).image);
    std::sort(images.begin(), images.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    Rat reach(0);
    for (const Interval& im : images) {
      if (im.lo > reach) break;
      reach = std::max(reach, im.hi);
    }
    if (reach < 1) rep.surjective_levels = false;
  }
  rep.simplicity_ok = check_simplicity_sufficient(rep.witness, Rat(1, 16), 6);
  PathTail gamma_tail;
  gamma_tail.prefix.assign(gs.begin(), gs.end() - 1);
  gamma_tail.cycle = {gs.back()};
  rep.gamma_class = classify_path(gamma_tail);
  rep.original_census = path_census(original);
  rep.witnessed = rep.gamma_class.verdict != Verdict::Unknown;
  for (const auto& e : rep.original_census) {
    if (e.cls.verdict == rep.gamma_class.verdict) rep.witnessed = false;
  }

  std::ostringstream os;
  os << "incompleteness witness\n";
  os << "  telescope stages (1-based):";
  for (int s : stages) os << " " << (s + 1);
  os << "\n  sizes:";
  for (const auto& level : rep.witness.levels) os << " " << level[0].size;
  os << "\n  replacements per transition: gamma, g, h\n";
  for (std::size_t t = 0; t < transitions; ++t) {
    os << "    transition " << (t + 1) << ": gamma = " << describe_label(gs[t]) << ", "
       << rep.witness.bundles[t].labels.size() << " labels\n";
  }
  os << "  connecting maps surjective: " << (rep.surjective_levels ? "yes" : "no") << "\n";
  os << "  sufficient simplicity check (epsilon = 1/16, horizon = 6): "
     << (rep.simplicity_ok ? "pass" : "fail") << "\n";
  os << "  original path classes:\n";
  for (const auto& e : rep.original_census) {
    os << "    " << e.description << ": " << verdict_name(e.cls.verdict) << " (" << e.cls.reason
       << ")\n";
  }
  os << "  all-gamma thread class: " << verdict_name(rep.gamma_class.verdict) << " ("
     << rep.gamma_class.reason << ")\n";
  if (rep.witnessed) {
    os << "  unseen spectral component witnessed: the all-gamma thread class matches no "
          "path class of the original diagonal\n";
  } else {
    os << "  no incompleteness witnessed\n";
  }
  rep.text = os.str();
  return rep;
}

std::string spectrum_report(const Diagram& d, int max_depth) {
  require_valid(d);
  if (max_depth < 0) throw std::invalid_argument("spectrum_report: max_depth must be nonnegative");
  const int limit =
      d.repeat_last ? max_depth : std::min(max_depth, d.depth() - 1);
  std::vector<long long> counts;
  for (int k = 0; k <= limit; ++k) counts.push_back(count_components(d, k));
  std::vector<PathClassEntry> census;
  bool have_census = true;
  try {
    census = path_census(d);
  } catch (const std::invalid_argument&) {
    have_census = false;
  }
  std::ostringstream os;
  os << "spectrum report\n";
  for (int k = 0; k <= limit; ++k) {
    os << "  components at depth " << k << ": " << counts[static_cast<std::size_t>(k)] << "\n";
  }
  if (have_census) {
    os << "  path classes:\n";
    for (const auto& e : census) {
      os << "    " << e.description << ": " << verdict_name(e.cls.verdict) << " (" << e.cls.reason
         << "); evidence: " << e.cls.evidence << "\n";
    }
  } else {
    os << "  path classes: no cofinal pattern available\n";
  }
  os << "[machine]\n";
  for (int k = 0; k <= limit; ++k) {
    os << "components " << k << " " << counts[static_cast<std::size_t>(k)] << "\n";
  }
  if (have_census) {
    for (const auto& e : census) {
      os << "class " << verdict_name(e.cls.verdict) << " " << e.description << "\n";
    }
  }
  return os.str();
}

}  // namespace cdiag
