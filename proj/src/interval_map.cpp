#include "cdiag/interval_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdiag {

namespace {

const Rat kZero(0);
const Rat kOne(1);

}  // namespace

PLMap::PLMap() : xs_{kZero, kOne}, ys_{kZero, kOne} {}

PLMap::PLMap(std::vector<Rat> breakpoints, std::vector<Rat> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2) {
    throw std::invalid_argument("PLMap: breakpoint/value lists must have equal length >= 2");
  }
  if (xs_.front() != 0 || xs_.back() != 1) {
    throw std::invalid_argument("PLMap: breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i - 1] < xs_[i])) {
      throw std::invalid_argument("PLMap: breakpoints must be strictly increasing");
    }
  }
  for (const Rat& y : ys_) {
    if (y < 0 || y > 1) {
      throw std::invalid_argument("PLMap: values must lie in [0,1]");
    }
  }
  canonicalize();
}

void PLMap::canonicalize() {
  std::vector<Rat> xs{xs_.front()};
  std::vector<Rat> ys{ys_.front()};
  for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
    // Drop breakpoint i if it is collinear with its retained left neighbour
    // and its right neighbour.
    const Rat& xl = xs.back();
    const Rat& yl = ys.back();
    const Rat& xm = xs_[i];
    const Rat& ym = ys_[i];
    const Rat& xr = xs_[i + 1];
    const Rat& yr = ys_[i + 1];
    if ((ym - yl) * (xr - xm) == (yr - ym) * (xm - xl)) continue;
    xs.push_back(xm);
    ys.push_back(ym);
  }
  xs.push_back(xs_.back());
  ys.push_back(ys_.back());
  xs_ = std::move(xs);
  ys_ = std::move(ys);
}

PLMap PLMap::identity() { return PLMap(); }

PLMap PLMap::constant(const Rat& c) { return PLMap({kZero, kOne}, {c, c}); }

PLMap PLMap::tent() { return PLMap({kZero, Rat(1, 2), kOne}, {kZero, kOne, kZero}); }

PLMap PLMap::lower_half() { return PLMap({kZero, kOne}, {kZero, Rat(1, 2)}); }

PLMap PLMap::upper_half() { return PLMap({kZero, kOne}, {Rat(1, 2), kOne}); }

Rat PLMap::operator()(const Rat& t) const {
  if (t < 0 || t > 1) throw std::domain_error("PLMap: argument outside [0,1]");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
  if (it == xs_.end()) return ys_.back();
  const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  const std::size_t lo = hi - 1;
  return ys_[lo] + (ys_[hi] - ys_[lo]) * (t - xs_[lo]) / (xs_[hi] - xs_[lo]);
}

PLMap compose(const PLMap& f, const PLMap& g) {
  // Breakpoints of f∘g: breakpoints of g, plus preimages under g of the
  // breakpoints of f inside each linear piece of g.
  std::vector<Rat> xs = g.breakpoints();
  const auto& gx = g.breakpoints();
  const auto& gy = g.values();
  for (std::size_t i = 0; i + 1 < gx.size(); ++i) {
    const Rat& a = gx[i];
    const Rat& b = gx[i + 1];
    const Rat& ya = gy[i];
    const Rat& yb = gy[i + 1];
    if (ya == yb) continue;
    for (const Rat& c : f.breakpoints()) {
      const Rat lo = std::min(ya, yb);
      const Rat hi = std::max(ya, yb);
      if (c <= lo || c >= hi) continue;
      xs.push_back(a + (c - ya) * (b - a) / (yb - ya));
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rat> ys;
  ys.reserve(xs.size());
  for (const Rat& x : xs) ys.push_back(f(g(x)));
  return PLMap(std::move(xs), std::move(ys));
}

MapProfile analyze(const PLMap& f) {
  const auto& ys = f.values();
  bool nondec = true, noninc = true, strict_inc = true, strict_dec = true;
  Rat lo = ys.front(), hi = ys.front();
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (ys[i] < ys[i - 1]) nondec = false;
    if (ys[i] > ys[i - 1]) noninc = false;
    if (ys[i] <= ys[i - 1]) strict_inc = false;
    if (ys[i] >= ys[i - 1]) strict_dec = false;
    lo = std::min(lo, ys[i]);
    hi = std::max(hi, ys[i]);
  }
  MapProfile p;
  p.constant = (lo == hi);
  p.monotone = nondec || noninc;
  p.injective = strict_inc || strict_dec;
  p.image = Interval{lo, hi};
  p.surjective = (lo == 0 && hi == 1);
  p.homeomorphism = p.injective && p.surjective;
  return p;
}

Interval image_on(const PLMap& f, const Interval& domain) {
  Rat lo = f(domain.lo);
  Rat hi = lo;
  auto take = [&](const Rat& v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  take(f(domain.hi));
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    const Rat& x = f.breakpoints()[i];
    if (x > domain.lo && x < domain.hi) take(f.values()[i]);
  }
  return Interval{lo, hi};
}

std::string describe_label(const PLMap& f) {
  if (f == PLMap::identity()) return "id";
  if (f == PLMap::tent()) return "tent";
  if (f == PLMap::lower_half()) return "g";
  if (f == PLMap::upper_half()) return "h";
  const MapProfile p = analyze(f);
  if (p.constant) return "const(" + format_fraction(p.image.lo) + ")";
  return "pl" + std::to_string(f.breakpoints().size());
}

}  // namespace cdiag
