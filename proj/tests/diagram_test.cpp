#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "cdiag/diagram.hpp"
#include "helpers.hpp"

using namespace cdiag;
using testutil::af_tower;

namespace {

Diagram goodearl_like(const std::vector<long long>& sizes, const Rat& c, bool repeat = false) {
  Diagram d;
  for (long long s : sizes) d.levels.push_back({SummandShape{Base::Interval, s}});
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n) {
    EdgeBundle b;
    b.level = static_cast<int>(n);
    for (long long m = 0; m < sizes[n + 1] / sizes[n]; ++m) {
      b.labels.push_back(m % 2 == 0 ? PLMap::identity() : PLMap::constant(c));
    }
    d.bundles.push_back(b);
  }
  d.repeat_last = repeat;
  require_valid(d);
  return d;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("validation of AF towers") {
  CHECK(validate(af_tower({1, 2, 4})).empty());

  Diagram bad = af_tower({1, 2, 4});
  bad.bundles[1].labels.push_back(PLMap::identity());
  const auto errs = validate(bad);
  REQUIRE(errs.size() == 1);
  CHECK(contains(errs[0], "size violation at level 3"));
  CHECK(contains(errs[0], "expected 4, got 6"));
}

TEST_CASE("unreached summand is reported") {
  Diagram d;
  d.levels.push_back({SummandShape{Base::Point, 1}});
  d.levels.push_back({SummandShape{Base::Point, 1}, SummandShape{Base::Point, 1}});
  d.bundles.push_back({0, 0, 0, {PLMap::identity()}});
  const auto errs = validate(d);
  REQUIRE(!errs.empty());
  CHECK(contains(errs[0], "no incoming bundle at (2,2)"));
}

TEST_CASE("point-base labels must be trivial") {
  Diagram d = af_tower({1, 2});
  d.bundles[0].labels[1] = PLMap::tent();
  const auto errs = validate(d);
  REQUIRE(!errs.empty());
  CHECK(contains(errs[0], "point map"));
}

TEST_CASE("multiplicity matrices") {
  CHECK(multiplicity_matrix(af_tower({1, 2}), 0) == IntMatrix{{2}});

  Diagram split;
  split.levels.push_back({SummandShape{Base::Point, 1}, SummandShape{Base::Point, 1}});
  split.levels.push_back({SummandShape{Base::Point, 2}});
  split.bundles.push_back({0, 0, 0, {PLMap::identity()}});
  split.bundles.push_back({0, 1, 0, {PLMap::identity()}});
  require_valid(split);
  CHECK(multiplicity_matrix(split, 0) == IntMatrix{{1, 1}});

  Diagram mix;
  mix.levels.push_back({SummandShape{Base::Point, 2}, SummandShape{Base::Point, 3}});
  mix.levels.push_back({SummandShape{Base::Point, 7}});
  mix.bundles.push_back({0, 0, 0, {PLMap::identity(), PLMap::identity()}});
  mix.bundles.push_back({0, 1, 0, {PLMap::identity()}});
  require_valid(mix);
  CHECK(multiplicity_matrix(mix, 0) == IntMatrix{{2, 1}});

  CHECK_THROWS_AS(multiplicity_matrix(mix, 1), std::out_of_range);
}

TEST_CASE("telescope of AF tower") {
  const Diagram tel = telescope(af_tower({1, 2, 4}), {0, 2});
  CHECK(validate(tel).empty());
  CHECK(tel.depth() == 2);
  REQUIRE(tel.bundles.size() == 1);
  CHECK(tel.bundles[0].labels.size() == 4);  // 2*2 chains, brute force
  CHECK(size_vector(tel, 1) == std::vector<long long>{4});
}

TEST_CASE("telescope composes labels") {
  Diagram d;
  d.levels.push_back({SummandShape{Base::Interval, 1}});
  d.levels.push_back({SummandShape{Base::Interval, 1}});
  d.levels.push_back({SummandShape{Base::Interval, 1}});
  d.bundles.push_back({0, 0, 0, {PLMap::identity()}});
  d.bundles.push_back({1, 0, 0, {PLMap::identity()}});
  require_valid(d);
  const Diagram tel = telescope(d, {0, 2});
  CHECK(tel.bundles[0].labels == std::vector<PLMap>{PLMap::identity()});
}

TEST_CASE("telescope of Goodearl-type levels") {
  // labels {id, const 1/2} twice: chains give {id, c, c, c}
  const Diagram tel = telescope(goodearl_like({1, 2, 4}, Rat(1, 2)), {0, 2});
  REQUIRE(tel.bundles.size() == 1);
  const auto& labels = tel.bundles[0].labels;
  REQUIRE(labels.size() == 4);
  const PLMap c = PLMap::constant(Rat(1, 2));
  int ids = 0, consts = 0;
  for (const PLMap& f : labels) {
    if (f == PLMap::identity()) ++ids;
    if (f == c) ++consts;
  }
  CHECK(ids == 1);
  CHECK(consts == 3);
}

TEST_CASE("telescope argument validation") {
  const Diagram d = af_tower({1, 2, 4});
  CHECK_THROWS_AS(telescope(d, {}), std::invalid_argument);
  CHECK_THROWS_AS(telescope(d, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(telescope(d, {0, 5}), std::invalid_argument);
}

TEST_CASE("telescope invariants") {
  const std::vector<Diagram> fixtures{af_tower({1, 2, 4, 8}), af_tower({1, 3, 9}),
                                      goodearl_like({1, 2, 4, 8}, Rat(1, 3))};
  for (const Diagram& d : fixtures) {
    CHECK(telescope(d, [&] {
            std::vector<int> all;
            for (int n = 0; n < d.depth(); ++n) all.push_back(n);
            return all;
          }()) == d);
    const std::vector<int> stages{0, d.depth() - 1};
    const Diagram tel = telescope(d, stages);
    CHECK(validate(tel).empty());
    // multiplicity matrices compose under telescoping
    CHECK(multiplicity_matrix(tel, 0) == composite_multiplicity(d, 0, d.depth() - 1));
    // size vectors propagate through transitions
    for (int n = 0; n + 1 < d.depth(); ++n) {
      const IntMatrix s = multiplicity_matrix(d, n);
      const auto sizes = size_vector(d, n);
      const auto next = size_vector(d, n + 1);
      for (std::size_t j = 0; j < next.size(); ++j) {
        long long acc = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) acc += s[j][i] * sizes[i];
        CHECK(acc == next[j]);
      }
    }
  }
}

TEST_CASE("materialize expands the repetition rule") {
  const Diagram car = af_tower({1, 2}, true);
  const Diagram full = materialize(car, 5);
  CHECK(full.depth() == 5);
  CHECK(validate(full).empty());
  CHECK(size_vector(full, 4) == std::vector<long long>{16});
  CHECK(materialize(af_tower({1, 2, 4}), 7) == af_tower({1, 2, 4}));
}

TEST_CASE("dot export") {
  const std::string one_level = export_dot(af_tower({3}));
  CHECK(contains(one_level, "(1,1) [r=3]"));
  CHECK(!contains(one_level, "->"));

  const std::string af = export_dot(af_tower({1, 2}));
  CHECK(contains(af, "2×1: pt,pt"));

  const std::string ge = export_dot(goodearl_like({1, 2}, Rat(1, 2)));
  CHECK(contains(ge, "2×1: id,const(1/2)"));

  Diagram bad = af_tower({1, 2});
  bad.levels[1][0].size = 3;
  CHECK_THROWS_AS(export_dot(bad), std::invalid_argument);

  // determinism
  CHECK(export_dot(af_tower({1, 2, 4})) == export_dot(af_tower({1, 2, 4})));
}
