#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "cdiag/cartan_hom.hpp"

using namespace cdiag;

namespace {

std::vector<MatrixUnitRef> all_units(const AlgebraShape& shape) {
  std::vector<MatrixUnitRef> out;
  for (int j = 0; j < shape.summands(); ++j) {
    for (long long p = 1; p <= shape.sizes[static_cast<std::size_t>(j)]; ++p) {
      for (long long q = 1; q <= shape.sizes[static_cast<std::size_t>(j)]; ++q) {
        out.push_back({j, p, q});
      }
    }
  }
  return out;
}

// All unital multiplicity matrices for the given shapes, by brute force.
std::vector<MultiplicityMatrix> all_unital_mults(const AlgebraShape& source,
                                                 const AlgebraShape& target) {
  std::vector<std::vector<std::vector<long long>>> row_choices(
      static_cast<std::size_t>(target.summands()));
  for (int i = 0; i < target.summands(); ++i) {
    std::vector<long long> row(static_cast<std::size_t>(source.summands()), 0);
    std::function<void(int, long long)> rec = [&](int j, long long left) {
      if (j == source.summands()) {
        if (left == 0) row_choices[static_cast<std::size_t>(i)].push_back(row);
        return;
      }
      const long long nj = source.sizes[static_cast<std::size_t>(j)];
      for (long long k = 0; k * nj <= left; ++k) {
        row[static_cast<std::size_t>(j)] = k;
        rec(j + 1, left - k * nj);
      }
      row[static_cast<std::size_t>(j)] = 0;
    };
    rec(0, target.sizes[static_cast<std::size_t>(i)]);
  }
  std::vector<MultiplicityMatrix> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(target.summands()), 0);
  while (true) {
    MultiplicityMatrix m;
    for (int i = 0; i < target.summands(); ++i) {
      m.k.push_back(row_choices[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]]);
    }
    out.push_back(m);
    int i = target.summands() - 1;
    while (i >= 0 &&
           ++pick[static_cast<std::size_t>(i)] ==
               row_choices[static_cast<std::size_t>(i)].size()) {
      pick[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

// Random valid slot partition for the multiplicity data.
SlotPartition random_partition(const AlgebraShape& source, const AlgebraShape& target,
                               const MultiplicityMatrix& mult, std::mt19937& rng) {
  SlotPartition part(static_cast<std::size_t>(target.summands()));
  for (int i = 0; i < target.summands(); ++i) {
    std::vector<long long> slots(
        static_cast<std::size_t>(target.sizes[static_cast<std::size_t>(i)]));
    for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = static_cast<long long>(s) + 1;
    std::shuffle(slots.begin(), slots.end(), rng);
    std::size_t cursor = 0;
    part[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(source.summands()));
    for (int j = 0; j < source.summands(); ++j) {
      const long long k = mult.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (long long p = 0; p < source.sizes[static_cast<std::size_t>(j)]; ++p) {
        std::vector<long long> set(slots.begin() + static_cast<long>(cursor),
                                   slots.begin() + static_cast<long>(cursor) + k);
        std::sort(set.begin(), set.end());
        part[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(set);
        cursor += static_cast<std::size_t>(k);
      }
    }
  }
  return part;
}

}  // namespace

TEST_CASE("unital multiplicity check") {
  CHECK(is_unital_multiplicity(AlgebraShape({2, 3}), AlgebraShape({7}),
                               MultiplicityMatrix{{{2, 1}}}));
  CHECK(!is_unital_multiplicity(AlgebraShape({2, 3}), AlgebraShape({7}),
                                MultiplicityMatrix{{{1, 1}}}));
  CHECK(!is_unital_multiplicity(AlgebraShape({2}), AlgebraShape({4}),
                                MultiplicityMatrix{{{-2}}}));
}

TEST_CASE("canonical layout") {
  const MatrixUnitHom hom = MatrixUnitHom::canonical(AlgebraShape({2, 3}), AlgebraShape({7}),
                                                     MultiplicityMatrix{{{2, 1}}});
  const SlotPartition& part = hom.partition();
  CHECK(part[0][0][0] == std::vector<long long>{1, 2});
  CHECK(part[0][0][1] == std::vector<long long>{3, 4});
  CHECK(part[0][1][0] == std::vector<long long>{5});
  CHECK(part[0][1][1] == std::vector<long long>{6});
  CHECK(part[0][1][2] == std::vector<long long>{7});

  CHECK_THROWS_AS(MatrixUnitHom::canonical(AlgebraShape({2}), AlgebraShape({5}),
                                           MultiplicityMatrix{{{2}}}),
                  std::invalid_argument);
}

TEST_CASE("identity hom") {
  const MatrixUnitHom hom = MatrixUnitHom::canonical(AlgebraShape({1}), AlgebraShape({1}),
                                                     MultiplicityMatrix{{{1}}});
  CHECK(hom.image_of_unit({0, 1, 1}) == BlockMatrix::identity(AlgebraShape({1})));
  CHECK(verify_hom(hom).all());
}

TEST_CASE("image of units") {
  const MatrixUnitHom hom = MatrixUnitHom::canonical(AlgebraShape({2}), AlgebraShape({4}),
                                                     MultiplicityMatrix{{{2}}});
  // e_12 -> h_13 + h_24 (pairing {1,2} with {3,4} in order)
  const AlgebraShape m4({4});
  CHECK(hom.image_of_unit({0, 1, 2}) ==
        add(BlockMatrix::unit(m4, {0, 1, 3}), BlockMatrix::unit(m4, {0, 2, 4})));

  const MatrixUnitHom big = MatrixUnitHom::canonical(AlgebraShape({2, 3}), AlgebraShape({7}),
                                                     MultiplicityMatrix{{{2, 1}}});
  const AlgebraShape m7({7});
  CHECK(big.image_of_unit({1, 1, 2}) == BlockMatrix::unit(m7, {0, 5, 6}));
  // diagonal units map to sums of diagonal units
  for (long long p = 1; p <= 2; ++p) {
    CHECK(is_diagonal(big.image_of_unit({0, p, p})));
  }
  CHECK_THROWS_AS(big.image_of_unit({0, 3, 1}), std::out_of_range);
}

TEST_CASE("partition validation") {
  const AlgebraShape src({2});
  const AlgebraShape tgt({4});
  const MultiplicityMatrix mult{{{2}}};
  CHECK_THROWS_AS(MatrixUnitHom(src, tgt, mult, {{{{1, 2}, {2, 3}}}}),
                  std::invalid_argument);  // not disjoint
  CHECK_THROWS_AS(MatrixUnitHom(src, tgt, mult, {{{{2, 1}, {3, 4}}}}),
                  std::invalid_argument);  // not ascending
  CHECK_THROWS_AS(MatrixUnitHom(src, tgt, mult, {{{{1}, {2}}}}),
                  std::invalid_argument);  // wrong cardinality
}

TEST_CASE("verify_hom passes on canonical homs for all small unital mults") {
  const std::vector<std::pair<AlgebraShape, AlgebraShape>> cases{
      {AlgebraShape({1}), AlgebraShape({3})},
      {AlgebraShape({2}), AlgebraShape({4})},
      {AlgebraShape({1, 2}), AlgebraShape({3, 2})},
      {AlgebraShape({2, 3}), AlgebraShape({5})},
  };
  for (const auto& [src, tgt] : cases) {
    for (const MultiplicityMatrix& mult : all_unital_mults(src, tgt)) {
      bool has_incoming = true;
      for (std::size_t j = 0; j < static_cast<std::size_t>(src.summands()); ++j) {
        long long col = 0;
        for (std::size_t i = 0; i < mult.k.size(); ++i) col += mult.k[i][j];
        if (col == 0) has_incoming = false;
      }
      if (!has_incoming) continue;  // a summand mapped to zero is not unital-injective
      const MatrixUnitHom hom = MatrixUnitHom::canonical(src, tgt, mult);
      const HomReport rep = verify_hom(hom, VerifyScope::Exhaustive);
      CHECK_MESSAGE(rep.all(), rep.text());
    }
  }
}

TEST_CASE("corrupted partitions are rejected, relayouts stay conjugate") {
  const AlgebraShape src({2, 3});
  const AlgebraShape tgt({7});
  const MultiplicityMatrix mult{{{2, 1}}};
  const MatrixUnitHom canon = MatrixUnitHom::canonical(src, tgt, mult);

  // a reused slot violates disjointness and cannot be constructed
  SlotPartition dup = canon.partition();
  dup[0][0][0][0] = dup[0][1][0][0];
  CHECK_THROWS_AS(MatrixUnitHom(src, tgt, mult, dup), std::invalid_argument);

  // swapping a slot between H^{11}_1 and H^{12}_1 keeps the sets disjoint;
  // the result is again a hom, unitarily conjugate to the canonical layout
  SlotPartition part = canon.partition();
  std::swap(part[0][0][0][0], part[0][1][0][0]);
  for (auto& js : part[0]) {
    for (auto& set : js) std::sort(set.begin(), set.end());
  }
  const MatrixUnitHom moved(src, tgt, mult, part);
  CHECK(moved != canon);
  CHECK(verify_hom(moved, VerifyScope::Exhaustive).all());
  const BlockMatrix u = conjugating_unitary(canon, moved);
  CHECK(is_unitary(u));
  CHECK(is_in_normalizer(u));
}

TEST_CASE("generator scope agrees with exhaustive scope") {
  std::mt19937 rng(5);
  const AlgebraShape src({2, 3});
  const AlgebraShape tgt({8, 5});
  const MultiplicityMatrix mult{{{1, 2}, {1, 1}}};
  REQUIRE(is_unital_multiplicity(src, tgt, mult));
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixUnitHom hom(src, tgt, mult, random_partition(src, tgt, mult, rng));
    const HomReport a = verify_hom(hom, VerifyScope::Exhaustive);
    const HomReport b = verify_hom(hom, VerifyScope::Generators);
    CHECK(a.all());
    CHECK(b.all());
  }
}

TEST_CASE("trace identity") {
  const AlgebraShape src({2, 3});
  const AlgebraShape tgt({7, 8});
  const MultiplicityMatrix mult{{{2, 1}, {1, 2}}};
  REQUIRE(is_unital_multiplicity(src, tgt, mult));
  const MatrixUnitHom hom = MatrixUnitHom::canonical(src, tgt, mult);
  for (int j = 0; j < src.summands(); ++j) {
    for (long long p = 1; p <= src.sizes[static_cast<std::size_t>(j)]; ++p) {
      const BlockMatrix img = hom.image_of_unit({j, p, p});
      for (int i = 0; i < tgt.summands(); ++i) {
        CHECK(block_trace(img, i) ==
              CRat(mult.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
      }
    }
  }
}

TEST_CASE("composition multiplies K0 data") {
  const AlgebraShape a({1, 2});
  const AlgebraShape b({3, 2});
  const AlgebraShape c({8});
  const MultiplicityMatrix f_mult{{{1, 1}, {2, 0}}};
  const MultiplicityMatrix g_mult{{{2, 1}}};
  const MatrixUnitHom f = MatrixUnitHom::canonical(a, b, f_mult);
  const MatrixUnitHom g = MatrixUnitHom::canonical(b, c, g_mult);
  const MatrixUnitHom gf = compose(g, f);
  CHECK(gf.mult() == MultiplicityMatrix{{{4, 2}}});
  CHECK(verify_hom(gf, VerifyScope::Exhaustive).all());
  for (const MatrixUnitRef& r : all_units(a)) {
    CHECK(gf.image_of_unit(r) == g.apply(f.image_of_unit(r)));
  }
}

TEST_CASE("conjugating unitary of equal homs is the identity") {
  const MatrixUnitHom hom = MatrixUnitHom::canonical(AlgebraShape({2}), AlgebraShape({6}),
                                                     MultiplicityMatrix{{{3}}});
  CHECK(conjugating_unitary(hom, hom) == BlockMatrix::identity(AlgebraShape({6})));
}

TEST_CASE("conjugating unitary example M2 to M4") {
  const AlgebraShape src({2});
  const AlgebraShape tgt({4});
  const MultiplicityMatrix mult{{{2}}};
  const MatrixUnitHom phi(src, tgt, mult, {{{{1, 2}, {3, 4}}}});
  const MatrixUnitHom psi(src, tgt, mult, {{{{1, 3}, {2, 4}}}});
  const BlockMatrix u = conjugating_unitary(phi, psi);
  CHECK(is_unitary(u));
  CHECK(is_in_normalizer(u));
  for (const MatrixUnitRef& r : all_units(src)) {
    CHECK(ad(u, phi.image_of_unit(r)) == psi.image_of_unit(r));
  }
}

TEST_CASE("conjugating unitary swap example") {
  const AlgebraShape src({1, 1});
  const AlgebraShape tgt({2});
  const MultiplicityMatrix mult{{{1, 1}}};
  const MatrixUnitHom phi(src, tgt, mult, {{{{1}}, {{2}}}});
  const MatrixUnitHom psi(src, tgt, mult, {{{{2}}, {{1}}}});
  const BlockMatrix u = conjugating_unitary(phi, psi);
  const AlgebraShape m2({2});
  CHECK(u == add(BlockMatrix::unit(m2, {0, 1, 2}), BlockMatrix::unit(m2, {0, 2, 1})));
}

TEST_CASE("conjugating unitary over random partition pairs") {
  std::mt19937 rng(17);
  const AlgebraShape src({2, 3});
  const AlgebraShape tgt({7, 8});
  const MultiplicityMatrix mult{{{2, 1}, {1, 2}}};
  for (int trial = 0; trial < 60; ++trial) {
    const MatrixUnitHom phi(src, tgt, mult, random_partition(src, tgt, mult, rng));
    const MatrixUnitHom psi(src, tgt, mult, random_partition(src, tgt, mult, rng));
    const BlockMatrix u = conjugating_unitary(phi, psi);
    CHECK(is_unitary(u));
    CHECK(is_in_normalizer(u));
    for (const MatrixUnitRef& r : all_units(src)) {
      CHECK(ad(u, phi.image_of_unit(r)) == psi.image_of_unit(r));
    }
  }
}

TEST_CASE("conjugating unitary requires matching data") {
  const MatrixUnitHom a = MatrixUnitHom::canonical(AlgebraShape({2}), AlgebraShape({4}),
                                                   MultiplicityMatrix{{{2}}});
  const MatrixUnitHom b = MatrixUnitHom::canonical(AlgebraShape({2}), AlgebraShape({6}),
                                                   MultiplicityMatrix{{{3}}});
  CHECK_THROWS_AS(conjugating_unitary(a, b), std::invalid_argument);
}

TEST_CASE("serialization is deterministic") {
  const MatrixUnitHom hom = MatrixUnitHom::canonical(AlgebraShape({2, 3}), AlgebraShape({7}),
                                                     MultiplicityMatrix{{{2, 1}}});
  CHECK(serialize_hom(hom) == serialize_hom(hom));
  CHECK(!serialize_hom(hom).empty());
}
