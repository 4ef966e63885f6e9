#include <gtest/gtest.h>

#include <set>

#include "nkrank/complex.hpp"
#include "support/oracles.hpp"

using namespace nkrank;

namespace {

Face face(std::initializer_list<int> c) { return Face{std::vector<int>(c)}; }

Octahedron oct(std::initializer_list<std::pair<int, int>> parts) {
  Octahedron p;
  for (auto [a, b] : parts) p.parts.push_back(make_pair(a, b));
  return p;
}

}  // namespace

TEST(JoinPower, Counts) {
  EXPECT_EQ(enumerate_octahedra(3, 1).size(), 9U);
  EXPECT_EQ(enumerate_octahedra(4, 0).size(), 6U);
  EXPECT_EQ(enumerate_octahedra(4, 2).size(), 216U);
  EXPECT_THROW(JoinPower(1, 1), std::invalid_argument);
}

TEST(JoinPower, IndexingIsBijectiveAndLexicographic) {
  for (auto [n, k] : {std::pair{4, 1}, {5, 2}, {6, 1}, {3, 3}, {7, 2}}) {
    const JoinPower jp(n, k);
    const auto ref = oracle::octahedra(n, k);  // nested loops: lexicographic order
    ASSERT_EQ(ref.size(), jp.octahedron_count());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_EQ(jp.octahedron({i}), ref[i]);
      ASSERT_EQ(jp.index(ref[i]).value, i);
    }
  }
  const JoinPower jp(4, 1);
  EXPECT_EQ(jp.subset_index(make_pair(1, 2)), 0U);
  EXPECT_EQ(jp.subset_index(make_pair(3, 4)), 5U);
  EXPECT_EQ(jp.index(oct({{1, 3}, {2, 4}})).value, 1U * 6 + 4);
}

TEST(JoinPower, FaceIndexing) {
  const JoinPower jp(4, 2);
  for (std::size_t i = 0; i < jp.face_count(); ++i) EXPECT_EQ(jp.face_index(jp.face(i)), i);
}

TEST(Faces, OfOctahedron) {
  EXPECT_EQ(faces_of(oct({{1, 2}})), (std::vector<Face>{face({1}), face({2})}));
  const auto f = faces_of(oct({{1, 2}, {1, 3}}));
  EXPECT_EQ(std::set<Face>(f.begin(), f.end()),
            (std::set<Face>{face({1, 1}), face({1, 3}), face({2, 1}), face({2, 3})}));
  for (const auto& p : enumerate_octahedra(4, 2)) {
    const auto fs = faces_of(p);
    EXPECT_EQ(fs.size(), 8U);
    EXPECT_EQ(std::set<Face>(fs.begin(), fs.end()), oracle::face_set(p));
  }
}

TEST(Disjointness, Examples) {
  EXPECT_TRUE(vertex_disjoint(oct({{1, 2}, {1, 2}}), oct({{3, 4}, {3, 4}})));
  EXPECT_FALSE(vertex_disjoint(oct({{1, 2}, {1, 2}}), oct({{1, 2}, {1, 2}})));
  EXPECT_TRUE(vertex_disjoint(oct({{1, 2}, {3, 4}}), oct({{3, 4}, {1, 2}})));
  EXPECT_TRUE(vertex_disjoint(face({1, 2}), face({2, 1})));
  EXPECT_FALSE(vertex_disjoint(face({1, 2}), face({1, 3})));
  EXPECT_TRUE(vertex_disjoint(face({1, 0}), face({2, 1})));
  for (const auto& p : enumerate_octahedra(4, 1))
    for (const auto& q : enumerate_octahedra(4, 1)) EXPECT_EQ(vertex_disjoint(p, q), oracle::disjoint(p, q));
}

TEST(GPairs, Examples) {
  EXPECT_EQ(g_pairs(0), (std::vector<OctPair>{unordered(oct_bar({2}), oct_bar({3}))}));
  EXPECT_EQ(g_pairs(1), (std::vector<OctPair>{unordered(oct_bar({2, 2}), oct_bar({3, 3})),
                                               unordered(oct_bar({2, 3}), oct_bar({3, 2}))}));
  const std::set<OctPair> k2{unordered(oct_bar({2, 2, 2}), oct_bar({3, 3, 3})),
                             unordered(oct_bar({2, 2, 3}), oct_bar({3, 3, 2})),
                             unordered(oct_bar({2, 3, 2}), oct_bar({3, 2, 3})),
                             unordered(oct_bar({2, 3, 3}), oct_bar({3, 2, 2}))};
  const auto g2 = g_pairs(2);
  EXPECT_EQ(std::set<OctPair>(g2.begin(), g2.end()), k2);
  for (std::size_t l = 0; l <= 5; ++l) {
    const auto g = g_pairs(l);
    EXPECT_EQ(g.size(), std::size_t{1} << l);
    for (const auto& pq : g) EXPECT_TRUE(meets_exactly_at_base(pq.first, pq.second));
  }
}

TEST(HPairs, Sizes) {
  EXPECT_EQ(h_pairs(0).size(), 3U);
  EXPECT_EQ(h_pairs(1).size(), 18U);
  EXPECT_EQ(h_pairs(2).size(), 108U);
}

TEST(TPairs, SixteenUnorderedAtK1) {
  for (const auto& pq : g_pairs(1)) EXPECT_EQ(t_pairs(pq.first, pq.second).size(), 16U);
  EXPECT_THROW(t_pairs(oct_bar({2, 2}), oct_bar({2, 3})), std::invalid_argument);
}

TEST(CombinatorialIdentity, HoldsForSmallK) {
  const auto k0 = verify_combinatorial_identity(0);
  EXPECT_TRUE(k0.holds);
  EXPECT_EQ(k0.disjoint_pairs, 6U);
  EXPECT_EQ(k0.product_sum_size, 6U);
  EXPECT_EQ(k0.octahedron_pairs, 2U);
  EXPECT_EQ(k0.base_pair_multiplicity, 2U);
  const auto k1 = verify_combinatorial_identity(1);
  EXPECT_TRUE(k1.holds);
  EXPECT_EQ(k1.disjoint_pairs, 36U);
  EXPECT_EQ(k1.product_sum_size, 36U);
  for (std::size_t k = 2; k <= 3; ++k) {
    const auto r = verify_combinatorial_identity(k);
    EXPECT_TRUE(r.holds) << k;
    EXPECT_EQ(r.base_pair_multiplicity, std::size_t{1} << (k + 1));
  }
}

TEST(XorDecompositions, Examples) {
  EXPECT_EQ(xor_decompositions(oct({{1, 2}, {3, 4}}), 4).size(), 4U);
  const auto k0 = xor_decompositions(oct({{1, 2}}), 4);
  EXPECT_EQ(k0, (std::vector<OctPair>{unordered(oct({{1, 3}}), oct({{2, 3}})), unordered(oct({{1, 4}}), oct({{2, 4}}))}));
}

TEST(XorDecompositions, MatchPairwiseSearch) {
  for (auto [n, k] : {std::pair{4, 0}, {5, 0}, {4, 1}}) {
    const auto all = oracle::octahedra(n, k);
    for (const auto& p : all) {
      const auto ref = oracle::xor_decompositions(p, all);
      const auto got = xor_decompositions(p, n);
      std::set<std::pair<Octahedron, Octahedron>> mine;
      for (const auto& d : got) {
        EXPECT_NE(d.first, d.second);
        mine.insert({d.first, d.second});
      }
      ASSERT_EQ(mine, ref) << to_string(p);
    }
  }
}

TEST(XorDecompositions, OnlyOneCoordinateFamily) {
  for (auto [n, k] : {std::pair{4, 1}, {5, 1}, {4, 2}}) {
    const auto r = verify_one_coordinate_only(n, k);
    EXPECT_TRUE(r.holds) << n << "," << k;
    EXPECT_EQ(r.decompositions, r.octahedra_checked * (k + 1) * (n - 2));
  }
}

TEST(ElementaryCoboundary, Example) {
  const auto c = elementary_coboundary(face({1, 1}), face({0, 2}));
  EXPECT_EQ(c, (std::vector<FacePair>{unordered(face({1, 1}), face({2, 2})), unordered(face({1, 1}), face({3, 2}))}));
  EXPECT_THROW(elementary_coboundary(face({1, 1}), face({0, 1})), std::invalid_argument);
  EXPECT_THROW(elementary_coboundary(face({1, 1}), face({2, 2})), std::invalid_argument);
}

TEST(ElementaryCoboundary, AlwaysSizeTwo) {
  const std::size_t expected_inputs[] = {0, 36, 324, 2592};  // 3^{k+1} * (k+1) * 2^k
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto r = scan_elementary_coboundaries(k);
    EXPECT_TRUE(r.all_size_two) << k;
    EXPECT_EQ(r.checked, expected_inputs[k]);
  }
}

TEST(SkeletonParams, Examples) {
  EXPECT_EQ(skeleton_joinpower_params(7, 1).s, 4U);
  EXPECT_EQ(skeleton_joinpower_params(5, 2).s, 2U);
  EXPECT_THROW(skeleton_joinpower_params(1, 2), std::invalid_argument);
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t n = k; n <= 40; ++n) {
      const auto p = skeleton_joinpower_params(n, k);
      EXPECT_LE(p.s * (k + 1), n + 1);
      EXPECT_GE(p.s * (k + 1) + k, n + 1);  // s >= (n-k+1)/(k+1)
      std::set<std::size_t> seen;
      for (const auto& g : p.groups) {
        EXPECT_GE(g.size(), p.s);
        seen.insert(g.begin(), g.end());
      }
      EXPECT_EQ(seen.size(), n + 1);
    }
}
