#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "nkrank/affine_solver.hpp"
#include "nkrank/gf2_matrix.hpp"
#include "support/oracles.hpp"

using namespace nkrank;

namespace {

Gf2Matrix random_with_rank_cap(std::size_t rows, std::size_t cols, std::size_t inner, std::mt19937_64& rng) {
  return Gf2Matrix::random(rows, inner, rng) * Gf2Matrix::random(inner, cols, rng);
}

}  // namespace

TEST(BitVector, SetFlipCount) {
  BitVector v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 3U);
  v.flip(64);
  EXPECT_EQ(v.ones(), (std::vector<std::size_t>{0, 129}));
  EXPECT_EQ(v.first(), 0U);
  EXPECT_THROW(v.get(130), std::out_of_range);
  EXPECT_EQ(BitVector::from_string(v.to_string()), v);
}

TEST(Rank, SmallCases) {
  EXPECT_EQ(rank(Gf2Matrix::identity(3)), 3U);
  EXPECT_EQ(rank(Gf2Matrix::ones(4, 4)), 1U);
  EXPECT_EQ(rank(Gf2Matrix::identity(3) + Gf2Matrix::ones(3, 3)), 2U);
  EXPECT_EQ(rank(Gf2Matrix(0, 0)), 0U);
  EXPECT_EQ(rank(Gf2Matrix(0, 5)), 0U);
  EXPECT_EQ(rank(Gf2Matrix(5, 0)), 0U);
}

TEST(Rank, MatchesOracleOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = rng() % 90, c = rng() % 90, inner = rng() % 70 + 1;
    const Gf2Matrix m = trial % 2 ? Gf2Matrix::random(r, c, rng) : random_with_rank_cap(r, c, inner, rng);
    ASSERT_EQ(rank(m), oracle::rank(m)) << r << "x" << c;
    ASSERT_TRUE(m.padding_clean());
  }
}

TEST(Rank, TransposeAndSubadditivity) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = rng() % 70 + 1, c = rng() % 70 + 1;
    const Gf2Matrix a = random_with_rank_cap(r, c, rng() % 20 + 1, rng);
    const Gf2Matrix b = random_with_rank_cap(r, c, rng() % 20 + 1, rng);
    EXPECT_EQ(rank(a.transpose()), rank(a));
    EXPECT_LE(rank(a + b), rank(a) + rank(b));
  }
}

TEST(Rank, IdentityPlusOnes) {
  for (std::size_t m = 1; m <= 70; ++m)
    EXPECT_EQ(rank(Gf2Matrix::identity(m) + Gf2Matrix::ones(m, m)), m % 2 ? m - 1 : m) << m;
}

TEST(RowReduce, Examples) {
  auto z = row_reduce(Gf2Matrix(2, 2));
  EXPECT_EQ(z.rank, 0U);
  EXPECT_EQ(z.kernel_basis.size(), 2U);
  auto id = row_reduce(Gf2Matrix::identity(2));
  EXPECT_EQ(id.rank, 2U);
  EXPECT_TRUE(id.kernel_basis.empty());
  auto one = row_reduce(Gf2Matrix::from_rows({"11"}));
  EXPECT_EQ(one.rank, 1U);
  ASSERT_EQ(one.kernel_basis.size(), 1U);
  EXPECT_EQ(one.kernel_basis[0].to_string(), "11");
}

TEST(RowReduce, KernelSpansNullSpace) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = rng() % 40 + 1, c = rng() % 60 + 1;
    const Gf2Matrix m = random_with_rank_cap(r, c, rng() % 30 + 1, rng);
    const auto red = row_reduce(m);
    EXPECT_EQ(red.rank, oracle::rank(m));
    EXPECT_EQ(red.rank + red.kernel_basis.size(), c);
    Gf2Matrix k(red.kernel_basis.size(), c);
    for (std::size_t i = 0; i < red.kernel_basis.size(); ++i) {
      EXPECT_TRUE(apply(m, red.kernel_basis[i]).none());
      k.set_row(i, red.kernel_basis[i]);
    }
    EXPECT_EQ(rank(k), red.kernel_basis.size());
    const auto again = row_reduce(red.reduced);
    EXPECT_EQ(again.reduced, red.reduced);
  }
}

TEST(Gram, Examples) {
  EXPECT_TRUE(gram(Gf2Matrix(2, 3), Gf2Matrix::identity(2)).is_zero());
  EXPECT_EQ(gram(Gf2Matrix::identity(2), Gf2Matrix::identity(2)), Gf2Matrix::identity(2));
  EXPECT_EQ(gram(Gf2Matrix::identity(2), Gf2Matrix::hyperbolic(1)), Gf2Matrix::from_rows({"01", "10"}));
  EXPECT_THROW(gram(Gf2Matrix(3, 3), Gf2Matrix::identity(2)), std::invalid_argument);
}

TEST(Gram, RankAndSymmetry) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t beta = rng() % 6 + 1, cols = rng() % 40 + 1;
    const Gf2Matrix y = Gf2Matrix::random(beta, cols, rng);
    Gf2Matrix omega = Gf2Matrix::random(beta, beta, rng);
    omega += omega.transpose();
    const Gf2Matrix g = gram(y, omega);
    EXPECT_TRUE(g.is_symmetric());
    EXPECT_LE(rank(g), std::min(rank(y), rank(omega)));
  }
}

TEST(Block, Selection) {
  std::mt19937_64 rng(15);
  const Gf2Matrix m = Gf2Matrix::random(7, 9, rng);
  std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5, 6}, cols{0, 1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(block(m, rows, cols), m);
  EXPECT_EQ(block(m, std::vector<std::size_t>{}, std::vector<std::size_t>{}).rows(), 0U);
  std::vector<std::size_t> r2{6, 0}, c2{8, 3, 3};
  const Gf2Matrix b = block(m, r2, c2);
  for (std::size_t i = 0; i < r2.size(); ++i)
    for (std::size_t j = 0; j < c2.size(); ++j) EXPECT_EQ(b.get(i, j), m.get(r2[i], c2[j]));
  EXPECT_LE(rank(b), rank(m));
  std::vector<std::size_t> bad{7};
  EXPECT_THROW(block(m, bad, cols), std::out_of_range);
}

TEST(Gf2m, RoundTrip) {
  std::mt19937_64 rng(16);
  for (std::size_t r : {0, 1, 63, 64, 65}) {
    const Gf2Matrix m = Gf2Matrix::random(r, 70, rng);
    std::ostringstream out;
    write_gf2m(out, m, Gf2mMeta{4, 1});
    std::istringstream in(out.str());
    const auto f = read_gf2m(in);
    EXPECT_EQ(f.matrix, m);
    ASSERT_TRUE(f.meta);
    EXPECT_EQ(*f.meta, (Gf2mMeta{4, 1}));
    std::ostringstream again;
    write_gf2m(again, f.matrix, f.meta);
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST(Gf2m, RejectsMalformedInput) {
  const char* bad[] = {
      "GF2M 2\nrows 1 cols 1\n1\n",
      "GF2M 1\nrows 2 cols 2\n01\n",
      "GF2M 1\nrows 1 cols 2\n012\n",
      "GF2M 1\nrows 1 cols 2\n0x\n",
      "GF2M 1\nrows 1 cols 1\n1\n0\n",
      "GF2M 1\nmeta n=4 k=1\nrows 1 cols 1\n1\n",
      "GF2M 1\nrows -1 cols 1\n",
      "GF2M 1\r\nrows 1 cols 1\r\n1\r\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(read_gf2m(in), FormatError) << text;
  }
  std::istringstream ok("GF2M 1\nrows 0 cols 3\n");
  EXPECT_EQ(read_gf2m(ok).matrix.cols(), 3U);
}

TEST(AffineSolver, MatchesDenseElimination) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t vars = rng() % 150 + 1, eqs = rng() % 120;
    const Gf2Matrix a = random_with_rank_cap(eqs, vars, rng() % 60 + 1, rng);
    BitVector x0(vars);
    for (std::size_t i = 0; i < vars; ++i) x0.set(i, rng() & 1U);
    const BitVector b = apply(a, x0);  // consistent by construction
    AffineSolver s(vars);
    for (std::size_t r = 0; r < eqs; ++r) s.add_equation(a.row_vector(r), b.get(r));
    ASSERT_TRUE(s.consistent());
    const auto sol = s.solve();
    ASSERT_TRUE(sol);
    EXPECT_EQ(apply(a, sol->particular), b);
    EXPECT_EQ(s.rank(), oracle::rank(a));
    EXPECT_EQ(sol->kernel_basis.size(), vars - s.rank());
    for (const auto& v : sol->kernel_basis) EXPECT_TRUE(apply(a, v).none());
  }
}

TEST(AffineSolver, DetectsInconsistency) {
  AffineSolver s(3);
  std::vector<std::size_t> ab{0, 1}, bc{1, 2}, ac{0, 2};
  s.add_equation(ab, true);
  s.add_equation(bc, true);
  EXPECT_TRUE(s.consistent());
  s.add_equation(ac, true);
  EXPECT_FALSE(s.consistent());
  EXPECT_FALSE(s.solve());
}
