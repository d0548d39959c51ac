#include <random>

#include <gtest/gtest.h>

#include "braidkh/snf.hpp"
#include "oracles.hpp"

using namespace braidkh;

namespace {

std::vector<BigInt> big(std::initializer_list<long> xs) {
  std::vector<BigInt> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

SparseMatrix to_sparse(const DenseMatrix& m) {
  SparseMatrix s;
  s.rows = static_cast<int>(m.size());
  s.cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c)
      if (m[r][c] != 0) s.entries.push_back({r, c, static_cast<std::int64_t>(m[r][c])});
  return s;
}

DenseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int range, double density) {
  std::uniform_int_distribution<int> val(-range, range);
  std::bernoulli_distribution keep(density);
  DenseMatrix m(rows, std::vector<BigInt>(cols, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (keep(rng)) x = val(rng);
  return m;
}

}  // namespace

TEST(Snf, Examples) {
  EXPECT_TRUE(smith_normal_form(DenseMatrix{{0, 0}, {0, 0}}).empty());
  EXPECT_EQ(smith_normal_form(DenseMatrix{{2, 0}, {0, 3}}), big({1, 6}));
  EXPECT_EQ(smith_normal_form(DenseMatrix{{1, 1}, {1, 1}}), big({1}));
  EXPECT_TRUE(smith_normal_form(SparseMatrix{3, 4, {}}).empty());
  EXPECT_TRUE(smith_normal_form(SparseMatrix{0, 0, {}}).empty());
}

TEST(Snf, DuplicateTripletsAreSummed) {
  SparseMatrix m{2, 2, {{0, 0, 1}, {0, 0, 1}, {1, 1, 3}}};
  EXPECT_EQ(smith_normal_form(m), big({1, 6}));
  SparseMatrix z{1, 1, {{0, 0, 4}, {0, 0, -4}}};
  EXPECT_TRUE(smith_normal_form(z).empty());
}

TEST(Snf, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
    const DenseMatrix m = random_matrix(rng, rows, cols, 6, 0.6);
    const auto expect = oracle::snf_by_minors(m);
    EXPECT_EQ(smith_normal_form(m), expect) << t;
    EXPECT_EQ(smith_normal_form(to_sparse(m)), expect) << t;
    EXPECT_EQ(oracle::snf_elimination(m), expect) << t;
  }
}

TEST(Snf, LargerMatricesAgreeWithEliminationOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const DenseMatrix m = random_matrix(rng, 12, 9, 3, 0.3);
    const auto expect = oracle::snf_elimination(m);
    EXPECT_EQ(smith_normal_form(to_sparse(m)), expect) << t;
    EXPECT_EQ(expect.size(), oracle::bareiss_rank(m)) << t;
  }
}

TEST(Snf, OverflowFallsBackToBigIntegers) {
  const std::int64_t big1 = std::int64_t{1} << 40;
  SparseMatrix m{2, 2, {{0, 0, big1}, {0, 1, 3}, {1, 0, 7}, {1, 1, big1}}};
  DenseMatrix d{{BigInt(big1), 3}, {7, BigInt(big1)}};
  EXPECT_EQ(smith_normal_form(m), oracle::snf_by_minors(d));
  // det = 2^80 - 21 does not fit in 64 bits.
  EXPECT_EQ(smith_normal_form(m).back(), BigInt(1) * BigInt(big1) * BigInt(big1) - 21);
}

TEST(Snf, DivisibilityChain) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const DenseMatrix m = random_matrix(rng, 5, 5, 20, 0.7);
    const auto f = smith_normal_form(m);
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0);
    for (const auto& x : f) EXPECT_GT(x, 0);
  }
}

TEST(Bareiss, RankExamples) {
  EXPECT_EQ(oracle::bareiss_rank({{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(oracle::bareiss_rank({{0, 0}, {0, 0}}), 0u);
  EXPECT_EQ(oracle::bareiss_rank({{2, 0, 1}, {0, 3, 1}, {2, 3, 2}}), 2u);
}
