#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "quiverhom/fpmat.hpp"

using namespace qh;

namespace {

FpMat random_mat(std::mt19937_64& rng, u32 p, int r, int c) {
  FpMat m(p, r, c);
  for (auto& x : m.a) x = (u32)(rng() % p);
  return m;
}

// Independent oracle: Gaussian elimination with full pivot search, written
// separately from the row-echelon path in the library.
int rank_oracle(FpMat m) {
  int rank = 0;
  std::vector<bool> used_row(m.rows, false), used_col(m.cols, false);
  while (true) {
    int pr = -1, pc = -1;
    for (int i = 0; i < m.rows && pr < 0; ++i) {
      if (used_row[i]) continue;
      for (int j = 0; j < m.cols; ++j)
        if (!used_col[j] && m.at(i, j)) {
          pr = i;
          pc = j;
          break;
        }
    }
    if (pr < 0) break;
    used_row[pr] = used_col[pc] = true;
    ++rank;
    u32 inv = inv_mod(m.at(pr, pc), m.p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == pr || !m.at(i, pc)) continue;
      u64 f = (u64)m.at(i, pc) * inv % m.p;
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) =
            (u32)((m.at(i, j) + (u64)(m.p - 1) * f % m.p * m.at(pr, j)) % m.p);
    }
  }
  return rank;
}

}  // namespace

TEST_CASE("rref on small examples") {
  FpMat id2 = FpMat::identity(2, 2);
  RrefResult r = rref(id2);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<int>{0, 1});

  FpMat ones(2, 2, 2);
  ones.a = {1, 1, 1, 1};
  CHECK(rref(ones).rank == 1);
}

TEST_CASE("rref agrees with the full-pivot oracle and is idempotent") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    FpMat m = random_mat(rng, 101, 5, 7);
    RrefResult r = rref(m);
    CHECK(r.rank == rank_oracle(m));
    CHECK(rref(r.R).R == r.R);
    CHECK(mat_rank(m) == mat_rank(mat_transpose(m)));
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(FpMat::identity(101, 4)).cols == 0);
  CHECK(kernel_basis(FpMat(101, 3, 3)).cols == 3);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    FpMat m = random_mat(rng, 101, 4, 6);
    FpMat k = kernel_basis(m);
    CHECK(k.cols == 6 - mat_rank(m));
    CHECK(mat_mul(m, k).is_zero());
    CHECK(mat_rank(k) == k.cols);
  }
}

TEST_CASE("solve") {
  FpMat b = FpMat(101, 3, 2);
  b.a = {1, 2, 3, 4, 5, 6};
  auto x = solve_linear(FpMat::identity(101, 3), b);
  REQUIRE(x);
  CHECK(*x == b);

  FpMat zero(101, 2, 2);
  FpMat rhs(101, 2, 1);
  rhs.at(0, 0) = 5;
  CHECK_FALSE(solve_linear(zero, rhs));

  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    FpMat a = random_mat(rng, 101, 5, 3);
    FpMat x0 = random_mat(rng, 101, 3, 2);
    FpMat rhs2 = mat_mul(a, x0);
    auto sol = solve_linear(a, rhs2);
    REQUIRE(sol);
    CHECK(mat_mul(a, *sol) == rhs2);
  }
}

TEST_CASE("solution set is particular plus kernel span") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    FpMat a = random_mat(rng, 13, 4, 5);
    FpMat x0 = random_mat(rng, 13, 5, 1);
    FpMat b = mat_mul(a, x0);
    auto part = solve_linear(a, b);
    REQUIRE(part);
    FpMat k = kernel_basis(a);
    // sampled elements of particular + span(kernel) solve the system
    for (int s = 0; s < 5; ++s) {
      FpMat coef = random_mat(rng, 13, k.cols, 1);
      FpMat x = mat_add(*part, mat_mul(k, coef));
      CHECK(mat_mul(a, x) == b);
    }
    // and x0 - particular lies in the kernel span
    FpMat diff = mat_sub(x0, *part);
    CHECK(cols_contained(k, diff));
  }
}

TEST_CASE("degenerate shapes behave") {
  FpMat e(101, 0, 3);
  CHECK(mat_rank(e) == 0);
  CHECK(kernel_basis(e).cols == 3);
  FpMat f(101, 3, 0);
  CHECK(mat_mul(f, FpMat(101, 0, 2)).rows == 3);
  CHECK(mat_hcat(e, FpMat(101, 0, 2)).cols == 5);
}

TEST_CASE("primality is enforced") {
  CHECK_THROWS_AS(FpMat(6, 2, 2), UsageError);
  CHECK(is_prime_u32(2));
  CHECK(is_prime_u32(101));
  CHECK_FALSE(is_prime_u32(91));
}
