#include <algorithm>
#include <random>

#include "doctest.h"

#include "hbl/errors.hpp"
#include "hbl/matrix.hpp"
#include "hbl/subspace.hpp"

using namespace hbl;

namespace {

RatMatrix mat(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<Rat>> r;
  for (const auto& row : rows) {
    std::vector<Rat> rr;
    for (long long x : row) rr.emplace_back(x);
    r.push_back(std::move(rr));
  }
  return RatMatrix::from_rows(r);
}

Subspace sp(const std::vector<std::vector<long long>>& rows, int ambient) {
  return canonicalize(mat(rows), ambient);
}

RatMatrix random_matrix(std::mt19937_64& rng, int r, int c) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  RatMatrix M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M.at(i, j) = Rat(num(rng)) / Rat(den(rng));
  return M;
}

}  // namespace

TEST_CASE("rref puts a known matrix in reduced form") {
  RatMatrix M = mat({{2, 4, -2}, {1, 2, 0}, {3, 6, -2}});
  const std::vector<int> piv = M.rref();
  CHECK(piv == std::vector<int>{0, 2});
  CHECK(M.rows == 2);
  CHECK(M.at(0, 0) == Rat(1));
  CHECK(M.at(0, 1) == Rat(2));
  CHECK(M.at(0, 2) == Rat(0));
  CHECK(M.at(1, 0) == Rat(0));
  CHECK(M.at(1, 1) == Rat(0));
  CHECK(M.at(1, 2) == Rat(1));
}

TEST_CASE("rank and determinant agree with hand values") {
  CHECK(mat({{1, 2}, {2, 4}}).rank() == 1);
  CHECK(mat({{1, 2}, {3, 5}}).det() == Rat(-1));
  CHECK(mat({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}).det() == Rat(30));
  CHECK(mat({{1, 2}, {2, 4}}).det() == Rat(0));
}

TEST_CASE("null space annihilates the rows") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const RatMatrix M = random_matrix(rng, 2 + trial % 3, 4);
    const RatMatrix N = M.null_space();
    CHECK(M.rank() + N.rows == 4);
    // every null row is orthogonal to every matrix row
    for (int i = 0; i < N.rows; ++i)
      for (int r = 0; r < M.rows; ++r) {
        Rat dot = 0;
        for (int j = 0; j < 4; ++j) dot += M.at(r, j) * N.at(i, j);
        CHECK(dot == Rat(0));
      }
  }
}

TEST_CASE("solve_square inverts nonsingular systems and flags singular ones") {
  const RatMatrix M = mat({{1, 2}, {3, 5}});
  const std::vector<Rat> x = solve_square(M, {Rat(5), Rat(13)});
  REQUIRE(x.size() == 2);
  CHECK(x[0] == Rat(1));
  CHECK(x[1] == Rat(2));
  CHECK(solve_square(mat({{1, 2}, {2, 4}}), {Rat(1), Rat(1)}).empty());
}

TEST_CASE("canonical bases make equality structural") {
  const Subspace a = sp({{1, 1}}, 2);
  const Subspace b = sp({{2, 2}}, 2);
  const Subspace c = sp({{-3, -3}}, 2);
  CHECK(a == b);
  CHECK(b == c);
  CHECK(a != sp({{1, -1}}, 2));
  CHECK(Subspace::zero(2).dim() == 0);
  CHECK(Subspace::full(3).dim() == 3);
}

TEST_CASE("containment, sum and intersection on hand examples") {
  const Subspace e1 = sp({{1, 0, 0}}, 3);
  const Subspace e12 = sp({{1, 0, 0}, {0, 1, 0}}, 3);
  const Subspace diag = sp({{1, 1, 1}}, 3);
  CHECK(e12.contains(e1));
  CHECK(!e1.contains(e12));
  CHECK(e1.sum(diag) == sp({{1, 0, 0}, {0, 1, 1}}, 3));
  CHECK(e12.intersect(sp({{0, 1, 0}, {0, 0, 1}}, 3)) == sp({{0, 1, 0}}, 3));
  CHECK(e1.intersect(diag).is_zero());
  CHECK(e12.sum(sp({{0, 0, 1}}, 3)).is_full());
}

TEST_CASE("modular identity holds on random subspaces") {
  // dim(V) + dim(W) = dim(V+W) + dim(V cap W)
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Subspace V = Subspace::row_space(random_matrix(rng, 1 + trial % 3, 4));
    const Subspace W = Subspace::row_space(random_matrix(rng, 1 + (trial / 3) % 3, 4));
    const Subspace S = V.sum(W);
    const Subspace I = V.intersect(W);
    CHECK(V.dim() + W.dim() == S.dim() + I.dim());
    CHECK(S.contains(V));
    CHECK(S.contains(W));
    CHECK(V.contains(I));
    CHECK(W.contains(I));
  }
}

TEST_CASE("annihilator is an involution on the dimension") {
  const Subspace V = sp({{1, 2, 3}, {0, 1, 1}}, 3);
  const Subspace A = V.annihilator();
  CHECK(A.dim() == 1);
  CHECK(A.annihilator() == V);
}

TEST_CASE("image dimension and kernel for rank-deficient maps") {
  const RatMatrix L = mat({{1, -1}});  // (x, y) -> x - y
  CHECK(kernel(L) == sp({{1, 1}}, 2));
  CHECK(image_dim(L, Subspace::full(2)) == 1);
  CHECK(image_dim(L, sp({{1, 1}}, 2)) == 0);  // kernel collapses
  CHECK(image_dim(L, sp({{1, 0}}, 2)) == 1);
  CHECK(image_dim(L, Subspace::zero(2)) == 0);

  const RatMatrix P = mat({{1, 0, 0}, {0, 1, 0}});  // drop z
  CHECK(kernel(P) == sp({{0, 0, 1}}, 3));
  CHECK(image_dim(P, sp({{1, 0, 0}, {0, 0, 1}}, 3)) == 1);
}

TEST_CASE("chains are recognized and non-chains rejected") {
  const Subspace z = Subspace::zero(2), f = Subspace::full(2);
  const Subspace e1 = sp({{1, 0}}, 2), e2 = sp({{0, 1}}, 2);
  CHECK(is_chain({z, e1, f}));
  CHECK(is_chain({f, z}));
  CHECK(!is_chain({e1, e2}));
}

TEST_CASE("closure of a flag plus one subspace is finite and closed") {
  const Subspace e1 = sp({{1, 0, 0}}, 3);
  const Subspace e12 = sp({{1, 0, 0}, {0, 1, 0}}, 3);
  const std::vector<Subspace> flag = {Subspace::zero(3), e1, e12, Subspace::full(3)};
  const Subspace v = sp({{0, 1, 1}}, 3);
  const std::vector<Subspace> closed = closure_flag_plus_one(v, flag);
  // closed under both operations
  for (const auto& A : closed)
    for (const auto& B : closed) {
      CHECK(std::find(closed.begin(), closed.end(), A.sum(B)) != closed.end());
      CHECK(std::find(closed.begin(), closed.end(), A.intersect(B)) != closed.end());
    }
  // contains the generators
  CHECK(std::find(closed.begin(), closed.end(), v) != closed.end());
  for (const auto& W : flag) CHECK(std::find(closed.begin(), closed.end(), W) != closed.end());

  CHECK_THROWS_AS(closure_flag_plus_one(v, {e1, sp({{0, 1, 0}}, 3)}), input_error);
}
