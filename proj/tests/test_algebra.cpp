#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "quiverhom/fixtures.hpp"

using namespace qh;

namespace {

// Exhaustive path-count oracle for monomial relations: enumerate arrow
// strings, drop any containing a forbidden factor.
long monomial_dim_oracle(const Quiver& q, const std::vector<std::vector<int>>& kill,
                         int max_len) {
  long count = q.n_vertices();
  std::vector<std::vector<int>> frontier;
  for (int v = 0; v < q.n_vertices(); ++v) frontier.push_back({-1 - v});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& path : frontier) {
      int at = path[0] < 0 ? -1 - path[0] : q.arrows[path.back()].tgt;
      for (int ai = 0; ai < (int)q.arrows.size(); ++ai) {
        if (q.arrows[ai].src != at) continue;
        std::vector<int> np = path[0] < 0 ? std::vector<int>{} : path;
        np.push_back(ai);
        bool dead = false;
        for (const auto& f : kill)
          for (size_t s = 0; s + f.size() <= np.size(); ++s) {
            bool match = true;
            for (size_t k = 0; k < f.size(); ++k)
              if (np[s + k] != f[k]) match = false;
            if (match) dead = true;
          }
        if (!dead) {
          ++count;
          next.push_back(np);
        }
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
    REQUIRE(count < 100000);
  }
  return count;
}

}  // namespace

TEST_CASE("basis sizes match hand counts") {
  Algebra a3 = fixture_algebra("a3");
  CHECK(a3->dim() == 6);  // 3 trivial + 2 arrows + 1 length-two path

  Algebra loop = fixture_algebra("loop");
  CHECK(loop->dim() == 2);

  Algebra zz = fixture_algebra("zigzag4");
  CHECK(zz->dim() == 7);  // 4 trivial + 3 arrows, the only length-2 path dies
  CHECK(zz->dim() ==
        monomial_dim_oracle(zz->quiver, {{
                                            zz->quiver.arrow_index("a"),
                                            zz->quiver.arrow_index("b"),
                                        }},
                            10));

  Algebra st = fixture_algebra("star5");
  CHECK(st->dim() ==
        monomial_dim_oracle(st->quiver, {{
                                            st->quiver.arrow_index("a"),
                                            st->quiver.arrow_index("b"),
                                        }},
                            10));
}

TEST_CASE("opposite algebra") {
  Algebra a3 = fixture_algebra("a3");
  Algebra op = a3->opposite();
  CHECK(op->dim() == a3->dim());
  CHECK(op->quiver.arrows[0].src == 1);
  CHECK(op->quiver.arrows[0].tgt == 0);
  CHECK(op->opposite().get() == a3.get());

  Algebra loop = fixture_algebra("loop");
  CHECK(loop->opposite()->dim() == 2);
  // commutative case: same structure constants
  CHECK(loop->opposite()->table == loop->table);

  Algebra zz = fixture_algebra("zigzag4");
  CHECK(zz->opposite()->dim() == zz->dim());
  // reversed relation lives on reversed arrows
  const Relation& r = zz->opposite()->relations[0];
  CHECK(r[0].arrows == std::vector<int>{zz->quiver.arrow_index("b"),
                                        zz->quiver.arrow_index("a")});
}

TEST_CASE("multiplication") {
  Algebra zz = fixture_algebra("zigzag4");
  const PathAlgebra& A = *zz;
  for (int v = 0; v < A.n_vertices(); ++v) {
    AlgElem e = elem_vertex_idempotent(A, v);
    CHECK(elem_mul(A, e, e).c == e.c);
  }
  // the killed path multiplies to zero
  int ia = -1, ib = -1;
  for (int i = 0; i < A.dim(); ++i) {
    if (A.path_name(i) == "a") ia = i;
    if (A.path_name(i) == "b") ib = i;
  }
  REQUIRE(ia >= 0);
  REQUIRE(ib >= 0);
  AlgElem prod = elem_mul(A, elem_unit(A, ia), elem_unit(A, ib));
  for (u32 x : prod.c) CHECK(x == 0);

  // random associativity
  std::mt19937_64 rng(5);
  auto rnd = [&] {
    AlgElem e;
    e.c.resize(A.dim());
    for (auto& x : e.c) x = (u32)(rng() % A.p);
    return e;
  };
  for (int t = 0; t < 50; ++t) {
    AlgElem x = rnd(), y = rnd(), z = rnd();
    CHECK(elem_mul(A, elem_mul(A, x, y), z).c ==
          elem_mul(A, x, elem_mul(A, y, z)).c);
  }
}

TEST_CASE("idempotent decomposition recovers basis elements") {
  Algebra st = fixture_algebra("star5");
  const PathAlgebra& A = *st;
  for (int i = 0; i < A.dim(); ++i) {
    AlgElem x = elem_unit(A, i);
    AlgElem acc;
    acc.c.assign(A.dim(), 0);
    for (int v = 0; v < A.n_vertices(); ++v)
      for (int w = 0; w < A.n_vertices(); ++w) {
        AlgElem piece = elem_mul(
            A, elem_vertex_idempotent(A, v),
            elem_mul(A, x, elem_vertex_idempotent(A, w)));
        acc = elem_add(A, acc, piece);
      }
    CHECK(acc.c == x.c);
  }
}

TEST_CASE("path filtration on homogeneous fixtures") {
  for (const std::string& name : fixture_names()) {
    Algebra A = fixture_algebra(name);
    for (int i = 0; i < A->dim(); ++i)
      for (int j = 0; j < A->dim(); ++j) {
        int target = A->basis[i].len() + A->basis[j].len();
        for (auto [k, c] : A->table[i][j]) {
          (void)c;
          CHECK(A->basis[k].len() == target);
        }
      }
  }
}

TEST_CASE("admissibility and finiteness are enforced") {
  Quiver q;
  q.vertices = {"1"};
  q.arrows = {{"x", 0, 0}};
  // a length-one relation is not admissible
  CHECK_THROWS_AS(build_algebra(q, {Relation{RelTerm{1, {0}}}}, 101), UsageError);
  // the free loop algebra is infinite-dimensional
  CHECK_THROWS_AS(build_algebra(q, {}, 101, 12), UsageError);
}

TEST_CASE("mixed-length relations") {
  // x^2 - x^3 generates a non-admissible ideal (x^2 becomes idempotent in
  // the quotient), so no nilpotency bound can be certified
  Quiver q;
  q.vertices = {"1"};
  q.arrows = {{"x", 0, 0}};
  Relation bad{RelTerm{1, {0, 0}}, RelTerm{100, {0, 0, 0}}};
  CHECK_THROWS_AS(build_algebra(q, {bad}, 101, 16), UsageError);

  // an honest mixed-length identification of two parallel paths
  Quiver q2;
  q2.vertices = {"1", "2", "3", "4", "5"};
  q2.arrows = {{"a", 0, 1}, {"b", 1, 2}, {"c", 0, 3}, {"d", 3, 4}, {"e", 4, 2}};
  Relation mix{RelTerm{1, {0, 1}}, RelTerm{100, {2, 3, 4}}};  // a*b - c*d*e
  Algebra A = build_algebra(q2, {mix}, 101, 10);
  // 5 trivial + 5 arrows + {ab, cd, de, cde} modulo one identification
  CHECK(A->dim() == 13);
}
