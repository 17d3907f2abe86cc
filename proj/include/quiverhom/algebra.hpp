#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "quiverhom/fpmat.hpp"

namespace qh {

struct Quiver {
  struct Arrow {
    std::string name;
    int src = 0, tgt = 0;
  };
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int n_vertices() const { return (int)vertices.size(); }
  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;
};

// One summand of a relation: sign/coefficient times a path given as arrow
// indices, read left to right ("a then b").
struct RelTerm {
  u32 coeff = 1;
  std::vector<int> arrows;
};
using Relation = std::vector<RelTerm>;

struct PathAlgebra;
using Algebra = std::shared_ptr<const PathAlgebra>;

// Finite-dimensional quotient kQ/I presented on a normal-form path basis.
// Paths compose left to right: for a: v->w and b: w->x the product a*b is
// the path "a then b" from v to x.
struct PathAlgebra {
  Quiver quiver;
  u32 p = 2;
  int max_len = 30;
  bool is_opposite_side = false;

  struct BasisPath {
    std::vector<int> arrows;  // empty = trivial path e_src
    int src = 0, tgt = 0;
    int len() const { return (int)arrows.size(); }
  };
  // Trivial paths occupy indices 0..n_vertices-1, then by (length, lex).
  std::vector<BasisPath> basis;
  int nilpotency = 1;  // least N with J^N inside the ideal
  std::vector<Relation> relations;

  // table[i][j]: normal form of basis[i]*basis[j] as sparse (index, coeff).
  std::vector<std::vector<std::vector<std::pair<int, u32>>>> table;

  const PathAlgebra* op_raw = nullptr;

  int dim() const { return (int)basis.size(); }
  int n_vertices() const { return quiver.n_vertices(); }

  // Normal form of an arbitrary arrow sequence (empty for the zero element
  // lives as an empty sparse vector). `at_vertex` names the trivial path when
  // the sequence is empty.
  std::vector<std::pair<int, u32>> reduce_path(const std::vector<int>& arrow_seq,
                                               int at_vertex) const;

  // Basis indices of paths starting (resp. ending) at v, in basis order.
  std::vector<int> paths_from(int v) const;
  std::vector<int> paths_to(int v) const;

  Algebra opposite() const;
  std::string path_name(int basis_idx) const;

  // internal: both sides live in one shared allocation; opposite() rebuilds
  // an aliased pointer from this weak handle
  std::weak_ptr<const void> self_weak;
  // reduction data for arbitrary enumerated paths (primal side only; the
  // opposite delegates through reversal)
  struct Reducer;
  std::shared_ptr<const Reducer> reducer;
};

struct AlgElem {
  std::vector<u32> c;  // coefficients over the basis
};

Algebra build_algebra(const Quiver& q, const std::vector<Relation>& rels, u32 p,
                      int max_len = 30);

AlgElem elem_unit(const PathAlgebra& A, int basis_idx);
AlgElem elem_vertex_idempotent(const PathAlgebra& A, int v);
AlgElem elem_mul(const PathAlgebra& A, const AlgElem& x, const AlgElem& y);
AlgElem elem_add(const PathAlgebra& A, const AlgElem& x, const AlgElem& y);

}  // namespace qh
