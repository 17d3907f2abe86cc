#include "quiverhom/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qh {

int Quiver::vertex_index(const std::string& name) const {
  for (int i = 0; i < (int)vertices.size(); ++i)
    if (vertices[i] == name) return i;
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (int i = 0; i < (int)arrows.size(); ++i)
    if (arrows[i].name == name) return i;
  return -1;
}

namespace {

struct PathRec {
  std::vector<int> arrows;
  int src = 0, tgt = 0;
  int len() const { return (int)arrows.size(); }
};

constexpr long kPathBudget = 500000;
constexpr long kProductBudget = 400000;
constexpr long kAssocExhaustiveDim = 48;

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return a < b;
}

}  // namespace

struct PathAlgebra::Reducer {
  // All paths of length <= max_len, id order: by (len, lex), trivial first.
  std::vector<PathRec> paths;
  std::map<std::vector<int>, int> path_id;  // keyed by arrow seq; trivial paths
                                            // keyed separately per vertex
  std::vector<int> trivial_id;              // per vertex
  int nilpotency = 1;
  // expansion[path] over the global basis; basis paths expand to themselves
  std::vector<std::vector<std::pair<int, u32>>> expansion;
  std::vector<bool> is_basis;

  int lookup(const std::vector<int>& seq, int at_vertex) const {
    if (seq.empty()) return trivial_id[at_vertex];
    auto it = path_id.find(seq);
    return it == path_id.end() ? -1 : it->second;
  }
};

std::vector<std::pair<int, u32>> PathAlgebra::reduce_path(
    const std::vector<int>& arrow_seq, int at_vertex) const {
  const PathAlgebra* primal = is_opposite_side ? op_raw : this;
  std::vector<int> seq = arrow_seq;
  if (is_opposite_side) std::reverse(seq.begin(), seq.end());
  if ((int)seq.size() >= primal->reducer->nilpotency) return {};
  int id = primal->reducer->lookup(seq, at_vertex);
  if (id < 0) return {};
  return primal->reducer->expansion[id];
}

std::vector<int> PathAlgebra::paths_from(int v) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis[i].src == v) out.push_back(i);
  return out;
}

std::vector<int> PathAlgebra::paths_to(int v) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis[i].tgt == v) out.push_back(i);
  return out;
}

std::string PathAlgebra::path_name(int i) const {
  const BasisPath& b = basis[i];
  if (b.arrows.empty()) return "e_" + quiver.vertices[b.src];
  std::string s;
  for (size_t k = 0; k < b.arrows.size(); ++k) {
    if (k) s += "*";
    s += quiver.arrows[b.arrows[k]].name;
  }
  return s;
}

namespace {

struct AlgPair {
  PathAlgebra primal;
  PathAlgebra opp;
};

// Reduce v against rref rows in place; true when it lands on zero.
bool in_rowspace(const FpMat& R, const std::vector<int>& pivots,
                 std::vector<u32>& v, u32 p) {
  for (size_t r = 0; r < pivots.size(); ++r) {
    u64 f = v[pivots[r]];
    if (!f) continue;
    for (int j = 0; j < R.cols; ++j)
      v[j] = (u32)((v[j] + (u64)(p - 1) * f % p * R.at((int)r, j)) % p);
  }
  for (u32 x : v)
    if (x) return false;
  return true;
}

void validate_relations(const Quiver& q, const std::vector<Relation>& rels,
                        int max_len) {
  for (const Relation& r : rels) {
    if (r.empty()) throw UsageError("empty relation");
    int src = -1, tgt = -1;
    for (const RelTerm& t : r) {
      if ((int)t.arrows.size() < 2)
        throw UsageError("non-admissible relation: path of length < 2");
      if ((int)t.arrows.size() > max_len)
        throw UsageError("relation longer than max_len");
      for (size_t k = 0; k < t.arrows.size(); ++k) {
        int a = t.arrows[k];
        if (a < 0 || a >= (int)q.arrows.size())
          throw UsageError("relation uses unknown arrow");
        if (k > 0 && q.arrows[t.arrows[k - 1]].tgt != q.arrows[a].src)
          throw UsageError("relation path not composable");
      }
      int s = q.arrows[t.arrows.front()].src;
      int e = q.arrows[t.arrows.back()].tgt;
      if (src < 0) {
        src = s;
        tgt = e;
      } else if (s != src || e != tgt) {
        throw UsageError("relation mixes non-parallel paths");
      }
    }
  }
}

}  // namespace

Algebra build_algebra(const Quiver& q, const std::vector<Relation>& rels, u32 p,
                      int max_len) {
  if (!is_prime_u32(p)) throw UsageError("field modulus must be prime");
  if (q.n_vertices() == 0) throw UsageError("quiver needs at least one vertex");
  for (const auto& a : q.arrows)
    if (a.src < 0 || a.src >= q.n_vertices() || a.tgt < 0 ||
        a.tgt >= q.n_vertices())
      throw UsageError("arrow endpoint out of range");
  validate_relations(q, rels, max_len);

  auto red = std::make_shared<PathAlgebra::Reducer>();

  // Enumerate paths by length.
  const int nv = q.n_vertices();
  red->trivial_id.resize(nv);
  for (int v = 0; v < nv; ++v) {
    red->paths.push_back(PathRec{{}, v, v});
    red->trivial_id[v] = v;
  }
  {
    std::vector<int> prev;  // ids of previous length
    for (int v = 0; v < nv; ++v) prev.push_back(v);
    for (int len = 1; len <= max_len && !prev.empty(); ++len) {
      std::vector<PathRec> next;
      for (int id : prev) {
        const PathRec base = red->paths[id];
        for (int ai = 0; ai < (int)q.arrows.size(); ++ai) {
          if (q.arrows[ai].src != base.tgt) continue;
          PathRec e = base;
          e.arrows.push_back(ai);
          e.tgt = q.arrows[ai].tgt;
          next.push_back(std::move(e));
        }
      }
      std::sort(next.begin(), next.end(),
                [](const PathRec& a, const PathRec& b) {
                  return lex_less(a.arrows, b.arrows);
                });
      prev.clear();
      for (PathRec& e : next) {
        if ((long)red->paths.size() >= kPathBudget)
          throw BudgetError("path enumeration budget exceeded");
        int id = (int)red->paths.size();
        red->path_id[e.arrows] = id;
        red->paths.push_back(e);
        prev.push_back(id);
      }
    }
  }
  const int npaths = (int)red->paths.size();
  int longest = red->paths.back().len();

  // Per-(src,tgt) block column layout, longest paths first so that reduction
  // rewrites long paths in terms of short ones.
  std::map<std::pair<int, int>, std::vector<int>> block_cols;
  for (int id = 0; id < npaths; ++id)
    block_cols[{red->paths[id].src, red->paths[id].tgt}].push_back(id);
  for (auto& [key, cols] : block_cols) {
    (void)key;
    std::sort(cols.begin(), cols.end(), [&](int a, int b) {
      if (red->paths[a].len() != red->paths[b].len())
        return red->paths[a].len() > red->paths[b].len();
      return lex_less(red->paths[a].arrows, red->paths[b].arrows);
    });
  }
  std::vector<int> col_of_path(npaths, -1);
  for (auto& [key, cols] : block_cols) {
    (void)key;
    for (int i = 0; i < (int)cols.size(); ++i) col_of_path[cols[i]] = i;
  }

  // All products a*r*b with every term inside the enumerated range. These are
  // honest elements of the ideal; used both for the nilpotency certificate
  // and (truncated) for the quotient basis.
  struct Product {
    std::pair<int, int> block;
    std::vector<std::pair<int, u32>> terms;  // (path id, coeff), full
    int mindeg = 0;
  };
  std::vector<Product> products;
  long prod_count = 0;
  for (const Relation& r : rels) {
    int rs = q.arrows[r.front().arrows.front()].src;
    int rt = q.arrows[r.front().arrows.back()].tgt;
    int rmax = 0, rmin = max_len + 1;
    for (const RelTerm& t : r) {
      rmax = std::max(rmax, (int)t.arrows.size());
      rmin = std::min(rmin, (int)t.arrows.size());
    }
    for (int a_id = 0; a_id < npaths; ++a_id) {
      const PathRec& pa = red->paths[a_id];
      if (pa.tgt != rs) continue;
      if (pa.len() + rmax > max_len) continue;
      for (int b_id = 0; b_id < npaths; ++b_id) {
        const PathRec& pb = red->paths[b_id];
        if (pb.src != rt) continue;
        if (pa.len() + rmax + pb.len() > max_len) continue;
        if (++prod_count > kProductBudget)
          throw BudgetError("ideal product budget exceeded");
        Product pr;
        pr.block = {pa.src, pb.tgt};
        pr.mindeg = pa.len() + rmin + pb.len();
        for (const RelTerm& t : r) {
          std::vector<int> seq = pa.arrows;
          seq.insert(seq.end(), t.arrows.begin(), t.arrows.end());
          seq.insert(seq.end(), pb.arrows.begin(), pb.arrows.end());
          auto it = red->path_id.find(seq);
          if (it == red->path_id.end())
            throw CertifyError("product path not enumerated");
          pr.terms.push_back({it->second, t.coeff % p});
        }
        products.push_back(std::move(pr));
      }
    }
  }

  // Span of the ideal per block (full, untruncated rows).
  std::map<std::pair<int, int>, RrefResult> span;
  {
    std::map<std::pair<int, int>, std::vector<const Product*>> by_block;
    for (const Product& pr : products) by_block[pr.block].push_back(&pr);
    for (auto& [blk, prs] : by_block) {
      const auto& cols = block_cols[blk];
      FpMat m(p, (int)prs.size(), (int)cols.size());
      for (int i = 0; i < (int)prs.size(); ++i)
        for (auto [pid, c] : prs[i]->terms)
          m.at(i, col_of_path[pid]) = (m.at(i, col_of_path[pid]) + c) % p;
      span[blk] = rref(m);
    }
  }

  // Least N with every path of length N inside the ideal span (vacuously when
  // no paths of that length exist). This certifies J^N inside the ideal.
  int N = -1;
  for (int len = 1; len <= max_len; ++len) {
    bool all_reducible = true;
    for (int id = nv; id < npaths && all_reducible; ++id) {
      const PathRec& pr = red->paths[id];
      if (pr.len() != len) continue;
      auto blk = std::make_pair(pr.src, pr.tgt);
      auto it = span.find(blk);
      if (it == span.end()) {
        all_reducible = false;
        break;
      }
      std::vector<u32> v(block_cols[blk].size(), 0);
      v[col_of_path[id]] = 1;
      if (!in_rowspace(it->second.R, it->second.pivots, v, p))
        all_reducible = false;
    }
    if (len > longest || all_reducible) {
      N = len;
      break;
    }
  }
  if (N < 0)
    throw UsageError("not finite-dimensional within bound (max_len=" +
                     std::to_string(max_len) + ")");
  red->nilpotency = N;

  // Quotient basis: paths of length < N modulo truncated products.
  std::map<std::pair<int, int>, std::vector<int>> short_cols;
  for (auto& [blk, cols] : block_cols) {
    std::vector<int>& sc = short_cols[blk];
    for (int id : cols)
      if (red->paths[id].len() < N) sc.push_back(id);  // keeps len-desc order
  }
  std::vector<int> short_col_of(npaths, -1);
  for (auto& [blk, sc] : short_cols) {
    (void)blk;
    for (int i = 0; i < (int)sc.size(); ++i) short_col_of[sc[i]] = i;
  }
  std::map<std::pair<int, int>, RrefResult> ured;
  {
    std::map<std::pair<int, int>, std::vector<const Product*>> by_block;
    for (const Product& pr : products)
      if (pr.mindeg < N) by_block[pr.block].push_back(&pr);
    for (auto& [blk, prs] : by_block) {
      FpMat m(p, (int)prs.size(), (int)short_cols[blk].size());
      for (int i = 0; i < (int)prs.size(); ++i)
        for (auto [pid, c] : prs[i]->terms)
          if (red->paths[pid].len() < N)
            m.at(i, short_col_of[pid]) = (m.at(i, short_col_of[pid]) + c) % p;
      ured[blk] = rref(m);
    }
  }

  // Pivot columns die; the rest is the basis.
  std::vector<bool> is_pivot(npaths, false);
  for (auto& [blk, rr] : ured)
    for (int c : rr.pivots) is_pivot[short_cols[blk][c]] = true;

  auto pair = std::make_shared<AlgPair>();
  PathAlgebra& A = pair->primal;
  A.quiver = q;
  A.p = p;
  A.max_len = max_len;
  A.basis.clear();
  A.nilpotency = N;
  A.relations = rels;
  A.reducer = red;

  std::vector<int> global_idx(npaths, -1);
  {
    std::vector<int> order;
    for (int id = 0; id < npaths; ++id)
      if (red->paths[id].len() < N && !is_pivot[id]) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (red->paths[a].len() != red->paths[b].len())
        return red->paths[a].len() < red->paths[b].len();
      return lex_less(red->paths[a].arrows, red->paths[b].arrows);
    });
    for (int i = 0; i < (int)order.size(); ++i) {
      global_idx[order[i]] = i;
      const PathRec& pr = red->paths[order[i]];
      A.basis.push_back(PathAlgebra::BasisPath{pr.arrows, pr.src, pr.tgt});
    }
  }

  // Expansion of every short path over the basis.
  red->expansion.assign(npaths, {});
  red->is_basis.assign(npaths, false);
  for (int id = 0; id < npaths; ++id) {
    if (red->paths[id].len() >= N) continue;
    if (!is_pivot[id]) {
      red->is_basis[id] = true;
      red->expansion[id] = {{global_idx[id], 1}};
      continue;
    }
    auto blk = std::make_pair(red->paths[id].src, red->paths[id].tgt);
    const RrefResult& rr = ured[blk];
    int c = short_col_of[id];
    int row = -1;
    for (int r = 0; r < (int)rr.pivots.size(); ++r)
      if (rr.pivots[r] == c) {
        row = r;
        break;
      }
    std::vector<std::pair<int, u32>> exp;
    const auto& sc = short_cols[blk];
    for (int j = 0; j < (int)sc.size(); ++j) {
      if (j == c) continue;
      u32 v = rr.R.at(row, j);
      if (v) exp.push_back({global_idx[sc[j]], p - v});
    }
    red->expansion[id] = std::move(exp);
  }

  // Relations must reduce to zero.
  for (const Relation& r : rels) {
    std::vector<u32> acc(A.dim(), 0);
    for (const RelTerm& t : r) {
      auto e = A.reduce_path(t.arrows, -1);
      for (auto [bi, c] : e) acc[bi] = (u32)((acc[bi] + (u64)c * t.coeff) % p);
    }
    for (u32 x : acc)
      if (x) throw CertifyError("relation does not vanish in the quotient");
  }

  // Structure constants.
  const int d = A.dim();
  A.table.assign(d, std::vector<std::vector<std::pair<int, u32>>>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (A.basis[i].tgt != A.basis[j].src) continue;
      std::vector<int> seq = A.basis[i].arrows;
      seq.insert(seq.end(), A.basis[j].arrows.begin(), A.basis[j].arrows.end());
      A.table[i][j] = A.reduce_path(seq, A.basis[i].src);
    }
  }

  // Orthogonal idempotent sanity.
  for (int v = 0; v < nv; ++v)
    for (int w = 0; w < nv; ++w) {
      const auto& t = A.table[v][w];
      bool ok = (v == w) ? (t.size() == 1 && t[0].first == v && t[0].second == 1)
                         : t.empty();
      if (!ok) throw CertifyError("trivial paths are not orthogonal idempotents");
    }

  // Associativity check on basis triples (exhaustive at desk scale).
  {
    auto mul_into = [&](const std::vector<std::pair<int, u32>>& x, int k,
                        std::vector<u32>& acc) {
      for (auto [bi, c] : x)
        for (auto [bj, c2] : A.table[bi][k])
          acc[bj] = (u32)((acc[bj] + (u64)c * c2) % p);
    };
    auto check_triple = [&](int i, int j, int k) {
      std::vector<u32> lhs(d, 0), rhs(d, 0);
      mul_into(A.table[i][j], k, lhs);
      for (auto [bj, c] : A.table[j][k])
        for (auto [bi, c2] : A.table[i][bj])
          rhs[bi] = (u32)((rhs[bi] + (u64)c * c2) % p);
      if (lhs != rhs) throw CertifyError("associativity failure in table");
    };
    if (d <= kAssocExhaustiveDim) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) check_triple(i, j, k);
    } else {
      u64 s = 0x9e3779b97f4a7c15ULL;
      for (int t = 0; t < 100000; ++t) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        int i = (int)((s >> 16) % d), j = (int)((s >> 32) % d),
            k = (int)((s >> 48) % d);
        check_triple(i, j, k);
      }
    }
  }

  // Opposite algebra: reversed quiver, reversed basis paths in the same index
  // order, transposed table.
  PathAlgebra& B = pair->opp;
  B.quiver.vertices = q.vertices;
  for (const auto& a : q.arrows)
    B.quiver.arrows.push_back({a.name, a.tgt, a.src});
  B.p = p;
  B.max_len = max_len;
  B.is_opposite_side = true;
  B.nilpotency = N;
  B.reducer = red;
  for (const auto& bp : A.basis) {
    PathAlgebra::BasisPath r;
    r.arrows = bp.arrows;
    std::reverse(r.arrows.begin(), r.arrows.end());
    r.src = bp.tgt;
    r.tgt = bp.src;
    B.basis.push_back(std::move(r));
  }
  for (const Relation& r : rels) {
    Relation rr;
    for (const RelTerm& t : r) {
      RelTerm tt = t;
      std::reverse(tt.arrows.begin(), tt.arrows.end());
      rr.push_back(std::move(tt));
    }
    B.relations.push_back(std::move(rr));
  }
  B.table.assign(d, std::vector<std::vector<std::pair<int, u32>>>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B.table[i][j] = A.table[j][i];

  A.op_raw = &pair->opp;
  B.op_raw = &pair->primal;
  pair->primal.self_weak = std::shared_ptr<const void>(pair);
  pair->opp.self_weak = std::shared_ptr<const void>(pair);

  return Algebra(pair, &pair->primal);
}

Algebra PathAlgebra::opposite() const {
  auto ctrl = self_weak.lock();
  if (!ctrl) throw CertifyError("algebra control block expired");
  return Algebra(ctrl, op_raw);
}

AlgElem elem_unit(const PathAlgebra& A, int basis_idx) {
  AlgElem e;
  e.c.assign(A.dim(), 0);
  e.c[basis_idx] = 1;
  return e;
}

AlgElem elem_vertex_idempotent(const PathAlgebra& A, int v) {
  return elem_unit(A, v);
}

AlgElem elem_mul(const PathAlgebra& A, const AlgElem& x, const AlgElem& y) {
  if ((int)x.c.size() != A.dim() || (int)y.c.size() != A.dim())
    throw UsageError("element length mismatch");
  AlgElem z;
  z.c.assign(A.dim(), 0);
  for (int i = 0; i < A.dim(); ++i) {
    if (!x.c[i]) continue;
    for (int j = 0; j < A.dim(); ++j) {
      if (!y.c[j]) continue;
      u64 f = (u64)x.c[i] * y.c[j] % A.p;
      for (auto [k, c] : A.table[i][j]) z.c[k] = (u32)((z.c[k] + f * c) % A.p);
    }
  }
  return z;
}

AlgElem elem_add(const PathAlgebra& A, const AlgElem& x, const AlgElem& y) {
  AlgElem z = x;
  for (int i = 0; i < A.dim(); ++i) z.c[i] = (z.c[i] + y.c[i]) % A.p;
  return z;
}

}  // namespace qh
