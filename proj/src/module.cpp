#include "quiverhom/module.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qh {

namespace {

int n_arrows(const Algebra& A) { return (int)A->quiver.arrows.size(); }

}  // namespace

Module make_module(Algebra A, std::vector<int> dims, std::vector<FpMat> act) {
  Module M;
  M.A = std::move(A);
  M.dims = std::move(dims);
  M.act = std::move(act);
  if ((int)M.dims.size() != M.A->n_vertices())
    throw UsageError("dimension vector length mismatch");
  if ((int)M.act.size() != n_arrows(M.A)) throw UsageError("arrow matrix count mismatch");
  for (int ai = 0; ai < (int)M.act.size(); ++ai) {
    const auto& ar = M.A->quiver.arrows[ai];
    if (M.act[ai].rows != M.dims[ar.tgt] || M.act[ai].cols != M.dims[ar.src] ||
        M.act[ai].p != M.A->p)
      throw UsageError("arrow matrix shape mismatch");
  }
  if (!relations_act_zero(M))
    throw UsageError("relations do not act as zero on the module");
  return M;
}

bool relations_act_zero(const Module& M) {
  for (const Relation& r : M.A->relations) {
    int src = M.A->quiver.arrows[r.front().arrows.front()].src;
    int tgt = M.A->quiver.arrows[r.front().arrows.back()].tgt;
    FpMat acc(M.A->p, M.dims[tgt], M.dims[src]);
    for (const RelTerm& t : r)
      acc = mat_add(acc, mat_scale(path_action(M, t.arrows, src), t.coeff));
    if (!acc.is_zero()) return false;
  }
  return true;
}

Module zero_module(const Algebra& A) {
  Module M;
  M.A = A;
  M.dims.assign(A->n_vertices(), 0);
  for (int ai = 0; ai < n_arrows(A); ++ai) M.act.push_back(FpMat(A->p, 0, 0));
  return M;
}

bool same_algebra(const Module& M, const Module& N) { return M.A.get() == N.A.get(); }

FpMat path_action(const Module& M, const std::vector<int>& arrows, int src) {
  FpMat cur = FpMat::identity(M.A->p, M.dims[src]);
  int at = src;
  for (int ai : arrows) {
    const auto& ar = M.A->quiver.arrows[ai];
    if (ar.src != at) throw UsageError("path not composable in path_action");
    cur = mat_mul(M.act[ai], cur);
    at = ar.tgt;
  }
  return cur;
}

ModuleMap make_map(Module src, Module dst, std::vector<FpMat> f) {
  ModuleMap m;
  m.src = std::move(src);
  m.dst = std::move(dst);
  m.f = std::move(f);
  if (!same_algebra(m.src, m.dst)) throw UsageError("map across different algebras");
  for (int v = 0; v < m.src.A->n_vertices(); ++v)
    if (m.f[v].rows != m.dst.dims[v] || m.f[v].cols != m.src.dims[v])
      throw UsageError("map block shape mismatch");
  if (!map_commutes(m)) throw CertifyError("map does not commute with arrows");
  return m;
}

ModuleMap identity_map(const Module& M) {
  ModuleMap m;
  m.src = M;
  m.dst = M;
  for (int d : M.dims) m.f.push_back(FpMat::identity(M.A->p, d));
  return m;
}

ModuleMap zero_map(const Module& M, const Module& N) {
  ModuleMap m;
  m.src = M;
  m.dst = N;
  for (int v = 0; v < M.A->n_vertices(); ++v)
    m.f.push_back(FpMat(M.A->p, N.dims[v], M.dims[v]));
  return m;
}

bool map_commutes(const ModuleMap& m) {
  for (int ai = 0; ai < n_arrows(m.src.A); ++ai) {
    const auto& ar = m.src.A->quiver.arrows[ai];
    FpMat lhs = mat_mul(m.f[ar.tgt], m.src.act[ai]);
    FpMat rhs = mat_mul(m.dst.act[ai], m.f[ar.src]);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool map_is_zero(const ModuleMap& f) {
  for (const auto& b : f.f)
    if (!b.is_zero()) return false;
  return true;
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (f.dst.dims != g.src.dims || !same_algebra(f.dst, g.src))
    throw UsageError("compose: middle mismatch");
  ModuleMap m;
  m.src = f.src;
  m.dst = g.dst;
  for (int v = 0; v < (int)f.f.size(); ++v) m.f.push_back(mat_mul(g.f[v], f.f[v]));
  return m;
}

ModuleMap map_add(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap m = f;
  for (int v = 0; v < (int)f.f.size(); ++v) m.f[v] = mat_add(f.f[v], g.f[v]);
  return m;
}

ModuleMap map_sub(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap m = f;
  for (int v = 0; v < (int)f.f.size(); ++v) m.f[v] = mat_sub(f.f[v], g.f[v]);
  return m;
}

ModuleMap map_scale(const ModuleMap& f, u32 c) {
  ModuleMap m = f;
  for (auto& b : m.f) b = mat_scale(b, c);
  return m;
}

bool map_injective(const ModuleMap& f) {
  for (int v = 0; v < (int)f.f.size(); ++v)
    if (mat_rank(f.f[v]) != f.src.dims[v]) return false;
  return true;
}

bool map_surjective(const ModuleMap& f) {
  for (int v = 0; v < (int)f.f.size(); ++v)
    if (mat_rank(f.f[v]) != f.dst.dims[v]) return false;
  return true;
}

bool map_bijective(const ModuleMap& f) {
  return f.src.dims == f.dst.dims && map_injective(f);
}

// ---------------------------------------------------------------------------
// Hom spaces

std::vector<ModuleMap> hom_basis(const Module& M, const Module& N) {
  if (!same_algebra(M, N)) throw UsageError("hom_basis: algebra mismatch");
  const Algebra& A = M.A;
  const int nv = A->n_vertices();
  std::vector<int> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
  const int unknowns = off[nv];
  int eqs = 0;
  for (int ai = 0; ai < n_arrows(A); ++ai) {
    const auto& ar = A->quiver.arrows[ai];
    eqs += N.dims[ar.tgt] * M.dims[ar.src];
  }
  FpMat E(A->p, eqs, unknowns);
  int row = 0;
  for (int ai = 0; ai < n_arrows(A); ++ai) {
    const auto& ar = A->quiver.arrows[ai];
    int v = ar.src, w = ar.tgt;
    // f_w * Ma - Na * f_v = 0, entry (r, c)
    for (int r = 0; r < N.dims[w]; ++r) {
      for (int c = 0; c < M.dims[v]; ++c) {
        for (int j = 0; j < M.dims[w]; ++j) {
          u32 coef = M.act[ai].at(j, c);
          if (coef) {
            int idx = off[w] + r * M.dims[w] + j;
            E.at(row, idx) = (E.at(row, idx) + coef) % A->p;
          }
        }
        for (int i = 0; i < N.dims[v]; ++i) {
          u32 coef = N.act[ai].at(r, i);
          if (coef) {
            int idx = off[v] + i * M.dims[v] + c;
            E.at(row, idx) = (E.at(row, idx) + A->p - coef % A->p) % A->p;
          }
        }
        ++row;
      }
    }
  }
  FpMat K = kernel_basis(E);
  std::vector<ModuleMap> out;
  for (int k = 0; k < K.cols; ++k) {
    ModuleMap m;
    m.src = M;
    m.dst = N;
    for (int v = 0; v < nv; ++v) {
      FpMat b(A->p, N.dims[v], M.dims[v]);
      for (int r = 0; r < N.dims[v]; ++r)
        for (int c = 0; c < M.dims[v]; ++c) b.at(r, c) = K.at(off[v] + r * M.dims[v] + c, k);
      m.f.push_back(std::move(b));
    }
    out.push_back(std::move(m));
  }
  return out;
}

int hom_dim(const Module& M, const Module& N) { return (int)hom_basis(M, N).size(); }

static std::vector<u32> flatten_map(const ModuleMap& g) {
  std::vector<u32> v;
  for (const auto& b : g.f) v.insert(v.end(), b.a.begin(), b.a.end());
  return v;
}

std::optional<std::vector<u32>> map_in_span(const std::vector<ModuleMap>& basis,
                                            const ModuleMap& g) {
  std::vector<u32> target = flatten_map(g);
  if (basis.empty()) {
    for (u32 x : target)
      if (x) return std::nullopt;
    return std::vector<u32>{};
  }
  const u32 p = g.src.A->p;
  FpMat A(p, (int)target.size(), (int)basis.size());
  for (int j = 0; j < (int)basis.size(); ++j) {
    std::vector<u32> col = flatten_map(basis[j]);
    for (int i = 0; i < (int)col.size(); ++i) A.at(i, j) = col[i];
  }
  FpMat B(p, (int)target.size(), 1);
  for (int i = 0; i < (int)target.size(); ++i) B.at(i, 0) = target[i];
  auto X = solve_linear(A, B);
  if (!X) return std::nullopt;
  std::vector<u32> coeff(basis.size());
  for (int j = 0; j < (int)basis.size(); ++j) coeff[j] = X->at(j, 0);
  return coeff;
}

ModuleMap combine_maps(const Module& M, const Module& N,
                       const std::vector<ModuleMap>& basis,
                       const std::vector<u32>& coeff) {
  ModuleMap g = zero_map(M, N);
  for (size_t k = 0; k < basis.size(); ++k)
    if (coeff[k]) g = map_add(g, map_scale(basis[k], coeff[k]));
  return g;
}

// ---------------------------------------------------------------------------
// Kernels, images, cokernels

namespace {

// Projection to a complement of the column space of B plus a section, via
// elimination against the rref of span(B^T).
struct ComplementData {
  FpMat proj;     // (d-k) x d
  FpMat section;  // d x (d-k)
};

ComplementData complement_of(const FpMat& B) {
  RrefResult rr = rref(mat_transpose(B));
  const int d = B.rows;
  const u32 p = B.p;
  std::vector<bool> piv(d, false);
  for (int c : rr.pivots) piv[c] = true;
  // x -> x - sum_r x[piv_r] * row_r, i.e. E[j][i] = delta_ij - [i = piv_r] R[r][j]
  FpMat E = FpMat::identity(p, d);
  for (int r = 0; r < rr.rank; ++r) {
    int pc = rr.pivots[r];
    for (int j = 0; j < d; ++j) {
      u32 val = rr.R.at(r, j);
      if (val) E.at(j, pc) = (E.at(j, pc) + p - val) % p;
    }
  }
  ComplementData out;
  out.proj = FpMat(p, d - rr.rank, d);
  out.section = FpMat(p, d, d - rr.rank);
  int t = 0;
  for (int j = 0; j < d; ++j) {
    if (piv[j]) continue;
    for (int i = 0; i < d; ++i) out.proj.at(t, i) = E.at(j, i);
    out.section.at(j, t) = 1;
    ++t;
  }
  return out;
}

}  // namespace

Submod submodule_from_subspaces(const Module& M, const std::vector<FpMat>& bases) {
  const Algebra& A = M.A;
  Module S;
  S.A = A;
  for (const auto& b : bases) S.dims.push_back(b.cols);
  for (int ai = 0; ai < n_arrows(A); ++ai) {
    const auto& ar = A->quiver.arrows[ai];
    auto X = solve_linear(bases[ar.tgt], mat_mul(M.act[ai], bases[ar.src]));
    if (!X) throw CertifyError("subspaces not closed under arrow action");
    S.act.push_back(*X);
  }
  Submod out;
  out.sub = std::move(S);
  ModuleMap incl;
  incl.src = out.sub;
  incl.dst = M;
  incl.f = bases;
  out.incl = std::move(incl);
  return out;
}

MapParts map_factorization(const ModuleMap& f) {
  const Algebra& A = f.src.A;
  const int nv = A->n_vertices();
  MapParts out;

  std::vector<FpMat> kb, ib;
  for (int v = 0; v < nv; ++v) {
    kb.push_back(kernel_basis(f.f[v]));
    ib.push_back(column_space_basis(f.f[v]));
  }
  Submod ker = submodule_from_subspaces(f.src, kb);
  out.ker = ker.sub;
  out.ker_incl = ker.incl;
  Submod img = submodule_from_subspaces(f.dst, ib);
  out.img = img.sub;
  out.img_incl = img.incl;
  // coordinates of f through its image
  {
    ModuleMap m;
    m.src = f.src;
    m.dst = out.img;
    for (int v = 0; v < nv; ++v) {
      auto X = solve_linear(ib[v], f.f[v]);
      if (!X) throw CertifyError("image factorization failed");
      m.f.push_back(*X);
    }
    out.src_to_img = std::move(m);
  }
  // cokernel
  {
    Module Q;
    Q.A = A;
    std::vector<ComplementData> cd;
    for (int v = 0; v < nv; ++v) {
      cd.push_back(complement_of(ib[v]));
      Q.dims.push_back(cd[v].proj.rows);
    }
    for (int ai = 0; ai < n_arrows(A); ++ai) {
      const auto& ar = A->quiver.arrows[ai];
      Q.act.push_back(
          mat_mul(cd[ar.tgt].proj, mat_mul(f.dst.act[ai], cd[ar.src].section)));
    }
    ModuleMap pr;
    pr.src = f.dst;
    pr.dst = Q;
    for (int v = 0; v < nv; ++v) pr.f.push_back(cd[v].proj);
    out.coker = Q;
    out.coker_proj = std::move(pr);
    if (!map_commutes(out.coker_proj))
      throw CertifyError("cokernel projection fails to commute");
  }
  return out;
}

void certify_ses(const Ses& s) {
  if (!same_algebra(s.i.src, s.p.dst) || s.i.dst.dims != s.p.src.dims)
    throw CertifyError("ses: shape mismatch");
  if (!map_commutes(s.i) || !map_commutes(s.p)) throw CertifyError("ses: not maps");
  if (!map_injective(s.i)) throw CertifyError("ses: i not injective");
  if (!map_surjective(s.p)) throw CertifyError("ses: p not surjective");
  for (int v = 0; v < (int)s.i.f.size(); ++v) {
    if (s.i.src.dims[v] + s.p.dst.dims[v] != s.i.dst.dims[v])
      throw CertifyError("ses: dimension bookkeeping fails");
    FpMat comp = mat_mul(s.p.f[v], s.i.f[v]);
    if (!comp.is_zero()) throw CertifyError("ses: p after i nonzero");
    // ker p = im i then follows by dimensions once p i = 0
  }
}

Ses ses_from_map_parts(const ModuleMap& f) {
  MapParts mp = map_factorization(f);
  if (!map_injective(f)) throw CertifyError("ses_from_map_parts: not injective");
  Ses s;
  s.i = f;
  s.p = mp.coker_proj;
  certify_ses(s);
  return s;
}

SumParts direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw UsageError("direct_sum of empty list");
  const Algebra& A = parts[0].A;
  const int nv = A->n_vertices();
  for (const auto& P : parts)
    if (P.A.get() != A.get()) throw UsageError("direct_sum: algebra mismatch");
  Module S;
  S.A = A;
  S.dims.assign(nv, 0);
  std::vector<std::vector<int>> off(parts.size(), std::vector<int>(nv, 0));
  for (size_t k = 0; k < parts.size(); ++k)
    for (int v = 0; v < nv; ++v) {
      off[k][v] = S.dims[v];
      S.dims[v] += parts[k].dims[v];
    }
  for (int ai = 0; ai < n_arrows(A); ++ai) {
    const auto& ar = A->quiver.arrows[ai];
    FpMat b(A->p, S.dims[ar.tgt], S.dims[ar.src]);
    for (size_t k = 0; k < parts.size(); ++k) {
      const FpMat& x = parts[k].act[ai];
      for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
          b.at(off[k][ar.tgt] + i, off[k][ar.src] + j) = x.at(i, j);
    }
    S.act.push_back(std::move(b));
  }
  SumParts out;
  out.sum = S;
  for (size_t k = 0; k < parts.size(); ++k) {
    ModuleMap in = zero_map(parts[k], S), pr = zero_map(S, parts[k]);
    for (int v = 0; v < nv; ++v)
      for (int j = 0; j < parts[k].dims[v]; ++j) {
        in.f[v].at(off[k][v] + j, j) = 1;
        pr.f[v].at(j, off[k][v] + j) = 1;
      }
    out.inj.push_back(std::move(in));
    out.proj.push_back(std::move(pr));
  }
  return out;
}

Module dualize(const Module& M) {
  Module D;
  D.A = M.A->opposite();
  D.dims = M.dims;
  for (const auto& b : M.act) D.act.push_back(mat_transpose(b));
  return D;
}

ModuleMap dualize_map(const ModuleMap& f) {
  ModuleMap d;
  d.src = dualize(f.dst);
  d.dst = dualize(f.src);
  for (const auto& b : f.f) d.f.push_back(mat_transpose(b));
  return d;
}

// ---------------------------------------------------------------------------
// Projectives, simples, injectives

int Proj::gen_offset(int s) const {
  for (size_t k = 0; k < paths[s].size(); ++k) {
    const auto& bp = m.A->basis[paths[s][k]];
    if (bp.arrows.empty()) return offs[s][k];
  }
  throw CertifyError("projective summand lost its generator");
}

Proj proj_module(const Algebra& A, const std::vector<int>& verts) {
  const int nv = A->n_vertices();
  Proj P;
  P.verts = verts;
  Module M;
  M.A = A;
  M.dims.assign(nv, 0);
  for (size_t s = 0; s < verts.size(); ++s) {
    std::vector<int> ids = A->paths_from(verts[s]);
    std::vector<int> of(ids.size());
    std::vector<int> pos(A->dim(), -1);
    for (size_t k = 0; k < ids.size(); ++k) {
      int w = A->basis[ids[k]].tgt;
      of[k] = M.dims[w]++;
      pos[ids[k]] = (int)k;
    }
    P.paths.push_back(std::move(ids));
    P.offs.push_back(std::move(of));
    P.path_pos.push_back(std::move(pos));
  }
  for (int ai = 0; ai < n_arrows(A); ++ai) {
    const auto& ar = A->quiver.arrows[ai];
    FpMat b(A->p, M.dims[ar.tgt], M.dims[ar.src]);
    for (size_t s = 0; s < verts.size(); ++s) {
      for (size_t k = 0; k < P.paths[s].size(); ++k) {
        int pid = P.paths[s][k];
        if (A->basis[pid].tgt != ar.src) continue;
        std::vector<int> seq = A->basis[pid].arrows;
        seq.push_back(ai);
        for (auto [qid, c] : A->reduce_path(seq, A->basis[pid].src)) {
          int kq = P.path_pos[s][qid];
          if (kq < 0) throw CertifyError("projective action leaves the summand");
          b.at(P.offs[s][kq], P.offs[s][k]) = (b.at(P.offs[s][kq], P.offs[s][k]) + c) % A->p;
        }
      }
    }
    M.act.push_back(std::move(b));
  }
  P.m = make_module(A, M.dims, M.act);
  return P;
}

Proj std_proj(const Algebra& A, int v) {
  if (v < 0 || v >= A->n_vertices()) throw UsageError("unknown vertex");
  return proj_module(A, {v});
}

Module std_simple(const Algebra& A, int v) {
  if (v < 0 || v >= A->n_vertices()) throw UsageError("unknown vertex");
  Module M;
  M.A = A;
  M.dims.assign(A->n_vertices(), 0);
  M.dims[v] = 1;
  for (int ai = 0; ai < n_arrows(A); ++ai) {
    const auto& ar = A->quiver.arrows[ai];
    M.act.push_back(FpMat(A->p, M.dims[ar.tgt], M.dims[ar.src]));
  }
  return make_module(A, M.dims, M.act);
}

Module std_injective(const Algebra& A, int v) {
  return dualize(std_proj(A->opposite(), v).m);
}

Proj regular_module(const Algebra& A) {
  std::vector<int> verts(A->n_vertices());
  for (int v = 0; v < A->n_vertices(); ++v) verts[v] = v;
  return proj_module(A, verts);
}

ModuleMap proj_map_from_gen_images(const Proj& P, const Module& N,
                                   const std::vector<std::vector<u32>>& images) {
  const Algebra& A = P.m.A;
  ModuleMap f = zero_map(P.m, N);
  for (size_t s = 0; s < P.verts.size(); ++s) {
    FpMat img(A->p, N.dims[P.verts[s]], 1);
    for (int i = 0; i < img.rows; ++i) img.at(i, 0) = images[s][i];
    for (size_t k = 0; k < P.paths[s].size(); ++k) {
      const auto& bp = A->basis[P.paths[s][k]];
      FpMat vec = mat_mul(path_action(N, bp.arrows, P.verts[s]), img);
      for (int i = 0; i < vec.rows; ++i) f.f[bp.tgt].at(i, P.offs[s][k]) = vec.at(i, 0);
    }
  }
  if (!map_commutes(f)) throw CertifyError("generator extension fails to commute");
  return f;
}

std::vector<std::vector<u32>> gen_images(const Proj& P, const ModuleMap& f) {
  std::vector<std::vector<u32>> out;
  for (size_t s = 0; s < P.verts.size(); ++s) {
    int v = P.verts[s];
    int col = P.gen_offset((int)s);
    std::vector<u32> img(f.dst.dims[v]);
    for (int i = 0; i < f.dst.dims[v]; ++i) img[i] = f.f[v].at(i, col);
    out.push_back(std::move(img));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Radical, socle, quotients

Submod radical_submodule(const Module& M) {
  const Algebra& A = M.A;
  const int nv = A->n_vertices();
  std::vector<FpMat> bases;
  for (int w = 0; w < nv; ++w) {
    FpMat acc(A->p, M.dims[w], 0);
    for (int ai = 0; ai < n_arrows(A); ++ai)
      if (A->quiver.arrows[ai].tgt == w) acc = mat_hcat(acc, M.act[ai]);
    bases.push_back(column_space_basis(acc));
  }
  return submodule_from_subspaces(M, bases);
}

Submod socle_submodule(const Module& M) {
  const Algebra& A = M.A;
  const int nv = A->n_vertices();
  std::vector<FpMat> bases;
  for (int v = 0; v < nv; ++v) {
    FpMat acc(A->p, 0, M.dims[v]);
    for (int ai = 0; ai < n_arrows(A); ++ai)
      if (A->quiver.arrows[ai].src == v) acc = mat_vcat(acc, M.act[ai]);
    bases.push_back(kernel_basis(acc));
  }
  return submodule_from_subspaces(M, bases);
}

Submod radical_power(const Module& M, int k) {
  const Algebra& A = M.A;
  const int nv = A->n_vertices();
  std::vector<FpMat> cur;
  for (int v = 0; v < nv; ++v) cur.push_back(FpMat::identity(A->p, M.dims[v]));
  for (int step = 0; step < k; ++step) {
    std::vector<FpMat> nxt;
    for (int w = 0; w < nv; ++w) {
      FpMat acc(A->p, M.dims[w], 0);
      for (int ai = 0; ai < n_arrows(A); ++ai)
        if (A->quiver.arrows[ai].tgt == w)
          acc = mat_hcat(acc, mat_mul(M.act[ai], cur[A->quiver.arrows[ai].src]));
      nxt.push_back(column_space_basis(acc));
    }
    cur = std::move(nxt);
  }
  return submodule_from_subspaces(M, cur);
}

QuotParts quotient_by(const ModuleMap& incl) {
  MapParts mp = map_factorization(incl);
  QuotParts out;
  out.q = mp.coker;
  out.proj = mp.coker_proj;
  return out;
}

// ---------------------------------------------------------------------------
// Submodule enumeration

namespace {

std::string subspace_key(const std::vector<FpMat>& bases) {
  std::ostringstream os;
  for (const auto& b : bases) {
    RrefResult rr = rref(mat_transpose(b));
    os << "|" << rr.rank << ":";
    for (int i = 0; i < rr.rank; ++i)
      for (int j = 0; j < rr.R.cols; ++j) os << rr.R.at(i, j) << ",";
  }
  return os.str();
}

std::vector<FpMat> canonical_subspaces(const std::vector<FpMat>& bases) {
  std::vector<FpMat> out;
  for (const auto& b : bases) {
    RrefResult rr = rref(mat_transpose(b));
    FpMat c(b.p, b.rows, rr.rank);
    for (int i = 0; i < rr.rank; ++i)
      for (int j = 0; j < b.rows; ++j) c.at(j, i) = rr.R.at(i, j);
    out.push_back(std::move(c));
  }
  return out;
}

// Closure of given per-vertex column spans under all arrow actions.
std::vector<FpMat> arrow_closure(const Module& M, std::vector<FpMat> bases) {
  const Algebra& A = M.A;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int ai = 0; ai < n_arrows(A); ++ai) {
      const auto& ar = A->quiver.arrows[ai];
      if (bases[ar.src].cols == 0) continue;
      FpMat img = mat_mul(M.act[ai], bases[ar.src]);
      FpMat joined = column_space_basis(mat_hcat(bases[ar.tgt], img));
      if (joined.cols != bases[ar.tgt].cols) {
        bases[ar.tgt] = joined;
        changed = true;
      }
    }
  }
  return canonical_subspaces(bases);
}

}  // namespace

std::vector<Submod> all_submodules(Ctx& ctx, const Module& M) {
  const Algebra& A = M.A;
  const int nv = A->n_vertices();
  const int d = M.total_dim();
  double count = 1;
  for (int i = 0; i < d; ++i) {
    count *= A->p;
    if (count > (double)ctx.sub_vector_budget)
      throw BudgetError("submodule enumeration infeasible: p^dim exceeds budget");
  }
  std::map<std::string, std::vector<FpMat>> found;
  {
    std::vector<FpMat> zero;
    for (int v = 0; v < nv; ++v) zero.push_back(FpMat(A->p, M.dims[v], 0));
    found[subspace_key(zero)] = zero;
  }
  // cyclic submodules from every vector
  long total = 1;
  for (int i = 0; i < d; ++i) total *= A->p;
  std::vector<int> vstart(nv + 1, 0);
  for (int v = 0; v < nv; ++v) vstart[v + 1] = vstart[v] + M.dims[v];
  for (long code = 1; code < total; ++code) {
    long c = code;
    std::vector<FpMat> bases;
    for (int v = 0; v < nv; ++v) {
      FpMat b(A->p, M.dims[v], 1);
      bool nonzero = false;
      for (int i = 0; i < M.dims[v]; ++i) {
        b.at(i, 0) = (u32)(c % A->p);
        if (b.at(i, 0)) nonzero = true;
        c /= A->p;
      }
      bases.push_back(nonzero ? column_space_basis(b) : FpMat(A->p, M.dims[v], 0));
    }
    auto cl = arrow_closure(M, bases);
    found.emplace(subspace_key(cl), cl);
  }
  // join closure
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<FpMat>> items;
    for (auto& [k, v] : found) {
      (void)k;
      items.push_back(v);
    }
    for (size_t i = 0; i < items.size() && !grew; ++i)
      for (size_t j = i + 1; j < items.size(); ++j) {
        std::vector<FpMat> sum;
        for (int v = 0; v < nv; ++v)
          sum.push_back(column_space_basis(mat_hcat(items[i][v], items[j][v])));
        sum = canonical_subspaces(sum);
        std::string key = subspace_key(sum);
        if (!found.count(key)) {
          if ((long)found.size() >= ctx.sub_count_budget)
            throw BudgetError("submodule enumeration infeasible: count budget");
          found[key] = sum;
          grew = true;
          break;
        }
      }
  }
  std::vector<Submod> out;
  for (auto& [k, bases] : found) {
    (void)k;
    out.push_back(submodule_from_subspaces(M, bases));
  }
  std::sort(out.begin(), out.end(), [](const Submod& a, const Submod& b) {
    if (a.sub.total_dim() != b.sub.total_dim())
      return a.sub.total_dim() < b.sub.total_dim();
    return a.sub.dims < b.sub.dims;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism and decomposition

std::optional<ModuleMap> find_isomorphism(Ctx& ctx, const Module& M, const Module& N) {
  if (!same_algebra(M, N)) return std::nullopt;
  if (M.dims != N.dims) return std::nullopt;
  if (M.total_dim() == 0) return zero_map(M, N);
  std::vector<ModuleMap> H = hom_basis(M, N);
  if (H.empty()) return std::nullopt;
  const u32 p = M.A->p;
  auto try_coeff = [&](const std::vector<u32>& c) -> std::optional<ModuleMap> {
    ModuleMap g = combine_maps(M, N, H, c);
    if (map_bijective(g)) return g;
    return std::nullopt;
  };
  // single basis elements first, then random combinations
  for (const auto& h : H)
    if (map_bijective(h)) return h;
  for (int t = 0; t < ctx.iso_trials; ++t) {
    std::vector<u32> c(H.size());
    for (auto& x : c) x = ctx.rand_u32(p);
    if (auto g = try_coeff(c)) return g;
  }
  // deterministic fallback: exhaust the hom span when small enough
  double sz = 1;
  for (size_t i = 0; i < H.size(); ++i) {
    sz *= p;
    if (sz > (double)ctx.iso_exhaust_budget) return std::nullopt;
  }
  long tot = (long)sz;
  for (long code = 1; code < tot; ++code) {
    long cc = code;
    std::vector<u32> c(H.size());
    for (auto& x : c) {
      x = (u32)(cc % p);
      cc /= p;
    }
    if (auto g = try_coeff(c)) return g;
  }
  return std::nullopt;
}

bool is_isomorphic(Ctx& ctx, const Module& M, const Module& N) {
  return find_isomorphism(ctx, M, N).has_value();
}

namespace {

bool map_nilpotent(const ModuleMap& f) {
  ModuleMap g = f;
  int d = f.src.total_dim();
  int k = 1;
  while (k < d) {
    g = compose(g, g);
    k *= 2;
  }
  return map_is_zero(g);
}

// Fitting splitting along a non-nilpotent non-invertible endomorphism.
std::optional<std::pair<Submod, Submod>> fitting_split(const Module& M,
                                                       const ModuleMap& f) {
  if (map_bijective(f) || map_nilpotent(f)) return std::nullopt;
  ModuleMap g = f;
  int d = M.total_dim();
  int k = 1;
  while (k < d) {
    g = compose(g, g);
    k *= 2;
  }
  // now g = f^k with k >= dim: ker g + im g splits M
  MapParts mp = map_factorization(g);
  if (mp.ker.total_dim() == 0 || mp.img.total_dim() == 0) return std::nullopt;
  if (mp.ker.total_dim() + mp.img.total_dim() != d) return std::nullopt;
  // verify independence vertexwise
  for (int v = 0; v < (int)M.dims.size(); ++v) {
    FpMat joint = mat_hcat(mp.ker_incl.f[v], mp.img_incl.f[v]);
    if (mat_rank(joint) != M.dims[v]) return std::nullopt;
  }
  Submod a{mp.ker, mp.ker_incl}, b{mp.img, mp.img_incl};
  return std::make_pair(a, b);
}

void decompose_rec(Ctx& ctx, const Module& M, std::vector<Module>& parts) {
  if (M.total_dim() == 0) return;
  std::vector<ModuleMap> E = hom_basis(M, M);
  auto try_split = [&](const ModuleMap& f) -> bool {
    auto sp = fitting_split(M, f);
    if (!sp) return false;
    decompose_rec(ctx, sp->first.sub, parts);
    decompose_rec(ctx, sp->second.sub, parts);
    return true;
  };
  for (const auto& f : E)
    if (try_split(f)) return;
  // pairwise products of basis elements
  if (E.size() <= 24) {
    for (size_t i = 0; i < E.size(); ++i)
      for (size_t j = 0; j < E.size(); ++j)
        if (try_split(compose(E[i], E[j]))) return;
  }
  const u32 p = M.A->p;
  for (int t = 0; t < 2 * ctx.iso_trials; ++t) {
    std::vector<u32> c(E.size());
    for (auto& x : c) x = ctx.rand_u32(p);
    if (try_split(combine_maps(M, M, E, c))) return;
  }
  // exhaustive local-ring certificate when the endomorphism space is small
  double sz = 1;
  bool exhaustible = true;
  for (size_t i = 0; i < E.size(); ++i) {
    sz *= p;
    if (sz > (double)ctx.end_scan_budget) {
      exhaustible = false;
      break;
    }
  }
  if (exhaustible) {
    long tot = (long)sz;
    for (long code = 1; code < tot; ++code) {
      long cc = code;
      std::vector<u32> c(E.size());
      for (auto& x : c) {
        x = (u32)(cc % p);
        cc /= p;
      }
      if (try_split(combine_maps(M, M, E, c))) return;
    }
  }
  parts.push_back(M);  // local (certified when exhaustible), else presumed
}

}  // namespace

std::vector<std::pair<Module, int>> decompose(Ctx& ctx, const Module& M) {
  std::vector<Module> parts;
  decompose_rec(ctx, M, parts);
  std::vector<std::pair<Module, int>> out;
  for (const Module& P : parts) {
    bool matched = false;
    for (auto& [Q, mult] : out)
      if (is_isomorphic(ctx, P, Q)) {
        ++mult;
        matched = true;
        break;
      }
    if (!matched) out.push_back({P, 1});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.total_dim() != b.first.total_dim())
      return a.first.total_dim() > b.first.total_dim();
    return a.first.dims > b.first.dims;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Projective summand stripping (exact, deterministic)

Stripped strip_projectives(const Module& M0) {
  Module M = M0;
  Stripped out;
  const Algebra& A = M0.A;
  bool changed = true;
  while (changed && M.total_dim() > 0) {
    changed = false;
    for (int v = 0; v < A->n_vertices() && !changed; ++v) {
      Proj P = std_proj(A, v);
      if (P.m.total_dim() > M.total_dim()) continue;
      std::vector<ModuleMap> to = hom_basis(M, P.m);
      std::vector<ModuleMap> from = hom_basis(P.m, M);
      // End(P(v)) is local: a split pair exists iff some composite is
      // invertible, and invertibility can be checked composite by composite
      // because non-invertible elements of a local ring form an ideal.
      for (const auto& g : from) {
        for (const auto& h : to) {
          ModuleMap comp = compose(g, h);  // P -> M -> P
          if (!map_bijective(comp)) continue;
          // adjust: g' = g ∘ comp^{-1} so that h ∘ g' = id_P
          ModuleMap ginv = comp;
          for (int w = 0; w < A->n_vertices(); ++w) {
            auto iv = mat_inverse(comp.f[w]);
            if (!iv) throw CertifyError("inverse vanished");
            ginv.f[w] = *iv;
          }
          ModuleMap gp = compose(ginv, g);  // P -> M with h∘gp = id
          // M = im(gp) ⊕ ker(h)
          MapParts hk = map_factorization(h);
          Submod kerh{hk.ker, hk.ker_incl};
          out.stripped_verts.push_back(v);
          M = kerh.sub;
          changed = true;
          break;
        }
        if (changed) break;
      }
    }
  }
  out.core = M;
  std::sort(out.stripped_verts.begin(), out.stripped_verts.end());
  return out;
}

// ---------------------------------------------------------------------------
// Serial detection and enumeration

bool is_uniserial(const Module& M) {
  // every radical layer has total dimension at most one
  int prev = M.total_dim();
  Module layer = M;
  while (true) {
    Submod rs = radical_submodule(layer);
    int now = rs.sub.total_dim();
    if (prev - now > 1) return false;
    if (now == 0) return true;
    layer = rs.sub;
    prev = now;
  }
}

bool is_nakayama(const Algebra& A) {
  for (int v = 0; v < A->n_vertices(); ++v) {
    if (!is_uniserial(std_proj(A, v).m)) return false;
    if (!is_uniserial(std_injective(A, v))) return false;
  }
  return true;
}

namespace {

std::string iso_invariant(const Module& M) {
  std::ostringstream os;
  for (int d : M.dims) os << d << ".";
  os << "|";
  std::vector<int> ranks;
  for (const auto& b : M.act) ranks.push_back(mat_rank(b));
  for (int r : ranks) os << r << ".";
  os << "|" << hom_dim(M, M);
  os << "|" << radical_submodule(M).sub.total_dim();
  os << "|" << socle_submodule(M).sub.total_dim();
  return os.str();
}

bool is_indecomposable(Ctx& ctx, const Module& M) {
  if (M.total_dim() == 0) return false;
  std::vector<Module> parts;
  decompose_rec(ctx, M, parts);
  return parts.size() == 1;
}

void enumerate_dim_vectors(int nv, int bound, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == nv) {
    int s = 0;
    for (int d : cur) s += d;
    if (s >= 1) out.push_back(cur);
    return;
  }
  int used = 0;
  for (int d : cur) used += d;
  for (int d = 0; d + used <= bound; ++d) {
    cur.push_back(d);
    enumerate_dim_vectors(nv, bound, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Enumerated enumerate_indecomposables(Ctx& ctx, const Algebra& A, int bound,
                                     bool force_generic) {
  Enumerated out;
  out.bound = bound;
  if (!force_generic && is_nakayama(A)) {
    out.method = "serial";
    out.exhaustive = true;
    for (int v = 0; v < A->n_vertices(); ++v) {
      Proj P = std_proj(A, v);
      for (int k = 1;; ++k) {
        Submod rk = radical_power(P.m, k);
        QuotParts q = quotient_by(rk.incl);
        bool fresh = true;
        for (const Module& seen : out.mods)
          if (is_isomorphic(ctx, seen, q.q)) {
            fresh = false;
            break;
          }
        if (fresh) out.mods.push_back(q.q);
        if (rk.sub.total_dim() == 0) break;
      }
    }
  } else {
    out.method = "generic";
    out.exhaustive = false;
    const int nv = A->n_vertices();
    const u32 p = A->p;
    std::vector<std::vector<int>> dvs;
    std::vector<int> cur;
    enumerate_dim_vectors(nv, bound, cur, dvs);
    long tuples_used = 0;
    std::map<std::string, std::vector<Module>> buckets;  // all seen iso reps
    for (const auto& dv : dvs) {
      // entry count over all arrows
      long entries = 0;
      for (const auto& ar : A->quiver.arrows)
        entries += (long)dv[ar.tgt] * dv[ar.src];
      double combos = 1;
      bool skip = false;
      for (long i = 0; i < entries; ++i) {
        combos *= p;
        if (combos > (double)ctx.enum_pervec_budget) {
          skip = true;
          break;
        }
      }
      if (skip)
        throw BudgetError("module enumeration infeasible for a dimension vector");
      long ncombo = (long)combos;
      tuples_used += ncombo;
      if (tuples_used > ctx.enum_tuple_budget)
        throw BudgetError("module enumeration budget exceeded");
      for (long code = 0; code < ncombo; ++code) {
        long c = code;
        Module M;
        M.A = A;
        M.dims = dv;
        bool ok = true;
        for (const auto& ar : A->quiver.arrows) {
          FpMat b(p, dv[ar.tgt], dv[ar.src]);
          for (auto& x : b.a) {
            x = (u32)(c % p);
            c /= p;
          }
          M.act.push_back(std::move(b));
        }
        if (!relations_act_zero(M)) continue;
        std::string key = iso_invariant(M);
        auto& bucket = buckets[key];
        bool seen = false;
        for (const Module& R : bucket)
          if (is_isomorphic(ctx, R, M)) {
            seen = true;
            break;
          }
        if (seen) continue;
        bucket.push_back(M);
        if (is_indecomposable(ctx, M)) out.mods.push_back(M);
        (void)ok;
      }
    }
  }
  std::sort(out.mods.begin(), out.mods.end(), [](const Module& a, const Module& b) {
    if (a.total_dim() != b.total_dim()) return a.total_dim() < b.total_dim();
    return a.dims < b.dims;
  });
  return out;
}

Module random_module(Ctx& ctx, const Algebra& A, int max_total_dim) {
  const int nv = A->n_vertices();
  for (int attempt = 0; attempt < 24; ++attempt) {
    int ns = 1 + (int)ctx.rand_u32(2);
    int nt = 1 + (int)ctx.rand_u32(2);
    std::vector<int> sv, tv;
    for (int i = 0; i < ns; ++i) sv.push_back((int)ctx.rand_u32(nv));
    for (int i = 0; i < nt; ++i) tv.push_back((int)ctx.rand_u32(nv));
    Proj Ps = proj_module(A, sv), Pt = proj_module(A, tv);
    std::vector<ModuleMap> H = hom_basis(Ps.m, Pt.m);
    ModuleMap f = zero_map(Ps.m, Pt.m);
    for (const auto& h : H)
      if (ctx.rand_u32(2)) f = map_add(f, map_scale(h, 1 + ctx.rand_u32(A->p - 1)));
    MapParts mp = map_factorization(f);
    Module cand = (ctx.rand_u32(3) == 0 && mp.ker.total_dim() > 0) ? mp.ker : mp.coker;
    if (ctx.rand_u32(4) == 0) {
      Submod r = radical_submodule(cand);
      if (r.sub.total_dim() > 0 && r.sub.total_dim() < cand.total_dim()) cand = r.sub;
    }
    if (cand.total_dim() >= 1 && cand.total_dim() <= max_total_dim) return cand;
  }
  return std_simple(A, (int)ctx.rand_u32(nv));
}

std::string module_brief(const Module& M) {
  std::ostringstream os;
  os << "(";
  for (size_t v = 0; v < M.dims.size(); ++v) os << (v ? "," : "") << M.dims[v];
  os << ")";
  return os.str();
}

}  // namespace qh
