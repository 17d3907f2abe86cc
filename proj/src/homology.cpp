#include "quiverhom/homology.hpp"

#include <algorithm>
#include <sstream>

namespace qh {

std::string Verdict::str() const {
  std::ostringstream os;
  switch (kind) {
    case Finite:
      os << value;
      break;
    case AtLeast:
      os << ">=" << value;
      break;
    case Infinite:
      if (cert_i >= 0)
        os << "inf(syzygy " << cert_i << "~" << cert_j << ")";
      else
        os << "inf";
      break;
  }
  return os.str();
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

const char* tri_str(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

Tri verdict_le(const Verdict& v, int bound) {
  switch (v.kind) {
    case Verdict::Finite: return v.value <= bound ? Tri::True : Tri::False;
    case Verdict::AtLeast:
      return v.value > bound ? Tri::False : Tri::Unknown;
    case Verdict::Infinite: return Tri::False;
  }
  return Tri::Unknown;
}

Tri verdict_lt(const Verdict& v, int bound) { return verdict_le(v, bound - 1); }

Tri verdict_ge(const Verdict& v, int bound) {
  switch (v.kind) {
    case Verdict::Finite: return v.value >= bound ? Tri::True : Tri::False;
    case Verdict::AtLeast:
      return v.value >= bound ? Tri::True : Tri::Unknown;
    case Verdict::Infinite: return Tri::True;
  }
  return Tri::Unknown;
}

Tri verdict_gt(const Verdict& v, int bound) { return verdict_ge(v, bound + 1); }

Tri verdict_less(const Verdict& a, const Verdict& b) {
  if (a.kind == Verdict::Infinite) return Tri::False;
  if (a.kind == Verdict::Finite) {
    if (b.kind == Verdict::Infinite) return Tri::True;
    if (b.kind == Verdict::Finite)
      return a.value < b.value ? Tri::True : Tri::False;
    // b >= b.value, could be anything above
    return a.value < b.value ? Tri::True : Tri::Unknown;
  }
  // a is AtLeast: a >= a.value
  if (b.kind == Verdict::Finite)
    return a.value >= b.value ? Tri::False : Tri::Unknown;
  return Tri::Unknown;
}

Verdict verdict_min(const std::vector<Verdict>& vs) {
  bool all_inf = true;
  bool have_finite = false;
  int min_finite = 0;
  bool have_floor = false;
  int min_floor = 0;
  for (const Verdict& v : vs) {
    if (v.kind != Verdict::Infinite) all_inf = false;
    if (v.kind == Verdict::Finite) {
      if (!have_finite || v.value < min_finite) min_finite = v.value;
      have_finite = true;
    } else if (v.kind == Verdict::AtLeast) {
      if (!have_floor || v.value < min_floor) min_floor = v.value;
      have_floor = true;
    }
  }
  if (vs.empty() || all_inf) return Verdict::infinite(-1, -1);
  if (have_finite && (!have_floor || min_finite <= min_floor))
    return Verdict::finite(min_finite);
  if (!have_finite) return Verdict::at_least(min_floor);
  // a finite value above an unsettled floor: only the floor is certain
  return Verdict::at_least(min_floor);
}

// ---------------------------------------------------------------------------
// Covers and resolutions

CoverResult projective_cover(const Module& M) {
  const Algebra& A = M.A;
  const int nv = A->n_vertices();
  Submod rad = radical_submodule(M);
  std::vector<int> verts;
  std::vector<std::vector<u32>> images;
  for (int v = 0; v < nv; ++v) {
    // complete the radical to a basis; the complement generates the top
    RrefResult rr = rref(mat_transpose(rad.incl.f[v]));
    std::vector<bool> piv(M.dims[v], false);
    for (int c : rr.pivots) piv[c] = true;
    for (int j = 0; j < M.dims[v]; ++j) {
      if (piv[j]) continue;
      verts.push_back(v);
      std::vector<u32> img(M.dims[v], 0);
      img[j] = 1;
      images.push_back(std::move(img));
    }
  }
  CoverResult out;
  out.P = proj_module(A, verts);
  out.epi = proj_map_from_gen_images(out.P, M, images);
  if (!map_surjective(out.epi)) throw CertifyError("projective cover not surjective");
  // minimality: kernel sits inside rad P
  Submod radP = radical_submodule(out.P.m);
  for (int v = 0; v < nv; ++v) {
    FpMat K = kernel_basis(out.epi.f[v]);
    if (!cols_contained(radP.incl.f[v], K))
      throw CertifyError("projective cover kernel escapes the radical");
  }
  return out;
}

EnvResult injective_envelope(const Module& M) {
  CoverResult c = projective_cover(dualize(M));
  EnvResult out;
  out.I = dualize(c.P.m);
  ModuleMap mono = dualize_map(c.epi);
  mono.src = M;  // D(D(M)) has identical coordinates
  out.mono = std::move(mono);
  if (!map_injective(out.mono)) throw CertifyError("injective envelope not injective");
  return out;
}

ProjRes min_proj_resolution(const Module& M, int length) {
  ProjRes R;
  R.of = M;
  extend_resolution(R, length);
  return R;
}

void extend_resolution(ProjRes& R, int length) {
  while (!R.terminated && R.computed() < length) {
    Module target = R.terms.empty() ? R.of : R.syz.back();
    if (target.total_dim() == 0) {
      R.terminated = true;
      break;
    }
    CoverResult c = projective_cover(target);
    ModuleMap diff = R.terms.empty() ? c.epi : compose(c.epi, R.syz_incl.back());
    MapParts mp = map_factorization(c.epi);
    R.terms.push_back(c.P);
    R.diffs.push_back(diff);
    R.syz.push_back(mp.ker);
    R.syz_incl.push_back(mp.ker_incl);
    if (mp.ker.total_dim() == 0) R.terminated = true;
  }
}

Module ProjRes::omega(int i) const {
  if (i == 0) return of;
  if (i <= (int)syz.size()) return syz[i - 1];
  if (terminated) return zero_module(of.A);
  throw UsageError("resolution not computed that far");
}

void certify_resolution(const ProjRes& R) {
  for (int k = 0; k < R.computed(); ++k) {
    const ModuleMap& d = R.diffs[k];
    if (!map_commutes(d)) throw CertifyError("resolution differential not a map");
    MapParts mp = map_factorization(d);
    if (k == 0) {
      if (!map_surjective(d)) throw CertifyError("augmentation not surjective");
    } else {
      // exactness: im d_k = ker d_{k-1}
      MapParts prev = map_factorization(R.diffs[k - 1]);
      if (mp.img.total_dim() != prev.ker.total_dim())
        throw CertifyError("resolution not exact");
      for (int v = 0; v < (int)d.f.size(); ++v)
        if (!cols_contained(prev.ker_incl.f[v], mp.img_incl.f[v]))
          throw CertifyError("resolution image escapes kernel");
    }
    // minimality: im d_k inside rad terms[k-1] (k>=1)
    if (k >= 1) {
      Submod rad = radical_submodule(R.terms[k - 1].m);
      for (int v = 0; v < (int)d.f.size(); ++v)
        if (!cols_contained(rad.incl.f[v], mp.img_incl.f[v]))
          throw CertifyError("resolution not minimal");
    }
  }
}

InjRes min_inj_resolution(const Module& M, int length) {
  ProjRes R = min_proj_resolution(dualize(M), length);
  InjRes out;
  out.of = M;
  out.terminated = R.terminated;
  for (int k = 0; k < R.computed(); ++k) {
    out.terms.push_back(dualize(R.terms[k].m));
    ModuleMap d = dualize_map(R.diffs[k]);
    if (k == 0) d.src = M;
    out.diffs.push_back(std::move(d));
    out.cosyz.push_back(dualize(R.syz[k]));
  }
  return out;
}

Module syzygy(const Module& M, int i) {
  if (i == 0) return M;
  if (i > 0) {
    ProjRes R = min_proj_resolution(M, i);
    return R.omega(i);
  }
  return dualize(min_proj_resolution(dualize(M), -i).omega(-i));
}

// ---------------------------------------------------------------------------
// The star functor on projective presentations

Proj star_proj(const Proj& P) { return proj_module(P.m.A->opposite(), P.verts); }

ModuleMap star_proj_map(const Proj& P, const Proj& Q, const ModuleMap& f) {
  const Algebra& A = P.m.A;
  Algebra op = A->opposite();
  Proj Ps = star_proj(P), Qs = star_proj(Q);
  std::vector<std::vector<u32>> gi = gen_images(P, f);
  // images of the Q* generators inside P*
  std::vector<std::vector<u32>> out_images;
  for (size_t sq = 0; sq < Q.verts.size(); ++sq) {
    int w = Q.verts[sq];
    std::vector<u32> img(Ps.m.dims[w], 0);
    for (size_t sp = 0; sp < P.verts.size(); ++sp) {
      int v = P.verts[sp];
      // coefficient of path u: w -> v inside the image of generator sp
      for (size_t k = 0; k < Q.paths[sq].size(); ++k) {
        int pid = Q.paths[sq][k];
        if (A->basis[pid].tgt != v) continue;
        u32 c = gi[sp][Q.offs[sq][k]];
        if (!c) continue;
        // reversed path has the same basis index in the opposite algebra
        int pos = Ps.path_pos[sp][pid];
        if (pos < 0) throw CertifyError("reversed path missing in star");
        img[Ps.offs[sp][pos]] = (img[Ps.offs[sp][pos]] + c) % A->p;
      }
    }
    out_images.push_back(std::move(img));
  }
  return proj_map_from_gen_images(Qs, Ps.m, out_images);
}

Module transpose(const Module& M) {
  Algebra op = M.A->opposite();
  if (M.total_dim() == 0) return zero_module(op);
  ProjRes R = min_proj_resolution(M, 2);
  if (R.computed() < 2) return zero_module(op);  // projective module
  ModuleMap ds = star_proj_map(R.terms[1], R.terms[0], R.diffs[1]);
  return map_factorization(ds).coker;
}

std::vector<Module> ext_from_resolution(ProjRes& R, int upto) {
  const Module& M = R.of;
  Algebra op = M.A->opposite();
  std::vector<Module> out;
  extend_resolution(R, upto + 2);
  std::vector<Proj> stars;
  for (const Proj& t : R.terms) stars.push_back(star_proj(t));
  auto star_term = [&](int k) -> Module {
    if (k < R.computed()) return stars[k].m;
    return zero_module(op);
  };
  auto delta = [&](int k) -> ModuleMap {  // P_{k-1}* -> P_k*
    if (k < R.computed())
      return star_proj_map(R.terms[k], R.terms[k - 1], R.diffs[k]);
    return zero_map(star_term(k - 1), star_term(k));
  };
  for (int i = 0; i <= upto; ++i) {
    if (i >= R.computed()) {
      out.push_back(zero_module(op));
      continue;
    }
    ModuleMap dnext = delta(i + 1);
    MapParts kp = map_factorization(dnext);
    if (i == 0) {
      out.push_back(kp.ker);
      continue;
    }
    ModuleMap dprev = delta(i);
    // factor dprev through the kernel of dnext
    ModuleMap h = zero_map(star_term(i - 1), kp.ker);
    for (int v = 0; v < (int)h.f.size(); ++v) {
      auto X = solve_linear(kp.ker_incl.f[v], dprev.f[v]);
      if (!X) throw CertifyError("ext homology: image escapes kernel");
      h.f[v] = *X;
    }
    out.push_back(map_factorization(h).coker);
  }
  return out;
}

std::vector<Module> ext_against_algebra_upto(const Module& M, int upto) {
  ProjRes R = min_proj_resolution(M, 0);
  return ext_from_resolution(R, upto);
}

Module ext_against_algebra(const Module& M, int i) {
  if (i < 0) throw UsageError("ext degree must be nonnegative");
  return ext_against_algebra_upto(M, i)[i];
}

int ext1_dim(const Module& X, const Module& Y) {
  if (X.total_dim() == 0 || Y.total_dim() == 0) return 0;
  ProjRes R = min_proj_resolution(X, 1);
  if (R.terminated && R.computed() <= 1 && R.syz[0].total_dim() == 0) return 0;
  int h_x = hom_dim(X, Y);
  int h_p = hom_dim(R.terms[0].m, Y);
  int h_o = hom_dim(R.syz[0], Y);
  return h_o - h_p + h_x;
}

// ---------------------------------------------------------------------------
// Hom(-, Lambda) on hom spaces

namespace {

// rho_alpha: P(w) -> P(v) prepends the arrow alpha: v -> w.
ModuleMap rho_arrow(const Algebra& A, int ai, const Proj& Pw, const Proj& Pv) {
  const auto& ar = A->quiver.arrows[ai];
  auto nf = A->reduce_path({ai}, ar.src);
  if (nf.size() != 1 || nf[0].second != 1)
    throw CertifyError("arrow is not a normal-form path");
  int path_id = nf[0].first;
  std::vector<u32> img(Pv.m.dims[ar.tgt], 0);
  int pos = Pv.path_pos[0][path_id];
  if (pos < 0) throw CertifyError("arrow path missing from projective");
  img[Pv.offs[0][pos]] = 1;
  return proj_map_from_gen_images(Pw, Pv.m, {img});
}

}  // namespace

StarData star_module(const Module& M) {
  const Algebra& A = M.A;
  Algebra op = A->opposite();
  const int nv = A->n_vertices();
  StarData out;
  out.of = M;
  std::vector<Proj> projs;
  for (int v = 0; v < nv; ++v) projs.push_back(std_proj(A, v));
  for (int v = 0; v < nv; ++v) out.homs.push_back(hom_basis(M, projs[v].m));
  Module S;
  S.A = op;
  for (int v = 0; v < nv; ++v) S.dims.push_back((int)out.homs[v].size());
  for (int ai = 0; ai < (int)op->quiver.arrows.size(); ++ai) {
    // op arrow ai runs w -> v where the original arrow runs v -> w
    int w = op->quiver.arrows[ai].src, v = op->quiver.arrows[ai].tgt;
    ModuleMap rho = rho_arrow(A, ai, projs[w], projs[v]);
    FpMat b(A->p, S.dims[v], S.dims[w]);
    for (int j = 0; j < S.dims[w]; ++j) {
      ModuleMap comp = compose(out.homs[w][j], rho);
      auto coeff = map_in_span(out.homs[v], comp);
      if (!coeff) throw CertifyError("star action leaves the hom space");
      for (int i = 0; i < S.dims[v]; ++i) b.at(i, j) = (*coeff)[i];
    }
    S.act.push_back(std::move(b));
  }
  out.star = make_module(op, S.dims, S.act);
  return out;
}

ModuleMap star_map(const ModuleMap& f, const StarData& starN, const StarData& starM) {
  ModuleMap out = zero_map(starN.star, starM.star);
  for (int v = 0; v < (int)out.f.size(); ++v) {
    for (int j = 0; j < starN.star.dims[v]; ++j) {
      ModuleMap comp = compose(f, starN.homs[v][j]);
      auto coeff = map_in_span(starM.homs[v], comp);
      if (!coeff) throw CertifyError("star of map leaves the hom space");
      for (int i = 0; i < starM.star.dims[v]; ++i) out.f[v].at(i, j) = (*coeff)[i];
    }
  }
  if (!map_commutes(out)) throw CertifyError("star of map fails to commute");
  return out;
}

ModuleMap sigma_map(const Module& M, const StarData& s1, const StarData& s2) {
  const Algebra& A = M.A;
  Algebra op = A->opposite();
  const int nv = A->n_vertices();
  std::vector<Proj> projs, oprojs;
  for (int v = 0; v < nv; ++v) projs.push_back(std_proj(A, v));
  for (int v = 0; v < nv; ++v) oprojs.push_back(std_proj(op, v));
  ModuleMap sigma = zero_map(M, s2.star);
  for (int v = 0; v < nv; ++v) {
    for (int t = 0; t < M.dims[v]; ++t) {
      // evaluation at the basis vector (v, t): a map M* -> P^op(v)
      ModuleMap phi = zero_map(s1.star, oprojs[v].m);
      for (int w = 0; w < nv; ++w) {
        for (int j = 0; j < s1.star.dims[w]; ++j) {
          const ModuleMap& fj = s1.homs[w][j];
          // fj(m) lives in P(w) at vertex v; reverse each path into P^op(v)
          for (size_t k = 0; k < projs[w].paths[0].size(); ++k) {
            int pid = projs[w].paths[0][k];
            if (A->basis[pid].tgt != v) continue;
            u32 c = fj.f[v].at(projs[w].offs[0][k], t);
            if (!c) continue;
            int pos = oprojs[v].path_pos[0][pid];
            if (pos < 0) throw CertifyError("sigma: reversed path missing");
            int row = oprojs[v].offs[0][pos];
            phi.f[w].at(row, j) = (phi.f[w].at(row, j) + c) % A->p;
          }
        }
      }
      if (!map_commutes(phi)) throw CertifyError("sigma: evaluation not a map");
      auto coeff = map_in_span(s2.homs[v], phi);
      if (!coeff) throw CertifyError("sigma: evaluation outside hom space");
      for (int i = 0; i < s2.star.dims[v]; ++i) sigma.f[v].at(i, t) = (*coeff)[i];
    }
  }
  if (!map_commutes(sigma)) throw CertifyError("sigma fails to commute");
  return sigma;
}

EvalSeq evaluation_sequence(const Module& M) {
  EvalSeq out;
  StarData s1 = star_module(M);
  StarData s2 = star_module(s1.star);
  out.sigma = sigma_map(M, s1, s2);
  out.mstar2 = s2.star;
  MapParts mp = map_factorization(out.sigma);
  out.e1 = mp.ker;
  out.e1_incl = mp.ker_incl;
  out.e2 = mp.coker;
  out.e2_proj = mp.coker_proj;
  Module tr = transpose(M);
  auto exts = ext_against_algebra_upto(tr, 2);
  out.ext1_tr = exts[1];
  out.ext2_tr = exts[2];
  if (out.e1.total_dim() != out.ext1_tr.total_dim() ||
      out.e2.total_dim() != out.ext2_tr.total_dim())
    throw CertifyError("evaluation sequence disagrees with the transpose route");
  return out;
}

HoshinoSeq hoshino_sequence(const Module& M, int n) {
  if (n < 1) throw UsageError("hoshino sequence needs n >= 1");
  Algebra op = M.A->opposite();
  ProjRes R = min_proj_resolution(M, n + 2);
  auto star_term = [&](int k) -> Module {
    if (k < R.computed()) return star_proj(R.terms[k]).m;
    return zero_module(op);
  };
  auto delta = [&](int k) -> ModuleMap {
    if (k < R.computed())
      return star_proj_map(R.terms[k], R.terms[k - 1], R.diffs[k]);
    return zero_map(star_term(k - 1), star_term(k));
  };
  HoshinoSeq out;
  if (n >= R.computed()) {  // Omega^{n-1} projective or zero: everything dies
    out.mid = zero_module(op);
    out.ext_n = zero_module(op);
    out.tail = zero_module(op);
    out.incl = zero_map(out.ext_n, out.mid);
    out.f = zero_map(out.mid, out.tail);
    out.fstar_iso = true;
    return out;
  }
  ModuleMap dn = delta(n);        // P_{n-1}* -> P_n*
  ModuleMap dn1 = delta(n + 1);   // P_n* -> P_{n+1}*
  MapParts cok = map_factorization(dn);
  out.mid = cok.coker;
  MapParts im1 = map_factorization(dn1);
  out.tail = im1.img;
  // induced map mid -> tail: factor (P_n* -> im) through the cokernel
  auto fd = factor_through_quotient(im1.src_to_img, cok.coker_proj);
  if (!fd) throw CertifyError("hoshino: induced map does not descend");
  out.f = *fd;
  MapParts kf = map_factorization(out.f);
  out.ext_n = kf.ker;
  out.incl = kf.ker_incl;
  Module ext_check = ext_against_algebra(M, n);
  if (ext_check.total_dim() != out.ext_n.total_dim())
    throw CertifyError("hoshino: kernel is not Ext^n");
  StarData smid = star_module(out.mid);
  StarData stail = star_module(out.tail);
  ModuleMap fs = star_map(out.f, stail, smid);
  out.fstar_iso = map_bijective(fs);
  return out;
}

// ---------------------------------------------------------------------------
// Grades and dimensions

GradePair grades(const Module& M, int cutoff) {
  GradePair out;
  if (M.total_dim() == 0) {
    out.grade = Verdict::infinite(-1, -1);
    out.rgrade = Verdict::infinite(-1, -1);
    return out;
  }
  ProjRes R = min_proj_resolution(M, 0);
  std::vector<Module> exts = ext_from_resolution(R, cutoff);
  int first = -1, first_pos = -1;
  for (int i = 0; i <= cutoff; ++i) {
    if (exts[i].total_dim() != 0) {
      if (first < 0) first = i;
      if (first_pos < 0 && i >= 1) first_pos = i;
      if (first >= 0 && first_pos >= 0) break;
    }
  }
  // a finite projective resolution with all Ext vanishing certifies infinity
  bool fin_res = R.terminated;
  out.grade = first >= 0 ? Verdict::finite(first)
                         : (fin_res ? Verdict::infinite(-1, -1)
                                    : Verdict::at_least(cutoff + 1));
  out.rgrade = first_pos >= 0 ? Verdict::finite(first_pos)
                              : (fin_res ? Verdict::infinite(-1, -1)
                                         : Verdict::at_least(cutoff + 1));
  return out;
}

Verdict sgrade(Ctx& ctx, const Module& M, int cutoff) {
  if (M.total_dim() == 0) return Verdict::infinite(-1, -1);
  std::vector<Verdict> gs;
  for (const Submod& s : all_submodules(ctx, M))
    gs.push_back(grades(s.sub, cutoff).grade);
  return verdict_min(gs);
}

Verdict homdim(Ctx& ctx, const Module& M, DimKind kind, int cutoff) {
  if (kind == DimKind::ID) return homdim(ctx, dualize(M), DimKind::PD, cutoff);
  if (M.total_dim() == 0) return Verdict::finite(-1);
  ProjRes R = min_proj_resolution(M, 1);
  std::vector<Module> chain{M};
  for (int k = 1; k <= cutoff; ++k) {
    extend_resolution(R, k);
    Module ok = R.omega(k);
    if (ok.total_dim() == 0) return Verdict::finite(k - 1);
    for (int i = 0; i < (int)chain.size(); ++i)
      if (chain[i].total_dim() == ok.total_dim() && is_isomorphic(ctx, chain[i], ok))
        return Verdict::infinite(i, k);
    chain.push_back(ok);
  }
  return Verdict::at_least(cutoff);
}

bool torsionfree_degree(const Module& M, int m) {
  if (m <= 0) return true;
  Module tr = transpose(M);
  if (tr.total_dim() == 0) return true;
  auto exts = ext_against_algebra_upto(tr, m);
  for (int i = 1; i <= m; ++i)
    if (exts[i].total_dim() != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Factorization helpers

std::optional<ModuleMap> factor_through_epi(const ModuleMap& f, const ModuleMap& g) {
  // find h: f.src -> g.src with g∘h = f
  std::vector<ModuleMap> H = hom_basis(f.src, g.src);
  std::vector<ModuleMap> comp;
  for (const auto& h : H) comp.push_back(compose(h, g));
  auto coeff = map_in_span(comp, f);
  if (!coeff) return std::nullopt;
  ModuleMap h = zero_map(f.src, g.src);
  for (size_t k = 0; k < H.size(); ++k)
    if ((*coeff)[k]) h = map_add(h, map_scale(H[k], (*coeff)[k]));
  return h;
}

std::optional<ModuleMap> factor_through_quotient(const ModuleMap& s,
                                                 const ModuleMap& pi) {
  ModuleMap out = zero_map(pi.dst, s.dst);
  for (int v = 0; v < (int)out.f.size(); ++v) {
    auto X = solve_linear_right(pi.f[v], s.f[v]);
    if (!X) return std::nullopt;
    out.f[v] = *X;
  }
  if (!map_commutes(out)) return std::nullopt;
  return out;
}

}  // namespace qh
