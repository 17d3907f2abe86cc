#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quiverhom/approx.hpp"
#include "quiverhom/fixtures.hpp"

using namespace qh;

namespace {

// every hom from T into the end of the sequence factors through the middle
bool is_right_approximation(const Module& T, const Ses& s) {
  std::vector<ModuleMap> homs_mid = hom_basis(T, s.p.src);
  std::vector<ModuleMap> homs_end = hom_basis(T, s.p.dst);
  if (homs_end.empty()) return true;
  std::vector<ModuleMap> image;
  for (const auto& h : homs_mid) image.push_back(compose(h, s.p));
  for (const auto& h : homs_end)
    if (!map_in_span(image, h)) return false;
  return true;
}

bool is_left_approximation(const Ses& s, const Module& T) {
  // every hom from the head of the sequence into T extends along s.i
  std::vector<ModuleMap> homs_mid = hom_basis(s.i.dst, T);
  std::vector<ModuleMap> homs_head = hom_basis(s.i.src, T);
  if (homs_head.empty()) return true;
  std::vector<ModuleMap> image;
  for (const auto& h : homs_mid) image.push_back(compose(s.i, h));
  for (const auto& h : homs_head)
    if (!map_in_span(image, h)) return false;
  return true;
}

}  // namespace

TEST_CASE("pullback gluing") {
  Ctx ctx;
  Algebra a3 = fixture_algebra("a3");
  // s1: the radical sequence of P(1); s2 trivial on the same end
  Module P1 = std_proj(a3, 0).m;
  Submod rad = radical_submodule(P1);
  QuotParts top = quotient_by(rad.incl);
  Ses s1{rad.incl, top.proj};
  Ses s2{zero_map(zero_module(a3), top.q), identity_map(top.q)};
  GlueResult g = pullback_glue(s1, s2);
  CHECK(g.row.i.dst.total_dim() == P1.total_dim());
  CHECK(is_isomorphic(ctx, g.row.i.dst, P1));
  // random gluings certify and have additive dimensions
  for (int t = 0; t < 6; ++t) {
    Module C0 = random_module(ctx, a3, 6);
    if (C0.total_dim() == 0) continue;
    CoverResult c1 = projective_cover(C0);
    MapParts m1 = map_factorization(c1.epi);
    Ses t1{m1.ker_incl, c1.epi};
    EnvResult e = injective_envelope(syzygy(C0, 1));
    // a second epi onto C0: the cover again, glued against t1
    CoverResult c2 = projective_cover(C0);
    MapParts m2 = map_factorization(c2.epi);
    Ses t2{m2.ker_incl, c2.epi};
    GlueResult gr = pullback_glue(t1, t2);
    CHECK(gr.row.i.dst.total_dim() ==
          t1.i.src.total_dim() + t2.i.dst.total_dim());
    (void)e;
  }
}

TEST_CASE("pushout gluing") {
  Ctx ctx;
  Algebra a3 = fixture_algebra("a3");
  Module S2 = std_simple(a3, 1);
  CoverResult cov = projective_cover(S2);
  MapParts mp = map_factorization(cov.epi);
  Ses s1{mp.ker_incl, cov.epi};
  EnvResult env = injective_envelope(mp.ker);
  MapParts ep = map_factorization(env.mono);
  Ses s2{env.mono, ep.coker_proj};
  PushoutResult po = pushout_glue(s1, s2);
  CHECK(po.row1.p.dst.total_dim() == S2.total_dim());
  CHECK(po.row1.i.src.total_dim() == env.I.total_dim());
}

TEST_CASE("mapping-cone precover edge cases") {
  Ctx ctx;
  // vanishing Ext^n gives the trivial correction
  Algebra loop = fixture_algebra("loop");
  Module S = std_simple(loop, 0);
  ApproxResult r = cone_precover(ctx, S, 2, 12);
  CHECK(r.seq.i.src.total_dim() == 0);
  CHECK(is_isomorphic(ctx, r.seq.p.src, S));
  // nontrivial cone over the linear quiver
  Algebra a3 = fixture_algebra("a3");
  ApproxResult r2 = cone_precover(ctx, std_simple(a3, 0), 1, 12);
  CHECK(r2.seq.i.src.total_dim() > 0);
  // hypothesis refusal: S1 has reduced grade 1, so n = 2 is refused
  CHECK_THROWS_AS(cone_precover(ctx, std_simple(a3, 0), 2, 12), UsageError);
}

TEST_CASE("g approximations are approximations") {
  Ctx ctx;
  Algebra a3 = fixture_algebra("a3", 2);
  Enumerated en = enumerate_indecomposables(ctx, a3, 6);
  MemberContext mc;
  for (int v = 0; v < 3; ++v) {
    Module S = std_simple(a3, v);
    ApproxResult pre = g_approx(ctx, S, 1, 1, false, 12);
    ApproxResult env = g_approx(ctx, S, 1, 1, true, 12);
    // the precover is a right approximation for every enumerated W-member
    for (const Module& T : en.mods) {
      if (membership(ctx, T, Cls::W, 2, 0, 'a', mc, 12).verdict != Tri::True)
        continue;
      CHECK(is_right_approximation(T, pre.seq));
    }
    // the preenvelope is a left approximation for bounded-pd targets
    for (const Module& T : en.mods) {
      if (membership(ctx, T, Cls::P, 2, 0, 'a', mc, 12).verdict != Tri::True)
        continue;
      CHECK(is_left_approximation(env.seq, T));
    }
  }
}

TEST_CASE("semisimple algebras split everything") {
  Ctx ctx;
  Algebra ss = fixture_algebra("semisimple3");
  Module S = std_simple(ss, 0);
  ApproxResult r = g_approx(ctx, S, 1, 2, false, 12);
  CHECK(r.seq.i.src.total_dim() == 0);  // Y = 0 is admissible
  ApproxResult cr = coresolution_approx(ctx, S, 2, false, 12);
  CHECK(cr.seq.p.dst.total_dim() == 0);  // injective envelope is the module
}

TEST_CASE("coresolution approximations") {
  Ctx ctx;
  Algebra a3 = fixture_algebra("a3");
  // injective input: the envelope sequence degenerates
  Module E = std_injective(a3, 1);
  ApproxResult r = coresolution_approx(ctx, E, 2, false, 12);
  CHECK(r.seq.p.dst.total_dim() == 0);
  CHECK(r.seq.i.dst.total_dim() == E.total_dim());
  // level zero is the minimal envelope sequence
  Module S2 = std_simple(a3, 1);
  ApproxResult r0 = coresolution_approx(ctx, S2, 0, false, 12);
  CHECK(r0.seq.i.dst.dims == injective_envelope(S2).I.dims);
  // the omega exhibit behind the certified membership
  OmegaExhibit ex = omega_exhibit(ctx, syzygy(S2, 1), 1, 12);
  CHECK(ex.terms.size() == 1);
  CHECK(map_injective(ex.embeds[0]));
}

TEST_CASE("cotorsion approximations reduce as stated at the boundary") {
  Ctx ctx;
  Algebra a3 = fixture_algebra("a3");
  Module S1 = std_simple(a3, 0);
  // i = 0: the (F_{j-1}, I_j) sequence from the coresolution construction
  ApproxResult r0 = cotorsion_approx(ctx, S1, 0, 2, false, 12);
  MemberContext mc;
  CHECK(membership(ctx, r0.seq.i.src, Cls::I, 2, 0, 'a', mc, 12).verdict ==
        Tri::True);
  CHECK(torsionfree_degree(r0.seq.p.src, 1));
  // j = 1: the (W_i, Y_{i,1}) sequence
  ApproxResult r1 = cotorsion_approx(ctx, S1, 2, 1, false, 12);
  CHECK(membership(ctx, r1.seq.p.src, Cls::W, 2, 0, 'a', mc, 12).verdict ==
        Tri::True);
  // preenvelope side certifies as well
  ApproxResult r2 = cotorsion_approx(ctx, S1, 1, 1, true, 12);
  CHECK(r2.seq.i.src.total_dim() == S1.total_dim());
}

TEST_CASE("cotorsion pair verification") {
  Ctx ctx;
  // semisimple: all Ext vanish and the classes are everything
  Algebra ss = fixture_algebra("semisimple3", 2);
  Enumerated se = enumerate_indecomposables(ctx, ss, 4);
  CotorsionCheck c0 = verify_cotorsion_pair(ctx, ss, PairKind::XY, 1, 1, se, 12);
  CHECK(c0.ok());
  CHECK(c0.left_count == (int)se.mods.size());
  // the self-injective Nakayama fixture
  Algebra cyc = fixture_algebra("cycle2", 2);
  Enumerated ce = enumerate_indecomposables(ctx, cyc, 6);
  REQUIRE(ce.exhaustive);
  for (int i = 1; i <= 3; ++i) {
    CotorsionCheck ck = verify_cotorsion_pair(ctx, cyc, PairKind::XY, i, 1, ce, 12);
    CHECK(ck.ok());
    CotorsionCheck cd = verify_cotorsion_pair(ctx, cyc, PairKind::YDX, i, 1, ce, 12);
    CHECK(cd.ok());
  }
}

TEST_CASE("functorial-finiteness route from precovers to preenvelopes") {
  // with the precover sequences in hand, the preenvelope sequences come out
  // of the envelope-plus-pullback step; both sides certify on the fixtures
  Ctx ctx;
  Algebra cyc = fixture_algebra("cycle2");
  for (int v = 0; v < 2; ++v) {
    Module S = std_simple(cyc, v);
    ApproxResult env = cotorsion_approx(ctx, S, 1, 1, true, 12);
    CHECK(env.seq.i.src.total_dim() == S.total_dim());
    CHECK(env.aux.size() >= 1);  // witness extension travels along
  }
}
