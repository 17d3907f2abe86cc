#include "quiverhom/selftest.hpp"

#include <chrono>
#include <sstream>

namespace qh {

namespace {

using Clock = std::chrono::steady_clock;

double since_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Ctx make_ctx(const SelftestOptions& opt) {
  Ctx ctx;
  ctx.rng.seed(opt.seed);
  ctx.cutoff = opt.cutoff;
  return ctx;
}

std::string num(long x) { return std::to_string(x); }

// ---------------------------------------------------------------------------
// criterion 1: star5 fd profile [1,1,2] on both sides

CriterionResult crit_profile(const SelftestOptions& opt) {
  CriterionResult r{1, "star5-profile", false, "", 0};
  Ctx ctx = make_ctx(opt);
  Algebra A = fixture_algebra("star5", opt.p);
  FdProfile left = injective_profile(ctx, A, 3, opt.cutoff);
  FdProfile right = injective_profile(ctx, A->opposite(), 3, opt.cutoff);
  auto expect = [&](const FdProfile& p) {
    return p.fd.size() == 3 && p.fd[0] == Verdict::finite(1) &&
           p.fd[1] == Verdict::finite(1) && p.fd[2] == Verdict::finite(2);
  };
  r.pass = expect(left) && expect(right);
  r.details = "profile = " + profile_str(left) + ", opposite = " +
              profile_str(right) + ", expected [1,1,2] on both sides";
  return r;
}

// ---------------------------------------------------------------------------
// criterion 2: zigzag4 satisfies exactly one of (2,2) and (2,2)-op

CriterionResult crit_zigzag(const SelftestOptions& opt) {
  CriterionResult r{2, "zigzag4-one-sided", false, "", 0};
  Ctx ctx = make_ctx(opt);
  Algebra A = fixture_algebra("zigzag4", opt.p);
  CondReport a = check_ln(ctx, A, 2, 2, false, 6, opt.cutoff);
  CondReport b = check_ln(ctx, A->opposite(), 2, 2, false, 6, opt.cutoff);
  bool one = (a.verdict == Tri::True && b.verdict == Tri::False) ||
             (a.verdict == Tri::False && b.verdict == Tri::True);
  const CondReport& failing = (a.verdict == Tri::False) ? a : b;
  bool witness_ok = one && !failing.witness.empty();
  r.pass = one && witness_ok;
  r.details = "(2,2) " + std::string(tri_str(a.verdict)) + ", (2,2)-op " +
              tri_str(b.verdict) + "; failing witness: " + failing.witness;
  return r;
}

// ---------------------------------------------------------------------------
// criterion 3: a module in add E(I_1, P_1) but outside E(I_1, P_1)

CriterionResult crit_add_closure(const SelftestOptions& opt) {
  CriterionResult r{3, "a3-add-closure-gap", false, "", 0};
  Ctx ctx = make_ctx(opt);
  Algebra A = fixture_algebra("a3", opt.p_enum);
  Enumerated en = enumerate_indecomposables(ctx, A, 6);
  MemberContext mc;
  mc.indecs = &en;
  for (const Module& C : en.mods) {
    MemberReport m = membership(ctx, C, Cls::Y, 1, 1, 'a', mc, opt.cutoff);
    if (m.e_member == Tri::False && m.add_e_member == Tri::True) {
      r.pass = true;
      r.details = "witness " + module_brief(C) + ": " + m.detail;
      return r;
    }
  }
  r.details = "no summand witness found among " + num(en.mods.size()) +
              " indecomposables";
  return r;
}

// ---------------------------------------------------------------------------
// criterion 4: symmetry suite

// first index i in [0, n) with fd I_i(S^op) > i + k; -1 when none
int g_first_fail_exact(Ctx& ctx, const Algebra& S, int n, int k, int cutoff) {
  FdProfile prof = injective_profile(ctx, S->opposite(), n, cutoff);
  for (int i = 0; i < n; ++i) {
    Tri t = verdict_le(prof.fd[i], i + k);
    if (t != Tri::True) return i;
  }
  return -1;
}

// first i in [1, n] with grade Ext^{i+k}(C) < i over the list; -1 when none
int g_first_fail_enum(Ctx&, const Enumerated& en, int n, int k, int cutoff) {
  for (int i = 1; i <= n; ++i)
    for (const Module& C : en.mods) {
      Module e = ext_against_algebra(C, i + k);
      if (verdict_ge(grades(e, cutoff).grade, i) != Tri::True) return i;
    }
  return -1;
}

CriterionResult crit_symmetry(const SelftestOptions& opt) {
  CriterionResult r{4, "symmetry-suite", false, "", 0};
  Ctx ctx = make_ctx(opt);
  const int N = 4, BOUND = 6;
  std::ostringstream det;
  int mismatches = 0;
  for (const std::string& name : fixture_names()) {
    Algebra A = fixture_algebra(name, opt.p);
    Algebra E = fixture_algebra(name, opt.p_enum);
    Enumerated en = enumerate_indecomposables(ctx, E, BOUND);
    Enumerated enop = enumerate_indecomposables(ctx, E->opposite(), BOUND);
    int gor_l = g_first_fail_exact(ctx, A, N, 0, opt.cutoff);
    int gor_r = g_first_fail_exact(ctx, A->opposite(), N, 0, opt.cutoff);
    int g0_enum = g_first_fail_enum(ctx, en, N, 0, opt.cutoff);
    int g0_exact = g_first_fail_exact(ctx, A->opposite(), N, 1, opt.cutoff);
    int g1_l = g_first_fail_enum(ctx, en, N, 1, opt.cutoff);
    int g1_r = g_first_fail_enum(ctx, enop, N, 1, opt.cutoff);
    for (int n = 1; n <= N; ++n) {
      bool m1 = ((gor_l < 0 || gor_l >= n) != (gor_r < 0 || gor_r >= n));
      // exact criterion indexes i < n; enumeration indexes i <= n
      bool g0l = (g0_enum < 0 || g0_enum > n);
      bool g0r = (g0_exact < 0 || g0_exact >= n);
      bool m2 = (g0l != g0r);
      bool m3 = ((g1_l < 0 || g1_l > n) != (g1_r < 0 || g1_r > n));
      if (m1 || m2 || m3) {
        ++mismatches;
        det << name << " n=" << n << (m1 ? " gorenstein" : "")
            << (m2 ? " g0" : "") << (m3 ? " g1" : "") << "; ";
      }
    }
  }
  r.pass = (mismatches == 0);
  r.details = mismatches == 0 ? "all sides agree over 6 fixtures, n <= 4"
                              : det.str();
  return r;
}

// ---------------------------------------------------------------------------
// criterion 5: construction suite

CriterionResult crit_constructions(const SelftestOptions& opt) {
  CriterionResult r{5, "construction-suite", false, "", 0};
  Ctx ctx = make_ctx(opt);
  int built = 0, skipped = 0, failed = 0;
  std::ostringstream det;
  for (const std::string& name : {std::string("cycle2"), std::string("a3")}) {
    Algebra A = fixture_algebra(name, opt.p);
    Enumerated en = enumerate_indecomposables(ctx, A, 6);
    for (const Module& C : en.mods) {
      for (int n = 1; n <= 3; ++n) {
        try {
          cone_precover(ctx, C, n, opt.cutoff);
          ++built;
        } catch (const UsageError&) {
          ++skipped;
        } catch (const std::exception& e) {
          ++failed;
          det << name << " cone n=" << n << " on " << module_brief(C) << ": "
              << e.what() << "; ";
        }
      }
      for (int k = 1; k <= 3; ++k)
        for (int i = 0; i <= 3; ++i)
          for (bool env : {false, true}) {
            try {
              g_approx(ctx, C, k, i, env, opt.cutoff);
              ++built;
            } catch (const UsageError&) {
              ++skipped;
            } catch (const std::exception& e) {
              ++failed;
              det << name << " g k=" << k << " i=" << i << " on "
                  << module_brief(C) << ": " << e.what() << "; ";
            }
          }
      for (int i = 0; i <= 3; ++i)
        for (bool pre : {false, true}) {
          try {
            coresolution_approx(ctx, C, i, pre, opt.cutoff);
            ++built;
          } catch (const UsageError&) {
            ++skipped;
          } catch (const std::exception& e) {
            ++failed;
            det << name << " cores i=" << i << " on " << module_brief(C) << ": "
                << e.what() << "; ";
          }
        }
      for (int i = 0; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          for (bool env : {false, true}) {
            try {
              cotorsion_approx(ctx, C, i, j, env, opt.cutoff);
              ++built;
            } catch (const UsageError&) {
              ++skipped;
            } catch (const std::exception& e) {
              ++failed;
              det << name << " cot i=" << i << " j=" << j << " on "
                  << module_brief(C) << ": " << e.what() << "; ";
            }
          }
    }
  }
  r.pass = (failed == 0 && built > 0);
  r.details = num(built) + " constructions certified, " + num(skipped) +
              " skipped by hypotheses, " + num(failed) + " failures" +
              (failed ? (": " + det.str()) : "");
  return r;
}

// ---------------------------------------------------------------------------
// criterion 6: cotorsion pairs on the self-injective Nakayama fixture

CriterionResult crit_cotorsion(const SelftestOptions& opt) {
  CriterionResult r{6, "cotorsion-pairs", false, "", 0};
  Ctx ctx = make_ctx(opt);
  Algebra A = fixture_algebra("cycle2", opt.p_enum);
  Enumerated en = enumerate_indecomposables(ctx, A, 8);
  if (!en.exhaustive) {
    r.details = "serial enumeration unavailable";
    return r;
  }
  int violations = 0, indet = 0, pairs = 0;
  std::ostringstream det;
  for (int i = 0; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      CotorsionCheck ck =
          verify_cotorsion_pair(ctx, A, PairKind::XY, i, j, en, opt.cutoff);
      ++pairs;
      violations += (int)ck.violations.size();
      indet += ck.indeterminate;
      for (const auto& v : ck.violations)
        det << "(X_{" << i << "," << j - 1 << "},Y): " << v << "; ";
    }
  for (int i = 1; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      CotorsionCheck ck =
          verify_cotorsion_pair(ctx, A, PairKind::YDX, i, j, en, opt.cutoff);
      ++pairs;
      violations += (int)ck.violations.size();
      indet += ck.indeterminate;
      for (const auto& v : ck.violations)
        det << "(Y_{" << i << "," << j << "},DX): " << v << "; ";
    }
  r.pass = (violations == 0 && indet == 0);
  r.details = num(pairs) + " pairs over " + num(en.mods.size()) +
              " indecomposables, " + num(violations) + " violations, " +
              num(indet) + " indeterminate" + (violations ? ": " + det.str() : "");
  return r;
}

// ---------------------------------------------------------------------------
// criterion 7: homological identity suite on random modules

CriterionResult crit_identities(const SelftestOptions& opt) {
  CriterionResult r{7, "identity-suite", false, "", 0};
  Ctx ctx = make_ctx(opt);
  long cases = 0, failures = 0;
  std::ostringstream det;
  for (const std::string& name : fixture_names()) {
    Algebra A = fixture_algebra(name, opt.p);
    for (int t = 0; t < opt.eval_cases; ++t) {
      Module M = random_module(ctx, A, 8);
      ++cases;
      try {
        EvalSeq ev = evaluation_sequence(M);
        long euler = (long)ev.ext1_tr.total_dim() - M.total_dim() +
                     ev.mstar2.total_dim() - ev.ext2_tr.total_dim();
        if (euler != 0) throw CertifyError("evaluation euler nonzero");
        bool inj = map_injective(ev.sigma), bij = map_bijective(ev.sigma);
        if (torsionfree_degree(M, 1) != inj)
          throw CertifyError("torsionless vs sigma injectivity");
        if (torsionfree_degree(M, 2) != bij)
          throw CertifyError("reflexive vs sigma bijectivity");
        for (int n = 1; n <= 2; ++n) {
          HoshinoSeq h = hoshino_sequence(M, n);
          if (h.mid.total_dim() != h.ext_n.total_dim() + h.tail.total_dim())
            throw CertifyError("hoshino euler nonzero");
          if (!h.fstar_iso) throw CertifyError("hoshino f-star not bijective");
        }
        Module trtr = transpose(transpose(M));
        Stripped a = strip_projectives(trtr), b = strip_projectives(M);
        if (!is_isomorphic(ctx, a.core, b.core))
          throw CertifyError("double transpose differs up to projectives");
        Module dd = dualize(dualize(M));
        if (!(dd.A.get() == M.A.get() && dd.dims == M.dims))
          throw CertifyError("double dual differs");
        for (size_t ai = 0; ai < dd.act.size(); ++ai)
          if (!(dd.act[ai] == M.act[ai])) throw CertifyError("double dual differs");
      } catch (const std::exception& e) {
        ++failures;
        if (failures <= 3)
          det << name << " " << module_brief(M) << ": " << e.what() << "; ";
      }
    }
  }
  r.pass = (failures == 0);
  r.details = num(cases) + " random modules, " + num(failures) + " failures" +
              (failures ? ": " + det.str() : "");
  return r;
}

// ---------------------------------------------------------------------------
// criterion 8: dominant numbers

CriterionResult crit_dominant(const SelftestOptions& opt) {
  CriterionResult r{8, "dominant-numbers", false, "", 0};
  Ctx ctx = make_ctx(opt);
  int violations = 0, indet = 0;
  std::ostringstream det;
  for (const std::string& name : fixture_names()) {
    DominantReport dr =
        dominant_numbers(ctx, fixture_algebra(name, opt.p), 4, opt.cutoff);
    if (dr.theorem_violated) {
      ++violations;
      det << name << ": " << dr.detail << "; ";
    }
    if (dr.indeterminate) ++indet;
    det << name << " dominants {";
    for (size_t k = 0; k < dr.dominants.size(); ++k)
      det << (k ? "," : "") << dr.dominants[k];
    det << "} profile " << profile_str(dr.profile) << "; ";
  }
  r.pass = (violations == 0 && indet == 0);
  r.details = det.str();
  return r;
}

// ---------------------------------------------------------------------------
// criterion 9: finitistic dimension bounds

CriterionResult crit_findim(const SelftestOptions& opt) {
  CriterionResult r{9, "finitistic-bounds", false, "", 0};
  Ctx ctx = make_ctx(opt);
  const int DEPTH = 4;
  std::ostringstream det;
  bool ok = true;
  for (const std::string& name :
       {std::string("cycle2"), std::string("semisimple3"), std::string("a3")}) {
    Algebra A = fixture_algebra(name, opt.p);
    Algebra E = fixture_algebra(name, opt.p_enum);
    FindimReport fr = findim_estimate(ctx, E, 6, opt.cutoff);
    Verdict id_left = homdim(ctx, regular_module(A).m, DimKind::ID, opt.cutoff);
    if (id_left.kind != Verdict::Finite || !fr.enum_exhaustive) {
      ok = false;
      det << name << ": id or enumeration unsettled; ";
      continue;
    }
    // least k with the g-hypothesis holding at the scanned depth
    int k = -1;
    Enumerated en = enumerate_indecomposables(ctx, E, 6);
    for (int kk = 0; kk <= 2; ++kk) {
      bool holds;
      if (kk == 0)
        holds = g_first_fail_exact(ctx, A->opposite(), DEPTH, 1, opt.cutoff) < 0;
      else
        holds = g_first_fail_enum(ctx, en, DEPTH, kk, opt.cutoff) < 0;
      if (holds) {
        k = kk;
        break;
      }
    }
    if (k < 0) {
      ok = false;
      det << name << ": no g-hypothesis settled up to k=2; ";
      continue;
    }
    int fd = fr.findim_lower, idv = id_left.value;
    bool ineq = (fd <= idv) && (idv <= fd + k);
    if (!ineq) ok = false;
    det << name << ": fin.dim " << fd << ", id " << idv << ", k " << k
        << (ineq ? " ok" : " VIOLATION") << "; ";
  }
  r.pass = ok;
  r.details = det.str();
  return r;
}

// ---------------------------------------------------------------------------
// criterion 10: determinism and field independence

}  // namespace

std::string verdict_fingerprint(const SelftestOptions& opt, u32 field) {
  Ctx ctx = make_ctx(opt);
  std::ostringstream os;
  for (const std::string& name : fixture_names()) {
    Algebra A = fixture_algebra(name, field);
    os << name << " dim " << A->dim() << "\n";
    FdProfile pl = injective_profile(ctx, A, 4, opt.cutoff);
    FdProfile pr = injective_profile(ctx, A->opposite(), 4, opt.cutoff);
    os << name << " profile " << profile_str(pl) << " op " << profile_str(pr)
       << "\n";
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= 1; ++k) {
        CondReport g = check_G(ctx, A, n, k, opt.cutoff);
        os << name << " G_" << n << "(" << k << ") " << tri_str(g.verdict) << "\n";
      }
    for (int l = 1; l <= 2; ++l)
      for (int n = 1; n <= 2; ++n) {
        CondReport c = check_ln(ctx, A, l, n, false, 6, opt.cutoff);
        os << name << " (" << l << "," << n << ") " << tri_str(c.verdict) << "\n";
      }
    DominantReport dr = dominant_numbers(ctx, A, 4, opt.cutoff);
    os << name << " dominants";
    for (int d : dr.dominants) os << " " << d;
    os << "\n";
    // one enumeration-backed verdict to exercise the seeded paths
    Algebra E = fixture_algebra(name, 2);
    CondReport ge = check_g_enumerated(ctx, E, 2, 1, 5, opt.cutoff);
    os << name << " g_2(1)-enum " << tri_str(ge.verdict) << "\n";
  }
  return os.str();
}

namespace {

CriterionResult crit_determinism(const SelftestOptions& opt) {
  CriterionResult r{10, "determinism", false, "", 0};
  std::string a = verdict_fingerprint(opt, opt.p);
  std::string b = verdict_fingerprint(opt, opt.p);
  std::string c = verdict_fingerprint(opt, 2);
  bool same_seed = (a == b);
  // field independence: verdict lines must match except the stated field
  bool field_free = (a == c);
  r.pass = same_seed && field_free;
  r.details = std::string("same-seed reports ") +
              (same_seed ? "identical" : "DIFFER") + "; p=" + num(opt.p) +
              " vs p=2 verdicts " + (field_free ? "identical" : "DIFFER");
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SelftestOptions& opt,
                                            std::ostream* progress) {
  struct Entry {
    int id;
    const char* name;
    CriterionResult (*fn)(const SelftestOptions&);
  };
  const Entry crits[] = {{1, "star5-profile", crit_profile},
                         {2, "zigzag4-one-sided", crit_zigzag},
                         {3, "a3-add-closure-gap", crit_add_closure},
                         {4, "symmetry-suite", crit_symmetry},
                         {5, "construction-suite", crit_constructions},
                         {6, "cotorsion-pairs", crit_cotorsion},
                         {7, "identity-suite", crit_identities},
                         {8, "dominant-numbers", crit_dominant},
                         {9, "finitistic-bounds", crit_findim},
                         {10, "determinism", crit_determinism}};
  std::vector<CriterionResult> out;
  for (const Entry& ent : crits) {
    Clock::time_point t0 = Clock::now();
    CriterionResult r;
    try {
      r = ent.fn(opt);
    } catch (const std::exception& e) {
      r.pass = false;
      r.details = std::string("exception: ") + e.what();
    }
    r.id = ent.id;
    r.name = ent.name;
    r.ms = since_ms(t0);
    if (progress)
      (*progress) << (r.pass ? "PASS" : "FAIL") << " criterion-" << r.id << " "
                  << r.name << " (" << (long)r.ms << " ms)\n"
                  << "     " << r.details << "\n";
    out.push_back(std::move(r));
  }
  return out;
}

std::string machine_report(const std::vector<CriterionResult>& rs) {
  std::ostringstream os;
  for (const auto& r : rs)
    os << "{\"criterion\":" << r.id << ",\"name\":\"" << r.name
       << "\",\"status\":\"" << (r.pass ? "pass" : "fail") << "\"}\n";
  return os.str();
}

}  // namespace qh
