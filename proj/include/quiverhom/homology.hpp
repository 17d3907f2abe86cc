#pragma once

#include "quiverhom/module.hpp"

namespace qh {

// Extended-natural-number answer for pd/id/grade questions. `Infinite`
// carries either a repeated-syzygy witness (cert_i < cert_j, both syzygies
// nonzero and isomorphic) or, for grade-type answers, a certified-vanishing
// marker with cert_i = cert_j = -1.
struct Verdict {
  enum Kind { Finite, AtLeast, Infinite } kind = Finite;
  int value = 0;
  int cert_i = -1, cert_j = -1;

  static Verdict finite(int k) { return {Finite, k, -1, -1}; }
  static Verdict at_least(int c) { return {AtLeast, c, -1, -1}; }
  static Verdict infinite(int i, int j) { return {Infinite, 0, i, j}; }
  bool operator==(const Verdict&) const = default;
  std::string str() const;
};

enum class Tri { True, False, Unknown };
Tri tri_and(Tri a, Tri b);
const char* tri_str(Tri t);

Tri verdict_le(const Verdict& v, int bound);
Tri verdict_lt(const Verdict& v, int bound);
Tri verdict_ge(const Verdict& v, int bound);
Tri verdict_gt(const Verdict& v, int bound);
Tri verdict_less(const Verdict& a, const Verdict& b);  // a < b?
Verdict verdict_min(const std::vector<Verdict>& vs);

enum class DimKind { PD, ID };

struct CoverResult {
  Proj P;
  ModuleMap epi;
};
// Kernel inside rad P certified at construction.
CoverResult projective_cover(const Module& M);

struct EnvResult {
  Module I;
  ModuleMap mono;
};
EnvResult injective_envelope(const Module& M);

struct ProjRes {
  Module of;
  std::vector<Proj> terms;
  // diffs[0]: terms[0] -> of; diffs[k]: terms[k] -> terms[k-1], k >= 1
  std::vector<ModuleMap> diffs;
  std::vector<Module> syz;          // syz[k] = Omega^{k+1}
  std::vector<ModuleMap> syz_incl;  // syz[k] -> terms[k]
  bool terminated = false;

  int computed() const { return (int)terms.size(); }
  Module omega(int i) const;  // Omega^i for 0 <= i <= computed
};
ProjRes min_proj_resolution(const Module& M, int length);
void extend_resolution(ProjRes& R, int length);
void certify_resolution(const ProjRes& R);

struct InjRes {
  Module of;
  std::vector<Module> terms;  // I_0, I_1, ...
  // diffs[0]: of -> I_0; diffs[k]: I_{k-1} -> I_k
  std::vector<ModuleMap> diffs;
  std::vector<Module> cosyz;  // cosyz[k] = Omega^{-(k+1)}
  bool terminated = false;
};
InjRes min_inj_resolution(const Module& M, int length);

Module syzygy(const Module& M, int i);

Proj star_proj(const Proj& P);
// (-)* on a map between labeled projectives: transpose the path matrix and
// reverse every path. Returns Q* -> P* for f: P -> Q.
ModuleMap star_proj_map(const Proj& P, const Proj& Q, const ModuleMap& f);

Module transpose(const Module& M);
Module ext_against_algebra(const Module& M, int i);
std::vector<Module> ext_against_algebra_upto(const Module& M, int upto);
std::vector<Module> ext_from_resolution(ProjRes& R, int upto);
int ext1_dim(const Module& X, const Module& Y);

// Hom(-, Lambda) realized on hom spaces, with the chosen bases kept so that
// evaluation maps can be expressed in coordinates.
struct StarData {
  Module of;
  Module star;  // over the opposite algebra
  std::vector<std::vector<ModuleMap>> homs;
};
StarData star_module(const Module& M);
// f: M -> N gives f*: N* -> M*.
ModuleMap star_map(const ModuleMap& f, const StarData& starN, const StarData& starM);
ModuleMap sigma_map(const Module& M, const StarData& s1, const StarData& s2);

struct EvalSeq {
  Module e1;  // = ker sigma; isomorphic to Ext^1(Tr M)
  ModuleMap e1_incl;
  ModuleMap sigma;
  Module mstar2;
  ModuleMap e2_proj;
  Module e2;  // = coker sigma; isomorphic to Ext^2(Tr M)
  Module ext1_tr, ext2_tr;
};
EvalSeq evaluation_sequence(const Module& M);

struct HoshinoSeq {
  Module ext_n;
  ModuleMap incl;
  Module mid;  // Tr Omega^{n-1} M
  ModuleMap f;
  Module tail;  // Omega Tr Omega^n M
  bool fstar_iso = false;
};
HoshinoSeq hoshino_sequence(const Module& M, int n);

struct GradePair {
  Verdict grade, rgrade;
};
GradePair grades(const Module& M, int cutoff);
Verdict sgrade(Ctx& ctx, const Module& M, int cutoff);

Verdict homdim(Ctx& ctx, const Module& M, DimKind kind, int cutoff);

bool torsionfree_degree(const Module& M, int m);

// h with g∘h = f for projective-source f; nullopt when no factorization.
std::optional<ModuleMap> factor_through_epi(const ModuleMap& f, const ModuleMap& g);
// f with f∘pi = s, for s vanishing on ker pi.
std::optional<ModuleMap> factor_through_quotient(const ModuleMap& s,
                                                 const ModuleMap& pi);

}  // namespace qh
