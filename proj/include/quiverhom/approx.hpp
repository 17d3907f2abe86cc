#pragma once

#include "quiverhom/conditions.hpp"

namespace qh {

struct ApproxResult {
  Ses seq;               // the produced approximation sequence
  std::vector<Ses> aux;  // exhibited witnesses (columns, E-extensions)
  std::vector<std::string> trace;
  std::vector<std::string> certificates;
};

struct GlueResult {
  Ses row;     // 0 -> C1 -> Y1 -> X -> 0
  Ses column;  // 0 -> Y0 -> Y1 -> Y -> 0
};
// s1: 0 -> C1 -> Y -> C0 -> 0 and s2: 0 -> Y0 -> X -> C0 -> 0 glued over C0.
GlueResult pullback_glue(const Ses& s1, const Ses& s2);

struct PushoutResult {
  Ses row1;  // 0 -> B' -> Z -> C  -> 0
  Ses row2;  // 0 -> B  -> Z -> C' -> 0
};
// s1: 0 -> A -> B -> C -> 0 and s2: 0 -> A -> B' -> C' -> 0 glued under A.
PushoutResult pushout_glue(const Ses& s1, const Ses& s2);

// exact 0 -> im(into) = ker(outof) certificate at a junction
void certify_exact_at(const ModuleMap& into, const ModuleMap& outof);

// 0 -> Y -> X -> C -> 0 with Y of pd < n and X of reduced grade > n, built as
// the mapping cone of a chain lift of the identity on Ext^n(C).
ApproxResult cone_precover(Ctx& ctx, const Module& C, int n, int cutoff);

// Grade-condition approximation sequences. precover: 0 -> Y -> X ->
// Omega^{k-1}C -> 0;
// preenvelope: 0 -> Omega^k C -> Y' -> X' -> 0. X-side in W_{i+1}, Y-side in
// P_{i+1}.
ApproxResult g_approx(Ctx& ctx, const Module& C, int k, int i, bool preenvelope,
                      int cutoff);

// Coresolution sequences: envelope 0 -> C -> Y -> X -> 0 and precover
// 0 -> Y -> X -> C -> 0 with Y of id < i+1 and X an i-th syzygy-type module.
ApproxResult coresolution_approx(Ctx& ctx, const Module& C, int i, bool precover,
                                 int cutoff);

// Cotorsion approximations for (X_{i,j-1}, Y_{i,j}).
ApproxResult cotorsion_approx(Ctx& ctx, const Module& C, int i, int j,
                              bool preenvelope, int cutoff);

// An exhibited exact sequence 0 -> Z -> Q_0 -> ... -> Q_{L-1} -> tail -> 0
// with projective Q's, stored as the chain of short exact sequences
// 0 -> cur_s -> Q_s -> cur_{s+1} -> 0 (cur_0 = Z, cur_L = tail), built
// through the canonical double-dual embeddings.
struct OmegaExhibit {
  int length = 0;
  std::vector<Module> curs;       // cur_0 = Z, ..., cur_L = tail
  std::vector<Module> terms;      // Q_0 .. Q_{L-1}
  std::vector<ModuleMap> embeds;  // cur_s -> Q_s (injective)
  std::vector<ModuleMap> projs;   // Q_s ->> cur_{s+1}
};
OmegaExhibit omega_exhibit(Ctx& ctx, const Module& Z, int L, int cutoff);

enum class PairKind { XY, YDX };

struct CotorsionCheck {
  PairKind pair;
  int i = 0, j = 0;
  int left_count = 0, right_count = 0, module_count = 0;
  std::vector<std::string> violations;
  int indeterminate = 0;
  bool ok() const { return violations.empty() && indeterminate == 0; }
};
CotorsionCheck verify_cotorsion_pair(Ctx& ctx, const Algebra& A, PairKind pair,
                                     int i, int j, const Enumerated& mods,
                                     int cutoff);

}  // namespace qh
