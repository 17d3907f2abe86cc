#pragma once

#include "quiverhom/homology.hpp"

namespace qh {

// Flat dimensions of the terms of the minimal injective resolution of the
// regular module (fd = pd for finitely generated modules here).
struct FdProfile {
  std::string side;
  int depth = 0, cutoff = 0;
  std::vector<Verdict> fd;
  std::vector<bool> term_zero;
  std::vector<int> term_dim;
};
FdProfile injective_profile(Ctx& ctx, const Algebra& S, int depth, int cutoff);

struct CondReport {
  std::string name;
  Tri verdict = Tri::Unknown;
  // true when "holds" was established only over an enumeration bound
  bool bound_qualified = false;
  std::string method;  // fd_criterion | enumeration | duality_reduction
  std::string witness;
  std::string detail;
};

// S is G_n(k): fd I_i(S^op) <= i+k for 0 <= i < n. Exact.
CondReport check_G(Ctx& ctx, const Algebra& S, int n, int k, int cutoff);

// S is g_n(k). k = 0 goes through the exact duality route G_n(1)^op; k >= 1
// enumerates indecomposables up to dim_bound. k = 1 cross-checks both sides.
CondReport check_g(Ctx& ctx, const Algebra& S, int n, int k, int dim_bound,
                   int cutoff);
CondReport check_g_enumerated(Ctx& ctx, const Algebra& S, int n, int k,
                              int dim_bound, int cutoff,
                              const Enumerated* pre = nullptr);

// S satisfies the (l,n)-condition: fd I_i(S) < l for 0 <= i < n (strong,
// exact). The weak variant checks grade Ext^l(C) >= n over enumerated
// indecomposable S^op-modules.
CondReport check_ln(Ctx& ctx, const Algebra& S, int l, int n, bool weak,
                    int dim_bound, int cutoff);

// Composition rules for (l,n)-conditions; pure inference, never overrides a
// computed verdict. Conditions are (l, n, weak, op_side) tuples.
struct LnCond {
  int l = 0, n = 0;
  bool weak = false;
  bool op_side = false;
};
std::optional<LnCond> ln_compose(const LnCond& a, const LnCond& b);

struct DominantReport {
  FdProfile profile;
  std::vector<int> dominants;
  bool indeterminate = false;
  bool theorem_violated = false;  // would contradict fd I_l >= l
  std::string detail;
};
DominantReport dominant_numbers(Ctx& ctx, const Algebra& S, int depth, int cutoff);

struct FindimReport {
  int findim_lower = 0;
  bool enum_exhaustive = false;
  Verdict id_left, id_right;
  std::string detail;
};
FindimReport findim_estimate(Ctx& ctx, const Algebra& S, int dim_bound, int cutoff);

enum class Cls { W, F, P, I, X, Y, DXop };

struct MemberContext {
  const Enumerated* indecs = nullptr;  // for Y complement search / strategy b
  bool hypothesis_verified = false;    // verified fd-criterion hypothesis for (b)
  int complement_mult_bound = 2;
  int complement_count_bound = 2;
};

struct MemberReport {
  Tri verdict = Tri::Unknown;
  bool bound_qualified = false;
  std::string method;
  std::string detail;
  // Y-class only: the two layers are reported separately
  Tri e_member = Tri::Unknown;
  Tri add_e_member = Tri::Unknown;
};

MemberReport membership(Ctx& ctx, const Module& M, Cls cls, int n, int m,
                        char strategy, const MemberContext& context, int cutoff);

struct LEntry {
  int i = 0;
  int l = -1;  // least l with Omega^{l+1}(mod) inside F_{i+1}; -1 = not found
  bool found = false;
};
std::vector<LEntry> l_sequence_estimate(Ctx& ctx, const Algebra& S, int max_i,
                                        int dim_bound, int scan_bound, int cutoff);

std::string profile_str(const FdProfile& p);

}  // namespace qh
