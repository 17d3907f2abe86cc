#pragma once

#include <optional>
#include <random>

#include "quiverhom/algebra.hpp"

namespace qh {

// Randomness and budgets shared across operations. All randomized procedures
// draw from this rng only, so runs are reproducible from the seed.
struct Ctx {
  std::mt19937_64 rng{20240101};
  int cutoff = 12;
  int iso_trials = 64;
  long iso_exhaust_budget = 1 << 16;
  long sub_vector_budget = 1 << 16;
  long sub_count_budget = 20000;
  long enum_tuple_budget = 8000000;
  long enum_pervec_budget = 1 << 14;
  long end_scan_budget = 1 << 16;

  u32 rand_u32(u32 bound) {  // uniform in [0, bound)
    return (u32)(rng() % bound);
  }
};

// Representation of the quiver: a space per vertex, a matrix per arrow
// alpha: v->w of shape dims[w] x dims[v]. Paths act left to right (the first
// arrow of the path acts first).
struct Module {
  Algebra A;
  std::vector<int> dims;
  std::vector<FpMat> act;

  int total_dim() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
  }
  bool is_zero() const { return total_dim() == 0; }
};

struct ModuleMap {
  Module src, dst;
  std::vector<FpMat> f;  // per vertex, dst.dims[v] x src.dims[v]
};

// 0 -> i.src -> i.dst = p.src -> p.dst -> 0
struct Ses {
  ModuleMap i, p;
};

Module make_module(Algebra A, std::vector<int> dims, std::vector<FpMat> act);
bool relations_act_zero(const Module& M);
Module zero_module(const Algebra& A);
bool same_algebra(const Module& M, const Module& N);

FpMat path_action(const Module& M, const std::vector<int>& arrows, int src);

ModuleMap make_map(Module src, Module dst, std::vector<FpMat> f);
ModuleMap identity_map(const Module& M);
ModuleMap zero_map(const Module& M, const Module& N);
bool map_commutes(const ModuleMap& f);
bool map_is_zero(const ModuleMap& f);
// g after f (apply f first)
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_add(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_sub(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_scale(const ModuleMap& f, u32 c);
bool map_injective(const ModuleMap& f);
bool map_surjective(const ModuleMap& f);
bool map_bijective(const ModuleMap& f);

std::vector<ModuleMap> hom_basis(const Module& M, const Module& N);
int hom_dim(const Module& M, const Module& N);
// Coordinates of g in the span of basis, when it lies there.
std::optional<std::vector<u32>> map_in_span(const std::vector<ModuleMap>& basis,
                                            const ModuleMap& g);
ModuleMap combine_maps(const Module& M, const Module& N,
                       const std::vector<ModuleMap>& basis,
                       const std::vector<u32>& coeff);

struct MapParts {
  Module ker;
  ModuleMap ker_incl;  // ker -> src
  Module img;
  ModuleMap img_incl;    // img -> dst
  ModuleMap src_to_img;  // src -> img
  Module coker;
  ModuleMap coker_proj;  // dst -> coker
};
MapParts map_factorization(const ModuleMap& f);

void certify_ses(const Ses& s);  // throws CertifyError
Ses ses_from_map_parts(const ModuleMap& f);  // for injective f with its coker

struct SumParts {
  Module sum;
  std::vector<ModuleMap> inj;   // part -> sum
  std::vector<ModuleMap> proj;  // sum -> part
};
SumParts direct_sum(const std::vector<Module>& parts);

Module dualize(const Module& M);         // over the opposite algebra
ModuleMap dualize_map(const ModuleMap& f);  // D(f): D(dst) -> D(src)

// Labeled projective: direct sum of P(verts[s]) with its path basis exposed.
struct Proj {
  Module m;
  std::vector<int> verts;
  std::vector<std::vector<int>> paths;     // per summand: algebra basis ids
  std::vector<std::vector<int>> offs;      // matching offsets in vertex block
  std::vector<std::vector<int>> path_pos;  // per summand: basis id -> index

  int gen_offset(int s) const;  // offset of e_{verts[s]} at vertex verts[s]
};

Proj proj_module(const Algebra& A, const std::vector<int>& verts);
Proj std_proj(const Algebra& A, int v);
Module std_simple(const Algebra& A, int v);
Module std_injective(const Algebra& A, int v);
Proj regular_module(const Algebra& A);

// The hom P -> N determined by images of the summand generators.
ModuleMap proj_map_from_gen_images(const Proj& P, const Module& N,
                                   const std::vector<std::vector<u32>>& images);
std::vector<std::vector<u32>> gen_images(const Proj& P, const ModuleMap& f);

struct Submod {
  Module sub;
  ModuleMap incl;
};
Submod submodule_from_subspaces(const Module& M, const std::vector<FpMat>& bases);
Submod radical_submodule(const Module& M);
Submod socle_submodule(const Module& M);
Submod radical_power(const Module& M, int k);

struct QuotParts {
  Module q;
  ModuleMap proj;
};
QuotParts quotient_by(const ModuleMap& incl);

std::vector<Submod> all_submodules(Ctx& ctx, const Module& M);

std::optional<ModuleMap> find_isomorphism(Ctx& ctx, const Module& M,
                                          const Module& N);
bool is_isomorphic(Ctx& ctx, const Module& M, const Module& N);

std::vector<std::pair<Module, int>> decompose(Ctx& ctx, const Module& M);

// Exact: splits off projective direct summands (no randomness needed).
struct Stripped {
  Module core;
  std::vector<int> stripped_verts;
};
Stripped strip_projectives(const Module& M);

bool is_uniserial(const Module& M);
bool is_nakayama(const Algebra& A);

struct Enumerated {
  std::vector<Module> mods;
  bool exhaustive = false;  // true only for the serial route
  std::string method;
  int bound = 0;
};
Enumerated enumerate_indecomposables(Ctx& ctx, const Algebra& A,
                                     int total_dim_bound,
                                     bool force_generic = false);

Module random_module(Ctx& ctx, const Algebra& A, int max_total_dim);

std::string module_brief(const Module& M);

}  // namespace qh
