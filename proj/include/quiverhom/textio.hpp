#pragma once

#include "quiverhom/module.hpp"

namespace qh {

// Parsed form of the line-oriented algebra file:
//   field <p>
//   vertices <labels...>
//   arrow <label>: <v> -> <w>
//   relation <[+|-]term (* term)* [+|- ...]>
//   maxlen <N>
// '#' starts a comment. Parse errors carry line and column.
struct ParsedRelTerm {
  int sign = 1;
  std::vector<std::string> arrows;
};
struct ParsedAlgebra {
  u32 p = 101;
  std::vector<std::string> vertices;
  struct Arrow {
    std::string name, src, tgt;
    bool operator==(const Arrow&) const = default;
  };
  std::vector<Arrow> arrows;
  std::vector<std::vector<ParsedRelTerm>> relations;
  int max_len = 30;
  bool operator==(const ParsedAlgebra& o) const;
};

ParsedAlgebra parse_algebra_text(const std::string& text);
std::string print_algebra_text(const ParsedAlgebra& pa);
Algebra build_parsed(const ParsedAlgebra& pa, u32 p_override = 0);

// Module file: `dim <v>=<d> ...` then blocks `matrix <arrow>` followed by
// d_tgt rows of d_src residues. Missing blocks mean zero matrices.
Module parse_module_text(const std::string& text, const Algebra& A);
std::string print_module_text(const Module& M);

}  // namespace qh
