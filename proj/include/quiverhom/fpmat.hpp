#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qh {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Internal certificate violation: indicates a bug, not a user error.
struct CertifyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime_u32(u32 n);

u32 inv_mod(u32 a, u32 p);

// Dense matrix over F_p, row-major, entries reduced into [0, p).
// 0xN and Nx0 shapes are legal.
struct FpMat {
  u32 p = 2;
  int rows = 0, cols = 0;
  std::vector<u32> a;

  FpMat() = default;
  FpMat(u32 p_, int r, int c) : p(p_), rows(r), cols(c), a((size_t)r * c, 0) {
    if (!is_prime_u32(p_)) throw UsageError("modulus must be prime");
    if (r < 0 || c < 0) throw UsageError("negative matrix shape");
  }

  static FpMat identity(u32 p, int n) {
    FpMat m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  u32& at(int i, int j) { return a[(size_t)i * cols + j]; }
  u32 at(int i, int j) const { return a[(size_t)i * cols + j]; }

  bool is_zero() const {
    for (u32 x : a)
      if (x) return false;
    return true;
  }
  bool operator==(const FpMat& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
  }
};

FpMat mat_mul(const FpMat& x, const FpMat& y);
FpMat mat_add(const FpMat& x, const FpMat& y);
FpMat mat_sub(const FpMat& x, const FpMat& y);
FpMat mat_neg(const FpMat& x);
FpMat mat_scale(const FpMat& x, u32 c);
FpMat mat_transpose(const FpMat& x);
// [x | y] side by side (equal rows) and stacked (equal cols).
FpMat mat_hcat(const FpMat& x, const FpMat& y);
FpMat mat_vcat(const FpMat& x, const FpMat& y);

struct RrefResult {
  FpMat R;
  int rank = 0;
  std::vector<int> pivots;  // pivot column per pivot row
};

RrefResult rref(const FpMat& m);
int mat_rank(const FpMat& m);

// Columns form a basis of {x : Mx = 0}; column count = cols - rank.
FpMat kernel_basis(const FpMat& m);

// X with A*X = B, or nullopt when some column of B is outside col span of A.
std::optional<FpMat> solve_linear(const FpMat& A, const FpMat& B);

// X with X*A = B (row-space version of solve_linear).
std::optional<FpMat> solve_linear_right(const FpMat& A, const FpMat& B);

bool mat_invertible(const FpMat& m);
std::optional<FpMat> mat_inverse(const FpMat& m);

// Column basis of the column space (a subset of columns, echelon-reduced).
FpMat column_space_basis(const FpMat& m);

// True when every column of sub lies in the column span of space.
bool cols_contained(const FpMat& space, const FpMat& sub);

std::string mat_to_string(const FpMat& m);

}  // namespace qh
