#include "quiverhom/fpmat.hpp"

#include <sstream>

namespace qh {

bool is_prime_u32(u32 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u32 inv_mod(u32 a, u32 p) {
  // Fermat; p prime, a != 0 mod p.
  a %= p;
  if (a == 0) throw UsageError("division by zero in F_p");
  u64 r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return (u32)r;
}

FpMat mat_mul(const FpMat& x, const FpMat& y) {
  if (x.p != y.p) throw UsageError("field mismatch");
  if (x.cols != y.rows) throw UsageError("shape mismatch in mat_mul");
  FpMat z(x.p, x.rows, y.cols);
  const u64 p = x.p;
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      u64 xi = x.at(i, k);
      if (!xi) continue;
      const u32* yr = &y.a[(size_t)k * y.cols];
      u32* zr = &z.a[(size_t)i * z.cols];
      for (int j = 0; j < y.cols; ++j) zr[j] = (u32)((zr[j] + xi * yr[j]) % p);
    }
  }
  return z;
}

FpMat mat_add(const FpMat& x, const FpMat& y) {
  if (x.p != y.p || x.rows != y.rows || x.cols != y.cols)
    throw UsageError("shape mismatch in mat_add");
  FpMat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = (z.a[i] + y.a[i]) % z.p;
  return z;
}

FpMat mat_sub(const FpMat& x, const FpMat& y) {
  if (x.p != y.p || x.rows != y.rows || x.cols != y.cols)
    throw UsageError("shape mismatch in mat_sub");
  FpMat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = (z.a[i] + z.p - y.a[i]) % z.p;
  return z;
}

FpMat mat_neg(const FpMat& x) {
  FpMat z = x;
  for (auto& v : z.a) v = v ? x.p - v : 0;
  return z;
}

FpMat mat_scale(const FpMat& x, u32 c) {
  FpMat z = x;
  c %= x.p;
  for (auto& v : z.a) v = (u32)((u64)v * c % x.p);
  return z;
}

FpMat mat_transpose(const FpMat& x) {
  FpMat z(x.p, x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

FpMat mat_hcat(const FpMat& x, const FpMat& y) {
  if (x.p != y.p || x.rows != y.rows) throw UsageError("hcat shape mismatch");
  FpMat z(x.p, x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
  }
  return z;
}

FpMat mat_vcat(const FpMat& x, const FpMat& y) {
  if (x.p != y.p || x.cols != y.cols) throw UsageError("vcat shape mismatch");
  FpMat z(x.p, x.rows + y.rows, x.cols);
  std::copy(x.a.begin(), x.a.end(), z.a.begin());
  std::copy(y.a.begin(), y.a.end(), z.a.begin() + x.a.size());
  return z;
}

RrefResult rref(const FpMat& m) {
  RrefResult res;
  res.R = m;
  FpMat& R = res.R;
  const u64 p = m.p;
  int r = 0;
  for (int c = 0; c < R.cols && r < R.rows; ++c) {
    int piv = -1;
    for (int i = r; i < R.rows; ++i)
      if (R.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < R.cols; ++j) std::swap(R.at(piv, j), R.at(r, j));
    u32 ivp = inv_mod(R.at(r, c), m.p);
    for (int j = c; j < R.cols; ++j) R.at(r, j) = (u32)((u64)R.at(r, j) * ivp % p);
    for (int i = 0; i < R.rows; ++i) {
      if (i == r) continue;
      u64 f = R.at(i, c);
      if (!f) continue;
      for (int j = c; j < R.cols; ++j)
        R.at(i, j) = (u32)((R.at(i, j) + (p - f) * R.at(r, j)) % p);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int mat_rank(const FpMat& m) { return rref(m).rank; }

FpMat kernel_basis(const FpMat& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : rr.pivots) is_piv[c] = true;
  int k = m.cols - rr.rank;
  FpMat K(m.p, m.cols, k);
  int col = 0;
  for (int freec = 0; freec < m.cols; ++freec) {
    if (is_piv[freec]) continue;
    K.at(freec, col) = 1;
    for (int r = 0; r < rr.rank; ++r) {
      u32 v = rr.R.at(r, freec);
      if (v) K.at(rr.pivots[r], col) = m.p - v;
    }
    ++col;
  }
  return K;
}

std::optional<FpMat> solve_linear(const FpMat& A, const FpMat& B) {
  if (A.p != B.p) throw UsageError("field mismatch in solve");
  if (A.rows != B.rows) throw UsageError("solve: row mismatch");
  RrefResult rr = rref(mat_hcat(A, B));
  // Any pivot landing in the B block means inconsistency.
  for (int c : rr.pivots)
    if (c >= A.cols) return std::nullopt;
  FpMat X(A.p, A.cols, B.cols);
  for (int r = 0; r < rr.rank; ++r)
    for (int j = 0; j < B.cols; ++j) X.at(rr.pivots[r], j) = rr.R.at(r, A.cols + j);
  return X;
}

std::optional<FpMat> solve_linear_right(const FpMat& A, const FpMat& B) {
  auto X = solve_linear(mat_transpose(A), mat_transpose(B));
  if (!X) return std::nullopt;
  return mat_transpose(*X);
}

bool mat_invertible(const FpMat& m) {
  return m.rows == m.cols && mat_rank(m) == m.rows;
}

std::optional<FpMat> mat_inverse(const FpMat& m) {
  if (m.rows != m.cols) return std::nullopt;
  auto X = solve_linear(m, FpMat::identity(m.p, m.rows));
  if (!X) return std::nullopt;
  if (!(mat_mul(m, *X) == FpMat::identity(m.p, m.rows))) return std::nullopt;
  return X;
}

FpMat column_space_basis(const FpMat& m) {
  // Echelonize the row space of m^T, then transpose back.
  RrefResult rr = rref(mat_transpose(m));
  FpMat B(m.p, m.rows, rr.rank);
  for (int r = 0; r < rr.rank; ++r)
    for (int j = 0; j < m.rows; ++j) B.at(j, r) = rr.R.at(r, j);
  return B;
}

bool cols_contained(const FpMat& space, const FpMat& sub) {
  if (space.rows != sub.rows) return false;
  return solve_linear(space, sub).has_value();
}

std::string mat_to_string(const FpMat& m) {
  std::ostringstream os;
  os << m.rows << "x" << m.cols << " mod " << m.p << "\n";
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) os << m.at(i, j) << (j + 1 == m.cols ? "" : " ");
    os << "\n";
  }
  return os.str();
}

}  // namespace qh
