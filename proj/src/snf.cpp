#include "kh/snf.hpp"

#include <algorithm>

namespace kh {

namespace {

// pivot choice: minimal |value|, then minimal fill estimate
bool find_pivot(const IntMatrix& M, size_t t, size_t& pr, size_t& pc) {
  const size_t rows = M.size();
  const size_t cols = rows ? M[0].size() : 0;
  bool found = false;
  Int best_v = 0;
  long best_fill = 0;
  std::vector<long> row_nnz(rows, 0), col_nnz(cols, 0);
  for (size_t i = t; i < rows; ++i)
    for (size_t j = t; j < cols; ++j)
      if (M[i][j] != 0) {
        row_nnz[i]++;
        col_nnz[j]++;
      }
  for (size_t i = t; i < rows; ++i) {
    for (size_t j = t; j < cols; ++j) {
      if (M[i][j] == 0) continue;
      Int v = int_abs(M[i][j]);
      long fill = (row_nnz[i] - 1) * (col_nnz[j] - 1);
      if (!found || v < best_v || (v == best_v && fill < best_fill)) {
        found = true;
        best_v = v;
        best_fill = fill;
        pr = i;
        pc = j;
      }
    }
  }
  return found;
}

}  // namespace

SnfResult smith_normal_form(IntMatrix M) {
  SnfResult out;
  const size_t rows = M.size();
  const size_t cols = rows ? M[0].size() : 0;
  size_t t = 0;
  while (t < rows && t < cols) {
    size_t pr = t, pc = t;
    if (!find_pivot(M, t, pr, pc)) break;
    std::swap(M[t], M[pr]);
    for (size_t i = 0; i < rows; ++i) std::swap(M[i][t], M[i][pc]);
    for (;;) {
      // clear column t
      bool touched = false;
      for (size_t i = t + 1; i < rows; ++i) {
        if (M[i][t] == 0) continue;
        Int q = M[i][t] / M[t][t];
        if (q != 0) {
          for (size_t j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        }
        if (M[i][t] != 0) {
          std::swap(M[i], M[t]);  // smaller remainder becomes the pivot
          touched = true;
        }
      }
      if (touched) continue;
      // clear row t
      for (size_t j = t + 1; j < cols; ++j) {
        if (M[t][j] == 0) continue;
        Int q = M[t][j] / M[t][t];
        if (q != 0) {
          for (size_t i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
        }
        if (M[t][j] != 0) {
          for (size_t i = t; i < rows; ++i) std::swap(M[i][j], M[i][t]);
          touched = true;
        }
      }
      if (!touched) break;
    }
    ++t;
  }
  out.rank = static_cast<long>(t);
  out.invariants.reserve(t);
  for (size_t i = 0; i < t; ++i) out.invariants.push_back(int_abs(M[i][i]));
  // enforce d1 | d2 | ... by pairwise gcd/lcm fix-up
  for (size_t i = 0; i < out.invariants.size(); ++i) {
    for (size_t j = i + 1; j < out.invariants.size(); ++j) {
      Int a = out.invariants[i], b = out.invariants[j];
      if (b % a == 0) continue;
      Int g = int_gcd(a, b);
      out.invariants[i] = g;
      out.invariants[j] = a / g * b;
    }
  }
  return out;
}

long rank_mod_p(IntMatrix M, const Int& p) {
  const size_t rows = M.size();
  const size_t cols = rows ? M[0].size() : 0;
  for (auto& row : M)
    for (auto& v : row) v = mod_reduce(v, p);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[r], M[piv]);
    Int inv = mod_inverse(M[r][c], p);
    for (size_t j = c; j < cols; ++j) M[r][j] = mod_reduce(M[r][j] * inv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      Int f = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] = mod_reduce(M[i][j] - f * M[r][j], p);
    }
    ++r;
  }
  return static_cast<long>(r);
}

std::vector<IntGroup> integer_complex_homology(const std::vector<long>& dims,
                                               const std::vector<IntMatrix>& mats) {
  const size_t n = dims.size();
  std::vector<SnfResult> snf(n);  // snf[i] = SNF of d out of degree i
  for (size_t i = 0; i + 1 < n; ++i) {
    if (i < mats.size() && !mats[i].empty() && !mats[i][0].empty())
      snf[i] = smith_normal_form(mats[i]);
  }
  std::vector<IntGroup> H(n);
  for (size_t i = 0; i < n; ++i) {
    long rank_out = (i + 1 < n) ? snf[i].rank : 0;
    long rank_in = (i > 0) ? snf[i - 1].rank : 0;
    H[i].free_rank = dims[i] - rank_out - rank_in;
    if (H[i].free_rank < 0) throw KhError(ErrorKind::Internal, "negative Betti number");
    if (i > 0)
      for (const Int& d : snf[i - 1].invariants)
        if (d > 1) H[i].torsion.push_back(d);
  }
  return H;
}

std::vector<Int> factor_prime_powers(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (Int p = 2; p * p <= n && p < 1000000; ++p) {
    if (n % p == 0) {
      Int pk = 1;
      while (n % p == 0) {
        n /= p;
        pk *= p;
      }
      out.push_back(pk);
    }
  }
  if (n > 1) out.push_back(n);  // leftover is prime for n < 10^12
  return out;
}

}  // namespace kh
