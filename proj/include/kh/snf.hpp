#pragma once

#include "kh/bigint.hpp"

#include <vector>

namespace kh {

using IntMatrix = std::vector<std::vector<Int>>;  // row-major

struct SnfResult {
  std::vector<Int> invariants;  // d1 | d2 | ... , all positive
  long rank = 0;
};

// Smith normal form by unimodular row/column operations.  Pivots picked by
// smallest absolute value, ties broken by an (nnz_row-1)*(nnz_col-1) fill
// estimate.  The matrix is consumed.
SnfResult smith_normal_form(IntMatrix M);

long rank_mod_p(IntMatrix M, const Int& p);

// Homology of a finitely generated integer cochain complex: dims[i] is the
// rank of C^{min_deg + i}, mats[i] the matrix of d: C^{min_deg+i} ->
// C^{min_deg+i+1} (dims[i+1] x dims[i]).
struct IntGroup {
  long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
};
std::vector<IntGroup> integer_complex_homology(const std::vector<long>& dims,
                                               const std::vector<IntMatrix>& mats);

std::vector<Int> factor_prime_powers(Int n);  // 12 -> {4, 3}

}  // namespace kh
