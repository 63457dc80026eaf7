#pragma once

#include "kh/bigint.hpp"
#include "kh/snf.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace kh {

// One bigraded abelian group: free rank plus a multiset of prime-power torsion
// orders (prime power -> multiplicity).
struct GroupData {
  long free_rank = 0;
  std::map<Int, long> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const GroupData& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

GroupData group_from_invariants(long free_rank, const std::vector<Int>& invariant_factors);

using Bidegree = std::pair<int, int>;  // (homological i, quantum j)

struct HomologyTable {
  Int coeff_mod = 0;  // 0 = integral
  std::map<Bidegree, GroupData> groups;
  // validity window in homological degree, for truncated / extremal runs
  std::optional<int> row_lo, row_hi;

  GroupData at(int i, int j) const {
    auto it = groups.find({i, j});
    return it == groups.end() ? GroupData{} : it->second;
  }
  void set(int i, int j, GroupData g) {
    if (g.trivial())
      groups.erase({i, j});
    else
      groups[{i, j}] = std::move(g);
  }
  void add(int i, int j, const GroupData& g);
  bool row_valid(int i) const {
    if (row_lo && i < *row_lo) return false;
    if (row_hi && i > *row_hi) return false;
    return true;
  }
  long total_rank() const;
  bool operator==(const HomologyTable& o) const {
    return coeff_mod == o.coeff_mod && groups == o.groups;
  }
};

HomologyTable shift_table(const HomologyTable& t, int di, int dj);

// Khovanov homology of the mirror: free part at (i,j) from (-i,-j), torsion at
// (i,j) from (1-i,-j); over a field only the rank flip.
HomologyTable dualize(const HomologyTable& t);

// Kuenneth formula for a split union (tensor over Z with Tor terms, or plain
// tensor over a field).
HomologyTable kunneth(const HomologyTable& a, const HomologyTable& b);

// table for the k-component unlink
HomologyTable unlink_table(int components, const Int& coeff_mod);

// Sum_{i,j} (-1)^i rank q^j as a Laurent polynomial in q (exponent -> coeff).
std::map<int, Int> graded_euler_characteristic(const HomologyTable& t);

// equality restricted to the intersection of validity windows
bool tables_agree_on_window(const HomologyTable& a, const HomologyTable& b, int lo, int hi);

std::string table_to_json(const HomologyTable& t);
HomologyTable table_from_json(const std::string& json_text);
std::string table_to_text(const HomologyTable& t);

}  // namespace kh
