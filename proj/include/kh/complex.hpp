#pragma once

#include "kh/cob.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kh {

// One direct summand of a chain space: a q-shifted matching with a stable id.
struct Summand {
  int q = 0;
  PlanarMatching m;
  uint64_t id = 0;
  // provenance within one scan step (original summand id and crossing page)
  uint64_t origin = 0;
  int page = 0;
};

using SummandKey = std::pair<uint64_t, uint64_t>;  // (row id, col id)

// Based cochain complex over the dotted cobordism category, with a fixed
// direct-sum decomposition of every chain space.  Differentials go from degree
// i to i+1 and are stored entrywise, keyed by summand ids.
struct BasedComplex {
  Coeff ring;
  int min_deg = 0, max_deg = -1;  // empty when max < min
  std::map<int, std::map<uint64_t, Summand>> spaces;
  std::map<int, std::map<SummandKey, CobMorphism>> diff;           // per source degree
  std::map<int, std::map<uint64_t, std::set<uint64_t>>> by_col;    // col -> rows
  std::map<int, std::map<uint64_t, std::set<uint64_t>>> by_row;    // row -> cols
  int u_shift = 0, q_shift = 0;                                    // global shift
  uint64_t next_id = 1;

  uint64_t fresh_id() { return next_id++; }
  uint64_t add_summand(int deg, Summand s);
  const Summand* find_summand(int deg, uint64_t id) const;
  void set_entry(int deg, uint64_t row, uint64_t col, CobMorphism f);
  void add_to_entry(int deg, uint64_t row, uint64_t col, const CobMorphism& f);
  const CobMorphism* entry(int deg, uint64_t row, uint64_t col) const;
  void erase_entry(int deg, uint64_t row, uint64_t col);
  void remove_summand(int deg, uint64_t id);

  size_t total_rank() const;
  long rank_at(int deg) const;

  bool check_d_squared(std::string* why = nullptr) const;
  bool check_homogeneous(std::string* why = nullptr) const;
};

struct MorseEdge {
  int degree;
  uint64_t source_id;  // summand in `degree`
  uint64_t target_id;  // summand in `degree+1`
};

struct MorseMatching {
  std::vector<MorseEdge> edges;
};

// Cancels the invertible entry d^degree[row][col]; the surviving differential
// picks up the correction -gamma phi^{-1} delta.
void gaussian_eliminate(BasedComplex& C, int degree, uint64_t row_id, uint64_t col_id);

// Validates conditions (1)-(4) of a Morse matching; throws KhError(Internal)
// naming the failed condition otherwise.
void validate_morse_matching(const BasedComplex& C, const MorseMatching& M);

// Morse reduction: validate, then cancel every matched entry in ascending
// (degree, source, target) order.
void morse_reduce(BasedComplex& C, const MorseMatching& M);

// tau_{<= k}: spaces above k dropped, differential out of k dropped.
void truncate(BasedComplex& C, int k);

// Replace a summand carrying loops by its 2^loops delooped children, rewriting
// all incident differential entries.  Returns child ids indexed by branch
// mask; branch bit l set = the q^{-1} (undotted cap) branch of loop l, so the
// child q-shift is parent + loops - 2 popcount(branch).
std::vector<uint64_t> deloop_summand(BasedComplex& C, int deg, uint64_t id);

// Deloops every summand with loops anywhere in the complex.
void deloop_all(BasedComplex& C);

// Spec-level object ops, for the contract and its tests.
struct GradedObject {
  std::vector<Summand> s;
};
struct MorphismMatrix {
  GradedObject source, target;
  std::map<std::pair<size_t, size_t>, CobMorphism> entries;  // (row, col)
};
struct DeloopResult {
  GradedObject object;
  MorphismMatrix d, r;
};
DeloopResult deloop_object(const GradedObject& X);

MorphismMatrix matrix_compose(const MorphismMatrix& g, const MorphismMatrix& f, const Coeff& R);

}  // namespace kh
