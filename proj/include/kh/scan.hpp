#pragma once

#include "kh/complex.hpp"
#include "kh/diagram.hpp"
#include "kh/homology.hpp"

#include <optional>

namespace kh {

enum class EliminationPolicy { BlocksOnly, Exhaustive };

struct ScanConfig {
  Coeff ring;                       // mod 0 = Z, else F_p
  std::optional<int> truncation;    // truncate at k+1, rows i <= k - n_- trusted
  EliminationPolicy policy = EliminationPolicy::BlocksOnly;
  bool assert_bounds = false;
  size_t generator_cap = 2000000;   // refuse beyond this many intermediate generators
};

struct ScanStats {
  size_t peak_rank = 0;
  long max_coeff_bits = 0;
  int girth = 0;
  long bound_violations = 0;
};

// Bar-Natan scanning along a nice scanning sequence.  Over Z only the
// designated block pivots are cancelled; over F_p every unit pivot is.
HomologyTable scan_sequence(const LinkDiagram& L, const ScanSequence& S, const ScanConfig& cfg,
                            ScanStats* stats = nullptr);

// Full pipeline for arbitrary diagrams: split into connected components,
// reduce nugatory crossings, scan each piece greedily, recombine by Kuenneth.
HomologyTable scan_link(const LinkDiagram& L, const ScanConfig& cfg, ScanStats* stats = nullptr);

// Kh of the braid closure by scanning the conjugated word in word order.
HomologyTable scan_braid(const BraidWord& b, const ScanConfig& cfg, ScanStats* stats = nullptr);

// Extremal rows: i <= -n_- + k from a truncated scan of the conjugated word,
// i >= n_+ - k from the mirror scanned the same way and dualized.
HomologyTable extremal_homology(const BraidWord& b, int k, const ScanConfig& cfg,
                                ScanStats* stats = nullptr);

}  // namespace kh
