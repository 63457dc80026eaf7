#pragma once

#include "kh/bigint.hpp"

#include <cstdint>
#include <vector>

namespace kh {

// A crossingless tangle in the disk: a planar fixed-point-free involution on the
// boundary points 0..2n-1 (in circular order), plus a count of closed circles
// carried transiently before delooping.
struct PlanarMatching {
  std::vector<int> pair;  // pair[p] = partner of p
  int loops = 0;

  int boundary_size() const { return static_cast<int>(pair.size()); }
  bool loopless() const { return loops == 0; }

  bool operator==(const PlanarMatching& o) const { return pair == o.pair && loops == o.loops; }
  bool operator<(const PlanarMatching& o) const {
    if (pair != o.pair) return pair < o.pair;
    return loops < o.loops;
  }
};

// Involution + non-crossing chords (stack test on the circular order).
bool is_planar_matching(const PlanarMatching& m);

PlanarMatching empty_matching(int loops = 0);

// Boundary circles of the 1-manifold glued from D (bottom), E (top) and the
// vertical lines at the 2n boundary points.  Circles that touch the boundary
// are the orbits of the points under E∘D; loops of D and E count separately.
//
// circle_of_point[p] = circle index of the orbit through p. Circles are indexed
// canonically: arc-circles sorted by minimal incident point, then loops of D,
// then loops of E.
struct GluedCircles {
  int count = 0;
  std::vector<int> circle_of_point;
  int first_src_loop = 0;  // index of the circle for loop 0 of D
  int first_dst_loop = 0;  // same for E
};

GluedCircles glued_circles(const PlanarMatching& D, const PlanarMatching& E);

uint64_t hash_matching(const PlanarMatching& m);

// All planar matchings on 2n points (Catalan(n) of them), deterministic order.
std::vector<PlanarMatching> all_planar_matchings(int n_points);

}  // namespace kh
