#pragma once

#include "kh/bigint.hpp"
#include "kh/matching.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace kh {

// Coefficient ring: mod == 0 means the integers, otherwise the prime field F_mod.
struct Coeff {
  Int mod = 0;

  bool is_field() const { return mod != 0; }
  Int reduce(const Int& v) const { return mod == 0 ? v : mod_reduce(v, mod); }
  bool is_zero(const Int& v) const { return reduce(v) == 0; }
  bool is_unit(const Int& v) const {
    if (mod == 0) return v == 1 || v == -1;
    return mod_reduce(v, mod) != 0;
  }
  Int inverse(const Int& v) const {
    if (mod == 0) {
      if (v != 1 && v != -1) throw KhError(ErrorKind::Internal, "non-unit inverse over Z");
      return v;
    }
    return mod_inverse(v, mod);
  }
};

// A morphism between two matchings in the dec-basis.  The canonical surface
// glued from src, dst and the vertical boundary lines is a disjoint union of
// disks, one per boundary circle; a basis element is a choice of dot pattern on
// those disks.  Terms map the dot bitmask (bit i = circle i dotted, in the
// canonical circle order of glued_circles(src, dst)) to a nonzero coefficient.
struct CobMorphism {
  PlanarMatching src, dst;
  std::map<uint64_t, Int> terms;

  bool is_zero() const { return terms.empty(); }
  Int norm() const {
    Int s = 0;
    for (auto& [m, c] : terms) s += int_abs(c);
    return s;
  }
  bool operator==(const CobMorphism& o) const {
    return src == o.src && dst == o.dst && terms == o.terms;
  }
};

// Internal q-degree of a single dec term: #circles - #arcs - 2 #dots.
int term_degree(const GluedCircles& circles, int boundary_points, uint64_t mask);

// All dec-basis elements of Hom(D, E), each as a single-term morphism with
// coefficient 1, ordered by increasing dot mask.
std::vector<CobMorphism> dec_basis(const PlanarMatching& D, const PlanarMatching& E);

CobMorphism zero_morphism(const PlanarMatching& src, const PlanarMatching& dst);
CobMorphism identity_morphism(const PlanarMatching& m);

CobMorphism add(const CobMorphism& a, const CobMorphism& b, const Coeff& R);
CobMorphism scale(const CobMorphism& a, const Int& c, const Coeff& R);

// Vertical composition g∘f via Euler-characteristic bookkeeping, genus and
// extra-boundary removal by neck cutting, then sphere / double-dot reduction.
// Checks ‖g∘f‖ <= 2^(n-1) ‖g‖ ‖f‖ after the fact when all three objects are
// loopless (the hypothesis of the bound).
CobMorphism compose_h(const CobMorphism& g, const CobMorphism& f, const Coeff& R);

// True when f is c * (identity cobordism) for some coefficient c; c reported.
bool is_identity_multiple(const CobMorphism& f, Int* c_out = nullptr);

// --- planar (side-by-side) gluing ------------------------------------------

// How two tangle boundaries are sewn together: `glued` identifies boundary
// points across the two sides, `result_points` lists the surviving points of
// the composite boundary in circular order as (side, point).
struct GlueSpec {
  std::vector<std::pair<int, int>> glued;
  std::vector<std::pair<int, int>> result_points;
};

// Object-level gluing; reports how many closed circles were created.
PlanarMatching glue_objects(const PlanarMatching& x, const PlanarMatching& y, const GlueSpec& gs,
                            int* new_cycles = nullptr);

// Morphism-level gluing (f on side 0, g on side 1).
CobMorphism glue_morphisms(const CobMorphism& f, const CobMorphism& g, const GlueSpec& gs,
                           const Coeff& R);

}  // namespace kh
