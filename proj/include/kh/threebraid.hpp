#pragma once

#include "kh/diagram.hpp"
#include "kh/homology.hpp"
#include "kh/scan.hpp"

namespace kh {

enum class OmegaClass { O0, O1, O2, O3, O4, O5, O6 };

struct NormalForm {
  OmegaClass cls = OmegaClass::O0;
  long k = 0;                  // power of Delta^2 (Delta^{2k+1} for O3)
  long p = 0, q = 0;           // O4: sigma_1^{-p}; O5: sigma_2^q
  std::vector<Int> ps, qs;     // O6 exponent lists
  BraidWord word() const;      // normal form as an explicit 3-braid word
};

NormalForm murasugi_normal_form(const BraidWord& w);

// Khovanov homology of T(2,l) (l != 0), by scanning, memoized.
HomologyTable kh_torus2(long l);
// Khovanov homology of T(3,3k), k >= 1, by scanning, disk-memoized.
HomologyTable kh_torus33k(long k);

// split union with an unknot: tensor with (q + 1/q)
HomologyTable split_union_unknot(const HomologyTable& t);

// Algorithm: Murasugi normal form, then the omega-class assembly theorems.
HomologyTable kh_3braid(const BraidWord& w);

}  // namespace kh
