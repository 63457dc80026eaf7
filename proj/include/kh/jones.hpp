#pragma once

#include "kh/bigint.hpp"
#include "kh/diagram.hpp"
#include "kh/homology.hpp"

#include <map>

namespace kh {

// Jones polynomial in the quantum normalization J(unknot) = 1, exponent -> coefficient.
struct JonesPoly {
  std::map<int, Int> coeff;
  bool operator==(const JonesPoly& o) const { return coeff == o.coeff; }
};

// Kauffman-bracket transfer matrix in the Temperley-Lieb algebra; polynomial
// time for a fixed strand count.
JonesPoly jones_closed_braid(const BraidWord& b);

// |V(-1)|, evaluated exactly over Z[i].
Int determinant_of_braid(const BraidWord& b);
Int determinant_of_jones(const JonesPoly& J);

Int weaving_determinant(int n);  // closed form for det W(3,n)

// diagonal parameter of the quasi-alternating formulas for omega_6 words
Int signature_omega6(const std::vector<Int>& p, const std::vector<Int>& q);

struct BLTData {
  Int signature = 0;
  std::map<int, Int> betti;  // homological degree -> count, total 2^{|L|-1}
};

// Lee-type generator degrees from linking numbers (orientation classes)
BLTData blt_betti(const LinkDiagram& L, const Int& signature);

// Unreduced Khovanov homology of a quasi-alternating link from its Jones
// polynomial, signature parameter and BLT Betti numbers.
HomologyTable quasi_alt_homology(const JonesPoly& J, const Int& s, const BLTData& blt,
                                 int components);

// consistency helper: (q + 1/q) * J as a Laurent polynomial
std::map<int, Int> expected_euler_characteristic(const JonesPoly& J);

}  // namespace kh
