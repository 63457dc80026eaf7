#pragma once

#include "kh/cob.hpp"
#include "kh/diagram.hpp"
#include "kh/homology.hpp"

namespace kh {

// Brute-force Khovanov hypercube with the standard Frobenius algebra
// Z[X]/(X^2) and lexicographic edge signs.  Exponential in n(L); guarded by
// size_cap.
HomologyTable kh_cube(const LinkDiagram& L, const Coeff& R, int size_cap = 14);

}  // namespace kh
