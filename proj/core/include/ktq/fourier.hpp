#pragma once

#include "ktq/csc.hpp"
#include "ktq/cyclotomic.hpp"

namespace ktq {

// Values of a class element at generator^0 .. generator^(m-1).
std::vector<Cyclotomic> evaluate_on_powers(const ClassElement& x);

// Inverse transform: recover the basis coefficients of a class function from
// its values on generator powers.  The holonomy-corrected inverse DFT of a
// ring element is rational; anything else raises InternalError.
std::vector<Rational> reconstruct_coefficients(const RingPtr& ring,
                                               const std::vector<Cyclotomic>& values);

// Rank of a matrix with cyclotomic entries, by exact field elimination.
long cyclotomic_rank(const std::vector<std::vector<Cyclotomic>>& rows);

// Every degree-0 coordinate slice of every basis solution must survive the
// evaluate-then-reconstruct round trip unchanged.
bool reconstruction_roundtrip(const Solution& s);

// Rank of the degree-0 solution basis after replacing each conjugacy-class
// representative's coordinates by their values on generator powers.  The
// evaluation model carries the same rational dimension as the coordinate
// model, so this must equal the solution dimension.
long evaluated_rank_at_reps(const Solution& s);

}  // namespace ktq
