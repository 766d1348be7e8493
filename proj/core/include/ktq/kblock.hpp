#pragma once

#include <vector>

#include "ktq/cocycle.hpp"
#include "ktq/group.hpp"
#include "ktq/qmatrix.hpp"
#include "ktq/twisted_char.hpp"

namespace ktq {

/**
 * Spaces are finite disjoint unions of parts, each either a finite G-set or a
 * circle with trivial G-action.  Twists consist of a group 2-cocycle plus an
 * optional holonomy homomorphism per circle part.
 */
struct SpacePart {
    enum class Kind { FiniteSet, Circle };
    Kind kind = Kind::FiniteSet;
    long npoints = 1;                      // FiniteSet only
    std::vector<std::vector<int>> action;  // FiniteSet: action[g][p], one permutation per element
};

struct SpaceSpec {
    Group g;
    std::vector<SpacePart> parts;
};

// Validates permutation sizes, the identity action, and the homomorphism
// property action[ab] = action[a] . action[b]; throws InvalidInput.
SpaceSpec validate_space(Group g, std::vector<SpacePart> parts);

struct TwistSpec {
    Cocycle2 alpha;
    std::vector<HomTwist> holonomy;  // one per circle part, or empty for none
};

TwistSpec make_twist(const SpaceSpec& x, Cocycle2 alpha, std::vector<HomTwist> holonomy);

// Fixed points of the element's action, one sorted list per part (circles,
// being acted on trivially, are reported as kind Circle by the space itself
// and get an empty list here).
std::vector<std::vector<long>> fixed_points(const SpaceSpec& x, int g);

// Shift l with lambda|_C . phi_j = phi_(j+l) on the ring's character basis.
long hom_shift(const RingPtr& ring, const HomTwist& lambda);

/**
 * One summand of the decomposition: the twisted equivariant K-theory of a
 * fixed-point space X^g under a cyclic group acting trivially on it.
 *
 * Degree-0 coordinates: finite parts contribute (fixed point, character)
 * pairs, fixed-point-major; circle parts contribute one coordinate per orbit
 * of the holonomy shift on characters (the orbit-sum basis).  Degree-1
 * coordinates: circle parts only, one coordinate per shift orbit (the class
 * of the orbit's smallest character).  Orbits are listed by smallest member.
 */
struct PartBlock {
    long part = 0;
    bool circle = false;
    std::vector<long> fixed;                // finite parts: fixed point ids, sorted
    long shift = 0;                         // circle parts: holonomy shift on characters
    std::vector<std::vector<long>> orbits;  // circle parts: shift orbits, ascending members
    std::vector<long> orbit_of;             // circle parts: character -> orbit index
    long dim0 = 0, dim1 = 0;
    long off0 = 0, off1 = 0;
};

struct KBlock {
    int g = 0;  // the element whose fixed-point space the block lives on
    RingPtr ring;
    std::vector<PartBlock> parts;
    long dim0 = 0, dim1 = 0;

    long col0(long part, long point_index, long char_index) const;
    long col0_circle(long part, long orbit) const;
    long col1(long part, long orbit) const;
};

// K_<g>(X^g): ring over <g>, space X^g.
KBlock build_block(const SpaceSpec& x, const TwistSpec& p, int g);

// K_C(X^g) for a cyclic C acting trivially on X^g (the comparison target for
// the two compatibility routes); the trivial-action requirement is checked.
KBlock build_block_w(const SpaceSpec& x, const TwistSpec& p, int g, const RingPtr& ring);

// Character restriction along target.ring <= source.ring; the underlying
// space must be the same.  Basis characters restrict to basis characters,
// which the construction verifies.
QMatrix group_restriction_matrix(const KBlock& source, const KBlock& target, int degree);

// Pullback along the inclusion of the target's fixed-point space into the
// source's; the rings must agree.
QMatrix space_restriction_matrix(const KBlock& source, const KBlock& target, int degree);

// The action of k as a map K_<g>(X^g) -> K_<kgk^-1>(X^(kgk^-1)).  On the
// chosen bases this is a permutation matrix: points move by the space
// action and characters by the unitary conjugation permutation.
QMatrix action_matrix(const SpaceSpec& x, const KBlock& source, const KBlock& target, int k,
                      int degree);

// Circle ranks computed independently as kernel/cokernel of 1 - (shift
// permutation) over the rationals.
struct CircleRanks {
    long dim0 = 0;
    long dim1 = 0;
};
CircleRanks circle_mv_oracle(long m, long shift);

}  // namespace ktq
