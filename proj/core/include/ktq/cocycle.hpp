#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ktq/group.hpp"

namespace ktq {

/**
 * Group cohomology data in exponent form: a value in mu_N is stored as its
 * exponent in [0, N), i.e. the actual root of unity is zeta_N^exp.  Two
 * exponent/modulus pairs denote the same value iff they agree after scaling
 * to the common modulus lcm(N1, N2).
 */

// Normalized 1-cochain beta: G -> mu_N with beta(e) = 1.
struct Cochain1 {
    Group g;
    long modulus = 1;
    std::vector<long> exp;  // indexed by element
};

// Normalized 2-cocycle alpha: G x G -> mu_N (alpha(e,.) = alpha(.,e) = 1).
struct Cocycle2 {
    Group g;
    long modulus = 1;
    std::vector<long> exp;  // n x n, row-major

    long at(int a, int b) const { return exp[static_cast<std::size_t>(a) * g->order() + b]; }
};

// Homomorphism lambda: G -> mu_N.
struct HomTwist {
    Group g;
    long modulus = 1;
    std::vector<long> exp;  // indexed by element
};

// (g, h, k) with alpha(g,h) alpha(gh,k) != alpha(h,k) alpha(g,hk).
using CocycleViolation = std::array<int, 3>;

std::optional<CocycleViolation> check_cocycle(const Cocycle2& alpha);

Cochain1 make_cochain1(const Group& g, long modulus, std::vector<long> exp);
Cocycle2 make_cocycle2(const Group& g, long modulus, std::vector<long> exp);
HomTwist make_hom_twist(const Group& g, long modulus, std::vector<long> exp);

Cocycle2 trivial_cocycle(const Group& g);
Cochain1 trivial_cochain(const Group& g);

// delta(beta)(g,h) = beta(g) beta(h) beta(gh)^-1, a coboundary 2-cocycle.
Cocycle2 coboundary(const Cochain1& beta);

Cocycle2 restrict_cocycle(const Cocycle2& alpha, const SubgroupView& view);
HomTwist restrict_hom(const HomTwist& lambda, const SubgroupView& view);
Cochain1 restrict_cochain(const Cochain1& beta, const SubgroupView& view);

/**
 * A 1-cochain beta with coboundary(beta) = alpha on a cyclic group, built by
 * the power recursion beta(g^(a+1)) = beta(g^a) beta(g) / alpha(g^a, g) from
 * the lowest-index generator g.  The closing constraint at g^m = e is solved
 * for beta(g) as an m-th root, enlarging the modulus to lcm(N, m N) when the
 * constraint has no solution mod N; among the solutions the smallest
 * nonnegative exponent is chosen, making the output canonical.
 */
Cochain1 trivialize_on_cyclic(const Cocycle2& alpha);

// Exponent of the scalar c in u_k u_h u_k^-1 = c u_(k h k^-1) inside the
// twisted group algebra (unitary convention); c = alpha(k,h) alpha(khk^-1,k)^-1.
long conjugation_phase(const Cocycle2& alpha, int k, int h);

// The character h -> alpha(h,g) alpha(g,h)^-1 on the centralizer of g,
// returned over the centralizer's subgroup view; verified multiplicative.
struct LCharacter {
    SubgroupView centralizer;
    HomTwist character;  // over centralizer.sub
};
LCharacter l_character(const Cocycle2& alpha, int g);

// Sorted representatives of the classes [g] with alpha(g,h) = alpha(h,g) for
// every h in the centralizer of g.  Their count is the rank of the
// alpha-twisted representation ring.
std::vector<int> alpha_regular_class_reps(const Cocycle2& alpha);

// Every mu_2-valued normalized 2-cocycle on g, via the kernel of the linear
// cocycle-identity system over F_2.  Intended for small groups; throws when
// the solution space exceeds 2^20 cocycles.
std::vector<Cocycle2> enumerate_cocycles_mod2(const Group& g);

// The standard representative exp(g^a, g^b) = t * floor((a+b)/n) on a cyclic
// group whose element indices are powers (index i is g^i); together with
// coboundaries these cover every cohomology class mod N.
Cocycle2 cyclic_standard_cocycle(const Group& cyclic_g, long modulus, long t);

}  // namespace ktq
