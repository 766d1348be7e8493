#pragma once

#include <string>
#include <vector>

#include "ktq/kblock.hpp"

namespace ktq {

/**
 * The assembled compatibility problem in one degree.  Variables are the
 * concatenated block coordinates of every group element's summand
 * K_<g>(X^g); rows impose
 *
 *   - invariance   x_{kgk^-1} = A_{k,g} x_g            for all k, g, and
 *   - compatibility R^grp_{g,h} x_g = R^spc_{g,h} x_h  for all g and all
 *       h in <g> \ {g}, both compared inside K_<h>(X^g).
 *
 * The solution space of the full system is the rational model of the
 * equivariant K-group in that degree.
 */
struct Assembled {
    int degree = 0;
    std::vector<KBlock> blocks;  // indexed by group element
    std::vector<long> offsets;   // column offset of each block
    long total_cols = 0;
    QMatrix rows;
};

Assembled assemble(const SpaceSpec& x, const TwistSpec& p, int degree);

struct SummandDim {
    int rep = 0;         // conjugacy class representative
    long block_dim = 0;  // dimension of the summand K_<rep>(X^rep) itself
    long dim = 0;        // rank of the solution space projected onto that summand
};

struct Solution {
    int degree = 0;
    long dim = 0;
    KernelBasis basis;  // canonical; coordinates follow the block offsets
    std::vector<SummandDim> per_summand;
    std::vector<KBlock> blocks;
    std::vector<long> offsets;
};

Solution solve_degree(const SpaceSpec& x, const TwistSpec& p, int degree);

struct KResult {
    Solution deg0;
    Solution deg1;
};

KResult solve_all(const SpaceSpec& x, const TwistSpec& p);

// Human-readable name of each concatenated coordinate, e.g.
// "g3:part0:pt2:chi1" or "g0:part1:orb2".
std::vector<std::string> column_labels(const std::vector<KBlock>& blocks, int degree);

// Independent count for untwisted instances: degree 0 equals the number of
// orbits of {(g, point) : g fixes the point} under simultaneous conjugation
// and the space action, plus one full class count per circle part; degree 1
// is the circle contribution alone.
struct ASCount {
    long dim0 = 0;
    long dim1 = 0;
};
ASCount untwisted_count_oracle(const SpaceSpec& x);

}  // namespace ktq
