#pragma once

#include <memory>
#include <vector>

#include "ktq/errors.hpp"

namespace ktq {

class GroupTable;
using Group = std::shared_ptr<const GroupTable>;

/**
 * A finite group as a validated multiplication table.  Elements are dense
 * indices 0..n-1 and index 0 is always the identity.  Construction checks
 * the Latin square property and associativity (exhaustively up to order 64,
 * on a deterministic sample above that).
 *
 * Element order conventions for the named constructors:
 *   cyclic(n)       powers g^0, g^1, ..., g^(n-1)
 *   klein()         (0,0), (1,0), (0,1), (1,1)
 *   dihedral(2n)    r^i s^j at index i + n*j  (r^n = s^2 = e, s r s = r^-1)
 *   quaternion8()   1, -1, i, -i, j, -j, k, -k
 *   direct_product  (a, b) at index a + |A|*b
 */
class GroupTable {
  public:
    long order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inverse(int a) const { return inv_[a]; }
    int power(int g, long k) const;
    long element_order(int g) const;
    int conjugate(int k, int g) const { return mul(mul(k, g), inverse(k)); }
    bool is_abelian() const;
    const std::vector<int>& mult_table_flat() const { return table_; }

    static Group from_mult_table(const std::vector<std::vector<int>>& table);
    static Group from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                                   long max_order);
    static Group cyclic(long n);
    static Group klein();
    static Group dihedral(long order2n);
    static Group quaternion8();
    static Group symmetric3();
    static Group direct_product(const Group& a, const Group& b);

  private:
    GroupTable(long n, std::vector<int> flat);
    static Group finish(long n, std::vector<int> flat);

    long n_;
    std::vector<int> table_;  // row-major n x n
    std::vector<int> inv_;
};

struct ConjugacyData {
    std::vector<std::vector<int>> classes;  // each sorted; ordered by smallest member
    std::vector<int> class_of;              // element -> class id
    std::vector<std::vector<int>> centralizers;

    int representative(int class_id) const { return classes[class_id][0]; }
};

ConjugacyData conjugacy(const Group& g);

// The poset of cyclic subgroups <g>, ordered by inclusion.  <h> <= <g> iff
// h is a power of g; each subgroup carries its lowest-index generator as the
// canonical one.
struct CyclicPoset {
    std::vector<std::vector<int>> subgroups;  // sorted element lists; ordered by (size, lex)
    std::vector<int> subgroup_of;             // element -> id of <element>
    std::vector<int> generator;               // subgroup id -> canonical generator

    bool leq(int a, int b) const;  // subgroup a contained in subgroup b
};

CyclicPoset cyclic_poset(const Group& g);

std::vector<int> cyclic_subgroup_elements(const Group& g, int elem);
int canonical_generator(const Group& g, const std::vector<int>& cyclic_subgroup);
std::vector<int> subgroup_generated(const Group& g, const std::vector<int>& gens);

// A subgroup relabeled as a group in its own right.  Elements keep their
// relative order, so the ambient identity (always the smallest index) stays
// at index 0.
struct SubgroupView {
    Group sub;
    std::vector<int> to_ambient;    // sub index -> ambient index
    std::vector<int> from_ambient;  // ambient index -> sub index or -1
};

SubgroupView make_subgroup_view(const Group& g, std::vector<int> elements);

}  // namespace ktq
