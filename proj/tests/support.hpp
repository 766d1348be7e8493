#pragma once

#include <string>
#include <vector>

#include "ktq/cocycle.hpp"
#include "ktq/group.hpp"
#include "ktq/kblock.hpp"

namespace ktq::testsupport {

struct NamedGroup {
    std::string name;
    Group g;
};

// Every isomorphism class of order at most 8.
inline std::vector<NamedGroup> groups_up_to_8() {
    std::vector<NamedGroup> out;
    for (long n = 1; n <= 8; ++n)
        out.push_back({"c" + std::to_string(n), GroupTable::cyclic(n)});
    out.push_back({"klein", GroupTable::klein()});
    out.push_back({"c4xc2",
                   GroupTable::direct_product(GroupTable::cyclic(4), GroupTable::cyclic(2))});
    out.push_back({"c2c2c2", GroupTable::direct_product(
                                 GroupTable::direct_product(GroupTable::cyclic(2),
                                                            GroupTable::cyclic(2)),
                                 GroupTable::cyclic(2))});
    out.push_back({"d8", GroupTable::dihedral(8)});
    out.push_back({"q8", GroupTable::quaternion8()});
    out.push_back({"s3", GroupTable::symmetric3()});
    return out;
}

inline std::vector<NamedGroup> abelian_up_to_8() {
    std::vector<NamedGroup> out;
    for (NamedGroup& ng : groups_up_to_8())
        if (ng.g->is_abelian()) out.push_back(ng);
    return out;
}

// The nondegenerate pairing cocycle on the Klein four-group; only the
// identity class is regular for it.  Pass the group instance the instance
// under test is built on, since twist and space must share it.
inline Cocycle2 klein_pairing(const Group& k4) {
    return make_cocycle2(k4, 2, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1});
}

inline Cocycle2 klein_pairing() { return klein_pairing(GroupTable::klein()); }

inline SpacePart point_part(const Group& g) {
    SpacePart p;
    p.npoints = 1;
    p.action.assign(static_cast<std::size_t>(g->order()), {0});
    return p;
}

inline SpacePart circle_part() {
    SpacePart p;
    p.kind = SpacePart::Kind::Circle;
    return p;
}

// G acting on itself by left translation.
inline SpacePart regular_gset(const Group& g) {
    SpacePart p;
    p.npoints = g->order();
    p.action.assign(static_cast<std::size_t>(g->order()),
                    std::vector<int>(static_cast<std::size_t>(g->order())));
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b) p.action[a][b] = g->mul(a, b);
    return p;
}

inline SpaceSpec point_space(const Group& g) { return validate_space(g, {point_part(g)}); }

inline SpaceSpec circle_space(const Group& g) { return validate_space(g, {circle_part()}); }

}  // namespace ktq::testsupport
