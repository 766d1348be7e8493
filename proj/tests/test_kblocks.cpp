#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <numeric>

#include "doctest.h"
#include "ktq/kblock.hpp"
#include "support.hpp"

using namespace ktq;
using namespace ktq::testsupport;

namespace {

SpaceSpec d8_cosets() {
    SpacePart p;
    p.npoints = 4;
    p.action = {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2},
                {0, 3, 2, 1}, {1, 0, 3, 2}, {2, 1, 0, 3}, {3, 2, 1, 0}};
    return validate_space(GroupTable::dihedral(8), {p});
}

}  // namespace

TEST_CASE("space validation rejects malformed actions") {
    Group c2 = GroupTable::cyclic(2);
    SpacePart p;
    p.npoints = 2;

    p.action = {{0, 1}};  // one permutation missing
    CHECK_THROWS_AS(validate_space(c2, {p}), InvalidInput);

    p.action = {{1, 0}, {0, 1}};  // identity must act trivially
    CHECK_THROWS_AS(validate_space(c2, {p}), InvalidInput);

    p.action = {{0, 1}, {0, 0}};  // not a permutation
    CHECK_THROWS_AS(validate_space(c2, {p}), InvalidInput);

    p.action = {{0, 1}, {2, 0}};  // out of range
    CHECK_THROWS_AS(validate_space(c2, {p}), InvalidInput);

    Group c4 = GroupTable::cyclic(4);
    SpacePart q;
    q.npoints = 2;
    q.action = {{0, 1}, {1, 0}, {1, 0}, {0, 1}};  // g^2 would have to act trivially
    CHECK_THROWS_AS(validate_space(c4, {q}), InvalidInput);

    SpacePart empty;
    empty.npoints = 0;
    empty.action = {{}, {}};
    CHECK_THROWS_AS(validate_space(c2, {empty}), InvalidInput);

    SpacePart circle;
    circle.kind = SpacePart::Kind::Circle;
    circle.action = {{0, 1}, {1, 0}};  // circles carry no action data
    CHECK_THROWS_AS(validate_space(c2, {circle}), InvalidInput);
}

TEST_CASE("twist validation matches spaces") {
    SpaceSpec sp = d8_cosets();
    CHECK_THROWS_AS(make_twist(sp, trivial_cocycle(GroupTable::cyclic(2)), {}), InvalidInput);
    HomTwist tau = make_hom_twist(sp.g, 2, {0, 1, 0, 1, 0, 1, 0, 1});
    CHECK_THROWS_AS(make_twist(sp, trivial_cocycle(sp.g), {tau}), InvalidInput);  // no circle
    SpaceSpec circ = circle_space(sp.g);
    CHECK(make_twist(circ, trivial_cocycle(sp.g), {tau}).holonomy.size() == 1);
    HomTwist wrong = make_hom_twist(GroupTable::cyclic(2), 2, {0, 1});
    CHECK_THROWS_AS(make_twist(circ, trivial_cocycle(sp.g), {wrong}), InvalidInput);
}

TEST_CASE("fixed point sets of the coset action") {
    SpaceSpec sp = d8_cosets();
    CHECK(fixed_points(sp, 0) == std::vector<std::vector<long>>{{0, 1, 2, 3}});
    CHECK(fixed_points(sp, 1) == std::vector<std::vector<long>>{{}});
    CHECK(fixed_points(sp, 2) == std::vector<std::vector<long>>{{}});
    CHECK(fixed_points(sp, 4) == std::vector<std::vector<long>>{{0, 2}});
    CHECK(fixed_points(sp, 5) == std::vector<std::vector<long>>{{}});
    CHECK(fixed_points(sp, 6) == std::vector<std::vector<long>>{{1, 3}});
    SpaceSpec circ = circle_space(sp.g);
    CHECK(fixed_points(circ, 3) == std::vector<std::vector<long>>{{}});
}

TEST_CASE("holonomy shifts on character bases") {
    Group c4 = GroupTable::cyclic(4);
    HomTwist lam = make_hom_twist(c4, 2, {0, 1, 0, 1});
    CHECK(hom_shift(TwistedCharRing::build(trivial_cocycle(c4), 1), lam) == 2);
    CHECK(hom_shift(TwistedCharRing::build(trivial_cocycle(c4), 2), lam) == 0);
    CHECK(hom_shift(TwistedCharRing::build(trivial_cocycle(c4), 0), lam) == 0);

    Group d8 = GroupTable::dihedral(8);
    HomTwist tau_r = make_hom_twist(d8, 2, {0, 1, 0, 1, 0, 1, 0, 1});
    CHECK(hom_shift(TwistedCharRing::build(trivial_cocycle(d8), 1), tau_r) == 2);
    CHECK(hom_shift(TwistedCharRing::build(trivial_cocycle(d8), 4), tau_r) == 0);
    CHECK(hom_shift(TwistedCharRing::build(trivial_cocycle(d8), 5), tau_r) == 1);
}

TEST_CASE("block dimensions over the dihedral circle match the contribution table") {
    Group d8 = GroupTable::dihedral(8);
    SpaceSpec sp = circle_space(d8);
    // class representatives ascending: e, r, r^2, s, rs
    std::vector<int> reps{0, 1, 2, 4, 5};
    std::map<std::string, std::vector<long>> expected{
        {"trivial", {1, 4, 2, 2, 2}},
        {"eps_r", {1, 2, 2, 2, 1}},
        {"eps_s", {1, 4, 2, 1, 1}},
        {"eps_rs", {1, 2, 2, 1, 2}},
    };
    std::map<std::string, std::vector<long>> exps{
        {"trivial", {0, 0, 0, 0, 0, 0, 0, 0}},
        {"eps_r", {0, 1, 0, 1, 0, 1, 0, 1}},
        {"eps_s", {0, 0, 0, 0, 1, 1, 1, 1}},
        {"eps_rs", {0, 1, 0, 1, 1, 0, 1, 0}},
    };
    for (const auto& [name, dims] : expected) {
        HomTwist tau = make_hom_twist(d8, 2, exps.at(name));
        TwistSpec tw = make_twist(sp, trivial_cocycle(d8), {tau});
        for (std::size_t i = 0; i < reps.size(); ++i) {
            KBlock blk = build_block(sp, tw, reps[i]);
            CHECK(blk.dim0 == dims[i]);
            CHECK(blk.dim1 == dims[i]);
            // independent rank computation for the same shift
            CircleRanks cr = circle_mv_oracle(blk.ring->size(), blk.parts[0].shift);
            CHECK(blk.dim0 == cr.dim0);
            CHECK(blk.dim1 == cr.dim1);
        }
    }
}

TEST_CASE("shift-kernel oracle matches the orbit count for every modulus and shift") {
    for (long m = 1; m <= 12; ++m)
        for (long s = 0; s < m; ++s) {
            CircleRanks cr = circle_mv_oracle(m, s);
            long orbits = s == 0 ? m : std::gcd(m, s);
            CHECK(cr.dim0 == orbits);
            CHECK(cr.dim1 == orbits);
        }
}

TEST_CASE("finite blocks index fixed points times characters") {
    SpaceSpec sp = d8_cosets();
    TwistSpec tw = make_twist(sp, trivial_cocycle(sp.g), {});
    KBlock be = build_block(sp, tw, 0);
    CHECK(be.dim0 == 4);  // 4 fixed points x 1 character
    CHECK(be.dim1 == 0);
    KBlock bs = build_block(sp, tw, 4);
    CHECK(bs.dim0 == 4);  // 2 fixed points x 2 characters
    CHECK(bs.parts[0].fixed == std::vector<long>{0, 2});
    CHECK(bs.col0(0, 1, 1) == 3);
    KBlock br = build_block(sp, tw, 1);
    CHECK(br.dim0 == 0);  // free rotation
}

TEST_CASE("restriction matrices are integral with one entry per column on finite parts") {
    SpaceSpec sp = d8_cosets();
    TwistSpec tw = make_twist(sp, trivial_cocycle(sp.g), {});
    KBlock bs = build_block(sp, tw, 4);
    KBlock bw = build_block_w(sp, tw, 4, TwistedCharRing::build(trivial_cocycle(sp.g), 0));
    QMatrix m = group_restriction_matrix(bs, bw, 0);
    CHECK(m.rows == bw.dim0);
    CHECK(m.cols == bs.dim0);
    for (long j = 0; j < m.cols; ++j) {
        long nz = 0;
        for (long i = 0; i < m.rows; ++i) {
            if (m.at(i, j) != Rational(0)) ++nz;
            CHECK(denom(m.at(i, j)) == 1);
        }
        CHECK(nz == 1);
    }
}

TEST_CASE("space restriction embeds the smaller fixed set") {
    SpaceSpec sp = d8_cosets();
    TwistSpec tw = make_twist(sp, trivial_cocycle(sp.g), {});
    // W blocks over the trivial subgroup: X^e has all 4 points, X^s only 2
    RingPtr triv = TwistedCharRing::build(trivial_cocycle(sp.g), 0);
    KBlock from_e = build_block_w(sp, tw, 0, triv);
    KBlock at_s = build_block_w(sp, tw, 4, triv);
    QMatrix m = space_restriction_matrix(from_e, at_s, 0);
    CHECK(m.rows == 2);
    CHECK(m.cols == 4);
    CHECK(m.at(0, 0) == Rational(1));
    CHECK(m.at(1, 2) == Rational(1));
    CHECK(m.at(0, 1) == Rational(0));
}

TEST_CASE("action matrices compose along multiplication on untwisted instances") {
    SpaceSpec sp = d8_cosets();
    TwistSpec tw = make_twist(sp, trivial_cocycle(sp.g), {});
    std::vector<KBlock> blocks;
    for (int g = 0; g < 8; ++g) blocks.push_back(build_block(sp, tw, g));
    Group d8 = sp.g;
    for (int k1 : {1, 4})
        for (int k2 : {1, 2, 5})
            for (int g : {0, 2, 4}) {
                int g2 = d8->conjugate(k2, g);
                int g12 = d8->conjugate(d8->mul(k1, k2), g);
                QMatrix a2 = action_matrix(sp, blocks[g], blocks[g2], k2, 0);
                QMatrix a1 = action_matrix(sp, blocks[g2], blocks[g12], k1, 0);
                QMatrix direct = action_matrix(sp, blocks[g], blocks[g12], d8->mul(k1, k2), 0);
                CHECK(matmul(a1, a2).a == direct.a);
            }
}

TEST_CASE("circle action matrices permute holonomy orbits") {
    Group d8 = GroupTable::dihedral(8);
    SpaceSpec sp = circle_space(d8);
    HomTwist tau = make_hom_twist(d8, 2, {0, 1, 0, 1, 0, 1, 0, 1});
    TwistSpec tw = make_twist(sp, trivial_cocycle(d8), {tau});
    KBlock rot = build_block(sp, tw, 1);
    REQUIRE(rot.dim0 == 2);
    QMatrix a = action_matrix(sp, rot, rot, 4, 0);  // s-conjugation maps <r> to itself
    // chi_1 <-> chi_3 swaps nothing at orbit level: orbits {0,2} and {1,3}
    CHECK(a.at(0, 0) == Rational(1));
    CHECK(a.at(1, 1) == Rational(1));
    CHECK(a.at(0, 1) == Rational(0));
}
