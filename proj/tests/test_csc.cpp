#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ktq/csc.hpp"
#include "ktq/fourier.hpp"
#include "ktq/instance.hpp"
#include "support.hpp"

using namespace ktq;
using namespace ktq::testsupport;

namespace {

Instance load_fixture(const std::string& name) {
    return load_instance(std::string(KTQ_FIXTURE_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("fixture dimensions are frozen") {
    struct Row {
        const char* file;
        long k0, k1;
    };
    std::vector<Row> table{
        {"c1_point.json", 1, 0},
        {"c12_point.json", 12, 0},
        {"c2_circle_sign.json", 1, 1},
        {"c4_circle_order2.json", 2, 2},
        {"d8_circle_untwisted.json", 5, 5},
        {"d8_circle_hol_r.json", 3, 3},
        {"d8_circle_hol_s.json", 3, 3},
        {"d8_circle_hol_rs.json", 3, 3},
        {"d8_cosets.json", 2, 0},
        {"d8_point.json", 5, 0},
        {"klein_mixed_union.json", 6, 4},
        {"klein_point.json", 4, 0},
        {"klein_point_pairing.json", 1, 0},
        {"s3_perm_point.json", 3, 0},
        {"s3_point.json", 3, 0},
        {"z2_free_pair.json", 1, 0},
    };
    for (const Row& row : table) {
        CAPTURE(row.file);
        Instance inst = load_fixture(row.file);
        KResult res = solve_all(inst.space, inst.twist);
        CHECK(res.deg0.dim == row.k0);
        CHECK(res.deg1.dim == row.k1);
    }
}

TEST_CASE("the pairing cocycle on a point: summand table and kernel") {
    Instance inst = load_fixture("klein_point_pairing.json");
    Solution s = solve_degree(inst.space, inst.twist, 0);
    REQUIRE(s.per_summand.size() == 4);
    std::vector<long> block_dims, proj_dims;
    for (const SummandDim& sd : s.per_summand) {
        block_dims.push_back(sd.block_dim);
        proj_dims.push_back(sd.dim);
    }
    CHECK(block_dims == std::vector<long>{1, 2, 2, 2});
    CHECK(proj_dims == std::vector<long>{1, 1, 1, 1});
    CHECK(s.dim == 1);
    CHECK(solve_degree(inst.space, inst.twist, 1).dim == 0);
}

TEST_CASE("untwisted instances match the orbit-counting oracle") {
    for (const NamedGroup& ng : groups_up_to_8()) {
        CAPTURE(ng.name);
        SpaceSpec pt = point_space(ng.g);
        KResult r1 = solve_all(pt, make_twist(pt, trivial_cocycle(ng.g), {}));
        ASCount c1 = untwisted_count_oracle(pt);
        CHECK(r1.deg0.dim == c1.dim0);
        CHECK(r1.deg1.dim == c1.dim1);
        CHECK(r1.deg0.dim == static_cast<long>(conjugacy(ng.g).classes.size()));

        SpaceSpec reg = validate_space(ng.g, {regular_gset(ng.g)});
        KResult r2 = solve_all(reg, make_twist(reg, trivial_cocycle(ng.g), {}));
        ASCount c2 = untwisted_count_oracle(reg);
        CHECK(r2.deg0.dim == c2.dim0);
        CHECK(r2.deg0.dim == 1);  // free transitive action
        CHECK(r2.deg1.dim == 0);

        SpaceSpec circ = circle_space(ng.g);
        KResult r3 = solve_all(circ, make_twist(circ, trivial_cocycle(ng.g), {}));
        ASCount c3 = untwisted_count_oracle(circ);
        CHECK(r3.deg0.dim == c3.dim0);
        CHECK(r3.deg1.dim == c3.dim1);
        CHECK(r3.deg0.dim == static_cast<long>(conjugacy(ng.g).classes.size()));
        CHECK(r3.deg1.dim == r3.deg0.dim);
    }
}

TEST_CASE("a free swap contributes a single invariant class") {
    Instance inst = load_fixture("z2_free_pair.json");
    ASCount oracle = untwisted_count_oracle(inst.space);
    CHECK(oracle.dim0 == 1);
    CHECK(solve_degree(inst.space, inst.twist, 0).dim == 1);
}

TEST_CASE("coset instance splits by stabilizer classes") {
    Instance inst = load_fixture("d8_cosets.json");
    ASCount oracle = untwisted_count_oracle(inst.space);
    CHECK(oracle.dim0 == 2);
    Solution s = solve_degree(inst.space, inst.twist, 0);
    CHECK(s.dim == 2);
    // summand projections: identity and reflection classes carry the classes
    std::vector<long> proj;
    for (const SummandDim& sd : s.per_summand) proj.push_back(sd.dim);
    CHECK(proj.size() == 5);
    CHECK(proj[0] == 1);  // identity summand sees the single point-orbit class
}

TEST_CASE("summand dimensions are constant on conjugacy classes") {
    Instance inst = load_fixture("d8_circle_hol_s.json");
    ConjugacyData cd = conjugacy(inst.space.g);
    for (int degree = 0; degree <= 1; ++degree) {
        Assembled a = assemble(inst.space, inst.twist, degree);
        for (const auto& cls : cd.classes) {
            long d0 = degree == 0 ? a.blocks[cls[0]].dim0 : a.blocks[cls[0]].dim1;
            for (int e : cls) {
                long d = degree == 0 ? a.blocks[e].dim0 : a.blocks[e].dim1;
                CHECK(d == d0);
            }
        }
    }
}

TEST_CASE("solution vectors satisfy every within-block row subset") {
    Instance inst = load_fixture("klein_point_pairing.json");
    Assembled a = assemble(inst.space, inst.twist, 0);
    Solution s = solve_degree(inst.space, inst.twist, 0);
    for (std::size_t b = 0; b < a.blocks.size(); ++b) {
        long lo = a.offsets[b];
        long hi = lo + a.blocks[b].dim0;
        for (long r = 0; r < a.rows.rows; ++r) {
            bool inside = true;
            for (long c = 0; c < a.rows.cols && inside; ++c)
                if (a.rows.at(r, c) != Rational(0) && (c < lo || c >= hi)) inside = false;
            if (!inside) continue;
            for (const auto& v : s.basis.vectors) {
                Rational acc(0);
                for (long c = lo; c < hi; ++c) acc += a.rows.at(r, c) * v[c];
                CHECK(acc == Rational(0));
            }
        }
    }
}

TEST_CASE("summand projections bound the solution dimension") {
    for (const char* f : {"d8_circle_hol_r.json", "klein_mixed_union.json", "d8_cosets.json"}) {
        CAPTURE(f);
        Instance inst = load_fixture(f);
        Solution s = solve_degree(inst.space, inst.twist, 0);
        long total = 0;
        for (const SummandDim& sd : s.per_summand) {
            CHECK(sd.dim <= sd.block_dim);
            CHECK(sd.dim <= s.dim);
            total += sd.dim;
        }
        if (s.dim > 0) CHECK(total >= s.dim);
    }
}

TEST_CASE("column labels cover every coordinate uniquely") {
    Instance inst = load_fixture("klein_mixed_union.json");
    for (int degree = 0; degree <= 1; ++degree) {
        Assembled a = assemble(inst.space, inst.twist, degree);
        std::vector<std::string> labels = column_labels(a.blocks, degree);
        CHECK(static_cast<long>(labels.size()) == a.total_cols);
        std::set<std::string> uniq(labels.begin(), labels.end());
        CHECK(uniq.size() == labels.size());
    }
}

TEST_CASE("evaluation model round trip and rank agreement") {
    for (const char* f : {"klein_point_pairing.json", "d8_circle_hol_r.json",
                          "c4_circle_order2.json", "klein_mixed_union.json", "d8_cosets.json"}) {
        CAPTURE(f);
        Instance inst = load_fixture(f);
        Solution s = solve_degree(inst.space, inst.twist, 0);
        CHECK(reconstruction_roundtrip(s));
        CHECK(evaluated_rank_at_reps(s) == s.dim);
    }
}

TEST_CASE("degree filter and twisted deg-1 behavior") {
    Instance inst = load_fixture("c4_circle_order2.json");
    Solution s0 = solve_degree(inst.space, inst.twist, 0);
    Solution s1 = solve_degree(inst.space, inst.twist, 1);
    CHECK(s0.dim == 2);
    CHECK(s1.dim == 2);
    // per-summand block dims follow the shift kernels: m' = |<g>|, shift = k mod m'
    std::vector<long> blocks0;
    for (const SummandDim& sd : s0.per_summand) blocks0.push_back(sd.block_dim);
    CHECK(blocks0 == std::vector<long>{1, 2, 2, 2});
}
