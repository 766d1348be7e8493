// End-to-end acceptance battery.  Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any line fails.  The checks pit the solver
// against independently computed values: regular-class counts, shift-kernel
// ranks, orbit counts, restriction/induction identities, and byte-level
// determinism of the command-line output.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "ktq/csc.hpp"
#include "ktq/fourier.hpp"
#include "ktq/instance.hpp"
#include "support.hpp"

using namespace ktq;
using namespace ktq::testsupport;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    long checks = 0;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string join(const std::vector<long>& v) {
    std::string s;
    for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

std::vector<long> block_dims(const Solution& s) {
    std::vector<long> out;
    for (const SummandDim& sd : s.per_summand) out.push_back(sd.block_dim);
    return out;
}

// ---------------------------------------------------------------- criterion 1
Criterion pairing_point() {
    Criterion c{"pairing-twisted point over the four-group"};
    Group k4 = GroupTable::klein();
    SpaceSpec sp = point_space(k4);
    TwistSpec tw = make_twist(sp, klein_pairing(k4), {});
    Solution s0 = solve_degree(sp, tw, 0);
    Solution s1 = solve_degree(sp, tw, 1);
    c.expect(block_dims(s0) == std::vector<long>{1, 2, 2, 2},
             "summand dims " + join(block_dims(s0)) + " != 1,2,2,2");
    c.expect(s0.dim == 1, "K0 = " + std::to_string(s0.dim) + " != 1");
    c.expect(s1.dim == 0, "K1 = " + std::to_string(s1.dim) + " != 0");
    return c;
}

// ---------------------------------------------------------------- criterion 2
Criterion dihedral_circle_family() {
    Criterion c{"dihedral-8 circle under the four holonomy characters"};
    Group d8 = GroupTable::dihedral(8);
    SpaceSpec sp = circle_space(d8);
    struct Case {
        std::vector<long> exps;
        std::vector<long> table;  // per class rep ascending: e, r, r^2, s, rs
        long k0;
    };
    std::vector<Case> cases{
        {{0, 0, 0, 0, 0, 0, 0, 0}, {1, 4, 2, 2, 2}, 5},
        {{0, 1, 0, 1, 0, 1, 0, 1}, {1, 2, 2, 2, 1}, 3},
        {{0, 0, 0, 0, 1, 1, 1, 1}, {1, 4, 2, 1, 1}, 3},
        {{0, 1, 0, 1, 1, 0, 1, 0}, {1, 2, 2, 1, 2}, 3},
    };
    for (const Case& cs : cases) {
        TwistSpec tw = make_twist(sp, trivial_cocycle(d8), {make_hom_twist(d8, 2, cs.exps)});
        Solution s0 = solve_degree(sp, tw, 0);
        Solution s1 = solve_degree(sp, tw, 1);
        c.expect(block_dims(s0) == cs.table,
                 "contribution row " + join(block_dims(s0)) + " != " + join(cs.table));
        c.expect(s0.dim == cs.k0, "K0 = " + std::to_string(s0.dim));
        c.expect(s1.dim == cs.k0, "K1 = " + std::to_string(s1.dim));
    }
    return c;
}

// ---------------------------------------------------------------- criterion 3
Criterion untwisted_points() {
    Criterion c{"untwisted points count conjugacy classes"};
    std::vector<Group> groups{GroupTable::klein(), GroupTable::dihedral(8),
                              GroupTable::symmetric3()};
    for (long n = 1; n <= 12; ++n) groups.push_back(GroupTable::cyclic(n));
    for (const Group& g : groups) {
        SpaceSpec sp = point_space(g);
        TwistSpec tw = make_twist(sp, trivial_cocycle(g), {});
        long classes = static_cast<long>(conjugacy(g).classes.size());
        Solution s0 = solve_degree(sp, tw, 0);
        c.expect(s0.dim == classes, "order " + std::to_string(g->order()) + ": K0 = " +
                                        std::to_string(s0.dim) + " != " +
                                        std::to_string(classes));
        c.expect(solve_degree(sp, tw, 1).dim == 0, "nonzero K1 on a point");
    }
    return c;
}

// ---------------------------------------------------------------- criterion 4
Criterion mod2_twisted_points() {
    Criterion c{"every mod-2 cocycle on every group of order <= 8"};
    for (const NamedGroup& ng : groups_up_to_8()) {
        SpaceSpec sp = point_space(ng.g);
        for (const Cocycle2& alpha : enumerate_cocycles_mod2(ng.g)) {
            TwistSpec tw = make_twist(sp, alpha, {});
            long want = static_cast<long>(alpha_regular_class_reps(alpha).size());
            Solution s0 = solve_degree(sp, tw, 0);
            c.expect(s0.dim == want, ng.name + ": K0 = " + std::to_string(s0.dim) +
                                         " != regular classes " + std::to_string(want));
            if (!c.pass) return c;
        }
    }
    return c;
}

// ---------------------------------------------------------------- criterion 5
Criterion cyclic_circle_holonomy() {
    Criterion c{"cyclic circles: summands match shift kernels (n <= 12)"};
    for (long n = 1; n <= 12; ++n) {
        Group g = GroupTable::cyclic(n);
        SpaceSpec sp = circle_space(g);
        for (long k = 0; k < n; ++k) {
            std::vector<long> exps(static_cast<std::size_t>(n));
            for (long j = 0; j < n; ++j) exps[static_cast<std::size_t>(j)] = (j * k) % n;
            TwistSpec tw = make_twist(sp, trivial_cocycle(g), {make_hom_twist(g, n, exps)});
            Solution s0 = solve_degree(sp, tw, 0);
            Solution s1 = solve_degree(sp, tw, 1);
            for (std::size_t i = 0; i < s0.per_summand.size(); ++i) {
                int rep = s0.per_summand[i].rep;
                long m = n / std::gcd(n, static_cast<long>(rep));
                CircleRanks want = circle_mv_oracle(m, k % m);
                c.expect(s0.per_summand[i].block_dim == want.dim0,
                         "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " rep=" + std::to_string(rep) + " deg0 block");
                c.expect(s1.per_summand[i].block_dim == want.dim1,
                         "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " rep=" + std::to_string(rep) + " deg1 block");
            }
            if (n == 2 && k == 1)
                c.expect(s0.dim == 1, "sign holonomy on C2: K0 = " + std::to_string(s0.dim));
            if (n == 4 && k == 2)
                c.expect(s0.dim == 2,
                         "order-2 holonomy on C4: K0 = " + std::to_string(s0.dim));
        }
    }
    return c;
}

// ---------------------------------------------------------------- criterion 6
Criterion lemma_battery() {
    Criterion c{"restriction/induction laws across all cyclic data, all mod-2 twists"};
    for (const NamedGroup& ng : abelian_up_to_8()) {
        const Group& g = ng.g;
        CyclicPoset poset = cyclic_poset(g);
        std::vector<int> all_g(static_cast<std::size_t>(g->order()));
        std::iota(all_g.begin(), all_g.end(), 0);
        for (const Cocycle2& alpha : enumerate_cocycles_mod2(g)) {
            std::vector<RingPtr> rings;
            for (int gen : poset.generator) rings.push_back(TwistedCharRing::build(alpha, gen));
            std::size_t ns = rings.size();

            for (std::size_t i = 0; i < ns; ++i) {
                const RingPtr& h = rings[i];
                // averaged restriction-of-induction identity, any input
                for (long j = 0; j < h->size(); ++j)
                    c.expect(check_roi(basis_element(h, j)),
                             ng.name + ": restriction of induction fails");
                // two-subgroup factorization on invariant inputs
                for (long j = 0; j < h->size(); ++j) {
                    ClassElement inv = avg_over(basis_element(h, j), all_g);
                    for (std::size_t i2 = 0; i2 < ns; ++i2)
                        c.expect(check_rest_ind(inv, rings[i2]),
                                 ng.name + ": restriction/induction factor fails");
                }
                // projection onto the top piece
                std::vector<std::size_t> proper;
                for (std::size_t i2 = 0; i2 < ns; ++i2)
                    if (i2 != i && poset.leq(static_cast<int>(i2), static_cast<int>(i)))
                        proper.push_back(i2);
                for (long j = 0; j < h->size(); ++j) {
                    ClassElement p = k_gt_project(basis_element(h, j));
                    c.expect(equal(k_gt_project(p), p), ng.name + ": projection not idempotent");
                    for (std::size_t i2 : proper)
                        c.expect(equal(restrict_r(p, rings[i2]), zero_element(rings[i2])),
                                 ng.name + ": projection image restricts nontrivially");
                }
                for (const ClassElement& v : k_gt_basis(h))
                    c.expect(equal(k_gt_project(v), v),
                             ng.name + ": projection moves a top-piece vector");
                SesReport rep = ses_check(h);
                c.expect(rep.dims_match, ng.name + ": filtration dimensions disagree");
                c.expect(rep.splits_ok, ng.name + ": filtration splitting fails");
            }
            // functoriality chains along nested subgroups
            for (std::size_t i1 = 0; i1 < ns; ++i1)
                for (std::size_t i2 = 0; i2 < ns; ++i2) {
                    if (!poset.leq(static_cast<int>(i2), static_cast<int>(i1))) continue;
                    for (std::size_t i3 = 0; i3 < ns; ++i3) {
                        if (!poset.leq(static_cast<int>(i3), static_cast<int>(i2))) continue;
                        for (long j = 0; j < rings[i1]->size(); ++j) {
                            ClassElement x = basis_element(rings[i1], j);
                            c.expect(equal(restrict_r(restrict_r(x, rings[i2]), rings[i3]),
                                           restrict_r(x, rings[i3])),
                                     ng.name + ": restriction chain breaks");
                        }
                        for (long j = 0; j < rings[i3]->size(); ++j) {
                            ClassElement y = basis_element(rings[i3], j);
                            c.expect(equal(induce_i(induce_i(y, rings[i2]), rings[i1]),
                                           induce_i(y, rings[i1])),
                                     ng.name + ": induction chain breaks");
                        }
                    }
                }
            if (!c.pass) return c;
        }
    }
    return c;
}

// ---------------------------------------------------------------- criterion 7
Criterion evaluation_model() {
    Criterion c{"evaluation model: round trip and rank agreement"};
    for (long n = 1; n <= 12; ++n) {
        Group g = GroupTable::cyclic(n);
        std::vector<Cocycle2> twists{trivial_cocycle(g), cyclic_standard_cocycle(g, 2, 1)};
        for (long t = 1; t < 4; ++t) twists.push_back(cyclic_standard_cocycle(g, 4, t));
        if (n <= 6)
            for (Cocycle2& a : enumerate_cocycles_mod2(g)) twists.push_back(std::move(a));

        std::vector<SpaceSpec> spaces{point_space(g)};
        if (n > 1) {
            long d = 1;
            for (long q = 2; q < n; ++q)
                if (n % q == 0) d = q;  // largest proper divisor
            SpacePart cosets;
            cosets.npoints = d;
            cosets.action.resize(static_cast<std::size_t>(n));
            for (long a = 0; a < n; ++a) {
                cosets.action[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(d));
                for (long p = 0; p < d; ++p)
                    cosets.action[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)] =
                        static_cast<int>((p + a) % d);
            }
            spaces.push_back(validate_space(g, {cosets}));
        }
        for (const SpaceSpec& sp : spaces)
            for (const Cocycle2& alpha : twists) {
                TwistSpec tw = make_twist(sp, alpha, {});
                Solution s0 = solve_degree(sp, tw, 0);
                c.expect(reconstruction_roundtrip(s0),
                         "n=" + std::to_string(n) + ": reconstruction changed a slice");
                c.expect(evaluated_rank_at_reps(s0) == s0.dim,
                         "n=" + std::to_string(n) + ": evaluated rank disagrees");
            }
    }
    // both decomposition models on the pairing-twisted four-group point
    Group k4 = GroupTable::klein();
    SpaceSpec sp = point_space(k4);
    TwistSpec tw = make_twist(sp, klein_pairing(k4), {});
    Solution s0 = solve_degree(sp, tw, 0);
    c.expect(reconstruction_roundtrip(s0), "four-group: reconstruction changed a slice");
    c.expect(evaluated_rank_at_reps(s0) == s0.dim, "four-group: evaluated rank disagrees");
    return c;
}

// ---------------------------------------------------------------- criterion 8
Criterion determinism() {
    Criterion c{"repeated runs are byte-identical on every fixture"};
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(KTQ_FIXTURE_DIR))
        if (entry.path().extension() == ".json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    c.expect(!files.empty(), "no fixtures found");

    ComputeOptions opt;
    opt.per_summand = true;
    opt.with_basis = true;
    for (const std::string& f : files) {
        std::string bytes = read_file(f);
        Instance inst = parse_instance(bytes);
        c.expect(compute_result_json(inst, bytes, opt) == compute_result_json(inst, bytes, opt),
                 f + ": in-process outputs differ");
    }

    fs::path tmp = fs::temp_directory_path();
    fs::path out1 = tmp / "ktq_det_a.json";
    fs::path out2 = tmp / "ktq_det_b.json";
    for (const std::string& f : files) {
        std::string base = std::string(KTQ_CLI_PATH) + " compute \"" + f +
                           "\" --per-summand --basis --output ";
        int rc1 = std::system((base + "\"" + out1.string() + "\"").c_str());
        int rc2 = std::system((base + "\"" + out2.string() + "\"").c_str());
        c.expect(rc1 == 0 && rc2 == 0, f + ": compute exited nonzero");
        if (rc1 == 0 && rc2 == 0)
            c.expect(read_file(out1.string()) == read_file(out2.string()),
                     f + ": command outputs differ");
    }
    std::error_code ec;
    fs::remove(out1, ec);
    fs::remove(out2, ec);
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Criterion (*run)();
    };
    std::vector<Entry> criteria{
        {"pairing-twisted point over the four-group", pairing_point},
        {"dihedral-8 circle under the four holonomy characters", dihedral_circle_family},
        {"untwisted points count conjugacy classes", untwisted_points},
        {"every mod-2 cocycle on every group of order <= 8", mod2_twisted_points},
        {"cyclic circles: summands match shift kernels (n <= 12)", cyclic_circle_holonomy},
        {"restriction/induction laws across all cyclic data, all mod-2 twists", lemma_battery},
        {"evaluation model: round trip and rank agreement", evaluation_model},
        {"repeated runs are byte-identical on every fixture", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c{criteria[i].name};
        auto t0 = std::chrono::steady_clock::now();
        try {
            c = criteria[i].run();
        } catch (const std::exception& e) {
            c.name = criteria[i].name;
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        all = all && c.pass;
        std::printf("%s  criterion %zu: %s (%ld checks, %lldms)%s%s\n", c.pass ? "PASS" : "FAIL",
                    i + 1, c.name.c_str(), c.checks, static_cast<long long>(ms),
                    c.detail.empty() ? "" : " -- ", c.detail.c_str());
    }
    std::printf("%s\n", all ? "all criteria hold" : "ACCEPTANCE FAILURE");
    return all ? 0 : 1;
}
