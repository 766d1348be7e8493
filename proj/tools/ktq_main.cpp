#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ktq/errors.hpp"
#include "ktq/fourier.hpp"
#include "ktq/instance.hpp"

namespace {

using namespace ktq;

long max_group_order_env() {
    const char* env = std::getenv("KTQ_MAX_GROUP_ORDER");
    if (!env || !*env) return 1024;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw InvalidInput("KTQ_MAX_GROUP_ORDER must be a positive integer");
    return v;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw InvalidInput("cannot write output file: " + output);
    out << text;
}

// ---------------------------------------------------------------------------
// reproduce: built-in reference instances with frozen expected values.

struct Outcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

const char* kKleinPointJson = R"({
  "group": {"name": "klein"},
  "space": {"parts": [{"kind": "point"}]},
  "twist": {"kind": "cocycle", "modulus": 2,
            "exponents": [[0,0,0,0],[0,0,0,0],[0,1,0,1],[0,1,0,1]]}
})";

std::string d8_circle_json(const std::string& exponents) {
    return std::string(R"({
  "group": {"name": "dihedral", "n": 8},
  "space": {"parts": [{"kind": "circle"}]},
  "twist": {"kind": "hom", "modulus": 2, "exponents": )") +
           exponents + "}\n}";
}

// Solves an instance and compares total dimensions, per-class block sizes,
// and the degree-0 evaluation cross-checks.
Outcome check_instance(const std::string& name, const std::string& json_text, long want_k0,
                       long want_k1, const std::vector<long>& want_block_dims) {
    Outcome o{name, false, {}};
    std::ostringstream detail;
    Instance inst = parse_instance(json_text);
    Solution s0 = solve_degree(inst.space, inst.twist, 0);
    Solution s1 = solve_degree(inst.space, inst.twist, 1);
    bool ok = true;
    if (s0.dim != want_k0) {
        ok = false;
        detail << "k0=" << s0.dim << " want " << want_k0 << "; ";
    }
    if (s1.dim != want_k1) {
        ok = false;
        detail << "k1=" << s1.dim << " want " << want_k1 << "; ";
    }
    ConjugacyData conj = conjugacy(inst.space.g);
    if (want_block_dims.size() != conj.classes.size()) {
        ok = false;
        detail << "expectation table has the wrong length; ";
    } else {
        for (std::size_t c = 0; c < conj.classes.size(); ++c) {
            int rep = conj.representative(static_cast<int>(c));
            long got = s0.blocks[static_cast<std::size_t>(rep)].dim0;
            if (got != want_block_dims[c]) {
                ok = false;
                detail << "block dim at rep " << rep << " is " << got << " want "
                       << want_block_dims[c] << "; ";
            }
        }
    }
    if (!reconstruction_roundtrip(s0)) {
        ok = false;
        detail << "evaluation roundtrip failed; ";
    }
    if (evaluated_rank_at_reps(s0) != s0.dim) {
        ok = false;
        detail << "evaluation rank mismatch; ";
    }
    o.pass = ok;
    o.detail = detail.str();
    return o;
}

std::vector<std::function<Outcome()>> klein_tasks() {
    return {[] {
        return check_instance("klein-point-pairing", kKleinPointJson, 1, 0, {1, 2, 2, 2});
    }};
}

std::vector<std::function<Outcome()>> d8_tasks() {
    // Holonomy characters of the dihedral group of order 8, by the signs they
    // give the rotation and reflection generators.
    return {
        [] {
            return check_instance("d8-circle-hol++", d8_circle_json("[0,0,0,0,0,0,0,0]"), 5, 5,
                                  {1, 4, 2, 2, 2});
        },
        [] {
            return check_instance("d8-circle-hol-+", d8_circle_json("[0,1,0,1,0,1,0,1]"), 3, 3,
                                  {1, 2, 2, 2, 1});
        },
        [] {
            return check_instance("d8-circle-hol+-", d8_circle_json("[0,0,0,0,1,1,1,1]"), 3, 3,
                                  {1, 4, 2, 1, 1});
        },
        [] {
            return check_instance("d8-circle-hol--", d8_circle_json("[0,1,0,1,1,0,1,0]"), 3, 3,
                                  {1, 2, 2, 1, 2});
        },
    };
}

Cocycle2 klein_pairing() {
    return make_cocycle2(GroupTable::klein(), 2,
                         {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1});
}

std::vector<std::function<Outcome()>> lemma_tasks() {
    std::vector<std::function<Outcome()>> tasks;

    tasks.push_back([] {
        Outcome o{"roi-cyclic-untwisted", true, {}};
        for (long n : {4L, 6L, 8L}) {
            Group g = GroupTable::cyclic(n);
            Cocycle2 triv = trivial_cocycle(g);
            for (int seed = 0; seed < g->order(); ++seed) {
                RingPtr ring = TwistedCharRing::build(triv, seed);
                for (long j = 0; j < ring->size(); ++j)
                    if (!check_roi(basis_element(ring, j))) o.pass = false;
            }
        }
        return o;
    });

    tasks.push_back([] {
        Outcome o{"roi-klein-pairing", true, {}};
        Cocycle2 alpha = klein_pairing();
        for (int seed = 0; seed < 4; ++seed) {
            RingPtr ring = TwistedCharRing::build(alpha, seed);
            for (long j = 0; j < ring->size(); ++j)
                if (!check_roi(basis_element(ring, j))) o.pass = false;
        }
        return o;
    });

    tasks.push_back([] {
        Outcome o{"rest-ind-klein-untwisted", true, {}};
        Group g = GroupTable::klein();
        Cocycle2 triv = trivial_cocycle(g);
        RingPtr h1 = TwistedCharRing::build(triv, 1);
        RingPtr h2 = TwistedCharRing::build(triv, 2);
        for (long j = 0; j < 2; ++j)
            if (!check_rest_ind(basis_element(h1, j), h2)) o.pass = false;
        return o;
    });

    tasks.push_back([] {
        Outcome o{"rest-ind-cyclic-nested", true, {}};
        Group g = GroupTable::cyclic(8);
        Cocycle2 triv = trivial_cocycle(g);
        RingPtr h1 = TwistedCharRing::build(triv, 2);  // order 4
        RingPtr h2 = TwistedCharRing::build(triv, 4);  // order 2, inside h1
        for (long j = 0; j < 4; ++j) {
            if (!check_rest_ind(basis_element(h1, j), h2)) o.pass = false;
            if (!check_rest_ind(basis_element(h2, j % 2), h1)) o.pass = false;
        }
        return o;
    });

    tasks.push_back([] {
        Outcome o{"rest-ind-klein-pairing", true, {}};
        Cocycle2 alpha = klein_pairing();
        RingPtr h1 = TwistedCharRing::build(alpha, 1);
        RingPtr h2 = TwistedCharRing::build(alpha, 2);
        ClassElement x = basis_element(h1, 0);
        // Negative control: the identity needs an invariant input, and with
        // h2 = h1 the two routes genuinely diverge for a bare basis class.
        // (With h2 meeting h1 only in the identity the restriction step
        // erases the non-invariance, so that pair cannot serve as a control.)
        std::vector<int> all_g{0, 1, 2, 3};
        ClassElement inv = avg_over(x, all_g);
        if (check_rest_ind(x, h1)) o.pass = false;
        if (!check_rest_ind(inv, h1)) o.pass = false;
        if (!check_rest_ind(inv, h2)) o.pass = false;
        return o;
    });

    tasks.push_back([] {
        Outcome o{"kgt-projection-value", true, {}};
        Group g = GroupTable::cyclic(4);
        RingPtr ring = TwistedCharRing::build(trivial_cocycle(g), 1);
        ClassElement p = k_gt_project(basis_element(ring, 0));
        std::vector<Rational> want{Rational(1, 2), Rational(0), Rational(-1, 2), Rational(0)};
        if (p.coeff != want) o.pass = false;
        return o;
    });

    tasks.push_back([] {
        Outcome o{"kgt-dim-totient", true, {}};
        for (long n = 1; n <= 8; ++n) {
            Group g = GroupTable::cyclic(n);
            RingPtr ring = TwistedCharRing::build(trivial_cocycle(g), n == 1 ? 0 : 1);
            if (static_cast<long>(k_gt_basis(ring).size()) != euler_phi(n)) o.pass = false;
        }
        return o;
    });

    tasks.push_back([] {
        Outcome o{"ses-dims-and-splits", true, {}};
        std::vector<RingPtr> rings;
        for (long n : {4L, 6L, 8L})
            rings.push_back(
                TwistedCharRing::build(trivial_cocycle(GroupTable::cyclic(n)), 1));
        rings.push_back(TwistedCharRing::build(
            cyclic_standard_cocycle(GroupTable::cyclic(4), 4, 1), 1));
        rings.push_back(TwistedCharRing::build(klein_pairing(), 1));
        for (const RingPtr& ring : rings) {
            SesReport rep = ses_check(ring);
            if (!rep.dims_match || !rep.splits_ok) o.pass = false;
        }
        return o;
    });

    return tasks;
}

int run_reproduce(const std::string& example, int jobs) {
    std::vector<std::function<Outcome()>> tasks;
    auto append = [&tasks](std::vector<std::function<Outcome()>> more) {
        for (auto& t : more) tasks.push_back(std::move(t));
    };
    if (example == "klein" || example == "all") append(klein_tasks());
    if (example == "d8-circle" || example == "all") append(d8_tasks());
    if (example == "lemmas" || example == "all") append(lemma_tasks());

    std::vector<Outcome> results;
    results.reserve(tasks.size());
    if (jobs > 1) {
        std::vector<std::future<Outcome>> futures;
        futures.reserve(tasks.size());
        for (auto& t : tasks) futures.push_back(std::async(std::launch::async, t));
        for (auto& f : futures) results.push_back(f.get());
    } else {
        for (auto& t : tasks) results.push_back(t());
    }

    int failed = 0;
    for (const Outcome& o : results) {
        if (o.pass) {
            std::cout << "PASS " << o.name << "\n";
        } else {
            ++failed;
            std::cout << "FAIL " << o.name;
            if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
            std::cout << "\n";
        }
    }
    std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size()
              << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rational computation of twisted equivariant K-theory by cyclic-subgroup compatibility"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "parse and validate an instance file");
    std::string vfile;
    validate->add_option("file", vfile, "instance JSON file")->required();

    auto* compute = app.add_subcommand("compute", "solve an instance");
    std::string cfile, cdegree = "both", coutput;
    bool cper = false, cbasis = false;
    compute->add_option("file", cfile, "instance JSON file")->required();
    compute->add_option("--degree", cdegree, "0, 1, or both")
        ->check(CLI::IsMember({"0", "1", "both"}));
    compute->add_flag("--per-summand", cper, "include per-class summand ranks");
    compute->add_flag("--basis", cbasis, "include the solution basis and coordinate labels");
    compute->add_option("--output", coutput, "write the result here instead of stdout");

    auto* oracle = app.add_subcommand("oracle", "run an independent cross-check");
    std::string ofile, okind, ooutput;
    oracle->add_option("file", ofile, "instance JSON file")->required();
    oracle->add_option("--kind", okind, "regular-classes, circle-rank, or orbit-count")
        ->required()
        ->check(CLI::IsMember({"regular-classes", "circle-rank", "orbit-count"}));
    oracle->add_option("--output", ooutput, "write the result here instead of stdout");

    auto* repro = app.add_subcommand("reproduce", "run the built-in reference computations");
    std::string rexample = "all";
    int rjobs = 1;
    repro->add_option("--example", rexample, "klein, d8-circle, lemmas, or all")
        ->check(CLI::IsMember({"klein", "d8-circle", "lemmas", "all"}));
    repro->add_option("--jobs", rjobs, "run checks concurrently")->check(CLI::Range(1, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) {
            std::string bytes = read_file(vfile);
            Instance inst = parse_instance(bytes, max_group_order_env());
            nlohmann::json out;
            out["engine"] = kEngineVersion;
            out["input_hash"] = hex64(fnv1a64(bytes));
            out["ok"] = true;
            out["group_order"] = inst.space.g->order();
            out["parts"] = inst.space.parts.size();
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(compute)) {
            std::string bytes = read_file(cfile);
            Instance inst = parse_instance(bytes, max_group_order_env());
            ComputeOptions opt;
            opt.degree = cdegree == "both" ? -1 : (cdegree == "0" ? 0 : 1);
            opt.per_summand = cper;
            opt.with_basis = cbasis;
            emit(compute_result_json(inst, bytes, opt), coutput);
        } else if (app.got_subcommand(oracle)) {
            std::string bytes = read_file(ofile);
            Instance inst = parse_instance(bytes, max_group_order_env());
            emit(oracle_result_json(inst, okind, bytes), ooutput);
        } else if (app.got_subcommand(repro)) {
            return run_reproduce(rexample, rjobs);
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
