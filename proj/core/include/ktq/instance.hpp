#pragma once

#include <cstdint>
#include <string>

#include "ktq/csc.hpp"

namespace ktq {

inline constexpr const char* kEngineVersion = "ktq 1.0.0";

/**
 * Input files are JSON with three members:
 *
 *   "group": one of
 *       {"name": "cyclic", "n": 6}
 *       {"name": "klein" | "quaternion"}
 *       {"name": "dihedral", "n": 8}            n = group order, even
 *       {"name": "symmetric", "n": 3}
 *       {"name": "product", "factors": [group, group, ...]}
 *       {"mult_table": [[0,1,...], ...]}        row-major, index 0 = identity
 *       {"permutations": {"degree": d, "generators": [[...], ...]}}
 *
 *   "space": {"parts": [part, ...]} with part one of
 *       {"kind": "point"}
 *       {"kind": "gset", "points": p, "action": [[...], ...]}   one permutation
 *                                                               per group element
 *       {"kind": "circle"}
 *
 *   "twist": one of
 *       {"kind": "trivial"}
 *       {"kind": "cocycle", "modulus": N, "exponents": [[...], ...]}  n x n
 *       {"kind": "hom", "modulus": N, "exponents": [...]}   holonomy twist;
 *                                                 every part must be a circle
 *
 * Anything malformed raises InvalidInput.
 */
struct Instance {
    SpaceSpec space;
    TwistSpec twist;
};

// max_group_order <= 0 means unlimited.
Instance parse_instance(const std::string& json_text, long max_group_order = 0);
Instance load_instance(const std::string& path, long max_group_order = 0);
std::string read_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

struct ComputeOptions {
    int degree = -1;  // -1 = both degrees
    bool per_summand = false;
    bool with_basis = false;
};

// Runs the solver and serializes the result with sorted keys and fixed
// indentation; identical input bytes and options yield identical output bytes.
std::string compute_result_json(const Instance& inst, const std::string& input_bytes,
                                const ComputeOptions& opt);

// Independent cross-checks: "regular-classes" (the twist-regular conjugacy
// classes, whose count is the degree-0 dimension over a point),
// "circle-rank" (per-summand circle ranks from the kernel/cokernel of the
// holonomy shift), and "orbit-count" (the untwisted dimension count from
// orbits of fixed pairs; rejects twisted instances).
std::string oracle_result_json(const Instance& inst, const std::string& kind,
                               const std::string& input_bytes);

}  // namespace ktq
