#include "ktq/instance.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ktq/errors.hpp"

namespace ktq {

namespace {

using nlohmann::json;

const json& member(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw InvalidInput(std::string("missing member \"") + key + "\"");
    return *it;
}

long int_member(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_number_integer()) throw InvalidInput(std::string("\"") + key + "\" must be an integer");
    return v.get<long>();
}

std::vector<std::vector<int>> int_matrix(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of arrays");
    std::vector<std::vector<int>> out;
    for (const json& row : j) {
        if (!row.is_array()) throw InvalidInput(std::string(what) + " must be an array of arrays");
        std::vector<int> r;
        for (const json& v : row) {
            if (!v.is_number_integer()) throw InvalidInput(std::string(what) + " entries must be integers");
            r.push_back(v.get<int>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<long> long_list(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
    std::vector<long> out;
    for (const json& v : j) {
        if (!v.is_number_integer()) throw InvalidInput(std::string(what) + " entries must be integers");
        out.push_back(v.get<long>());
    }
    return out;
}

Group parse_group(const json& j, long max_group_order) {
    if (!j.is_object()) throw InvalidInput("\"group\" must be an object");
    if (j.contains("mult_table")) return GroupTable::from_mult_table(int_matrix(j["mult_table"], "mult_table"));
    if (j.contains("permutations")) {
        const json& p = j["permutations"];
        long degree = int_member(p, "degree");
        if (degree < 1 || degree > 4096) throw InvalidInput("permutation degree out of range");
        long cap = max_group_order > 0 ? max_group_order : 1 << 20;
        return GroupTable::from_permutations(static_cast<int>(degree),
                                             int_matrix(member(p, "generators"), "generators"), cap);
    }
    const json& name = member(j, "name");
    if (!name.is_string()) throw InvalidInput("group \"name\" must be a string");
    std::string s = name.get<std::string>();
    if (s == "cyclic") return GroupTable::cyclic(int_member(j, "n"));
    if (s == "klein") return GroupTable::klein();
    if (s == "dihedral") return GroupTable::dihedral(int_member(j, "n"));
    if (s == "quaternion") return GroupTable::quaternion8();
    if (s == "symmetric") {
        if (int_member(j, "n") != 3) throw InvalidInput("only the symmetric group on 3 letters is built in");
        return GroupTable::symmetric3();
    }
    if (s == "product") {
        const json& factors = member(j, "factors");
        if (!factors.is_array() || factors.empty()) throw InvalidInput("\"factors\" must be a nonempty array");
        Group acc;
        for (const json& f : factors) {
            Group g = parse_group(f, max_group_order);
            acc = acc ? GroupTable::direct_product(acc, g) : g;
        }
        return acc;
    }
    throw InvalidInput("unknown group name \"" + s + "\"");
}

SpacePart parse_part(const json& j, const Group& g) {
    if (!j.is_object()) throw InvalidInput("space parts must be objects");
    const json& kind = member(j, "kind");
    if (!kind.is_string()) throw InvalidInput("part \"kind\" must be a string");
    std::string s = kind.get<std::string>();
    SpacePart part;
    if (s == "circle" || s == "point") {
        if (j.contains("points") || j.contains("action"))
            throw InvalidInput("\"" + s + "\" parts take no \"points\" or \"action\" members");
    }
    if (s == "circle") {
        part.kind = SpacePart::Kind::Circle;
        return part;
    }
    if (s == "point") {
        part.kind = SpacePart::Kind::FiniteSet;
        part.npoints = 1;
        part.action.assign(static_cast<std::size_t>(g->order()), std::vector<int>(1, 0));
        return part;
    }
    if (s == "gset") {
        part.kind = SpacePart::Kind::FiniteSet;
        part.npoints = int_member(j, "points");
        part.action = int_matrix(member(j, "action"), "action");
        return part;
    }
    throw InvalidInput("unknown part kind \"" + s + "\"");
}

TwistSpec parse_twist(const json& j, const SpaceSpec& space) {
    if (!j.is_object()) throw InvalidInput("\"twist\" must be an object");
    const json& kind = member(j, "kind");
    if (!kind.is_string()) throw InvalidInput("twist \"kind\" must be a string");
    std::string s = kind.get<std::string>();
    const Group& g = space.g;
    if (s == "trivial") return make_twist(space, trivial_cocycle(g), {});
    if (s == "cocycle") {
        long modulus = int_member(j, "modulus");
        auto rows = int_matrix(member(j, "exponents"), "exponents");
        std::vector<long> flat;
        for (const auto& r : rows)
            for (int v : r) flat.push_back(v);
        return make_twist(space, make_cocycle2(g, modulus, std::move(flat)), {});
    }
    if (s == "hom") {
        for (const auto& part : space.parts)
            if (part.kind != SpacePart::Kind::Circle)
                throw InvalidInput("holonomy twists require a space whose parts are all circles");
        long modulus = int_member(j, "modulus");
        HomTwist lambda = make_hom_twist(g, modulus, long_list(member(j, "exponents"), "exponents"));
        std::vector<HomTwist> holonomy(space.parts.size(), lambda);
        return make_twist(space, trivial_cocycle(g), std::move(holonomy));
    }
    throw InvalidInput("unknown twist kind \"" + s + "\"");
}

bool twist_is_trivial(const TwistSpec& t) {
    for (long e : t.alpha.exp)
        if (e % t.alpha.modulus != 0) return false;
    for (const auto& h : t.holonomy)
        for (long e : h.exp)
            if (e % h.modulus != 0) return false;
    return true;
}

json summand_json(const Solution& s, const ComputeOptions& opt) {
    json out;
    out["dim"] = s.dim;
    if (opt.per_summand) {
        json per = json::array();
        for (const SummandDim& d : s.per_summand)
            per.push_back({{"block_dim", d.block_dim}, {"class_rep", d.rep}, {"dim", d.dim}});
        out["per_summand"] = per;
    }
    if (opt.with_basis) {
        json basis = json::array();
        for (const auto& v : s.basis.vectors) {
            json row = json::array();
            for (const Rational& q : v) row.push_back(rational_to_string(q));
            basis.push_back(row);
        }
        out["basis"] = basis;
        out["labels"] = column_labels(s.blocks, s.degree);
    }
    return out;
}

}  // namespace

Instance parse_instance(const std::string& json_text, long max_group_order) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInput("instance must be a JSON object");
    Group g = parse_group(member(j, "group"), max_group_order);
    if (max_group_order > 0 && g->order() > max_group_order)
        throw InvalidInput("group order exceeds the configured limit");

    const json& sp = member(j, "space");
    const json& parts = member(sp, "parts");
    if (!parts.is_array() || parts.empty()) throw InvalidInput("\"parts\" must be a nonempty array");
    std::vector<SpacePart> plist;
    for (const json& p : parts) plist.push_back(parse_part(p, g));
    SpaceSpec space = validate_space(g, std::move(plist));

    TwistSpec twist = parse_twist(member(j, "twist"), space);
    return Instance{std::move(space), std::move(twist)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance load_instance(const std::string& path, long max_group_order) {
    return parse_instance(read_file(path), max_group_order);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

std::string compute_result_json(const Instance& inst, const std::string& input_bytes,
                                const ComputeOptions& opt) {
    if (opt.degree != -1 && opt.degree != 0 && opt.degree != 1)
        throw InvalidInput("degree must be 0, 1, or both");
    json out;
    out["engine"] = kEngineVersion;
    out["input_hash"] = hex64(fnv1a64(input_bytes));
    out["group_order"] = inst.space.g->order();
    out["degree"] = opt.degree == -1 ? "both" : std::to_string(opt.degree);
    if (opt.degree != 1) out["k0"] = summand_json(solve_degree(inst.space, inst.twist, 0), opt);
    if (opt.degree != 0) out["k1"] = summand_json(solve_degree(inst.space, inst.twist, 1), opt);
    return out.dump(2) + "\n";
}

std::string oracle_result_json(const Instance& inst, const std::string& kind,
                               const std::string& input_bytes) {
    json out;
    out["engine"] = kEngineVersion;
    out["input_hash"] = hex64(fnv1a64(input_bytes));
    out["kind"] = kind;
    if (kind == "regular-classes") {
        std::vector<int> reps = alpha_regular_class_reps(inst.twist.alpha);
        out["class_reps"] = reps;
        out["count"] = reps.size();
    } else if (kind == "circle-rank") {
        json entries = json::array();
        ConjugacyData conj = conjugacy(inst.space.g);
        for (std::size_t c = 0; c < conj.classes.size(); ++c) {
            int rep = conj.representative(static_cast<int>(c));
            KBlock b = build_block(inst.space, inst.twist, rep);
            for (const PartBlock& pb : b.parts) {
                if (!pb.circle) continue;
                CircleRanks r = circle_mv_oracle(b.ring->size(), pb.shift);
                entries.push_back({{"class_rep", rep},
                                   {"part", pb.part},
                                   {"dim0", r.dim0},
                                   {"dim1", r.dim1}});
            }
        }
        out["entries"] = entries;
    } else if (kind == "orbit-count") {
        if (!twist_is_trivial(inst.twist))
            throw InvalidInput("the orbit-count oracle applies to untwisted instances only");
        ASCount c = untwisted_count_oracle(inst.space);
        out["dim0"] = c.dim0;
        out["dim1"] = c.dim1;
    } else {
        throw InvalidInput("unknown oracle kind \"" + kind + "\"");
    }
    return out.dump(2) + "\n";
}

}  // namespace ktq
