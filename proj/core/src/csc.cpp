#include "ktq/csc.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ktq/errors.hpp"

namespace ktq {

namespace {

long dim_of(const KBlock& b, int degree) { return degree == 0 ? b.dim0 : b.dim1; }

}  // namespace

Assembled assemble(const SpaceSpec& x, const TwistSpec& p, int degree) {
    if (degree != 0 && degree != 1) throw InvalidInput("degree must be 0 or 1");
    const Group& g = x.g;
    int n = g->order();

    Assembled out;
    out.degree = degree;
    out.blocks.reserve(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) out.blocks.push_back(build_block(x, p, e));
    out.offsets.resize(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
        out.offsets[static_cast<std::size_t>(e)] = out.total_cols;
        out.total_cols += dim_of(out.blocks[static_cast<std::size_t>(e)], degree);
    }

    struct CompatPair {
        int g_elem;
        int h_elem;
        KBlock w;
    };
    std::vector<CompatPair> compat;
    long nrows = 0;
    for (int k = 1; k < n; ++k)
        for (int e = 0; e < n; ++e)
            nrows += dim_of(out.blocks[static_cast<std::size_t>(g->conjugate(k, e))], degree);
    for (int e = 0; e < n; ++e)
        for (int h : cyclic_subgroup_elements(g, e)) {
            if (h == e) continue;
            CompatPair pair{e, h,
                            build_block_w(x, p, e, out.blocks[static_cast<std::size_t>(h)].ring)};
            nrows += dim_of(pair.w, degree);
            compat.push_back(std::move(pair));
        }

    out.rows = QMatrix(nrows, out.total_cols);
    long r = 0;
    for (int k = 1; k < n; ++k)
        for (int e = 0; e < n; ++e) {
            int t = g->conjugate(k, e);
            const KBlock& src = out.blocks[static_cast<std::size_t>(e)];
            const KBlock& dst = out.blocks[static_cast<std::size_t>(t)];
            QMatrix a = action_matrix(x, src, dst, k, degree);
            long off_s = out.offsets[static_cast<std::size_t>(e)];
            long off_t = out.offsets[static_cast<std::size_t>(t)];
            for (long i = 0; i < a.rows; ++i) {
                out.rows.at(r + i, off_t + i) += 1;
                for (long j = 0; j < a.cols; ++j)
                    if (a.at(i, j) != 0) out.rows.at(r + i, off_s + j) -= a.at(i, j);
            }
            r += a.rows;
        }
    for (const CompatPair& pair : compat) {
        const KBlock& bg = out.blocks[static_cast<std::size_t>(pair.g_elem)];
        const KBlock& bh = out.blocks[static_cast<std::size_t>(pair.h_elem)];
        QMatrix r1 = group_restriction_matrix(bg, pair.w, degree);
        QMatrix r2 = space_restriction_matrix(bh, pair.w, degree);
        long off_g = out.offsets[static_cast<std::size_t>(pair.g_elem)];
        long off_h = out.offsets[static_cast<std::size_t>(pair.h_elem)];
        for (long i = 0; i < r1.rows; ++i) {
            for (long j = 0; j < r1.cols; ++j)
                if (r1.at(i, j) != 0) out.rows.at(r + i, off_g + j) += r1.at(i, j);
            for (long j = 0; j < r2.cols; ++j)
                if (r2.at(i, j) != 0) out.rows.at(r + i, off_h + j) -= r2.at(i, j);
        }
        r += r1.rows;
    }
    if (r != nrows) throw InternalError("assembled row count mismatch");
    return out;
}

Solution solve_degree(const SpaceSpec& x, const TwistSpec& p, int degree) {
    Assembled a = assemble(x, p, degree);
    Solution s;
    s.degree = degree;
    s.basis = kernel(a.rows);
    s.dim = s.basis.dim();

    ConjugacyData conj = conjugacy(x.g);
    for (std::size_t c = 0; c < conj.classes.size(); ++c) {
        int rep = conj.representative(static_cast<int>(c));
        long off = a.offsets[static_cast<std::size_t>(rep)];
        long width = dim_of(a.blocks[static_cast<std::size_t>(rep)], degree);
        QMatrix proj(static_cast<long>(s.basis.vectors.size()), width);
        for (long i = 0; i < proj.rows; ++i)
            for (long j = 0; j < width; ++j)
                proj.at(i, j) = s.basis.vectors[static_cast<std::size_t>(i)]
                                               [static_cast<std::size_t>(off + j)];
        s.per_summand.push_back(SummandDim{rep, width, rank(proj)});
    }
    s.blocks = std::move(a.blocks);
    s.offsets = std::move(a.offsets);
    return s;
}

KResult solve_all(const SpaceSpec& x, const TwistSpec& p) {
    return KResult{solve_degree(x, p, 0), solve_degree(x, p, 1)};
}

std::vector<std::string> column_labels(const std::vector<KBlock>& blocks, int degree) {
    std::vector<std::string> out;
    for (const KBlock& b : blocks) {
        for (const PartBlock& pb : b.parts) {
            std::string prefix =
                "g" + std::to_string(b.g) + ":part" + std::to_string(pb.part) + ":";
            if (!pb.circle) {
                if (degree != 0) continue;
                for (long f = 0; f < static_cast<long>(pb.fixed.size()); ++f)
                    for (long j = 0; j < b.ring->size(); ++j)
                        out.push_back(prefix + "pt" +
                                      std::to_string(pb.fixed[static_cast<std::size_t>(f)]) +
                                      ":chi" + std::to_string(j));
            } else {
                for (const auto& orb : pb.orbits)
                    out.push_back(prefix + "orb" + std::to_string(orb[0]));
            }
        }
    }
    return out;
}

ASCount untwisted_count_oracle(const SpaceSpec& x) {
    const Group& g = x.g;
    int n = g->order();
    ConjugacyData conj = conjugacy(g);
    long nclasses = static_cast<long>(conj.classes.size());

    long circles = 0;
    std::map<std::pair<long, std::pair<int, long>>, long> pair_id;
    std::vector<std::pair<long, std::pair<int, long>>> pairs;
    for (std::size_t pi = 0; pi < x.parts.size(); ++pi) {
        const SpacePart& part = x.parts[pi];
        if (part.kind == SpacePart::Kind::Circle) {
            ++circles;
            continue;
        }
        for (int e = 0; e < n; ++e)
            for (long pt = 0; pt < part.npoints; ++pt)
                if (part.action[static_cast<std::size_t>(e)][static_cast<std::size_t>(pt)] == pt) {
                    auto key = std::make_pair(static_cast<long>(pi), std::make_pair(e, pt));
                    pair_id.emplace(key, static_cast<long>(pairs.size()));
                    pairs.push_back(key);
                }
    }

    // Orbits of k . (g, pt) = (k g k^-1, k pt) via union-find.
    std::vector<long> parent(pairs.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<long>(i);
    std::function<long(long)> find = [&](long v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [pi, gp] = pairs[i];
        auto [e, pt] = gp;
        const SpacePart& part = x.parts[static_cast<std::size_t>(pi)];
        for (int k = 0; k < n; ++k) {
            int e2 = g->conjugate(k, e);
            long pt2 = part.action[static_cast<std::size_t>(k)][static_cast<std::size_t>(pt)];
            auto it = pair_id.find(std::make_pair(pi, std::make_pair(e2, pt2)));
            if (it == pair_id.end()) throw InternalError("fixed-pair set is not action-stable");
            long a = find(static_cast<long>(i)), b = find(it->second);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        }
    }
    long orbits = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (find(static_cast<long>(i)) == static_cast<long>(i)) ++orbits;

    return ASCount{orbits + nclasses * circles, nclasses * circles};
}

}  // namespace ktq
