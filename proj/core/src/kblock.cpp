#include "ktq/kblock.hpp"

#include <algorithm>

#include "ktq/errors.hpp"

namespace ktq {

namespace {

bool is_perm(const std::vector<int>& p, long n) {
    if (static_cast<long>(p.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

long dim_of(const KBlock& b, int degree) { return degree == 0 ? b.dim0 : b.dim1; }

long fixed_index(const std::vector<long>& fixed, long point) {
    auto it = std::lower_bound(fixed.begin(), fixed.end(), point);
    if (it == fixed.end() || *it != point)
        throw InternalError("expected fixed point is missing from the target space");
    return static_cast<long>(it - fixed.begin());
}

// The image basis character of each source basis character under restriction;
// anything other than an exact basis hit is a convention bug.
std::vector<long> restriction_char_map(const RingPtr& rs, const RingPtr& rt) {
    long ms = rs->size(), mt = rt->size();
    std::vector<long> img(static_cast<std::size_t>(ms), -1);
    for (long j = 0; j < ms; ++j) {
        ClassElement res = restrict_r(basis_element(rs, j), rt);
        long hit = -1;
        for (long i = 0; i < mt; ++i) {
            const Rational& c = res.coeff[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            if (hit >= 0 || c != 1)
                throw InternalError("basis character restriction is not a basis character");
            hit = i;
        }
        if (hit < 0) throw InternalError("basis character restricted to zero");
        img[static_cast<std::size_t>(j)] = hit;
    }
    return img;
}

}  // namespace

SpaceSpec validate_space(Group g, std::vector<SpacePart> parts) {
    if (!g) throw InvalidInput("space requires a group");
    int n = g->order();
    for (auto& part : parts) {
        if (part.kind == SpacePart::Kind::Circle) {
            if (!part.action.empty()) throw InvalidInput("circle parts carry no action data");
            part.npoints = 1;
            continue;
        }
        if (part.npoints < 1) throw InvalidInput("finite parts need at least one point");
        if (static_cast<long>(part.action.size()) != n)
            throw InvalidInput("action table must list one permutation per group element");
        for (int a = 0; a < n; ++a)
            if (!is_perm(part.action[static_cast<std::size_t>(a)], part.npoints))
                throw InvalidInput("action entries must be permutations of the part's points");
        for (long p = 0; p < part.npoints; ++p)
            if (part.action[0][static_cast<std::size_t>(p)] != p)
                throw InvalidInput("identity element must act trivially");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const auto& pa = part.action[static_cast<std::size_t>(a)];
                const auto& pb = part.action[static_cast<std::size_t>(b)];
                const auto& pab = part.action[static_cast<std::size_t>(g->mul(a, b))];
                for (long p = 0; p < part.npoints; ++p)
                    if (pab[static_cast<std::size_t>(p)] !=
                        pa[static_cast<std::size_t>(pb[static_cast<std::size_t>(p)])])
                        throw InvalidInput("action is not a group homomorphism");
            }
    }
    return SpaceSpec{std::move(g), std::move(parts)};
}

TwistSpec make_twist(const SpaceSpec& x, Cocycle2 alpha, std::vector<HomTwist> holonomy) {
    if (alpha.g != x.g) throw InvalidInput("twist cocycle must live on the space's group");
    long circles = 0;
    for (const auto& part : x.parts)
        if (part.kind == SpacePart::Kind::Circle) ++circles;
    if (!holonomy.empty() && static_cast<long>(holonomy.size()) != circles)
        throw InvalidInput("holonomy twists must match the circle parts one to one");
    for (const auto& h : holonomy)
        if (h.g != x.g) throw InvalidInput("holonomy twist must live on the space's group");
    return TwistSpec{std::move(alpha), std::move(holonomy)};
}

std::vector<std::vector<long>> fixed_points(const SpaceSpec& x, int g) {
    if (g < 0 || g >= x.g->order()) throw InvalidInput("element out of range");
    std::vector<std::vector<long>> out(x.parts.size());
    for (std::size_t pi = 0; pi < x.parts.size(); ++pi) {
        const SpacePart& part = x.parts[pi];
        if (part.kind == SpacePart::Kind::Circle) continue;
        for (long p = 0; p < part.npoints; ++p)
            if (part.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)] == p)
                out[pi].push_back(p);
    }
    return out;
}

long hom_shift(const RingPtr& ring, const HomTwist& lambda) {
    if (lambda.g != ring->ambient())
        throw InvalidInput("holonomy twist lives on a different group");
    long m = ring->size();
    long e = lambda.exp[static_cast<std::size_t>(ring->generator())];
    long num = e * m;
    if (num % lambda.modulus != 0)
        throw InternalError("holonomy value is not a root of unity of the subgroup order");
    return ((num / lambda.modulus) % m + m) % m;
}

long KBlock::col0(long part, long point_index, long char_index) const {
    return parts[static_cast<std::size_t>(part)].off0 + point_index * ring->size() + char_index;
}

long KBlock::col0_circle(long part, long orbit) const {
    return parts[static_cast<std::size_t>(part)].off0 + orbit;
}

long KBlock::col1(long part, long orbit) const {
    return parts[static_cast<std::size_t>(part)].off1 + orbit;
}

namespace {

KBlock build_block_impl(const SpaceSpec& x, const TwistSpec& p, int g, RingPtr ring) {
    if (ring->ambient() != x.g) throw InternalError("block ring lives on a different group");
    KBlock b;
    b.g = g;
    b.ring = std::move(ring);
    long m = b.ring->size();
    std::vector<std::vector<long>> fixed = fixed_points(x, g);

    // Every element of the cyclic group must fix the fixed-point space of g
    // pointwise; for subgroups of <g> this is a theorem, so a violation can
    // only mean corrupt action tables.
    for (int c : b.ring->elements())
        for (std::size_t pi = 0; pi < x.parts.size(); ++pi) {
            if (x.parts[pi].kind == SpacePart::Kind::Circle) continue;
            for (long pt : fixed[pi])
                if (x.parts[pi].action[static_cast<std::size_t>(c)][static_cast<std::size_t>(pt)] != pt)
                    throw InternalError("cyclic group acts nontrivially on a fixed-point space");
        }

    long circle_seen = 0;
    for (std::size_t pi = 0; pi < x.parts.size(); ++pi) {
        PartBlock pb;
        pb.part = static_cast<long>(pi);
        if (x.parts[pi].kind == SpacePart::Kind::Circle) {
            pb.circle = true;
            pb.shift = p.holonomy.empty()
                           ? 0
                           : hom_shift(b.ring, p.holonomy[static_cast<std::size_t>(circle_seen)]);
            ++circle_seen;
            pb.orbit_of.assign(static_cast<std::size_t>(m), -1);
            for (long j = 0; j < m; ++j) {
                if (pb.orbit_of[static_cast<std::size_t>(j)] >= 0) continue;
                std::vector<long> orb;
                long cur = j;
                while (pb.orbit_of[static_cast<std::size_t>(cur)] < 0) {
                    pb.orbit_of[static_cast<std::size_t>(cur)] = static_cast<long>(pb.orbits.size());
                    orb.push_back(cur);
                    cur = (cur + pb.shift) % m;
                }
                std::sort(orb.begin(), orb.end());
                pb.orbits.push_back(std::move(orb));
            }
            pb.dim0 = pb.dim1 = static_cast<long>(pb.orbits.size());
        } else {
            pb.fixed = fixed[pi];
            pb.dim0 = static_cast<long>(pb.fixed.size()) * m;
            pb.dim1 = 0;
        }
        pb.off0 = b.dim0;
        pb.off1 = b.dim1;
        b.dim0 += pb.dim0;
        b.dim1 += pb.dim1;
        b.parts.push_back(std::move(pb));
    }
    return b;
}

}  // namespace

KBlock build_block(const SpaceSpec& x, const TwistSpec& p, int g) {
    return build_block_impl(x, p, g, TwistedCharRing::build(p.alpha, g));
}

KBlock build_block_w(const SpaceSpec& x, const TwistSpec& p, int g, const RingPtr& ring) {
    if (ring->alpha().modulus != p.alpha.modulus || ring->alpha().exp != p.alpha.exp)
        throw InternalError("ring cocycle differs from the twist cocycle");
    return build_block_impl(x, p, g, ring);
}

QMatrix group_restriction_matrix(const KBlock& source, const KBlock& target, int degree) {
    if (source.g != target.g) throw InternalError("group restriction requires a common space");
    std::vector<long> img = restriction_char_map(source.ring, target.ring);
    long ms = source.ring->size();
    QMatrix mat(dim_of(target, degree), dim_of(source, degree));
    for (std::size_t pi = 0; pi < source.parts.size(); ++pi) {
        const PartBlock& ps = source.parts[pi];
        const PartBlock& pt = target.parts[pi];
        long part = static_cast<long>(pi);
        if (!ps.circle) {
            if (degree != 0) continue;
            if (ps.fixed != pt.fixed) throw InternalError("fixed sets differ on a common space");
            for (long f = 0; f < static_cast<long>(ps.fixed.size()); ++f)
                for (long j = 0; j < ms; ++j)
                    mat.at(target.col0(part, f, img[static_cast<std::size_t>(j)]),
                           source.col0(part, f, j)) = 1;
        } else if (degree == 0) {
            for (long o = 0; o < static_cast<long>(ps.orbits.size()); ++o) {
                std::vector<long> cnt(static_cast<std::size_t>(target.ring->size()), 0);
                for (long j : ps.orbits[static_cast<std::size_t>(o)])
                    ++cnt[static_cast<std::size_t>(img[static_cast<std::size_t>(j)])];
                for (long ot = 0; ot < static_cast<long>(pt.orbits.size()); ++ot) {
                    const auto& orb = pt.orbits[static_cast<std::size_t>(ot)];
                    long c0 = cnt[static_cast<std::size_t>(orb[0])];
                    for (long i : orb)
                        if (cnt[static_cast<std::size_t>(i)] != c0)
                            throw InternalError("restriction does not respect holonomy orbits");
                    if (c0 != 0)
                        mat.at(target.col0_circle(part, ot), source.col0_circle(part, o)) =
                            Rational(c0);
                }
            }
        } else {
            for (long o = 0; o < static_cast<long>(ps.orbits.size()); ++o) {
                const auto& orb = ps.orbits[static_cast<std::size_t>(o)];
                long ot = pt.orbit_of[static_cast<std::size_t>(img[static_cast<std::size_t>(orb[0])])];
                for (long j : orb)
                    if (pt.orbit_of[static_cast<std::size_t>(img[static_cast<std::size_t>(j)])] != ot)
                        throw InternalError("restriction does not respect holonomy orbits");
                mat.at(target.col1(part, ot), source.col1(part, o)) = 1;
            }
        }
    }
    return mat;
}

QMatrix space_restriction_matrix(const KBlock& source, const KBlock& target, int degree) {
    if (source.ring != target.ring && source.ring->elements() != target.ring->elements())
        throw InternalError("space restriction requires a common character ring");
    long m = source.ring->size();
    QMatrix mat(dim_of(target, degree), dim_of(source, degree));
    for (std::size_t pi = 0; pi < source.parts.size(); ++pi) {
        const PartBlock& ps = source.parts[pi];
        const PartBlock& pt = target.parts[pi];
        long part = static_cast<long>(pi);
        if (!ps.circle) {
            if (degree != 0) continue;
            for (long tf = 0; tf < static_cast<long>(pt.fixed.size()); ++tf) {
                long sf = fixed_index(ps.fixed, pt.fixed[static_cast<std::size_t>(tf)]);
                for (long j = 0; j < m; ++j)
                    mat.at(target.col0(part, tf, j), source.col0(part, sf, j)) = 1;
            }
        } else {
            if (ps.shift != pt.shift) throw InternalError("holonomy shift mismatch between blocks");
            for (long o = 0; o < static_cast<long>(ps.orbits.size()); ++o) {
                if (degree == 0)
                    mat.at(target.col0_circle(part, o), source.col0_circle(part, o)) = 1;
                else
                    mat.at(target.col1(part, o), source.col1(part, o)) = 1;
            }
        }
    }
    return mat;
}

QMatrix action_matrix(const SpaceSpec& x, const KBlock& source, const KBlock& target, int k,
                      int degree) {
    ConjAction act = conj_act_perm(source.ring, k);
    if (act.target->elements() != target.ring->elements())
        throw InternalError("conjugated ring does not match the target block");
    long m = source.ring->size();
    QMatrix mat(dim_of(target, degree), dim_of(source, degree));
    for (std::size_t pi = 0; pi < source.parts.size(); ++pi) {
        const PartBlock& ps = source.parts[pi];
        const PartBlock& pt = target.parts[pi];
        long part = static_cast<long>(pi);
        if (!ps.circle) {
            if (degree != 0) continue;
            const auto& perm = x.parts[pi].action[static_cast<std::size_t>(k)];
            for (long sf = 0; sf < static_cast<long>(ps.fixed.size()); ++sf) {
                long moved = perm[static_cast<std::size_t>(ps.fixed[static_cast<std::size_t>(sf)])];
                long tf = fixed_index(pt.fixed, moved);
                for (long j = 0; j < m; ++j)
                    mat.at(target.col0(part, tf, act.image[static_cast<std::size_t>(j)]),
                           source.col0(part, sf, j)) = 1;
            }
        } else {
            for (long o = 0; o < static_cast<long>(ps.orbits.size()); ++o) {
                const auto& orb = ps.orbits[static_cast<std::size_t>(o)];
                long ot = pt.orbit_of[static_cast<std::size_t>(act.image[static_cast<std::size_t>(orb[0])])];
                long hits = 0;
                for (long j : orb) {
                    if (pt.orbit_of[static_cast<std::size_t>(act.image[static_cast<std::size_t>(j)])] != ot)
                        throw InternalError("conjugation does not respect holonomy orbits");
                    ++hits;
                }
                if (hits != static_cast<long>(pt.orbits[static_cast<std::size_t>(ot)].size()))
                    throw InternalError("conjugation does not respect holonomy orbits");
                if (degree == 0)
                    mat.at(target.col0_circle(part, ot), source.col0_circle(part, o)) = 1;
                else
                    mat.at(target.col1(part, ot), source.col1(part, o)) = 1;
            }
        }
    }
    return mat;
}

CircleRanks circle_mv_oracle(long m, long shift) {
    if (m < 1) throw InvalidInput("circle oracle needs a positive order");
    QMatrix d(m, m);
    for (long j = 0; j < m; ++j) {
        d.at(j, j) += 1;
        d.at(((j + shift) % m + m) % m, j) -= 1;
    }
    long r = rank(d);
    return CircleRanks{m - r, m - r};
}

}  // namespace ktq
