#include "ktq/cocycle.hpp"

#include <algorithm>
#include <numeric>

namespace ktq {

namespace {

long mod_norm(long x, long n) {
    long r = x % n;
    return r < 0 ? r + n : r;
}

// zeta_n1^e1 == zeta_n2^e2, compared at the common modulus.
bool same_root(long e1, long n1, long e2, long n2) {
    long l = std::lcm(n1, n2);
    return mod_norm(e1 * (l / n1), l) == mod_norm(e2 * (l / n2), l);
}

long gcd_ext(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long x1, y1;
    long d = gcd_ext(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return d;
}

// Smallest nonnegative t with a*t = b (mod n), or -1 when unsolvable.
long solve_congruence(long a, long b, long n) {
    a = mod_norm(a, n);
    b = mod_norm(b, n);
    long x, y;
    long d = gcd_ext(a == 0 ? n : a, n, x, y);
    if (a == 0) return b == 0 ? 0 : -1;
    if (b % d != 0) return -1;
    long n1 = n / d;
    long t = mod_norm((b / d) % n1 * mod_norm(x, n1), n1);
    return t;
}

void require_modulus(long modulus) {
    if (modulus <= 0) throw InvalidInput("modulus must be positive");
}

}  // namespace

std::optional<CocycleViolation> check_cocycle(const Cocycle2& alpha) {
    long n = alpha.g->order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int k = 0; k < n; ++k) {
                long lhs = alpha.at(g, h) + alpha.at(alpha.g->mul(g, h), k);
                long rhs = alpha.at(h, k) + alpha.at(g, alpha.g->mul(h, k));
                if (mod_norm(lhs - rhs, alpha.modulus) != 0) return CocycleViolation{g, h, k};
            }
    return std::nullopt;
}

Cochain1 make_cochain1(const Group& g, long modulus, std::vector<long> exp) {
    require_modulus(modulus);
    if (static_cast<long>(exp.size()) != g->order()) throw InvalidInput("cochain length mismatch");
    for (auto& e : exp) e = mod_norm(e, modulus);
    if (exp[0] != 0) throw InvalidInput("cochain must send the identity to 1");
    return Cochain1{g, modulus, std::move(exp)};
}

Cocycle2 make_cocycle2(const Group& g, long modulus, std::vector<long> exp) {
    require_modulus(modulus);
    long n = g->order();
    if (static_cast<long>(exp.size()) != n * n) throw InvalidInput("cocycle table size mismatch");
    for (auto& e : exp) e = mod_norm(e, modulus);
    Cocycle2 alpha{g, modulus, std::move(exp)};
    for (int x = 0; x < n; ++x)
        if (alpha.at(0, x) != 0 || alpha.at(x, 0) != 0)
            throw InvalidInput("cocycle must be normalized (identity row and column trivial)");
    if (auto bad = check_cocycle(alpha)) {
        auto [a, b, c] = *bad;
        throw InvalidInput("cocycle identity fails at triple (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
    }
    return alpha;
}

HomTwist make_hom_twist(const Group& g, long modulus, std::vector<long> exp) {
    require_modulus(modulus);
    if (static_cast<long>(exp.size()) != g->order()) throw InvalidInput("twist length mismatch");
    for (auto& e : exp) e = mod_norm(e, modulus);
    HomTwist lambda{g, modulus, std::move(exp)};
    long n = g->order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mod_norm(lambda.exp[a] + lambda.exp[b] - lambda.exp[g->mul(a, b)], modulus) != 0)
                throw InvalidInput("twist is not a homomorphism");
    return lambda;
}

Cocycle2 trivial_cocycle(const Group& g) {
    return Cocycle2{g, 1, std::vector<long>(static_cast<std::size_t>(g->order()) * g->order(), 0)};
}

Cochain1 trivial_cochain(const Group& g) {
    return Cochain1{g, 1, std::vector<long>(g->order(), 0)};
}

Cocycle2 coboundary(const Cochain1& beta) {
    long n = beta.g->order();
    std::vector<long> exp(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            exp[static_cast<std::size_t>(a) * n + b] =
                mod_norm(beta.exp[a] + beta.exp[b] - beta.exp[beta.g->mul(a, b)], beta.modulus);
    return Cocycle2{beta.g, beta.modulus, std::move(exp)};
}

Cocycle2 restrict_cocycle(const Cocycle2& alpha, const SubgroupView& view) {
    long m = view.sub->order();
    std::vector<long> exp(m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            exp[static_cast<std::size_t>(a) * m + b] = alpha.at(view.to_ambient[a], view.to_ambient[b]);
    return Cocycle2{view.sub, alpha.modulus, std::move(exp)};
}

HomTwist restrict_hom(const HomTwist& lambda, const SubgroupView& view) {
    std::vector<long> exp(view.sub->order());
    for (std::size_t i = 0; i < exp.size(); ++i) exp[i] = lambda.exp[view.to_ambient[i]];
    return HomTwist{view.sub, lambda.modulus, std::move(exp)};
}

Cochain1 restrict_cochain(const Cochain1& beta, const SubgroupView& view) {
    std::vector<long> exp(view.sub->order());
    for (std::size_t i = 0; i < exp.size(); ++i) exp[i] = beta.exp[view.to_ambient[i]];
    return Cochain1{view.sub, beta.modulus, std::move(exp)};
}

Cochain1 trivialize_on_cyclic(const Cocycle2& alpha) {
    const Group& c = alpha.g;
    long m = c->order();
    int gen = canonical_generator(c, [&] {
        std::vector<int> all(m);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }());

    long n = alpha.modulus;
    // Partial sums over the generator powers: s[a] = sum_{i<a} alpha(gen^i, gen).
    std::vector<long> s(m + 1, 0);
    std::vector<int> pow(m + 1, 0);
    for (long a = 0; a < m; ++a) {
        s[a + 1] = s[a] + alpha.at(pow[a], gen);
        pow[a + 1] = c->mul(pow[a], gen);
    }
    if (pow[m] != 0) throw InternalError("generator order mismatch in trivializer");

    long modulus = n;
    long scale = 1;
    long t = solve_congruence(m, s[m], n);
    if (t < 0) {
        modulus = m * n;
        scale = m;
        t = solve_congruence(m, mod_norm(scale * s[m], modulus), modulus);
        if (t < 0) throw InternalError("closing constraint unsolvable at enlarged modulus");
    }

    std::vector<long> exp(m, 0);
    for (long a = 0; a < m; ++a) exp[pow[a]] = mod_norm(a * t - scale * s[a], modulus);
    Cochain1 beta{c, modulus, std::move(exp)};

    Cocycle2 delta = coboundary(beta);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (!same_root(delta.at(a, b), modulus, alpha.at(a, b), n))
                throw InternalError("trivializer does not reproduce the cocycle");
    return beta;
}

long conjugation_phase(const Cocycle2& alpha, int k, int h) {
    int khk = alpha.g->conjugate(k, h);
    return mod_norm(alpha.at(k, h) - alpha.at(khk, k), alpha.modulus);
}

LCharacter l_character(const Cocycle2& alpha, int g) {
    long n = alpha.g->order();
    std::vector<int> cent;
    for (int k = 0; k < n; ++k)
        if (alpha.g->mul(k, g) == alpha.g->mul(g, k)) cent.push_back(k);
    LCharacter out;
    out.centralizer = make_subgroup_view(alpha.g, cent);
    long m = out.centralizer.sub->order();
    std::vector<long> exp(m);
    for (int i = 0; i < m; ++i) {
        int h = out.centralizer.to_ambient[i];
        exp[i] = mod_norm(alpha.at(h, g) - alpha.at(g, h), alpha.modulus);
    }
    // make_hom_twist validates multiplicativity, which is a theorem here.
    try {
        out.character = make_hom_twist(out.centralizer.sub, alpha.modulus, std::move(exp));
    } catch (const InvalidInput& e) {
        throw InternalError(std::string("commutator character is not multiplicative: ") + e.what());
    }
    return out;
}

std::vector<int> alpha_regular_class_reps(const Cocycle2& alpha) {
    ConjugacyData classes = conjugacy(alpha.g);
    std::vector<int> reps;
    for (const auto& cls : classes.classes) {
        bool first = true;
        bool regular = false;
        for (int g : cls) {
            bool reg = true;
            for (int h : classes.centralizers[g]) {
                if (mod_norm(alpha.at(g, h) - alpha.at(h, g), alpha.modulus) != 0) {
                    reg = false;
                    break;
                }
            }
            if (first) {
                regular = reg;
                first = false;
            } else if (reg != regular) {
                throw InternalError("regularity must be constant on a conjugacy class");
            }
        }
        if (regular) reps.push_back(cls[0]);
    }
    return reps;
}

std::vector<Cocycle2> enumerate_cocycles_mod2(const Group& g) {
    long n = g->order();
    long nvars = (n - 1) * (n - 1);
    auto var = [n](int a, int b) { return (a - 1) * (n - 1) + (b - 1); };

    long words = (nvars + 63) / 64;
    using Row = std::vector<std::uint64_t>;
    auto set_bit = [&](Row& r, long v) { r[v / 64] ^= (std::uint64_t{1} << (v % 64)); };
    auto get_bit = [&](const Row& r, long v) { return (r[v / 64] >> (v % 64)) & 1; };

    std::vector<Row> rows;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Row r(words, 0);
                auto add = [&](int x, int y) {
                    if (x != 0 && y != 0) set_bit(r, var(x, y));
                };
                add(a, b);
                add(g->mul(a, b), c);
                add(b, c);
                add(a, g->mul(b, c));
                if (std::any_of(r.begin(), r.end(), [](std::uint64_t w) { return w != 0; }))
                    rows.push_back(std::move(r));
            }

    // F2 elimination; the system is homogeneous, so the kernel basis spans
    // all solutions.
    std::vector<long> pivot_of_row;
    long rrow = 0;
    for (long col = 0; col < nvars && rrow < static_cast<long>(rows.size()); ++col) {
        long sel = -1;
        for (long i = rrow; i < static_cast<long>(rows.size()); ++i)
            if (get_bit(rows[i], col)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[rrow], rows[sel]);
        for (long i = 0; i < static_cast<long>(rows.size()); ++i) {
            if (i != rrow && get_bit(rows[i], col))
                for (long w = 0; w < words; ++w) rows[i][w] ^= rows[rrow][w];
        }
        pivot_of_row.push_back(col);
        ++rrow;
    }

    std::vector<bool> is_pivot(nvars, false);
    for (long p : pivot_of_row) is_pivot[p] = true;
    std::vector<long> free_cols;
    for (long v = 0; v < nvars; ++v)
        if (!is_pivot[v]) free_cols.push_back(v);

    if (free_cols.size() > 20) throw InvalidInput("cocycle space too large to enumerate");

    std::vector<Row> basis;
    for (long f : free_cols) {
        Row v(words, 0);
        set_bit(v, f);
        for (long i = 0; i < static_cast<long>(pivot_of_row.size()); ++i)
            if (get_bit(rows[i], f)) set_bit(v, pivot_of_row[i]);
        basis.push_back(std::move(v));
    }

    std::vector<Cocycle2> out;
    out.reserve(std::size_t{1} << basis.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
        Row sol(words, 0);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((mask >> i) & 1)
                for (long w = 0; w < words; ++w) sol[w] ^= basis[i][w];
        std::vector<long> exp(n * n, 0);
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b)
                exp[static_cast<std::size_t>(a) * n + b] = get_bit(sol, var(a, b));
        out.push_back(make_cocycle2(g, 2, std::move(exp)));
    }
    return out;
}

Cocycle2 cyclic_standard_cocycle(const Group& cyclic_g, long modulus, long t) {
    long n = cyclic_g->order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (cyclic_g->mul(a, b) != (a + b) % n)
                throw InvalidInput("cyclic_standard_cocycle requires power-indexed cyclic tables");
    std::vector<long> exp(n * n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            exp[a * n + b] = mod_norm(t * ((a + b) / n), modulus);
    return make_cocycle2(cyclic_g, modulus, std::move(exp));
}

}  // namespace ktq
