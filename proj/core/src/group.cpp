#include "ktq/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ktq {

GroupTable::GroupTable(long n, std::vector<int> flat) : n_(n), table_(std::move(flat)), inv_(n, -1) {}

Group GroupTable::finish(long n, std::vector<int> flat) {
    if (n <= 0) throw InvalidInput("group order must be positive");
    if (static_cast<long>(flat.size()) != n * n) throw InvalidInput("multiplication table size mismatch");
    for (int v : flat)
        if (v < 0 || v >= n) throw InvalidInput("multiplication table entry out of range");

    auto at = [&](int a, int b) { return flat[static_cast<std::size_t>(a) * n + b]; };

    for (int x = 0; x < n; ++x)
        if (at(0, x) != x || at(x, 0) != x)
            throw InvalidInput("index 0 must be the identity element");

    // Latin square: rows and columns are permutations.
    for (int a = 0; a < n; ++a) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int b = 0; b < n; ++b) {
            if (seen_row[at(a, b)]) throw InvalidInput("multiplication table row is not a permutation");
            seen_row[at(a, b)] = true;
            if (seen_col[at(b, a)]) throw InvalidInput("multiplication table column is not a permutation");
            seen_col[at(b, a)] = true;
        }
    }

    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (at(at(a, b), c) != at(a, at(b, c)))
                        throw InvalidInput("multiplication table is not associative");
    } else {
        // Deterministic sample: a small arithmetic lattice of triples.
        long step = std::max<long>(1, n / 17);
        for (long a = 0; a < n; a += step)
            for (long b = 0; b < n; b += step)
                for (long c = 0; c < n; c += step)
                    if (at(at(a, b), c) != at(a, at(b, c)))
                        throw InvalidInput("multiplication table is not associative");
    }

    auto g = std::shared_ptr<GroupTable>(new GroupTable(n, std::move(flat)));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g->mul(a, b) == 0) {
                if (g->mul(b, a) != 0) throw InvalidInput("one-sided inverses found");
                g->inv_[a] = b;
                break;
            }
        }
        if (g->inv_[a] < 0) throw InvalidInput("element without inverse");
    }
    return g;
}

int GroupTable::power(int g, long k) const {
    if (k < 0) return power(inverse(g), -k);
    int acc = 0;
    for (long i = 0; i < k; ++i) acc = mul(acc, g);
    return acc;
}

long GroupTable::element_order(int g) const {
    long k = 1;
    int acc = g;
    while (acc != 0) {
        acc = mul(acc, g);
        ++k;
    }
    return k;
}

bool GroupTable::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

Group GroupTable::from_mult_table(const std::vector<std::vector<int>>& table) {
    long n = static_cast<long>(table.size());
    std::vector<int> flat;
    flat.reserve(n * n);
    for (const auto& row : table) {
        if (static_cast<long>(row.size()) != n) throw InvalidInput("multiplication table is not square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return finish(n, std::move(flat));
}

Group GroupTable::from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                                    long max_order) {
    if (degree <= 0) throw InvalidInput("permutation degree must be positive");
    for (const auto& p : generators) {
        if (static_cast<int>(p.size()) != degree) throw InvalidInput("generator degree mismatch");
        std::vector<bool> seen(degree, false);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v]) throw InvalidInput("generator is not a permutation");
            seen[v] = true;
        }
    }

    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    auto compose = [degree](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(degree);
        for (int x = 0; x < degree; ++x) r[x] = p[q[x]];
        return r;
    };

    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& gen : generators) {
            auto next = compose(elems[i], gen);
            if (index.emplace(next, static_cast<int>(elems.size())).second) {
                elems.push_back(next);
                if (static_cast<long>(elems.size()) > max_order)
                    throw InvalidInput("permutation closure exceeds the group order limit");
            }
        }
    }

    long n = static_cast<long>(elems.size());
    std::vector<int> flat(n * n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            flat[a * n + b] = index.at(compose(elems[a], elems[b]));
    return finish(n, std::move(flat));
}

Group GroupTable::cyclic(long n) {
    if (n <= 0) throw InvalidInput("cyclic group order must be positive");
    std::vector<int> flat(n * n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) flat[a * n + b] = static_cast<int>((a + b) % n);
    return finish(n, std::move(flat));
}

Group GroupTable::klein() { return direct_product(cyclic(2), cyclic(2)); }

Group GroupTable::dihedral(long order2n) {
    if (order2n < 2 || order2n % 2 != 0) throw InvalidInput("dihedral order must be even and >= 2");
    long n = order2n / 2;
    // r^i s^j at index i + n*j; (r^a s^b)(r^c s^d) = r^(a + c*(-1)^b) s^(b+d).
    std::vector<int> flat(order2n * order2n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < 2; ++b)
            for (long c = 0; c < n; ++c)
                for (long d = 0; d < 2; ++d) {
                    long i = (a + (b ? n - c : c)) % n;
                    long j = (b + d) % 2;
                    flat[(a + n * b) * order2n + (c + n * d)] = static_cast<int>(i + n * j);
                }
    return finish(order2n, std::move(flat));
}

Group GroupTable::quaternion8() {
    // 1, -1, i, -i, j, -j, k, -k with ij = k, jk = i, ki = j.
    auto base = [](int x) { return x >> 1; };   // 0:1, 1:i, 2:j, 3:k
    auto sign = [](int x) { return x & 1; };
    static const int bmul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    // bsign[x][y] = 1 when the base product carries a minus (i*i = -1, j*i = -k, ...).
    static const int bsign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<int> flat(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int bx = base(x), by = base(y);
            int bz = bmul[bx][by];
            int s = sign(x) ^ sign(y) ^ bsign[bx][by];
            flat[x * 8 + y] = (bz << 1) | s;
        }
    return finish(8, std::move(flat));
}

Group GroupTable::symmetric3() {
    return from_permutations(3, {{1, 2, 0}, {1, 0, 2}}, 6);
}

Group GroupTable::direct_product(const Group& a, const Group& b) {
    long na = a->order(), nb = b->order();
    long n = na * nb;
    std::vector<int> flat(n * n);
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) {
            int ax = static_cast<int>(x % na), bx = static_cast<int>(x / na);
            int ay = static_cast<int>(y % na), by = static_cast<int>(y / na);
            flat[x * n + y] = a->mul(ax, ay) + na * b->mul(bx, by);
        }
    return finish(n, std::move(flat));
}

ConjugacyData conjugacy(const Group& g) {
    long n = g->order();
    ConjugacyData data;
    data.class_of.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (data.class_of[x] >= 0) continue;
        std::set<int> cls;
        for (int k = 0; k < n; ++k) cls.insert(g->conjugate(k, x));
        int id = static_cast<int>(data.classes.size());
        data.classes.emplace_back(cls.begin(), cls.end());
        for (int y : data.classes.back()) data.class_of[y] = id;
    }
    data.centralizers.resize(n);
    for (int x = 0; x < n; ++x)
        for (int k = 0; k < n; ++k)
            if (g->mul(k, x) == g->mul(x, k)) data.centralizers[x].push_back(k);
    for (std::size_t i = 0; i < data.classes.size(); ++i) {
        const auto& cls = data.classes[i];
        if (static_cast<long>(cls.size()) * static_cast<long>(data.centralizers[cls[0]].size()) != n)
            throw InternalError("class size times centralizer size must equal the group order");
    }
    return data;
}

std::vector<int> cyclic_subgroup_elements(const Group& g, int elem) {
    std::set<int> elems{0};
    int acc = elem;
    while (acc != 0) {
        elems.insert(acc);
        acc = g->mul(acc, elem);
    }
    return {elems.begin(), elems.end()};
}

int canonical_generator(const Group& g, const std::vector<int>& cyclic_subgroup) {
    long m = static_cast<long>(cyclic_subgroup.size());
    for (int e : cyclic_subgroup)
        if (g->element_order(e) == m) return e;
    throw InvalidInput("element set is not a cyclic subgroup");
}

std::vector<int> subgroup_generated(const Group& g, const std::vector<int>& gens) {
    std::set<int> elems{0};
    std::vector<int> work{0};
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (int gen : gens) {
            for (int next : {g->mul(x, gen), g->mul(x, g->inverse(gen))}) {
                if (elems.insert(next).second) work.push_back(next);
            }
        }
    }
    return {elems.begin(), elems.end()};
}

CyclicPoset cyclic_poset(const Group& g) {
    long n = g->order();
    CyclicPoset poset;
    poset.subgroup_of.assign(n, -1);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> raw;
    for (int x = 0; x < n; ++x) {
        auto elems = cyclic_subgroup_elements(g, x);
        auto it = index.find(elems);
        if (it == index.end()) {
            index.emplace(elems, static_cast<int>(raw.size()));
            raw.push_back(elems);
        }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    poset.subgroups = raw;
    index.clear();
    for (std::size_t i = 0; i < raw.size(); ++i) index.emplace(raw[i], static_cast<int>(i));
    for (int x = 0; x < n; ++x) poset.subgroup_of[x] = index.at(cyclic_subgroup_elements(g, x));
    poset.generator.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) poset.generator[i] = canonical_generator(g, raw[i]);
    return poset;
}

bool CyclicPoset::leq(int a, int b) const {
    const auto& sa = subgroups[a];
    const auto& sb = subgroups[b];
    return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

SubgroupView make_subgroup_view(const Group& g, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements[0] != 0)
        throw InvalidInput("subgroup must contain the identity");
    SubgroupView view;
    view.from_ambient.assign(g->order(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i) view.from_ambient[elements[i]] = static_cast<int>(i);
    long m = static_cast<long>(elements.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) {
            int prod = g->mul(elements[a], elements[b]);
            if (view.from_ambient[prod] < 0) throw InvalidInput("element set is not closed under the product");
            table[a][b] = view.from_ambient[prod];
        }
    view.sub = GroupTable::from_mult_table(table);
    view.to_ambient = std::move(elements);
    return view;
}

}  // namespace ktq
