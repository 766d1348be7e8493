#include "ktq/twisted_char.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "ktq/errors.hpp"
#include "ktq/qmatrix.hpp"

namespace ktq {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

void require_compatible(const TwistedCharRing& a, const TwistedCharRing& b) {
    if (a.ambient() != b.ambient())
        throw InvalidInput("class elements live over different ambient groups");
    if (a.alpha().modulus != b.alpha().modulus || a.alpha().exp != b.alpha().exp)
        throw InvalidInput("class elements carry different cocycles");
}

void require_same_ring(const ClassElement& x, const ClassElement& y) {
    if (x.ring == y.ring) return;
    require_compatible(*x.ring, *y.ring);
    if (x.ring->elements() != y.ring->elements())
        throw InternalError("mixing class elements over different cyclic subgroups");
}

bool is_zero_vec(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

// Everything a ring can answer is a pure function of its cocycle and element
// set, so rings and the derived permutations/matrices are shared process-wide.
// Raw pointers are safe as map keys because every entry pins the rings it
// refers to, and the flush drops both maps together.
struct RingKey {
    const void* group;
    long modulus;
    std::vector<long> exp;
    std::vector<int> elems;

    bool operator<(const RingKey& o) const {
        if (group != o.group) return group < o.group;
        if (modulus != o.modulus) return modulus < o.modulus;
        if (exp != o.exp) return exp < o.exp;
        return elems < o.elems;
    }
};

struct RingOps {
    RingPtr self;
    std::map<int, ConjAction> conj;
    std::map<const TwistedCharRing*, std::pair<RingPtr, QMatrix>> restr;
    std::map<const TwistedCharRing*, std::pair<RingPtr, QMatrix>> ind;
    bool phases_ready = false;
    std::vector<Cyclotomic> phase_sum;
    bool projector_ready = false;
    QMatrix projector;
    bool kgt_ready = false;
    std::vector<std::vector<Rational>> kgt;
};

std::mutex cache_mu;

std::map<RingKey, RingPtr>& ring_cache() {
    static std::map<RingKey, RingPtr> m;
    return m;
}

std::map<const TwistedCharRing*, RingOps>& ops_cache() {
    static std::map<const TwistedCharRing*, RingOps> m;
    return m;
}

RingOps& ops_slot_locked(const RingPtr& r) {
    RingOps& o = ops_cache()[r.get()];
    if (!o.self) o.self = r;
    return o;
}

void flush_if_oversized_locked() {
    if (ring_cache().size() > 8192 || ops_cache().size() > 8192) {
        ring_cache().clear();
        ops_cache().clear();
    }
}

// Proper subgroup rings, one per proper divisor of |C|, divisor-ascending.
std::vector<RingPtr> proper_subrings(const RingPtr& ring) {
    long m = ring->size();
    std::vector<RingPtr> out;
    for (long d : divisors(m)) {
        if (d == m) continue;
        out.push_back(TwistedCharRing::build(ring->alpha(), ring->element_at_power(m / d)));
    }
    return out;
}

// Per element c of the subgroup, sum over the whole ambient group of the
// unitary-conjugation scalars at c, indexed by the power of c.
std::vector<Cyclotomic> ring_phase_sums(const RingPtr& ring) {
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        RingOps& o = ops_slot_locked(ring);
        if (o.phases_ready) return o.phase_sum;
    }
    const TwistedCharRing& r = *ring;
    const Group& g = r.ambient();
    const Cocycle2& alpha = r.alpha();
    std::vector<Cyclotomic> ps(static_cast<std::size_t>(r.size()));
    for (long b = 0; b < r.size(); ++b) {
        int c = r.element_at_power(b);
        Cyclotomic acc;
        for (int t = 0; t < g->order(); ++t)
            acc = acc + Cyclotomic::root_of_unity(alpha.modulus, conjugation_phase(alpha, t, c));
        ps[static_cast<std::size_t>(b)] = acc;
    }
    std::lock_guard<std::mutex> lk(cache_mu);
    RingOps& o = ops_slot_locked(ring);
    o.phase_sum = ps;
    o.phases_ready = true;
    return ps;
}

// Values of the induced class function on the full ambient abelian group:
// ind(x)(c) = (1/|H|) sum_{t in G} phase(t,c) xdot(c), where xdot extends x
// by zero and phase(t,c) is the unitary-conjugation scalar (conjugation
// fixes c because G is abelian, so only the scalar survives).
std::vector<Cyclotomic> induced_values_on_ambient(const ClassElement& x) {
    const TwistedCharRing& r = *x.ring;
    const Group& g = r.ambient();
    int n = g->order();
    std::vector<Cyclotomic> vals = r.values_of(x.coeff);
    std::vector<Cyclotomic> ps = ring_phase_sums(x.ring);
    std::vector<Cyclotomic> out(static_cast<std::size_t>(n));
    Rational inv_h(1, r.size());
    for (int c = 0; c < n; ++c) {
        if (!r.contains(c)) continue;
        long b = r.power_of(c);
        out[static_cast<std::size_t>(c)] =
            vals[static_cast<std::size_t>(b)] * ps[static_cast<std::size_t>(b)] * inv_h;
    }
    return out;
}

}  // namespace

RingPtr TwistedCharRing::build(const Cocycle2& alpha, int seed) {
    const Group& g = alpha.g;
    if (seed < 0 || seed >= g->order()) throw InvalidInput("ring seed element out of range");
    RingKey key{g.get(), alpha.modulus, alpha.exp, cyclic_subgroup_elements(g, seed)};
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        auto it = ring_cache().find(key);
        if (it != ring_cache().end()) return it->second;
    }
    auto r = std::shared_ptr<TwistedCharRing>(new TwistedCharRing());
    r->alpha_ = alpha;
    r->elems_ = key.elems;
    r->gen_ = canonical_generator(g, r->elems_);
    r->m_ = static_cast<long>(r->elems_.size());
    r->pow_.resize(static_cast<std::size_t>(r->m_));
    r->log_.assign(static_cast<std::size_t>(g->order()), -1);
    int cur = 0;
    for (long a = 0; a < r->m_; ++a) {
        r->pow_[static_cast<std::size_t>(a)] = cur;
        r->log_[static_cast<std::size_t>(cur)] = a;
        cur = g->mul(cur, r->gen_);
    }
    if (cur != 0) throw InternalError("cyclic generator order mismatch");

    SubgroupView view = make_subgroup_view(g, r->elems_);
    Cochain1 beta = trivialize_on_cyclic(restrict_cocycle(alpha, view));
    r->beta_mod_ = beta.modulus;
    r->beta_exp_.resize(static_cast<std::size_t>(r->m_));
    for (long a = 0; a < r->m_; ++a) {
        int sub = view.from_ambient[static_cast<std::size_t>(r->pow_[static_cast<std::size_t>(a)])];
        r->beta_exp_[static_cast<std::size_t>(a)] = beta.exp[static_cast<std::size_t>(sub)];
    }

    r->level_ = lcm_long(r->beta_mod_, r->m_);
    r->values_.reserve(static_cast<std::size_t>(r->m_ * r->m_));
    for (long j = 0; j < r->m_; ++j)
        for (long a = 0; a < r->m_; ++a) {
            long e = (r->level_ / r->beta_mod_) * r->beta_exp_[static_cast<std::size_t>(a)] +
                     (r->level_ / r->m_) * ((j * a) % r->m_);
            r->values_.push_back(Cyclotomic::root_of_unity(r->level_, e));
        }
    std::lock_guard<std::mutex> lk(cache_mu);
    flush_if_oversized_locked();
    return ring_cache().emplace(std::move(key), std::move(r)).first->second;
}

bool TwistedCharRing::contains(int ambient_elem) const {
    return ambient_elem >= 0 && ambient_elem < static_cast<int>(log_.size()) &&
           log_[static_cast<std::size_t>(ambient_elem)] >= 0;
}

long TwistedCharRing::power_of(int ambient_elem) const {
    if (!contains(ambient_elem)) throw InvalidInput("element outside the cyclic subgroup");
    return log_[static_cast<std::size_t>(ambient_elem)];
}

std::vector<Rational> TwistedCharRing::expand(const std::vector<Cyclotomic>& values) const {
    if (static_cast<long>(values.size()) != m_)
        throw InternalError("expand: value vector has the wrong length");
    std::vector<Rational> out(static_cast<std::size_t>(m_));
    Rational inv_m(1, m_);
    for (long j = 0; j < m_; ++j) {
        Cyclotomic acc;
        for (long a = 0; a < m_; ++a)
            acc = acc + values[static_cast<std::size_t>(a)] * value(j, a).conj();
        if (!acc.is_rational())
            throw InternalError("character expansion yielded a non-rational coefficient");
        out[static_cast<std::size_t>(j)] = acc.to_rational() * inv_m;
    }
    return out;
}

std::vector<Cyclotomic> TwistedCharRing::values_of(const std::vector<Rational>& coeffs) const {
    if (static_cast<long>(coeffs.size()) != m_)
        throw InternalError("values_of: coefficient vector has the wrong length");
    std::vector<Cyclotomic> out(static_cast<std::size_t>(m_));
    for (long a = 0; a < m_; ++a) {
        Cyclotomic acc;
        for (long j = 0; j < m_; ++j) {
            const Rational& c = coeffs[static_cast<std::size_t>(j)];
            if (c != 0) acc = acc + value(j, a) * c;
        }
        out[static_cast<std::size_t>(a)] = acc;
    }
    return out;
}

Cyclotomic TwistedCharRing::value_at(const std::vector<Rational>& coeffs, int ambient_elem) const {
    if (static_cast<long>(coeffs.size()) != m_)
        throw InternalError("value_at: coefficient vector has the wrong length");
    long a = power_of(ambient_elem);
    Cyclotomic acc;
    for (long j = 0; j < m_; ++j) {
        const Rational& c = coeffs[static_cast<std::size_t>(j)];
        if (c != 0) acc = acc + value(j, a) * c;
    }
    return acc;
}

ClassElement basis_element(const RingPtr& ring, long j) {
    if (j < 0 || j >= ring->size()) throw InvalidInput("basis index out of range");
    ClassElement x{ring, std::vector<Rational>(static_cast<std::size_t>(ring->size()), Rational(0))};
    x.coeff[static_cast<std::size_t>(j)] = 1;
    return x;
}

ClassElement zero_element(const RingPtr& ring) {
    return ClassElement{ring, std::vector<Rational>(static_cast<std::size_t>(ring->size()), Rational(0))};
}

ClassElement add(const ClassElement& x, const ClassElement& y) {
    require_same_ring(x, y);
    ClassElement out = x;
    for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += y.coeff[i];
    return out;
}

ClassElement scale(const ClassElement& x, const Rational& s) {
    ClassElement out = x;
    for (auto& c : out.coeff) c *= s;
    return out;
}

bool equal(const ClassElement& x, const ClassElement& y) {
    require_same_ring(x, y);
    return x.coeff == y.coeff;
}

namespace {

// Both transfers are Q-linear in the character coordinates, so each
// (source, target) pair gets its matrix computed once from the basis
// characters and replayed as a plain rational product afterwards.
QMatrix restriction_matrix(const RingPtr& source, const RingPtr& target) {
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        RingOps& o = ops_slot_locked(source);
        auto it = o.restr.find(target.get());
        if (it != o.restr.end()) return it->second.second;
    }
    const TwistedCharRing& s = *source;
    const TwistedCharRing& t = *target;
    QMatrix mat(t.size(), s.size());
    std::vector<Cyclotomic> f(static_cast<std::size_t>(t.size()));
    for (long j = 0; j < s.size(); ++j) {
        for (long b = 0; b < t.size(); ++b)
            f[static_cast<std::size_t>(b)] =
                s.value(j, s.power_of(t.element_at_power(b)));
        std::vector<Rational> col = t.expand(f);
        for (long i = 0; i < t.size(); ++i) mat.at(i, j) = col[static_cast<std::size_t>(i)];
    }
    std::lock_guard<std::mutex> lk(cache_mu);
    ops_slot_locked(source).restr.emplace(target.get(), std::make_pair(target, mat));
    return mat;
}

QMatrix induction_matrix(const RingPtr& source, const RingPtr& target) {
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        RingOps& o = ops_slot_locked(source);
        auto it = o.ind.find(target.get());
        if (it != o.ind.end()) return it->second.second;
    }
    const TwistedCharRing& s = *source;
    const TwistedCharRing& t = *target;
    Rational index(t.size() / s.size());
    QMatrix mat(t.size(), s.size());
    std::vector<Cyclotomic> f(static_cast<std::size_t>(t.size()));
    for (long j = 0; j < s.size(); ++j) {
        for (long a = 0; a < t.size(); ++a) {
            int elem = t.element_at_power(a);
            f[static_cast<std::size_t>(a)] =
                s.contains(elem) ? s.value(j, s.power_of(elem)) * index : Cyclotomic();
        }
        std::vector<Rational> col = t.expand(f);
        for (long i = 0; i < t.size(); ++i) mat.at(i, j) = col[static_cast<std::size_t>(i)];
    }
    std::lock_guard<std::mutex> lk(cache_mu);
    ops_slot_locked(source).ind.emplace(target.get(), std::make_pair(target, mat));
    return mat;
}

}  // namespace

ClassElement restrict_r(const ClassElement& x, const RingPtr& target) {
    const TwistedCharRing& s = *x.ring;
    const TwistedCharRing& t = *target;
    require_compatible(s, t);
    if (!std::includes(s.elements().begin(), s.elements().end(), t.elements().begin(),
                       t.elements().end()))
        throw InvalidInput("restriction target is not contained in the source subgroup");
    return ClassElement{target, ktq::apply(restriction_matrix(x.ring, target), x.coeff)};
}

ClassElement induce_i(const ClassElement& x, const RingPtr& target) {
    const TwistedCharRing& s = *x.ring;
    const TwistedCharRing& t = *target;
    require_compatible(s, t);
    if (!std::includes(t.elements().begin(), t.elements().end(), s.elements().begin(),
                       s.elements().end()))
        throw InvalidInput("induction target does not contain the source subgroup");
    return ClassElement{target, ktq::apply(induction_matrix(x.ring, target), x.coeff)};
}

ConjAction conj_act_perm(const RingPtr& source, int k) {
    const Cocycle2& alpha = source->alpha();
    const Group& g = alpha.g;
    if (k < 0 || k >= g->order()) throw InvalidInput("conjugating element out of range");
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        RingOps& o = ops_slot_locked(source);
        auto it = o.conj.find(k);
        if (it != o.conj.end()) return it->second;
    }
    int gk = g->conjugate(k, source->generator());
    RingPtr target = cyclic_subgroup_elements(g, gk) == source->elements()
                         ? source
                         : TwistedCharRing::build(alpha, gk);
    int kinv = g->inverse(k);
    long m = source->size();
    ConjAction act{target, std::vector<long>(static_cast<std::size_t>(m), -1)};
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    std::vector<Cyclotomic> psi(static_cast<std::size_t>(m));
    for (long j = 0; j < m; ++j) {
        for (long b = 0; b < m; ++b) {
            int ge = target->element_at_power(b);
            int h = g->conjugate(kinv, ge);
            long ph = conjugation_phase(alpha, k, h);
            psi[static_cast<std::size_t>(b)] =
                Cyclotomic::root_of_unity(alpha.modulus, ph) * source->value(j, source->power_of(h));
        }
        std::vector<Rational> c = target->expand(psi);
        long image = -1;
        for (long i = 0; i < m; ++i) {
            if (c[static_cast<std::size_t>(i)] == 0) continue;
            if (image >= 0 || c[static_cast<std::size_t>(i)] != 1) {
                image = -2;
                break;
            }
            image = i;
        }
        if (image < 0 || used[static_cast<std::size_t>(image)])
            throw InternalError("conjugation image is not a basis character");
        used[static_cast<std::size_t>(image)] = 1;
        act.image[static_cast<std::size_t>(j)] = image;
    }
    std::lock_guard<std::mutex> lk(cache_mu);
    ops_slot_locked(source).conj.emplace(k, act);
    return act;
}

ClassElement conj_act(const ClassElement& x, int k) {
    ConjAction act = conj_act_perm(x.ring, k);
    ClassElement out = zero_element(act.target);
    for (std::size_t j = 0; j < x.coeff.size(); ++j)
        out.coeff[static_cast<std::size_t>(act.image[j])] = x.coeff[j];
    return out;
}

ClassElement avg_over(const ClassElement& x, const std::vector<int>& ambient_subgroup) {
    if (ambient_subgroup.empty()) throw InvalidInput("cannot average over an empty set");
    ClassElement acc = zero_element(x.ring);
    for (int k : ambient_subgroup) {
        ClassElement y = conj_act(x, k);
        if (y.ring != x.ring)
            throw InternalError("averaging subgroup does not normalize the cyclic group");
        acc = add(acc, y);
    }
    return scale(acc, Rational(1, static_cast<long>(ambient_subgroup.size())));
}

bool check_roi(const ClassElement& x) {
    const TwistedCharRing& r = *x.ring;
    const Group& g = r.ambient();
    if (!g->is_abelian())
        throw InvalidInput("restriction-induction identities require an abelian ambient group");
    std::vector<Cyclotomic> ind = induced_values_on_ambient(x);
    std::vector<Cyclotomic> f(static_cast<std::size_t>(r.size()));
    for (long b = 0; b < r.size(); ++b)
        f[static_cast<std::size_t>(b)] = ind[static_cast<std::size_t>(r.element_at_power(b))];
    std::vector<Rational> lhs = r.expand(f);

    ClassElement acc = zero_element(x.ring);
    for (int t = 0; t < g->order(); ++t) acc = add(acc, conj_act(x, t));
    ClassElement rhs = scale(acc, Rational(1, r.size()));
    return lhs == rhs.coeff;
}

bool check_rest_ind(const ClassElement& x_over_h1, const RingPtr& h2) {
    const TwistedCharRing& r1 = *x_over_h1.ring;
    const TwistedCharRing& r2 = *h2;
    require_compatible(r1, r2);
    const Group& g = r1.ambient();
    if (!g->is_abelian())
        throw InvalidInput("restriction-induction identities require an abelian ambient group");

    std::vector<Cyclotomic> ind = induced_values_on_ambient(x_over_h1);
    std::vector<Cyclotomic> f(static_cast<std::size_t>(r2.size()));
    for (long b = 0; b < r2.size(); ++b)
        f[static_cast<std::size_t>(b)] = ind[static_cast<std::size_t>(r2.element_at_power(b))];
    std::vector<Rational> lhs = r2.expand(f);

    std::vector<int> meet;
    std::set_intersection(r1.elements().begin(), r1.elements().end(), r2.elements().begin(),
                          r2.elements().end(), std::back_inserter(meet));
    RingPtr r12 = TwistedCharRing::build(r1.alpha(), canonical_generator(g, meet));
    if (r12->elements() != meet) throw InternalError("subgroup intersection is not cyclic");
    ClassElement rhs = induce_i(restrict_r(x_over_h1, r12), h2);

    std::vector<int> product;
    for (int a : r1.elements())
        for (int b : r2.elements()) product.push_back(g->mul(a, b));
    std::sort(product.begin(), product.end());
    product.erase(std::unique(product.begin(), product.end()), product.end());
    long factor = g->order() / static_cast<long>(product.size());
    rhs = scale(rhs, Rational(factor));

    return lhs == rhs.coeff;
}

namespace {

// x - sum over proper subgroups of (|H|/|C|) ind(proj(res(x))), folded into
// one matrix per ring so repeated projections are plain rational products.
QMatrix projector_matrix(const RingPtr& ring) {
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        RingOps& o = ops_slot_locked(ring);
        if (o.projector_ready) return o.projector;
    }
    long m = ring->size();
    QMatrix p = QMatrix::identity(m);
    for (const auto& s : proper_subrings(ring)) {
        QMatrix term = matmul(induction_matrix(s, ring),
                              matmul(projector_matrix(s), restriction_matrix(ring, s)));
        Rational f(s->size(), m);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j) p.at(i, j) -= f * term.at(i, j);
    }
    std::lock_guard<std::mutex> lk(cache_mu);
    RingOps& o = ops_slot_locked(ring);
    o.projector = p;
    o.projector_ready = true;
    return p;
}

}  // namespace

std::vector<ClassElement> k_gt_basis(const RingPtr& ring) {
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        RingOps& o = ops_slot_locked(ring);
        if (o.kgt_ready) {
            std::vector<ClassElement> out;
            out.reserve(o.kgt.size());
            for (const auto& v : o.kgt) out.push_back(ClassElement{ring, v});
            return out;
        }
    }
    long m = ring->size();
    std::vector<RingPtr> subs = proper_subrings(ring);
    long rows = 0;
    for (const auto& s : subs) rows += s->size();
    QMatrix mat(rows, m);
    long off = 0;
    for (const auto& s : subs) {
        QMatrix res = restriction_matrix(ring, s);
        for (long i = 0; i < s->size(); ++i)
            for (long j = 0; j < m; ++j) mat.at(off + i, j) = res.at(i, j);
        off += s->size();
    }
    KernelBasis kb = kernel(mat);
    std::vector<ClassElement> out;
    out.reserve(kb.vectors.size());
    for (auto& v : kb.vectors) out.push_back(ClassElement{ring, std::move(v)});
    std::lock_guard<std::mutex> lk(cache_mu);
    RingOps& o = ops_slot_locked(ring);
    o.kgt.clear();
    o.kgt.reserve(out.size());
    for (const auto& e : out) o.kgt.push_back(e.coeff);
    o.kgt_ready = true;
    return out;
}

ClassElement k_gt_project(const ClassElement& x) {
    return ClassElement{x.ring, ktq::apply(projector_matrix(x.ring), x.coeff)};
}

SesReport ses_check(const RingPtr& ring) {
    SesReport rep;
    long m = ring->size();
    rep.total_dim = m;
    std::vector<ClassElement> top = k_gt_basis(ring);
    rep.top_dim = static_cast<long>(top.size());

    std::vector<RingPtr> subs = proper_subrings(ring);
    std::vector<std::vector<ClassElement>> inv_bases;
    long lower_total = 0;
    for (const auto& s : subs) {
        std::vector<ClassElement> kb = k_gt_basis(s);
        std::vector<ClassElement> inv;
        if (!kb.empty()) {
            QMatrix rowsM(static_cast<long>(kb.size()), s->size());
            for (long i = 0; i < rowsM.rows; ++i) {
                ClassElement a = avg_over(kb[static_cast<std::size_t>(i)], ring->elements());
                for (long j = 0; j < rowsM.cols; ++j)
                    a.coeff[static_cast<std::size_t>(j)].swap(rowsM.at(i, j));
            }
            for (auto& row : row_space_basis(rowsM)) inv.push_back(ClassElement{s, std::move(row)});
        }
        rep.lower_dims.push_back(static_cast<long>(inv.size()));
        lower_total += static_cast<long>(inv.size());
        inv_bases.push_back(std::move(inv));
    }
    rep.dims_match = (m == rep.top_dim + lower_total);

    bool ok = true;
    for (const auto& v : top)
        if (!equal(k_gt_project(v), v)) ok = false;
    for (std::size_t si = 0; si < subs.size(); ++si) {
        for (const auto& y : inv_bases[si]) {
            ClassElement x = induce_i(y, ring);
            if (!is_zero_vec(k_gt_project(x).coeff)) ok = false;
            for (std::size_t sj = 0; sj < subs.size(); ++sj) {
                ClassElement l = scale(k_gt_project(restrict_r(x, subs[sj])),
                                       Rational(subs[sj]->size(), m));
                if (si == sj) {
                    if (!equal(l, y)) ok = false;
                } else if (!is_zero_vec(l.coeff)) {
                    ok = false;
                }
            }
        }
    }
    rep.splits_ok = ok;
    return rep;
}

}  // namespace ktq
