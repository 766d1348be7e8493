#include "ktq/qmatrix.hpp"

#include <algorithm>

#include "ktq/errors.hpp"

namespace ktq {

QMatrix QMatrix::identity(long n) {
    QMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix matmul(const QMatrix& x, const QMatrix& y) {
    if (x.cols != y.rows) throw InternalError("matmul: shape mismatch");
    QMatrix out(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            const Rational& xv = x.at(i, k);
            if (xv == 0) continue;
            for (long j = 0; j < y.cols; ++j) {
                const Rational& yv = y.at(k, j);
                if (yv != 0) out.at(i, j) += xv * yv;
            }
        }
    return out;
}

std::vector<Rational> apply(const QMatrix& m, const std::vector<Rational>& v) {
    if (static_cast<long>(v.size()) != m.cols) throw InternalError("apply: shape mismatch");
    std::vector<Rational> out(m.rows, Rational(0));
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) {
            const Rational& mv = m.at(i, j);
            if (mv != 0 && v[j] != 0) out[i] += mv * v[j];
        }
    return out;
}

namespace {

Integer int_abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

struct Echelon {
    std::vector<std::vector<Rational>> rows;  // reduced row echelon form
    std::vector<long> pivot_cols;             // ascending
};

// Bareiss forward elimination on denominator-cleared copies of the rows,
// followed by exact rational back-substitution into reduced echelon form.
Echelon reduced_echelon(const QMatrix& m) {
    long nr = m.rows, nc = m.cols;
    std::vector<std::vector<Integer>> w(nr, std::vector<Integer>(nc));
    for (long i = 0; i < nr; ++i) {
        Integer l(1);
        for (long j = 0; j < nc; ++j) l = boost::multiprecision::lcm(l, denom(m.at(i, j)));
        for (long j = 0; j < nc; ++j) w[i][j] = numer(m.at(i, j)) * (l / denom(m.at(i, j)));
    }

    std::vector<long> pivots;
    Integer prev(1);
    long row = 0;
    for (long col = 0; col < nc && row < nr; ++col) {
        long best = -1;
        for (long i = row; i < nr; ++i) {
            if (w[i][col] == 0) continue;
            if (best < 0 || int_abs(w[i][col]) > int_abs(w[best][col])) best = i;
        }
        if (best < 0) continue;
        std::swap(w[row], w[best]);
        const Integer p = w[row][col];
        for (long i = row + 1; i < nr; ++i) {
            for (long j = col + 1; j < nc; ++j)
                w[i][j] = (w[i][j] * p - w[i][col] * w[row][j]) / prev;
            w[i][col] = 0;
        }
        prev = p;
        pivots.push_back(col);
        ++row;
    }

    Echelon e;
    e.pivot_cols = pivots;
    long nrank = static_cast<long>(pivots.size());
    e.rows.assign(nrank, std::vector<Rational>(nc, Rational(0)));
    for (long i = 0; i < nrank; ++i) {
        Rational lead(w[i][pivots[i]]);
        for (long j = pivots[i]; j < nc; ++j) e.rows[i][j] = Rational(w[i][j]) / lead;
    }
    for (long i = nrank - 1; i >= 0; --i) {
        for (long k = 0; k < i; ++k) {
            Rational f = e.rows[k][pivots[i]];
            if (f == 0) continue;
            for (long j = pivots[i]; j < nc; ++j) e.rows[k][j] -= f * e.rows[i][j];
        }
    }
    return e;
}

}  // namespace

KernelBasis kernel(const QMatrix& m) {
    KernelBasis basis;
    basis.ambient_dim = m.cols;

    // Presolve: repeatedly take a shortest remaining row, solve it for one of
    // its unknowns, and substitute that unknown out of every other row.  The
    // assembled systems are dominated by rows with one or two entries, so the
    // dense elimination below only ever sees a small coupled core.
    using Entry = std::pair<long, Rational>;
    std::vector<std::vector<Entry>> rows;
    rows.reserve(static_cast<std::size_t>(m.rows));
    for (long i = 0; i < m.rows; ++i) {
        std::vector<Entry> r;
        for (long j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) r.emplace_back(j, m.at(i, j));
        if (!r.empty()) rows.push_back(std::move(r));
    }
    std::vector<char> alive(rows.size(), 1);
    std::vector<std::vector<std::size_t>> col_rows(static_cast<std::size_t>(m.cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const Entry& en : rows[i]) col_rows[static_cast<std::size_t>(en.first)].push_back(i);
    std::vector<char> eliminated(static_cast<std::size_t>(m.cols), 0);
    std::vector<std::pair<long, std::vector<Entry>>> subst;  // x_col = sum of entries

    constexpr std::size_t kPivotRowLimit = 8;
    for (;;) {
        std::size_t best = rows.size(), best_len = kPivotRowLimit + 1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!alive[i] || rows[i].size() >= best_len) continue;
            best_len = rows[i].size();
            best = i;
            if (best_len == 1) break;
        }
        if (best == rows.size()) break;
        std::vector<Entry> piv = std::move(rows[best]);
        alive[best] = 0;

        std::size_t pidx = 0;
        for (std::size_t t = 1; t < piv.size(); ++t)
            if (col_rows[static_cast<std::size_t>(piv[t].first)].size() <
                col_rows[static_cast<std::size_t>(piv[pidx].first)].size())
                pidx = t;
        long pc = piv[pidx].first;
        Rational pval = piv[pidx].second;
        for (Entry& en : piv) en.second /= pval;

        std::vector<Entry> expr;
        for (const Entry& en : piv)
            if (en.first != pc) expr.emplace_back(en.first, -en.second);
        eliminated[static_cast<std::size_t>(pc)] = 1;

        std::vector<std::size_t> touched;
        touched.swap(col_rows[static_cast<std::size_t>(pc)]);
        for (std::size_t ri : touched) {
            if (!alive[ri]) continue;
            const std::vector<Entry>& r = rows[ri];
            auto it = std::lower_bound(r.begin(), r.end(), pc,
                                       [](const Entry& en, long c) { return en.first < c; });
            if (it == r.end() || it->first != pc) continue;
            Rational coef = it->second;
            std::vector<Entry> merged;
            merged.reserve(r.size() + piv.size());
            std::size_t a = 0, b = 0;
            while (a < r.size() || b < piv.size()) {
                if (b == piv.size() || (a < r.size() && r[a].first < piv[b].first)) {
                    merged.push_back(r[a++]);
                } else if (a == r.size() || piv[b].first < r[a].first) {
                    Rational v = -coef * piv[b].second;
                    if (v != 0) {
                        merged.emplace_back(piv[b].first, std::move(v));
                        col_rows[static_cast<std::size_t>(piv[b].first)].push_back(ri);
                    }
                    ++b;
                } else {
                    Rational v = r[a].second - coef * piv[b].second;
                    if (v != 0) merged.emplace_back(r[a].first, std::move(v));
                    ++a;
                    ++b;
                }
            }
            rows[ri] = std::move(merged);
            if (rows[ri].empty()) alive[ri] = 0;
        }
        subst.emplace_back(pc, std::move(expr));
    }

    // Dense elimination on the remaining core.
    std::vector<long> core_cols;
    for (long j = 0; j < m.cols; ++j)
        if (!eliminated[static_cast<std::size_t>(j)]) core_cols.push_back(j);
    std::vector<long> core_index(static_cast<std::size_t>(m.cols), -1);
    for (std::size_t j = 0; j < core_cols.size(); ++j)
        core_index[static_cast<std::size_t>(core_cols[j])] = static_cast<long>(j);
    long live = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) live += alive[i] ? 1 : 0;
    QMatrix core(live, static_cast<long>(core_cols.size()));
    long ci = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!alive[i]) continue;
        for (const Entry& en : rows[i])
            core.at(ci, core_index[static_cast<std::size_t>(en.first)]) = en.second;
        ++ci;
    }
    Echelon e = reduced_echelon(core);
    std::vector<bool> is_pivot(core_cols.size(), false);
    for (long p : e.pivot_cols) is_pivot[static_cast<std::size_t>(p)] = true;

    // One vector per free core column, lifted back through the substitutions
    // in reverse order; stacked as rows and reduced once more so the basis is
    // canonical for the subspace.
    std::vector<std::vector<Rational>> vecs;
    for (std::size_t f = 0; f < core_cols.size(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(m.cols), Rational(0));
        v[static_cast<std::size_t>(core_cols[f])] = 1;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            v[static_cast<std::size_t>(core_cols[static_cast<std::size_t>(e.pivot_cols[i])])] =
                -e.rows[i][static_cast<std::size_t>(f)];
        for (auto it = subst.rbegin(); it != subst.rend(); ++it) {
            Rational acc(0);
            for (const Entry& en : it->second)
                acc += en.second * v[static_cast<std::size_t>(en.first)];
            v[static_cast<std::size_t>(it->first)] = std::move(acc);
        }
        vecs.push_back(std::move(v));
    }
    if (!vecs.empty()) {
        QMatrix stacked(static_cast<long>(vecs.size()), m.cols);
        for (long i = 0; i < stacked.rows; ++i)
            for (long j = 0; j < stacked.cols; ++j) stacked.at(i, j) = vecs[static_cast<std::size_t>(i)][j];
        Echelon canon = reduced_echelon(stacked);
        vecs = std::move(canon.rows);
    }
    basis.vectors = std::move(vecs);
    return basis;
}

long rank(const QMatrix& m) { return static_cast<long>(reduced_echelon(m).pivot_cols.size()); }

std::vector<std::vector<Rational>> row_space_basis(const QMatrix& m) {
    return reduced_echelon(m).rows;
}

std::optional<std::vector<Rational>> solve_consistent(const QMatrix& m,
                                                      const std::vector<Rational>& b) {
    if (static_cast<long>(b.size()) != m.rows) throw InternalError("solve_consistent: shape mismatch");
    QMatrix aug(m.rows, m.cols + 1);
    for (long i = 0; i < m.rows; ++i) {
        for (long j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    Echelon e = reduced_echelon(aug);
    for (long p : e.pivot_cols)
        if (p == m.cols) return std::nullopt;
    std::vector<Rational> x(m.cols, Rational(0));
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = e.rows[i][m.cols];
    return x;
}

}  // namespace ktq
