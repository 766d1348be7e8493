#pragma once

#include <optional>
#include <vector>

#include "ktq/rational.hpp"

namespace ktq {

// Dense rational matrix, row-major.
struct QMatrix {
    long rows = 0;
    long cols = 0;
    std::vector<Rational> a;

    QMatrix() = default;
    QMatrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rational(0)) {}

    Rational& at(long r, long c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Rational& at(long r, long c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static QMatrix identity(long n);
};

QMatrix matmul(const QMatrix& x, const QMatrix& y);
std::vector<Rational> apply(const QMatrix& m, const std::vector<Rational>& v);

// Basis of the right nullspace { v : Mv = 0 }.  The vectors, stacked as rows,
// are in reduced row echelon form with pivots in ascending column order, so
// the basis is canonical for the subspace: equal kernels compare equal.
struct KernelBasis {
    long ambient_dim = 0;
    std::vector<std::vector<Rational>> vectors;

    long dim() const { return static_cast<long>(vectors.size()); }
};

// Forward elimination is fraction-free (Bareiss) on denominator-cleared rows;
// pivots are chosen largest-in-column with lowest row index on ties, then a
// rational back-substitution pass produces the reduced echelon form.
KernelBasis kernel(const QMatrix& m);

long rank(const QMatrix& m);

// Canonical (reduced-echelon) basis of the row space; equal spans compare equal.
std::vector<std::vector<Rational>> row_space_basis(const QMatrix& m);

// Least structured solution of Mx = b (free variables set to zero), or
// nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_consistent(const QMatrix& m,
                                                      const std::vector<Rational>& b);

}  // namespace ktq
