#include "ktq/fourier.hpp"

#include "ktq/errors.hpp"

namespace ktq {

std::vector<Cyclotomic> evaluate_on_powers(const ClassElement& x) {
    return x.ring->values_of(x.coeff);
}

std::vector<Rational> reconstruct_coefficients(const RingPtr& ring,
                                               const std::vector<Cyclotomic>& values) {
    return ring->expand(values);
}

long cyclotomic_rank(const std::vector<std::vector<Cyclotomic>>& rows) {
    std::vector<std::vector<Cyclotomic>> w = rows;
    if (w.empty()) return 0;
    std::size_t nc = w[0].size();
    for (const auto& row : w)
        if (row.size() != nc) throw InternalError("cyclotomic_rank: ragged rows");
    long r = 0;
    for (std::size_t col = 0; col < nc && static_cast<std::size_t>(r) < w.size(); ++col) {
        std::size_t pivot = w.size();
        for (std::size_t i = static_cast<std::size_t>(r); i < w.size(); ++i)
            if (!w[i][col].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == w.size()) continue;
        std::swap(w[static_cast<std::size_t>(r)], w[pivot]);
        Cyclotomic inv = w[static_cast<std::size_t>(r)][col].inverse();
        for (std::size_t j = col; j < nc; ++j)
            w[static_cast<std::size_t>(r)][j] = w[static_cast<std::size_t>(r)][j] * inv;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i == static_cast<std::size_t>(r) || w[i][col].is_zero()) continue;
            Cyclotomic f = w[i][col];
            for (std::size_t j = col; j < nc; ++j)
                w[i][j] = w[i][j] - f * w[static_cast<std::size_t>(r)][j];
        }
        ++r;
    }
    return r;
}

namespace {

// Full character-coefficient vector of one (block, part, slot) coordinate
// slice of a solution vector; slots are fixed points for finite parts and
// shift orbits for circle parts.
std::vector<Rational> slice_coeffs(const Solution& s, const std::vector<Rational>& v, int g,
                                   const PartBlock& pb, long slot) {
    const KBlock& b = s.blocks[static_cast<std::size_t>(g)];
    long off = s.offsets[static_cast<std::size_t>(g)];
    long m = b.ring->size();
    std::vector<Rational> coeff(static_cast<std::size_t>(m), Rational(0));
    if (!pb.circle) {
        for (long j = 0; j < m; ++j)
            coeff[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(
                off + b.col0(pb.part, slot, j))];
    } else {
        const Rational& c = v[static_cast<std::size_t>(off + b.col0_circle(pb.part, slot))];
        for (long j : pb.orbits[static_cast<std::size_t>(slot)])
            coeff[static_cast<std::size_t>(j)] = c;
    }
    return coeff;
}

long slot_count(const PartBlock& pb) {
    return pb.circle ? static_cast<long>(pb.orbits.size()) : static_cast<long>(pb.fixed.size());
}

}  // namespace

bool reconstruction_roundtrip(const Solution& s) {
    if (s.degree != 0) throw InvalidInput("the evaluation model applies in degree 0");
    for (const auto& v : s.basis.vectors) {
        for (std::size_t g = 0; g < s.blocks.size(); ++g) {
            const KBlock& b = s.blocks[g];
            for (const PartBlock& pb : b.parts)
                for (long slot = 0; slot < slot_count(pb); ++slot) {
                    std::vector<Rational> coeff = slice_coeffs(s, v, static_cast<int>(g), pb, slot);
                    std::vector<Rational> back =
                        b.ring->expand(b.ring->values_of(coeff));
                    if (back != coeff) return false;
                }
        }
    }
    return true;
}

long evaluated_rank_at_reps(const Solution& s) {
    if (s.degree != 0) throw InvalidInput("the evaluation model applies in degree 0");
    if (s.basis.vectors.empty()) return 0;
    ConjugacyData conj = conjugacy(s.blocks[0].ring->ambient());
    std::vector<std::vector<Cyclotomic>> rows;
    rows.reserve(s.basis.vectors.size());
    for (const auto& v : s.basis.vectors) {
        std::vector<Cyclotomic> row;
        for (std::size_t c = 0; c < conj.classes.size(); ++c) {
            int rep = conj.representative(static_cast<int>(c));
            const KBlock& b = s.blocks[static_cast<std::size_t>(rep)];
            for (const PartBlock& pb : b.parts)
                for (long slot = 0; slot < slot_count(pb); ++slot) {
                    std::vector<Rational> coeff = slice_coeffs(s, v, rep, pb, slot);
                    for (const Cyclotomic& val : b.ring->values_of(coeff)) row.push_back(val);
                }
        }
        rows.push_back(std::move(row));
    }
    return cyclotomic_rank(rows);
}

}  // namespace ktq
