#pragma once

#include <memory>
#include <vector>

#include "ktq/cocycle.hpp"
#include "ktq/cyclotomic.hpp"
#include "ktq/group.hpp"

namespace ktq {

class TwistedCharRing;
using RingPtr = std::shared_ptr<const TwistedCharRing>;

/**
 * The rationalized twisted character ring of a cyclic subgroup C = <g> of an
 * ambient group carrying a 2-cocycle alpha.
 *
 * Basis convention: with gamma the lowest-index generator of C, m = |C|, and
 * beta the canonical trivializer of alpha restricted to C (trivialize_on_cyclic),
 * the j-th basis element is the twisted character
 *
 *     phi_j(gamma^a) = beta(gamma^a) * zeta_m^(j*a),      j = 0..m-1,
 *
 * which satisfies phi_j(x) phi_j(y) = alpha(x,y) phi_j(xy) on C.  The basis
 * is orthonormal for (1/m) sum_a f(a) conj(g(a)), which is how coefficient
 * expansions are computed; expansions of values that fail to be rational
 * raise InternalError.
 */
class TwistedCharRing {
  public:
    static RingPtr build(const Cocycle2& alpha, int seed);

    const Group& ambient() const { return alpha_.g; }
    const Cocycle2& alpha() const { return alpha_; }
    const std::vector<int>& elements() const { return elems_; }
    int generator() const { return gen_; }
    long size() const { return m_; }

    bool contains(int ambient_elem) const;
    long power_of(int ambient_elem) const;  // discrete log wrt the generator
    int element_at_power(long a) const { return pow_[static_cast<std::size_t>(a % m_)]; }

    long beta_modulus() const { return beta_mod_; }
    long beta_exponent(long a) const { return beta_exp_[static_cast<std::size_t>(a % m_)]; }

    long value_level() const { return level_; }
    const Cyclotomic& value(long j, long a) const {
        return values_[static_cast<std::size_t>(j) * m_ + static_cast<std::size_t>(a)];
    }

    std::vector<Rational> expand(const std::vector<Cyclotomic>& values) const;
    std::vector<Cyclotomic> values_of(const std::vector<Rational>& coeffs) const;
    Cyclotomic value_at(const std::vector<Rational>& coeffs, int ambient_elem) const;

  private:
    TwistedCharRing() = default;

    Cocycle2 alpha_;
    std::vector<int> elems_;  // sorted ambient indices
    std::vector<int> pow_;    // pow_[a] = gamma^a (ambient index)
    std::vector<long> log_;   // ambient index -> power, -1 outside
    int gen_ = 0;
    long m_ = 1;
    long beta_mod_ = 1;
    std::vector<long> beta_exp_;  // indexed by power
    long level_ = 1;
    std::vector<Cyclotomic> values_;  // m x m, row j = phi_j
};

struct ClassElement {
    RingPtr ring;
    std::vector<Rational> coeff;
};

ClassElement basis_element(const RingPtr& ring, long j);
ClassElement zero_element(const RingPtr& ring);
ClassElement add(const ClassElement& x, const ClassElement& y);
ClassElement scale(const ClassElement& x, const Rational& s);
bool equal(const ClassElement& x, const ClassElement& y);

// Restriction to a sub-ring (target cyclic group contained in the source's);
// exact on the rational spans, integral on basis characters.
ClassElement restrict_r(const ClassElement& x, const RingPtr& target);

// Induction to a super-ring: (i x)(c) = [C:H] x(c) on H and 0 elsewhere,
// which is the abelian specialization of twisted character induction.
ClassElement induce_i(const ClassElement& x, const RingPtr& target);

// The unitary-conjugation action u_k (.) u_k^-1.  Basis characters map to
// basis characters of the ring over k<C>k^-1 exactly; a match failure is an
// InternalError because it can only come from a convention bug.
struct ConjAction {
    RingPtr target;
    std::vector<long> image;  // image[j] = index of the image character
};
ConjAction conj_act_perm(const RingPtr& source, int k);
ClassElement conj_act(const ClassElement& x, int k);

// Average of the conjugation action over a subgroup of the ambient group;
// every element must normalize the ring's cyclic group.
ClassElement avg_over(const ClassElement& x, const std::vector<int>& ambient_subgroup);

// r_H . i_H = ([G:H]/|G|) sum_g (g . -) on K^H, with G the full ambient
// (abelian) group.  The left side is computed function-theoretically from
// the induced values on G, the right side through conj_act averaging.
bool check_roi(const ClassElement& x);

// r_H2 . i_H1 = [G:H1 H2] i_(H1 n H2) . r_(H1 n H2) on G-invariant x
// (ambient abelian).  Returns whether the two sides agree; non-invariant x
// is the intended negative control.
bool check_rest_ind(const ClassElement& x_over_h1, const RingPtr& h2);

// Basis of K_> = the joint kernel of restriction to every proper subgroup.
std::vector<ClassElement> k_gt_basis(const RingPtr& ring);

// Recursive projection onto K_>:
//   P(x) = x - sum_{H proper} (1/[C:H]) i_H(P_H(r_H(x))).
ClassElement k_gt_project(const ClassElement& x);

// Dimension bookkeeping and split checks for
//   0 -> (+)_H (K_>^H)^C -> K^C -> K_>^C -> 0.
struct SesReport {
    long total_dim = 0;
    long top_dim = 0;
    std::vector<long> lower_dims;  // per proper subgroup, divisor-ascending
    bool dims_match = false;
    bool splits_ok = false;
};
SesReport ses_check(const RingPtr& ring);

}  // namespace ktq
