#pragma once

#include <vector>

#include "ktq/rational.hpp"

namespace ktq {

long euler_phi(long n);
std::vector<long> divisors(long n);

// Coefficients of the n-th cyclotomic polynomial, little-endian, computed by
// exact division of x^n - 1 by the cyclotomic polynomials of the proper
// divisors of n.  Results are cached.
std::vector<Integer> cyclotomic_polynomial(long n);

/**
 * An element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1),
 * always reduced modulo the N-th cyclotomic polynomial.
 *
 * The level N is part of the value.  Mixed-level arithmetic lifts both
 * operands to Q(zeta_lcm) via zeta_N = zeta_M^(M/N); two values are equal
 * iff they agree after lifting to a common level.  An element is rational
 * iff every coordinate above the constant one vanishes (the power basis is
 * a Q-basis, so this is representation-independent).
 */
class Cyclotomic {
  public:
    Cyclotomic() : level_(1), coeff_(1, Rational(0)) {}
    explicit Cyclotomic(const Rational& q) : level_(1), coeff_(1, q) {}

    // zeta_n^k (k may be negative; taken mod n).
    static Cyclotomic root_of_unity(long n, long k);

    long level() const { return level_; }
    const std::vector<Rational>& coeffs() const { return coeff_; }

    bool is_zero() const;
    bool is_rational() const;
    // Throws InternalError if the value is not rational.
    Rational to_rational() const;

    // Embeds into Q(zeta_m); m must be a multiple of the current level.
    Cyclotomic lifted(long m) const;

    // Complex conjugation zeta -> zeta^(-1); a field automorphism, so it is
    // exact on coordinates.
    Cyclotomic conj() const;

    // Multiplicative inverse; throws InternalError on zero.
    Cyclotomic inverse() const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rational& s) const;
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    Cyclotomic(long level, std::vector<Rational> coeff)
        : level_(level), coeff_(std::move(coeff)) {}

    long level_;
    std::vector<Rational> coeff_;
};

inline Cyclotomic operator*(const Rational& s, const Cyclotomic& c) { return c * s; }

}  // namespace ktq
