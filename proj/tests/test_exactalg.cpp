#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "ktq/cyclotomic.hpp"
#include "ktq/errors.hpp"
#include "ktq/qmatrix.hpp"

using namespace ktq;

TEST_CASE("euler phi and divisors") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(8) == 4);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(105) == 48);
    CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(1) == std::vector<long>{1});
}

TEST_CASE("cyclotomic polynomials match the classical table") {
    CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<Integer>{1, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<Integer>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
    CHECK(cyclotomic_polynomial(8) == std::vector<Integer>{1, 0, 0, 0, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});
    // First index with a coefficient outside {-1,0,1}.
    std::vector<Integer> p105 = cyclotomic_polynomial(105);
    CHECK(p105.size() == 49);
    CHECK(p105[7] == -2);
}

TEST_CASE("roots of unity satisfy the defining relations") {
    CHECK(Cyclotomic::root_of_unity(8, 4) == Cyclotomic(Rational(-1)));
    CHECK(Cyclotomic::root_of_unity(12, 2) == Cyclotomic::root_of_unity(6, 1));
    CHECK(Cyclotomic::root_of_unity(5, -1) == Cyclotomic::root_of_unity(5, 4));
    for (long n = 1; n <= 12; ++n) {
        Cyclotomic prod(Rational(1));
        for (long k = 0; k < n; ++k) prod = prod * Cyclotomic::root_of_unity(n, 1);
        CHECK(prod == Cyclotomic(Rational(1)));
        if (n >= 2) {
            Cyclotomic sum;
            for (long k = 0; k < n; ++k) sum = sum + Cyclotomic::root_of_unity(n, k);
            CHECK(sum.is_zero());
        }
    }
}

TEST_CASE("mixed-level arithmetic lifts to the common field") {
    Cyclotomic z6 = Cyclotomic::root_of_unity(6, 1);
    Cyclotomic z2 = Cyclotomic::root_of_unity(2, 1);
    CHECK(Cyclotomic::root_of_unity(6, 3) == z2);
    CHECK(z6 + Cyclotomic::root_of_unity(6, -1) == Cyclotomic(Rational(1)));
    CHECK((z6 * z2).is_rational() == false);
    CHECK(z6 * Cyclotomic::root_of_unity(4, 0) == z6);
}

TEST_CASE("conjugation and inversion are exact") {
    Cyclotomic z5 = Cyclotomic::root_of_unity(5, 1);
    CHECK(z5.conj() == Cyclotomic::root_of_unity(5, 4));
    Cyclotomic x = z5 + Cyclotomic(Rational(1));
    CHECK(x * x.inverse() == Cyclotomic(Rational(1)));
    CHECK((x * x.conj()).is_rational() == false);  // |1+z5|^2 is not rational
    Cyclotomic y = Cyclotomic::root_of_unity(8, 1) * Rational(3, 7);
    CHECK(y * y.inverse() == Cyclotomic(Rational(1)));
    CHECK_THROWS_AS(Cyclotomic().inverse(), InternalError);
}

TEST_CASE("rationality detection is representation independent") {
    Cyclotomic z3 = Cyclotomic::root_of_unity(3, 1);
    Cyclotomic s = z3 + Cyclotomic::root_of_unity(3, 2);
    CHECK(s.is_rational());
    CHECK(s.to_rational() == Rational(-1));
    CHECK(Cyclotomic::root_of_unity(6, 1).is_rational() == false);
    CHECK_THROWS_AS(z3.to_rational(), InternalError);
}

TEST_CASE("kernel bases are canonical reduced-echelon rows") {
    QMatrix m(1, 2);
    m.at(0, 0) = Rational(1);
    m.at(0, 1) = Rational(1);
    KernelBasis k = kernel(m);
    REQUIRE(k.dim() == 1);
    CHECK(k.vectors[0] == std::vector<Rational>{Rational(1), Rational(-1)});

    QMatrix z(2, 3);
    z.at(0, 0) = Rational(1);
    z.at(0, 2) = Rational(2);
    KernelBasis k2 = kernel(z);
    REQUIRE(k2.dim() == 2);
    CHECK(k2.vectors[0] == std::vector<Rational>{Rational(1), Rational(0), Rational(-1, 2)});
    CHECK(k2.vectors[1] == std::vector<Rational>{Rational(0), Rational(1), Rational(0)});

    // Row scaling does not change the canonical basis.
    QMatrix ms(1, 2);
    ms.at(0, 0) = Rational(-7, 3);
    ms.at(0, 1) = Rational(-7, 3);
    CHECK(kernel(ms).vectors == k.vectors);
}

TEST_CASE("kernel vectors annihilate the matrix and count ranks") {
    QMatrix m(3, 4);
    long v = 0;
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 4; ++j) m.at(i, j) = Rational((v++ * 7919) % 23 - 11, 1 + (v % 5));
    KernelBasis k = kernel(m);
    CHECK(rank(m) + k.dim() == m.cols);
    for (const auto& vec : k.vectors)
        for (const Rational& r : ktq::apply(m, vec)) CHECK(r == Rational(0));
}

TEST_CASE("rank and row space basics") {
    QMatrix m(2, 2);
    m.at(0, 0) = Rational(1);
    m.at(0, 1) = Rational(2);
    m.at(1, 0) = Rational(2);
    m.at(1, 1) = Rational(4);
    CHECK(rank(m) == 1);
    auto rs = row_space_basis(m);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0] == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK(rank(QMatrix::identity(5)) == 5);
}

TEST_CASE("consistent solve sets free variables to zero") {
    QMatrix m(1, 2);
    m.at(0, 0) = Rational(1);
    m.at(0, 1) = Rational(1);
    auto sol = solve_consistent(m, {Rational(5)});
    REQUIRE(sol.has_value());
    CHECK(*sol == std::vector<Rational>{Rational(5), Rational(0)});

    QMatrix bad(2, 1);
    bad.at(0, 0) = Rational(1);
    bad.at(1, 0) = Rational(1);
    CHECK(!solve_consistent(bad, {Rational(1), Rational(2)}).has_value());
}

TEST_CASE("matmul agrees with apply") {
    QMatrix a(2, 3), b(3, 2);
    for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 3; ++j) a.at(i, j) = Rational(i + 2 * j, 3);
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 2; ++j) b.at(i, j) = Rational(i - j, 5);
    QMatrix ab = matmul(a, b);
    for (long j = 0; j < 2; ++j) {
        std::vector<Rational> col(3);
        for (long i = 0; i < 3; ++i) col[i] = b.at(i, j);
        std::vector<Rational> want = ktq::apply(a, col);
        for (long i = 0; i < 2; ++i) CHECK(ab.at(i, j) == want[i]);
    }
}

TEST_CASE("rational string round trip") {
    CHECK(rational_to_string(Rational(-7, 3)) == "-7/3");
    CHECK(rational_from_string("-7/3") == Rational(-7, 3));
    CHECK(rational_from_string("42") == Rational(42));
    CHECK(rational_to_string(Rational(0)) == "0");
}
