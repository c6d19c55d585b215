#include <random>

#include "binrec/cycloring.hpp"
#include "doctest.h"

using namespace binrec;

namespace {

CycloInt random_elem(std::mt19937_64& rng, int e, long range) {
    std::uniform_int_distribution<long> c(-range, range);
    return CycloInt(e, c(rng), c(rng));
}

}  // namespace

TEST_CASE("roots of unity") {
    CHECK(zeta(4, 1) == CycloInt(4, 0, 1));
    CHECK(zeta(3, 3) == CycloInt(3, 1));
    const CycloInt z6 = zeta(6, 1);
    CHECK(z6 == CycloInt(6, 1, 1));
    CHECK(pow(z6, 6) == z6.one());
    for (unsigned k = 1; k < 6; ++k) CHECK(pow(z6, k) != z6.one());
    CHECK(z6 == -(pow(zeta(3, 1), 2)));
}

TEST_CASE("exact division") {
    CHECK(divide_exact(CycloInt(4, -9, 9), CycloInt(4, 3, 3)) == CycloInt(4, 0, 3));
    const CycloInt z(4, 7, -3);
    CHECK(divide_exact(z, z.one()) == z);
    CHECK(divide_exact(CycloInt(4, 205), CycloInt(4, 2, 1)) == CycloInt(4, 82, -41));
    CHECK_THROWS_AS(divide_exact(CycloInt(4, 5), CycloInt(4, 3)), IdentityError);
}

TEST_CASE("norm multiplicativity") {
    std::mt19937_64 rng(5);
    for (int e : {3, 4}) {
        for (int k = 0; k < 1000; ++k) {
            const CycloInt x = random_elem(rng, e, 1000), y = random_elem(rng, e, 1000);
            REQUIRE((x * y).norm() == x.norm() * y.norm());
            REQUIRE(x.norm() == (x * x.conj()).u());
            REQUIRE((x * x.conj()).v() == 0);
        }
    }
}

TEST_CASE("factorizations of worked elements") {
    const CycloFactorization f5 = factor_element(CycloInt(4, 5));
    REQUIRE(f5.factors.size() == 2);
    CHECK(f5.product() == CycloInt(4, 5));
    CHECK(f5.factors[0].pi.norm() == 5);
    CHECK(f5.factors[1].pi.norm() == 5);
    CHECK(f5.factors[0].pi != f5.factors[1].pi);

    const CycloFactorization f7 = factor_element(CycloInt(3, 7));
    REQUIRE(f7.factors.size() == 2);
    CHECK(f7.product() == CycloInt(3, 7));
    for (const auto& pf : f7.factors) CHECK(pf.pi.norm() == 7);

    const CycloFactorization f = factor_element(CycloInt(4, 13, 6));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].rational_prime == 5);
    CHECK(f.factors[1].rational_prime == 41);
    CHECK(f.product() == CycloInt(4, 13, 6));
}

TEST_CASE("factor_element reassembles random elements") {
    std::mt19937_64 rng(17);
    for (int e : {3, 4}) {
        for (int k = 0; k < 1000; ++k) {
            const CycloInt z = random_elem(rng, e, 1'000'000);
            if (z.is_zero()) continue;
            const CycloFactorization f = factor_element(z);
            REQUIRE(f.product() == z);
            REQUIRE(f.unit.is_unit());
            for (const auto& pf : f.factors) {
                REQUIRE(canonical_associate(pf.pi).first == pf.pi);
                REQUIRE(try_divide(z, pf.pi).has_value());
            }
        }
    }
}

TEST_CASE("splitting laws") {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L}) {
        const auto gi = primes_above(p, 4);
        if (p == 2) {
            REQUIRE(gi.size() == 1);
            CHECK(gi[0].kind == PrimeKind::Ramified);
            CHECK(gi[0].pi == CycloInt(4, 1, 1));
        } else if (p % 4 == 3) {
            REQUIRE(gi.size() == 1);
            CHECK(gi[0].kind == PrimeKind::Inert);
            CHECK(gi[0].pi == CycloInt(4, p));
        } else {
            REQUIRE(gi.size() == 2);
            CHECK(gi[0].kind == PrimeKind::Split);
            CHECK(gi[0].pi.norm() == p);
            CHECK(gi[0].pi * gi[1].pi == CycloInt(4, p) * canonical_associate(gi[0].pi * gi[1].pi).second);
        }
        const auto ei = primes_above(p, 3);
        if (p == 3) {
            REQUIRE(ei.size() == 1);
            CHECK(ei[0].kind == PrimeKind::Ramified);
            CHECK(ei[0].pi.norm() == 3);
        } else if (p % 3 == 2) {
            REQUIRE(ei.size() == 1);
            CHECK(ei[0].kind == PrimeKind::Inert);
        } else {
            REQUIRE(ei.size() == 2);
            CHECK(ei[0].pi.norm() == p);
            CHECK(ei[1].pi.norm() == p);
        }
    }
}

TEST_CASE("canonical associates and gcd") {
    const auto [assoc, unit] = canonical_associate(CycloInt(4, -1, 2));
    CHECK(unit * assoc == CycloInt(4, -1, 2));
    CHECK(assoc.u() > 0);
    CHECK(assoc.v() >= 0);
    CHECK(gcd(CycloInt(4, 5), CycloInt(4, 2, 1)).norm() == 5);
    CHECK(units(4).size() == 4);
    CHECK(units(3).size() == 6);
}

TEST_CASE("field conversions") {
    const QuadElem x(2, 1, -4);  // 2 + sqrt(-4) = 2 + 2i
    const CycloInt z = to_cyclo(x, 4);
    CHECK(z == CycloInt(4, 2, 2));
    CHECK(to_quad(z, -4) == x);
    const QuadElem w(Rational(-1, 2), Rational(1, 2), -3);  // zeta_3
    CHECK(to_cyclo(w, 3) == CycloInt(3, 0, 1));
    CHECK(cyclotomic_tag_of_field(-12) == 3);
    CHECK(cyclotomic_tag_of_field(-16) == 4);
    CHECK(cyclotomic_tag_of_field(-20) == 0);
    CHECK(CycloInt::parse("3-2*i", 4) == CycloInt(4, 3, -2));
    CHECK(CycloInt(4, 3, -2).to_string() == "3-2*i");
    CHECK(CycloInt(4, 0, 3).to_string() == "3*i");
    CHECK(CycloInt(4, 3, 0).to_string() == "3");
    CHECK(CycloInt(3, 0, -1).to_string() == "-w");
    CHECK(CycloInt(3, 2, 1).to_string() == "2+w");
    for (int e : {3, 4, 6})
        for (int u = -3; u <= 3; ++u)
            for (int v = -3; v <= 3; ++v) {
                const CycloInt z(e, u, v);
                REQUIRE(CycloInt::parse(z.to_string(), e) == z);
            }
}
