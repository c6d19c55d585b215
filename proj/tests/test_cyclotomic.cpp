#include <numeric>

#include "binrec/cyclotomic.hpp"
#include "binrec/sequences.hpp"
#include "doctest.h"

using namespace binrec;

TEST_CASE("integer cyclotomic values") {
    CHECK(phi_eval<Integer>(12, 2, 1) == 13);
    CHECK(phi_eval<Integer>(1, 7, 3) == 4);
    CHECK(phi_eval<Integer>(30, 2, 1) == 331);
    CHECK_THROWS_AS(phi_eval<Integer>(4, 1, 1), PreconditionError);
}

TEST_CASE("quadratic points") {
    auto [a, b] = roots_of(1, 1);
    CHECK(phi_eval(12, a, b) == QuadElem::rational(6, 5));
    auto [g, gb] = roots_of(4, -5);
    const QuadElem v = phi_eval(1, g, gb);
    CHECK(v == g - gb);
}

TEST_CASE("partial cyclotomic values") {
    const CycloInt two(4, 2), one(4, 1);
    CHECK(phi_ie_eval(5, 4, 1, two, one) == CycloInt(4, 13, 6));
    CHECK(phi_ie_eval(5, 4, 3, two, one) == CycloInt(4, 13, -6));
    CHECK(phi_ie_eval(5, 4, 2, two, one) == one);
    CHECK(phi_ie_eval(3, 4, 1, CycloInt(4, 2, 1), CycloInt(4, 2, -1)) == CycloInt(4, 0, 3));
    CHECK(psi_ie_eval(5, 4, 1, two, one) == CycloInt(4, 2, -1));
    CHECK(psi_ie_eval(1, 4, 1, CycloInt(4, 5, 2), CycloInt(4, -3, 1)) == one);

    const CycloInt three(3, 3), unit(3, 1);
    const CycloInt phi = phi_ie_eval(4, 3, 1, three, unit);
    const CycloInt psi = psi_ie_eval(4, 3, 1, three, unit);
    CHECK(phi * psi == CycloInt(3, 81) - zeta(3, 1));
    CHECK(partial_cyclotomic_degree(5, 4) == 4);
    CHECK(partial_cyclotomic_degree(4, 3) == 2);
    CHECK(partial_cyclotomic_twist(3, 3, 4) == 1);
}

TEST_CASE("product over classes is the full cyclotomic value") {
    const std::vector<std::pair<CycloInt, CycloInt>> gauss{
        {CycloInt(4, 2), CycloInt(4, 1)}, {CycloInt(4, 3), CycloInt(4, 2)}, {CycloInt(4, 2, 1), CycloInt(4, 2, -1)}};
    const std::vector<std::pair<CycloInt, CycloInt>> eis{
        {CycloInt(3, 2), CycloInt(3, 1)}, {CycloInt(3, 3), CycloInt(3, 2)}, {CycloInt(3, 2, 3), CycloInt(3, 5, 3)}};
    for (int e : {3, 4}) {
        for (const auto& [x, y] : e == 4 ? gauss : eis) {
            for (std::uint64_t n = 1; n <= 30; ++n) {
                CycloInt prod = x.one();
                for (long i = 1; i <= e; ++i) {
                    if (std::gcd(i, static_cast<long>(e)) != 1) continue;
                    const CycloInt phi = phi_ie_eval(n, e, i, x, y);
                    prod = prod * phi;
                    REQUIRE(phi * psi_ie_eval(n, e, i, x, y) == twisted_difference(n, e, i, x, y));
                    REQUIRE(phi_ie_eval(n, e, e - i, x.conj(), y.conj()) == phi.conj());
                }
                REQUIRE(prod == phi_eval(n * e, x, y));
            }
        }
    }
}

TEST_CASE("divisor product and homogeneity") {
    for (std::uint64_t n = 1; n <= 200; ++n) {
        Integer prod = 1;
        for (std::uint64_t d : divisors(n)) prod *= phi_eval<Integer>(d, 3, 2);
        REQUIRE(prod == pow(Integer(3), n) - pow(Integer(2), n));
    }
    for (std::uint64_t n = 1; n <= 60; ++n)
        REQUIRE(phi_eval<Integer>(n, 15, 10) == pow(Integer(5), euler_phi(n)) * phi_eval<Integer>(n, 3, 2));
}
