#include <random>

#include "binrec/arith.hpp"
#include "doctest.h"

using namespace binrec;

namespace {

Integer random_integer(std::mt19937_64& rng, const Integer& bound) {
    gmp_randclass r(gmp_randinit_default);
    r.seed(rng());
    return r.get_z_range(bound);
}

}  // namespace

TEST_CASE("factorize small values") {
    const Factorization f = factorize(144);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimeFactor{2, 4, true});
    CHECK(f.factors[1] == PrimeFactor{3, 2, true});
    CHECK(f.sign == 1);
    CHECK(f.to_string() == "2^4 * 3^2");

    const Factorization g = factorize(-91);
    CHECK(g.sign == -1);
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0].prime == 7);
    CHECK(g.factors[1].prime == 13);
    CHECK(g.product() == -91);

    const Factorization one = factorize(1);
    CHECK(one.factors.empty());
    CHECK(one.sign == 1);
}

TEST_CASE("greatest prime factor") {
    CHECK(greatest_prime_factor(0) == 1);
    CHECK(greatest_prime_factor(1) == 1);
    CHECK(greatest_prime_factor(-1) == 1);
    CHECK(greatest_prime_factor(144) == 3);
    CHECK(greatest_prime_factor(4181) == 113);
}

TEST_CASE("greatest prime factor of m q is at least q") {
    std::mt19937_64 rng(7);
    const auto& primes = small_primes();
    for (int trial = 0; trial < 200; ++trial) {
        const Integer m = random_integer(rng, Integer("1000000000000")) + 1;
        const Integer q = primes[rng() % primes.size()];
        CHECK(greatest_prime_factor(m * q) >= q);
    }
}

TEST_CASE("factorization round trip on random values up to 1e30") {
    std::mt19937_64 rng(2024);
    const Integer bound("1000000000000000000000000000000");
    FactorOptions opts;
    opts.rho_budget = 2'000'000;
    int complete = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Integer m = random_integer(rng, bound) + 1;
        if (trial % 2) m = -m;
        try {
            const Factorization f = factorize(m, opts);
            CHECK(f.product() == m);
            for (const auto& pf : f.factors) CHECK(is_prime(pf.prime));
            ++complete;
        } catch (const FactorBudgetError& err) {
            Integer rest = err.partial().product();
            for (const auto& c : err.cofactors()) {
                CHECK(!is_prime(c));
                rest *= c;
            }
            CHECK(abs(rest) <= abs(m));
            CHECK(m % rest == 0);
        }
    }
    CHECK(complete > 950);
}

TEST_CASE("primality") {
    CHECK(!is_prime(1));
    CHECK(is_prime(2));
    CHECK(!is_prime(561));
    CHECK(!is_prime(Integer("3215031751")));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(primality(Integer("170141183460469231731687303715884105727")) == Primality::Probable);
    CHECK(primality(Integer("2305843009213693951")) == Primality::Prime);
    CHECK(!is_prime(Integer("3317044064679887385961981")));
}

TEST_CASE("factor hints supply large primes") {
    const Integer p("1000000000000000000000000000057"), q("1000000000000000000000000000099");
    REQUIRE(is_prime(p));
    REQUIRE(is_prime(q));
    CHECK_THROWS_AS(FactorHints({p, Integer(15)}), PreconditionError);
    FactorHints hints({p});
    FactorOptions opts;
    opts.rho_budget = 1000;
    opts.hints = &hints;
    const Factorization f = factorize(p * q * 12, opts);
    CHECK(f.product() == p * q * 12);
    CHECK(f.factors.back().prime == q);

    FactorOptions bare;
    bare.rho_budget = 1000;
    CHECK_THROWS_AS(factorize(p * q, bare), FactorBudgetError);
}

TEST_CASE("moebius and euler phi") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(30) == -1);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(20) == 8);
    CHECK(euler_phi(4) == 2);
    CHECK(two_pow_omega(60) == 8);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        long mu_sum = 0;
        std::uint64_t phi_sum = 0;
        for (std::uint64_t d : divisors(n)) {
            mu_sum += moebius(d);
            phi_sum += euler_phi(d);
        }
        REQUIRE(mu_sum == (n == 1 ? 1 : 0));
        REQUIRE(phi_sum == n);
    }
}

TEST_CASE("p-adic order") {
    CHECK(ord_p(Integer(144), Integer(2)) == Valuation(4));
    CHECK(ord_p(Integer(144), Integer(5)) == Valuation(0));
    CHECK(ord_p(Integer(0), Integer(7)).is_infinite());
    CHECK(ord_p(Rational(9, 8), Integer(2)) == -3);
    CHECK_THROWS_AS(ord_p(Integer(10), Integer(4)), PreconditionError);
}

TEST_CASE("modular helpers") {
    for (long p : {5L, 13L, 17L, 10007L}) {
        for (long a = 1; a < std::min(p, 200L); ++a) {
            Integer x;
            try {
                x = sqrt_mod_prime(a, p);
            } catch (const PreconditionError&) {
                continue;
            }
            CHECK((x * x - a) % p == 0);
        }
    }
    CHECK(inverse_mod(3, 4) == 3);
    CHECK(inverse_mod(5, 4) == 1);
    CHECK(inverse_mod(2, 5) == 3);
    Integer x, y;
    const Integer g = extended_gcd(240, 46, x, y);
    CHECK(g == 2);
    CHECK(240 * x + 46 * y == 2);
}
