#pragma once

// Integer number theory on arbitrary-precision values: primality, factorization,
// and the multiplicative functions used throughout the library.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binrec/errors.hpp"

namespace binrec {

using Integer = mpz_class;
using Rational = mpq_class;

/// Result of a primality test. `Probable` is returned above the range where the
/// fixed Miller-Rabin base set is a proof (Baillie-PSW was passed instead).
enum class Primality { Composite, Prime, Probable };

/// Deterministic Miller-Rabin (bases 2..41) below 3.3e24, Baillie-PSW above.
Primality primality(const Integer& n);

inline bool is_prime(const Integer& n) { return primality(n) != Primality::Composite; }

/// Largest value for which the fixed Miller-Rabin base set is a proof.
const Integer& deterministic_mr_limit();

struct PrimeFactor {
    Integer prime;
    unsigned exponent = 0;
    bool certified = true;  // false when the prime is only a BPSW probable prime

    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// Signed factorization value = sign * prod p_i^e_i, primes strictly increasing.
/// Zero has sign 0 and no factors; +-1 have no factors.
struct Factorization {
    Integer value;
    int sign = 0;
    std::vector<PrimeFactor> factors;

    bool certified() const;
    Integer product() const;  // reassembles sign * prod p^e
    std::string to_string() const;
};

/// Known prime factors consulted after trial division. Every hint is checked for
/// primality when loaded; a hint is only applied if it actually divides.
class FactorHints {
public:
    FactorHints() = default;
    explicit FactorHints(std::vector<Integer> primes);

    /// Reads a JSON file {"primes": ["...", ...]} (other keys ignored).
    static FactorHints load(const std::string& path);

    std::span<const Integer> primes() const { return primes_; }
    bool empty() const { return primes_.empty(); }

private:
    std::vector<Integer> primes_;
};

struct FactorOptions {
    /// Total Pollard-rho iteration budget across one factorize() call.
    std::uint64_t rho_budget = 100'000'000;
    const FactorHints* hints = nullptr;
};

/// Thrown when Pollard rho exhausts its budget. Carries the factorization found so
/// far and the composite cofactors that could not be split.
class FactorBudgetError : public ResourceError {
public:
    FactorBudgetError(Factorization partial, std::vector<Integer> cofactors, std::uint64_t budget);

    const Factorization& partial() const { return partial_; }
    const std::vector<Integer>& cofactors() const { return cofactors_; }
    std::uint64_t budget() const { return budget_; }

private:
    Factorization partial_;
    std::vector<Integer> cofactors_;
    std::uint64_t budget_;
};

/// Trial division to 1e6, factor hints, then Brent's variant of Pollard rho with a
/// fixed seed sequence. Output is a deterministic function of (m, options).
Factorization factorize(const Integer& m, const FactorOptions& options = {});

/// P(m), with P(0) = P(+-1) = 1.
Integer greatest_prime_factor(const Integer& m, const FactorOptions& options = {});

/// Primes up to `limit` by sieve. The table up to 1e6 is built once and shared.
std::span<const std::uint32_t> small_primes();
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Factorization of a machine-sized positive integer by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n);

int moebius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
unsigned omega(std::uint64_t n);
/// q(n) = 2^omega(n).
std::uint64_t two_pow_omega(std::uint64_t n);
/// Positive divisors in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// p-adic order. Zero has infinite order.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(unsigned long v) : value_(v) {}
    static constexpr Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }
    unsigned long value() const {
        require(!infinite_, "valuation of zero is infinite");
        return value_;
    }

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;

private:
    unsigned long value_ = 0;
    bool infinite_ = false;
};

/// ord_p(m); rejects non-prime p.
Valuation ord_p(const Integer& m, const Integer& p);
/// ord_p of a nonzero rational (may be negative).
long ord_p(const Rational& x, const Integer& p);

/// Unchecked fast path used by inner loops (p assumed prime, m nonzero).
unsigned long ord_p_unchecked(const Integer& m, const Integer& p);

std::uint64_t to_u64(const Integer& n);
Integer from_u64(std::uint64_t n);
Integer parse_integer(const std::string& text);

/// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a residue.
Integer sqrt_mod_prime(const Integer& a, const Integer& p);

/// Extended Euclid: returns g = gcd(a, b) >= 0 and sets x, y with a x + b y = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y);

/// Least positive inverse of a modulo m (m >= 1, gcd(a, m) = 1).
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

Integer pow(const Integer& base, unsigned long exponent);

}  // namespace binrec
