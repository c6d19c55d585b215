#pragma once

// Point evaluation of homogeneous cyclotomic polynomials by Moebius products:
//
//   Phi_n(x, y)         = prod_{d | n} (x^{n/d} - y^{n/d})^{mu(d)}
//   Phi_{n,e}^{(i)}(x,y) = prod_{m | n, (m,e) = 1} (x^{n/m} - zeta_e^{mbar} y^{n/m})^{mu(m)},
//                          mbar * m == i (mod e)
//
// Polynomial coefficients are never formed. All mu = +1 factors are multiplied
// first and the mu = -1 factors divided out one at a time with an exactness check,
// so integer and Z[zeta_e] evaluations never leave their ring.

#include <concepts>
#include <cstdint>
#include <vector>

#include "binrec/arith.hpp"
#include "binrec/cycloring.hpp"
#include "binrec/quadfield.hpp"

namespace binrec {

/// Exact-ring operations needed by the evaluators.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Integer> {
    static Integer one(const Integer&) { return 1; }
    static bool is_zero(const Integer& x) { return x == 0; }
    static Integer power(const Integer& x, unsigned long k) { return pow(x, k); }
    static Integer divide(const Integer& z, const Integer& w) {
        require(w != 0, "division by zero");
        if (!mpz_divisible_p(z.get_mpz_t(), w.get_mpz_t()))
            throw IdentityError(w.get_str() + " does not divide " + z.get_str());
        Integer q;
        mpz_divexact(q.get_mpz_t(), z.get_mpz_t(), w.get_mpz_t());
        return q;
    }
};

template <>
struct RingTraits<QuadElem> {
    static QuadElem one(const QuadElem& like) { return like.one(); }
    static bool is_zero(const QuadElem& x) { return x.is_zero(); }
    static QuadElem power(const QuadElem& x, unsigned long k) { return pow(x, static_cast<long>(k)); }
    static QuadElem divide(const QuadElem& z, const QuadElem& w) { return divide_exact(z, w); }
};

template <>
struct RingTraits<CycloInt> {
    static CycloInt one(const CycloInt& like) { return like.one(); }
    static bool is_zero(const CycloInt& x) { return x.is_zero(); }
    static CycloInt power(const CycloInt& x, unsigned long k) { return pow(x, k); }
    static CycloInt divide(const CycloInt& z, const CycloInt& w) { return divide_exact(z, w); }
};

template <class R>
concept ExactRing = requires(const R& a, const R& b) {
    { a * b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { RingTraits<R>::divide(a, b) } -> std::convertible_to<R>;
};

namespace detail {

/// Multiplies the numerator factors, then divides by each denominator factor.
template <ExactRing R>
R fraction_free_product(const std::vector<R>& numerators, const std::vector<R>& denominators, const R& like) {
    R acc = RingTraits<R>::one(like);
    for (const R& f : numerators) acc = acc * f;
    for (const R& f : denominators) acc = RingTraits<R>::divide(acc, f);
    return acc;
}

}  // namespace detail

/// Phi_n(x, y). Refuses (PreconditionError) when some x^k - y^k vanishes, i.e.
/// x/y is a root of unity.
template <ExactRing R>
R phi_eval(std::uint64_t n, const R& x, const R& y) {
    require(n >= 1, "phi_eval: n must be positive");
    std::vector<R> num, den;
    for (std::uint64_t d : divisors(n)) {
        const int mu = moebius(d);
        if (mu == 0) continue;
        R f = RingTraits<R>::power(x, n / d) - RingTraits<R>::power(y, n / d);
        require(!RingTraits<R>::is_zero(f), "phi_eval: x^k - y^k vanishes (x/y is a root of unity)");
        (mu > 0 ? num : den).push_back(std::move(f));
    }
    return detail::fraction_free_product(num, den, x);
}

/// Least non-negative mbar with mbar * m == i (mod e).
std::int64_t partial_cyclotomic_twist(std::int64_t m, std::int64_t i, std::int64_t e);

/// phi(ne) / phi(e), the degree of Phi_{n,e}^{(i)} for gcd(i, e) = 1.
std::uint64_t partial_cyclotomic_degree(std::uint64_t n, int e);

/// Phi_{n,e}^{(i)}(x, y) in Z[zeta_e]; the ring unit 1 when gcd(i, e) > 1.
CycloInt phi_ie_eval(std::uint64_t n, int e, std::int64_t i, const CycloInt& x, const CycloInt& y);

/// Psi_{n,e}^{(i)}(x, y) = (x^n - zeta_e^i y^n) / Phi_{n,e}^{(i)}(x, y), re-checked by
/// multiplying back.
CycloInt psi_ie_eval(std::uint64_t n, int e, std::int64_t i, const CycloInt& x, const CycloInt& y);

/// x^n - zeta_e^i y^n.
CycloInt twisted_difference(std::uint64_t n, int e, std::int64_t i, const CycloInt& x, const CycloInt& y);

}  // namespace binrec
