#pragma once

// Search for large prime divisors of theta1^m - zeta_e^i theta2^m through the
// factorization of Phi_{m,e}^{(i)}(theta1, theta2) in Z[zeta_e].

#include <cstdint>
#include <optional>

#include "binrec/cycloring.hpp"
#include "binrec/interval.hpp"
#include "binrec/muldep.hpp"

namespace binrec {

struct PrimitiveResult {
    std::uint64_t m = 0;
    int e = 4;
    long i = 1;
    CycloInt value;  // Phi_{m,e}^{(i)}(theta1, theta2)
    CycloFactorization factorization;
    /// Largest rational prime under an irreducible factor; nullopt when value is a unit.
    std::optional<Integer> p;
    std::optional<CycloInt> pi;
    bool split = false;  // pi conj(pi) = p (split or ramified) rather than pi = p
    Interval bound;      // m exp(log m / (103.95 log log m)), m >= 3
    bool exceeds_bound = false;
    bool in_window = false;  // m e > 12
};

/// i must be 1 or -1 (taken modulo e). Every irreducible factor is checked to divide
/// theta1^m - zeta_e^i theta2^m exactly and the factorization is reassembled.
PrimitiveResult primitive_prime_search(const ThetaData& th, int e, long i, std::uint64_t m,
                                       const FactorOptions& options = {}, mpfr_prec_t precision_bits = 128);

/// m exp(log m / (c log log m)) for m >= 3 with c = 103.95.
Interval primitive_bound(std::uint64_t m, mpfr_prec_t precision_bits = 128);

}  // namespace binrec
