#pragma once

// Rank of apparition, the exact p-adic valuation law for Lucas sequences, the
// prime structure of Phi_n(alpha, beta), and measured margins against the
// asymptotic valuation bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binrec/arith.hpp"
#include "binrec/interval.hpp"
#include "binrec/sequences.hpp"

namespace binrec {

struct RankRecord {
    Integer p;
    std::uint64_t l = 0;         // least l > 0 with p | t_l
    unsigned long ord_t_l = 0;   // ord_p(t_l)
    unsigned long ord_t_2l = 0;  // ord_p(t_{2l}), used when p = 2
};

/// Scans t_n mod p for n = 1 .. p+1. Rejects p | s.
RankRecord rank_of_apparition(const RecurrenceSpec& spec, const Integer& p);

/// ord_p(t_n) computed from residues modulo growing powers of p; n > 0, t_n != 0.
unsigned long lucas_term_ord(const RecurrenceSpec& spec, std::uint64_t n, const Integer& p);

/// ord_p(t_n) from the closed law:
///   0                                   if l does not divide n,
///   ord_p(t_l) + ord_p(k)               for n = l k and p > 2,
///   ord_2(t_l)                          for p = 2 and k odd,
///   ord_2(t_{2l}) + ord_2(k) - 1        for p = 2 and k even.
/// The last line is the additive form of |t_n|_2 = 2 |t_{2l}|_2 |k|_2 with
/// |x|_p = p^{-ord_p x}. Requires gcd(r, s) = 1 and p not dividing s; the result
/// is re-checked against t_n modulo p^{v+1}.
unsigned long lucas_valuation(const RecurrenceSpec& spec, std::uint64_t n, const Integer& p);

enum class PhiPrimeClass { Special, PlusMinusOne, Unclassified };
std::string to_string(PhiPrimeClass c);

struct PhiPrimeEntry {
    Integer p;
    unsigned exponent = 0;
    PhiPrimeClass cls = PhiPrimeClass::Unclassified;
};

struct PhiPrimeReport {
    std::uint64_t n = 0;
    Integer value;         // Phi_n(alpha, beta)
    Integer special;       // P(n / gcd(3, n))
    std::vector<PhiPrimeEntry> entries;
    std::vector<Integer> unfactored;  // composite cofactors left after budget exhaustion
    bool exhaustive() const;
};

/// Phi_n(alpha, beta) = prod_{d | n} t_d^{mu(n/d)} as an exact integer (n >= 2).
Integer phi_at_roots(const RecurrenceSpec& spec, std::uint64_t n);

/// Factors Phi_n(alpha, beta) and classifies every prime as the special prime
/// P(n/(3,n)) (to at most the first power) or as +-1 mod n. Requires
/// gcd(r^2, s) = 1, alpha/beta not a root of unity, n > 4 and n not 6 or 12.
/// With `report_only` the coprimality premise is waived and misclassified primes
/// are returned instead of raising IdentityError.
PhiPrimeReport phi_prime_structure(const RecurrenceSpec& spec, std::uint64_t n, const FactorOptions& options = {},
                                   bool report_only = false);

enum class MarginKind { GeneralTerm, LucasTerm, PhiValue };
std::string to_string(MarginKind k);

struct OrdpMargin {
    MarginKind kind = MarginKind::GeneralTerm;
    Integer p;
    std::uint64_t n = 0;
    Rational observed;   // ord_p of the measured quantity
    Interval bound;      // certified enclosure of the bound
    double ratio = 0.0;  // observed / bound midpoint
};

/// p exp(-log p / (51.9 log log p)) * log(index) * factor, p > 2, index >= 2.
Interval valuation_bound(const Integer& p, std::uint64_t index, const Interval& factor,
                         mpfr_prec_t precision_bits = 128);

/// Builds a margin row from an observed order and a bound.
OrdpMargin make_margin(MarginKind kind, const Integer& p, std::uint64_t n, Rational observed, Interval bound);

/// General-term (factor 1, observed ord_p u_n) or Lucas-term (factor log|alpha| with
/// |alpha| >= |beta|, observed ord_p t_n) margins. p > 2. The general-term kind
/// rejects sequences with a/b, alpha/beta dependent within the default search bound.
OrdpMargin ordp_bound_margin(MarginKind kind, const RecurrenceSpec& spec, std::uint64_t n, const Integer& p,
                             mpfr_prec_t precision_bits = 128);

}  // namespace binrec
