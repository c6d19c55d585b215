#pragma once

// Multiplicative dependence between a/b and alpha/beta, the theta construction
// that rewrites a dependent sequence as a twisted difference of powers, and the
// exact divisibility statements and size margins that follow from it.

#include <cstdint>
#include <optional>
#include <string>

#include "binrec/arith.hpp"
#include "binrec/cycloring.hpp"
#include "binrec/interval.hpp"
#include "binrec/padic.hpp"
#include "binrec/quadfield.hpp"
#include "binrec/sequences.hpp"

namespace binrec {

inline constexpr long kDefaultDependenceBound = 64;

/// zeta_e^k kept in lowest terms: e is the exact order, gcd(k, e) = 1 (e = 1 means 1).
class RootOfUnity {
public:
    RootOfUnity() = default;
    RootOfUnity(int e, long k);
    int order() const { return e_; }
    long exponent() const { return k_; }
    RootOfUnity pow(long m) const { return RootOfUnity(e_, k_ * m); }
    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
    bool is_one() const { return e_ == 1; }
    bool is_minus_one() const { return e_ == 2; }
    /// The element of Q(sqrt(delta)); rejects orders the field does not contain.
    QuadElem in_field(const Integer& delta) const;
    std::string to_string() const;
    /// Descriptor of an exact root of unity; nullopt when x is not one.
    static std::optional<RootOfUnity> of(const QuadElem& x);

private:
    int e_ = 1;
    long k_ = 0;
};

enum class DependenceCase { LZero, XNonneg, XNeg };
std::string to_string(DependenceCase c);

struct DependenceWitness {
    long k = 0;
    long l = 0;
    long l1 = 0;
    long k1 = 0;
    long x = 0;
    long y = 0;
    QuadElem rho;     // theta1 / theta2
    RootOfUnity zeta;  // -b/a when l = 0, else (a/b)^k1 / (alpha/beta)^l1
    DependenceCase kase = DependenceCase::LZero;
};

/// a/b a root of unity: k = its order, l = 0 and zeta = -b/a so that
/// u_n = a (alpha^n - zeta beta^n). Otherwise the least k in [1, bound] with
/// (a/b)^k = (alpha/beta)^l for some 0 < |l| <= bound; zeta = (a/b)^k1 / (alpha/beta)^l1,
/// x l1 + y k1 = 1 with 0 < y <= |l1| and rho = a^x alpha^y / (b^x beta^y).
/// nullopt means no dependence inside the bound, which proves nothing.
std::optional<DependenceWitness> find_dependence(const ClosedForm& cf, long bound = kDefaultDependenceBound);

/// Checks (a/b)^k = (alpha/beta)^l, x l1 + y k1 = 1, 0 < y <= |l1|,
/// rho^l1 = (a/b) zeta^-y and rho^k1 = (alpha/beta) zeta^x.
bool witness_invariants_hold(const DependenceWitness& wit, const ClosedForm& cf);

struct ThetaData {
    QuadElem theta1;
    QuadElem theta2;
    Integer trace;  // theta1 + theta2
    Integer N;      // theta1 * theta2
    Integer g;      // gcd((theta1 + theta2)^2, theta1 theta2)
    int field_tag = 0;              // 4 for Q(i), 3 for Q(zeta_3), 0 otherwise
    bool conjugate_branch = false;  // theta1 is the complex conjugate of theta2

    /// Elements of Z[i] / Z[w]; requires field_tag != 0.
    CycloInt cyclo1(int e) const;
    CycloInt cyclo2(int e) const;
    /// |lambda_1|^2 = N / g in the conjugate branch.
    Rational lambda_abs_sq() const { return Rational(N) / g; }
};

/// Validates a theta pair: algebraic integers with rational nonzero sum and
/// product, theta1/theta2 not a root of unity, integral quartic coefficients, and
/// N^2 >= 2 g^2 in the conjugate branch.
ThetaData make_theta(QuadElem theta1, QuadElem theta2);

/// (alpha, beta) for the l = 0 case, (w a)^x alpha^y and (w b)^x beta^y for x >= 0,
/// (w b)^-x alpha^y and (w a)^-x beta^y for x < 0.
ThetaData build_theta(const DependenceWitness& wit, const ClosedForm& cf);

/// Exact check of
///   w u_n = (w a)(theta1^n - zeta theta2^n)                                          (l = 0)
///   theta2^L w u_n = (w b) beta^n zeta^(y - x n) (theta1^L + zeta^(x n - y) theta2^L), L = l1 + k1 n.
bool verify_theta_identity(const ThetaData& th, const DependenceWitness& wit, const ClosedForm& cf,
                           const RecurrenceSpec& spec, std::uint64_t n);

enum class UnitCase { One, MinusOne, Cyclotomic };
std::string to_string(UnitCase c);

struct DivisibilityResult {
    std::uint64_t index = 0;  // m with Phi_m (or Phi_{m,e}^{(i)}) dividing
    UnitCase unit_case = UnitCase::One;
    int e = 1;
    long i = 0;
    std::string divisor;   // the evaluated Phi
    std::string twisted;   // theta1^M - c theta2^M
    std::string quotient;  // twisted / divisor
    bool divides_sequence_multiple = false;  // divisor also divides w u_n (l = 0) or theta2^M w u_n
};

/// With c the unit in theta1^M - c theta2^M (M = n for l = 0, M = k1 n + l1 otherwise):
/// c = 1 gives Phi_M, c = -1 gives Phi_{2M} and c = zeta_e^i gives Phi_{M,e}^{(i)}, each
/// verified to divide the dividend by exact division in the ring of integers.
/// Requires M >= 1.
DivisibilityResult divisibility_consequence(const ThetaData& th, const DependenceWitness& wit, const ClosedForm& cf,
                                            const RecurrenceSpec& spec, std::uint64_t n);

/// N / g, the Mahler measure of lambda1/lambda2. Conjugate branch only.
Rational mahler_lambda(const ThetaData& th);

struct LogGapMargin {
    std::uint64_t n = 0;
    Interval observed;        // log |lambda1^n - zeta lambda2^n|
    Interval upper;           // n log|lambda1| + log 2
    bool upper_holds = false;  // exact: |theta1^n - zeta theta2^n|^2 <= 4 N^n
    bool near_equality = false;
    double c1 = 0.0;  // (n log|lambda1| - observed) / (log(n+1) log|lambda1|)
};

/// Size of lambda1^n - zeta_e^k lambda2^n against n log|lambda1|. Conjugate branch,
/// e in {3, 4, 6} with zeta_e in the field.
LogGapMargin log_gap_margins(const ThetaData& th, int e, long k, std::uint64_t n, mpfr_prec_t precision_bits = 128);

struct PartialPhiMargin {
    std::uint64_t n = 0;
    std::uint64_t degree = 0;  // phi(ne) / phi(e)
    CycloInt value;            // Phi_{n,e}^{(i)}(theta1, theta2)
    Integer lambda_norm;       // |Phi_{n,e}^{(i)}(lambda1, lambda2)|^2 = norm(value) / g^degree
    Interval observed;         // log |Phi_{n,e}^{(i)}(lambda1, lambda2)|
    Interval main_term;        // degree * log|lambda1|
    std::optional<double> c;   // deviation / (q(n) log n log|lambda1|), n > 2
    bool half_degree_exceeded = false;  // exact: norm(value)^2 > N^d g^d
};

/// Size of Phi_{n,e}^{(i)}(lambda1, lambda2) against its degree; also asserts that
/// g^degree divides norm(value).
PartialPhiMargin partial_phi_margins(const ThetaData& th, int e, long i, std::uint64_t n,
                                     mpfr_prec_t precision_bits = 128);

/// ord_p Phi_{ne}(lambda1, lambda2) = ord_p Phi_{ne}(theta1, theta2) - (phi(ne)/2) ord_p g,
/// the rational integer Phi_{ne}(theta1, theta2) being evaluated in Z[zeta_e].
Rational phi_value_ord(const ThetaData& th, int e, std::uint64_t n, const Integer& p);

/// Margin row for ord_p Phi_{ne}(lambda1, lambda2) against
/// p exp(-log p / (51.9 log log p)) log|lambda1| log(ne).
OrdpMargin phi_value_margin(const ThetaData& th, int e, std::uint64_t n, const Integer& p,
                            mpfr_prec_t precision_bits = 128);

}  // namespace binrec
