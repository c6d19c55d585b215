#pragma once

// Exact arithmetic in Q(sqrt(D)) over the basis {1, sqrt(D)}.
//
// D is kept exactly as produced by the recurrence (r^2 + 4s), not reduced to its
// squarefree kernel, so alpha = (r + sqrt(D)) / 2 needs no square root extraction.
// When D is a perfect square the "field" is Q itself: sqrt(D) is folded into the
// rational part on construction and every element has a1 == 0.

#include <optional>
#include <utility>

#include "binrec/arith.hpp"
#include "binrec/interval.hpp"

namespace binrec {

class QuadElem {
public:
    QuadElem() = default;
    QuadElem(Rational a0, Rational a1, Integer delta);
    static QuadElem rational(Rational v, Integer delta) { return QuadElem(std::move(v), 0, std::move(delta)); }

    const Rational& a0() const { return a0_; }
    const Rational& a1() const { return a1_; }
    const Integer& delta() const { return delta_; }
    /// True when D is a perfect square (elements are plain rationals).
    bool split() const { return split_; }

    bool is_zero() const { return a0_ == 0 && a1_ == 0; }
    bool is_rational() const { return a1_ == 0; }
    bool is_integer() const { return a1_ == 0 && a0_.get_den() == 1; }
    /// Root of a monic integer polynomial (trace and norm are integers).
    bool is_algebraic_integer() const;

    QuadElem conj() const;
    Rational norm() const;
    Rational trace() const;

    QuadElem& operator+=(const QuadElem& o);
    QuadElem& operator-=(const QuadElem& o);
    QuadElem& operator*=(const QuadElem& o);
    QuadElem& operator/=(const QuadElem& o);

    friend QuadElem operator+(QuadElem a, const QuadElem& b) { return a += b; }
    friend QuadElem operator-(QuadElem a, const QuadElem& b) { return a -= b; }
    friend QuadElem operator*(QuadElem a, const QuadElem& b) { return a *= b; }
    friend QuadElem operator/(QuadElem a, const QuadElem& b) { return a /= b; }
    friend QuadElem operator-(const QuadElem& a) { return QuadElem(-a.a0_, -a.a1_, a.delta_); }
    friend QuadElem operator*(QuadElem a, const Rational& c);
    friend QuadElem operator*(const Rational& c, QuadElem a) { return std::move(a) * c; }

    friend bool operator==(const QuadElem& a, const QuadElem& b);

    QuadElem one() const { return rational(1, delta_); }
    QuadElem zero() const { return rational(0, delta_); }

    std::string to_string() const;

private:
    void check_same_field(const QuadElem& o) const;

    Rational a0_ = 0;
    Rational a1_ = 0;
    Integer delta_ = 1;
    bool split_ = true;
};

/// x^k for any integer k (x nonzero when k < 0).
QuadElem pow(const QuadElem& x, long k);
/// Quotient in the field; `w` must be nonzero.
QuadElem divide_exact(const QuadElem& z, const QuadElem& w);

inline Rational norm(const QuadElem& x) { return x.norm(); }
inline QuadElem conj(const QuadElem& x) { return x.conj(); }

/// D = m^2 * kernel with kernel squarefree (sign carried by the kernel).
struct SquarefreeSplit {
    Integer kernel;
    Integer root;  // m > 0
};
SquarefreeSplit squarefree_kernel(const Integer& delta);

/// alpha = (r + sqrt(D)) / 2 and beta = (r - sqrt(D)) / 2 with D = r^2 + 4s.
std::pair<QuadElem, QuadElem> roots_of(const Integer& r, const Integer& s);

/// Least k in {1, 2, 3, 4, 6} with x^k = 1, or nullopt. Exact powering; x != 0.
std::optional<unsigned> is_root_of_unity(const QuadElem& x);

/// Certified enclosure of |x| (complex modulus when D < 0) with relative width at
/// most 2^-precision_bits. Escalates working precision up to kMaxPrecisionBits.
Interval embed_abs(const QuadElem& x, mpfr_prec_t precision_bits);

}  // namespace binrec
