#pragma once

// Outward-rounded real intervals on top of MPFR. Every operation returns an
// interval guaranteed to contain the exact result of applying the operation to
// any points of the operands.

#include <mpfr.h>

#include <string>

#include "binrec/arith.hpp"

namespace binrec {

/// Highest working precision the certified comparisons escalate to.
inline constexpr mpfr_prec_t kMaxPrecisionBits = 4096;

class Interval {
public:
    explicit Interval(mpfr_prec_t precision = 128);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(Interval other) noexcept;
    ~Interval();

    static Interval point(const Integer& v, mpfr_prec_t precision);
    static Interval point(const Rational& v, mpfr_prec_t precision);
    /// Encloses a decimal literal such as "103.95" that may not be representable.
    static Interval decimal(const std::string& text, mpfr_prec_t precision);
    static Interval hull(const Interval& a, const Interval& b);

    mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
    double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double midpoint() const;
    /// Upper bound on hi - lo.
    double width() const;

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
    /// True when every point is < v (resp. > v).
    bool certainly_less(const Integer& v) const;
    bool certainly_greater(const Integer& v) const;
    bool certainly_less(const Interval& v) const { return mpfr_less_p(hi_, v.lo_); }
    /// width <= 2^-bits * max(1, |x|)
    bool relative_width_within(mpfr_prec_t bits) const;

    /// Decimal rendering of the bounds with the given significant digits.
    std::string lower_string(int digits = 20) const;
    std::string upper_string(int digits = 20) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);

    friend Interval abs(const Interval& a);
    friend Interval sqrt(const Interval& a);
    friend Interval log(const Interval& a);
    friend Interval exp(const Interval& a);

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Interval enclosing log|v| for a nonzero integer.
Interval log_abs(const Integer& v, mpfr_prec_t precision);

}  // namespace binrec
