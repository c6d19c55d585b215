#include "binrec/interval.hpp"

#include <algorithm>
#include <utility>

namespace binrec {

namespace {

mpfr_prec_t common_precision(const Interval& a, const Interval& b) {
    return std::max(a.precision(), b.precision());
}

std::string render(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, rnd == MPFR_RNDD ? "%.*RDg" : "%.*RUg", digits, v);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) {
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
    mpfr_init2(lo_, other.precision());
    mpfr_init2(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::point(const Integer& v, mpfr_prec_t precision) {
    Interval out(precision);
    mpfr_set_z(out.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(out.hi_, v.get_mpz_t(), MPFR_RNDU);
    return out;
}

Interval Interval::point(const Rational& v, mpfr_prec_t precision) {
    Interval out(precision);
    mpfr_set_q(out.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_, v.get_mpq_t(), MPFR_RNDU);
    return out;
}

Interval Interval::decimal(const std::string& text, mpfr_prec_t precision) {
    Interval out(precision);
    require(mpfr_set_str(out.lo_, text.c_str(), 10, MPFR_RNDD) == 0, "not a decimal number: '" + text + "'");
    mpfr_set_str(out.hi_, text.c_str(), 10, MPFR_RNDU);
    return out;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval out(common_precision(a, b));
    mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

double Interval::midpoint() const {
    mpfr_t m;
    mpfr_init2(m, precision() + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double out = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return out;
}

double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, precision());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double out = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return out;
}

bool Interval::certainly_less(const Integer& v) const { return mpfr_cmp_z(hi_, v.get_mpz_t()) < 0; }

bool Interval::certainly_greater(const Integer& v) const { return mpfr_cmp_z(lo_, v.get_mpz_t()) > 0; }

bool Interval::relative_width_within(mpfr_prec_t bits) const {
    mpfr_t w, mag;
    mpfr_init2(w, precision());
    mpfr_init2(mag, precision());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_abs(mag, lo_, MPFR_RNDD);
    if (mpfr_cmpabs(hi_, mag) > 0) mpfr_abs(mag, hi_, MPFR_RNDD);
    if (mpfr_cmp_ui(mag, 1) < 0) mpfr_set_ui(mag, 1, MPFR_RNDD);
    mpfr_mul_2si(mag, mag, -bits, MPFR_RNDD);
    bool ok = mpfr_lessequal_p(w, mag);
    mpfr_clear(w);
    mpfr_clear(mag);
    return ok;
}

std::string Interval::lower_string(int digits) const { return render(lo_, digits, MPFR_RNDD); }

std::string Interval::upper_string(int digits) const { return render(hi_, digits, MPFR_RNDU); }

Interval operator+(const Interval& a, const Interval& b) {
    Interval out(common_precision(a, b));
    mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval out(common_precision(a, b));
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
}

Interval operator-(const Interval& a) {
    Interval out(a.precision());
    mpfr_neg(out.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, a.lo_, MPFR_RNDU);
    return out;
}

Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t prec = common_precision(a, b);
    Interval out(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return out;
}

Interval operator/(const Interval& a, const Interval& b) {
    require(!b.contains_zero(), "interval division by an interval containing zero");
    const mpfr_prec_t prec = common_precision(a, b);
    Interval inv(prec);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
}

Interval abs(const Interval& a) {
    if (mpfr_sgn(a.lo_) >= 0) return a;
    if (mpfr_sgn(a.hi_) <= 0) return -a;
    Interval out(a.precision());
    mpfr_set_zero(out.lo_, 1);
    mpfr_neg(out.hi_, a.lo_, MPFR_RNDU);
    if (mpfr_greater_p(a.hi_, out.hi_)) mpfr_set(out.hi_, a.hi_, MPFR_RNDU);
    return out;
}

Interval sqrt(const Interval& a) {
    require(mpfr_sgn(a.hi_) >= 0, "interval sqrt of a negative interval");
    Interval out(a.precision());
    if (mpfr_sgn(a.lo_) <= 0)
        mpfr_set_zero(out.lo_, 1);
    else
        mpfr_sqrt(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(out.hi_, a.hi_, MPFR_RNDU);
    return out;
}

Interval log(const Interval& a) {
    require(a.certainly_positive(), "interval log of a non-positive interval");
    Interval out(a.precision());
    mpfr_log(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(out.hi_, a.hi_, MPFR_RNDU);
    return out;
}

Interval exp(const Interval& a) {
    Interval out(a.precision());
    mpfr_exp(out.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(out.hi_, a.hi_, MPFR_RNDU);
    return out;
}

Interval log_abs(const Integer& v, mpfr_prec_t precision) {
    require(v != 0, "log of zero");
    return log(Interval::point(Integer(abs(v)), precision));
}

}  // namespace binrec
