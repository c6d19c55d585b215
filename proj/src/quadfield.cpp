#include "binrec/quadfield.hpp"

#include <sstream>

namespace binrec {

QuadElem::QuadElem(Rational a0, Rational a1, Integer delta)
    : a0_(std::move(a0)), a1_(std::move(a1)), delta_(std::move(delta)) {
    require(delta_ != 0, "quadratic field discriminant must be nonzero");
    a0_.canonicalize();
    a1_.canonicalize();
    split_ = delta_ > 0 && mpz_perfect_square_p(delta_.get_mpz_t());
    if (split_ && a1_ != 0) {
        a0_ += a1_ * Rational(sqrt(delta_));
        a1_ = 0;
    }
}

void QuadElem::check_same_field(const QuadElem& o) const {
    require(delta_ == o.delta_, "quadratic elements from different fields (D = " + delta_.get_str() + " vs " +
                                    o.delta_.get_str() + ")");
}

bool QuadElem::is_algebraic_integer() const {
    const Rational t = trace(), n = norm();
    return t.get_den() == 1 && n.get_den() == 1;
}

QuadElem QuadElem::conj() const { return QuadElem(a0_, -a1_, delta_); }

Rational QuadElem::norm() const {
    if (split_) return a0_ * a0_;
    return a0_ * a0_ - a1_ * a1_ * Rational(delta_);
}

Rational QuadElem::trace() const { return 2 * a0_; }

QuadElem& QuadElem::operator+=(const QuadElem& o) {
    check_same_field(o);
    a0_ += o.a0_;
    a1_ += o.a1_;
    return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
    check_same_field(o);
    a0_ -= o.a0_;
    a1_ -= o.a1_;
    return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
    check_same_field(o);
    Rational n0 = a0_ * o.a0_ + a1_ * o.a1_ * Rational(delta_);
    Rational n1 = a0_ * o.a1_ + a1_ * o.a0_;
    a0_ = std::move(n0);
    a1_ = std::move(n1);
    return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& o) {
    check_same_field(o);
    require(!o.is_zero(), "division by zero in Q(sqrt(D))");
    const Rational n = o.norm();
    *this *= o.conj();
    a0_ /= n;
    a1_ /= n;
    return *this;
}

QuadElem operator*(QuadElem a, const Rational& c) {
    a.a0_ *= c;
    a.a1_ *= c;
    return a;
}

bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.delta_ == b.delta_ && a.a0_ == b.a0_ && a.a1_ == b.a1_;
}

std::string QuadElem::to_string() const {
    std::ostringstream os;
    os << a0_.get_str();
    if (a1_ != 0) os << (a1_ < 0 ? "-" : "+") << Rational(abs(a1_)).get_str() << "*sqrt(" << delta_.get_str() << ")";
    return os.str();
}

QuadElem pow(const QuadElem& x, long k) {
    if (k < 0) return pow(divide_exact(x.one(), x), -k);
    QuadElem result = x.one();
    QuadElem base = x;
    auto e = static_cast<unsigned long>(k);
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

QuadElem divide_exact(const QuadElem& z, const QuadElem& w) { return z / w; }

SquarefreeSplit squarefree_kernel(const Integer& delta) {
    require(delta != 0, "squarefree kernel of zero");
    Factorization f = factorize(delta);
    Integer kernel = f.sign, root = 1;
    for (const auto& pf : f.factors) {
        root *= pow(pf.prime, pf.exponent / 2);
        if (pf.exponent % 2) kernel *= pf.prime;
    }
    return {kernel, root};
}

std::pair<QuadElem, QuadElem> roots_of(const Integer& r, const Integer& s) {
    const Integer delta = r * r + 4 * s;
    require(delta != 0, "degenerate discriminant: r^2 + 4s = 0");
    const Rational half(1, 2);
    return {QuadElem(Rational(r) * half, half, delta), QuadElem(Rational(r) * half, -half, delta)};
}

std::optional<unsigned> is_root_of_unity(const QuadElem& x) {
    require(!x.is_zero(), "is_root_of_unity: zero input");
    // |x| = 1 in every embedding forces norm = +-1.
    const Rational n = x.norm();
    if (n != 1 && n != -1) return std::nullopt;
    const QuadElem one = x.one();
    QuadElem p = x;
    for (unsigned k = 1; k <= 6; ++k) {
        if (p == one) return k == 5 ? std::nullopt : std::optional<unsigned>(k);
        p *= x;
    }
    return std::nullopt;
}

Interval embed_abs(const QuadElem& x, mpfr_prec_t precision_bits) {
    require(precision_bits > 0, "precision must be positive");
    if (x.is_zero()) return Interval(precision_bits + 2);
    for (mpfr_prec_t work = precision_bits + 32;; work *= 2) {
        work = std::min(work, kMaxPrecisionBits);
        Interval out(work);
        if (x.split() || x.is_rational()) {
            out = abs(Interval::point(x.a0(), work));
        } else if (x.delta() < 0) {
            out = sqrt(Interval::point(x.norm(), work));
        } else {
            const Interval root = sqrt(Interval::point(x.delta(), work));
            const int s0 = sgn(x.a0()), s1 = sgn(x.a1());
            const Interval a0 = Interval::point(x.a0(), work), a1 = Interval::point(x.a1(), work);
            if (s0 * s1 >= 0) {
                out = abs(a0 + a1 * root);
            } else {
                // a0 and a1*sqrt(D) have opposite signs: divide the norm by the conjugate,
                // whose terms share a sign, to avoid cancellation.
                out = abs(Interval::point(x.norm(), work)) / abs(a0 - a1 * root);
            }
        }
        if (out.relative_width_within(precision_bits)) return out;
        if (work >= kMaxPrecisionBits) throw ResourceError("embed_abs: precision escalation exhausted");
    }
}

}  // namespace binrec
