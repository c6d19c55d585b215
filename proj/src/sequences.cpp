#include "binrec/sequences.hpp"

#include <sstream>

namespace binrec {

namespace {

constexpr unsigned long kMatrixThreshold = 10'000;
constexpr unsigned long kSplitCheckTerms = 50;

struct Mat2 {
    Integer a, b, c, d;
};

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// Smallest w with d | w^2.
Integer square_cover(const Integer& d) {
    Integer w = 1;
    for (const auto& pf : factorize(d).factors) w *= pow(pf.prime, (pf.exponent + 1) / 2);
    return w;
}

}  // namespace

std::string RecurrenceSpec::to_string() const {
    return r.get_str() + "," + s.get_str() + "," + u0.get_str() + "," + u1.get_str();
}

RecurrenceSpec RecurrenceSpec::parse(const std::string& text) {
    std::vector<Integer> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_integer(item));
    require(parts.size() == 4, "spec must have the form r,s,u0,u1: '" + text + "'");
    return {parts[0], parts[1], parts[2], parts[3]};
}

QuadElem ClosedForm::eval(unsigned long n) const {
    return a * pow(alpha, static_cast<long>(n)) + b * pow(beta, static_cast<long>(n));
}

Integer integrality_scale(const QuadElem& x) {
    const Rational t = x.trace(), n = x.norm();
    return lcm(Integer(t.get_den()), square_cover(n.get_den()));
}

ClosedForm closed_form(const RecurrenceSpec& spec) {
    auto [alpha, beta] = roots_of(spec.r, spec.s);
    const Integer& delta = alpha.delta();
    const QuadElem u0 = QuadElem::rational(Rational(spec.u0), delta);
    const QuadElem u1 = QuadElem::rational(Rational(spec.u1), delta);
    const QuadElem diff = alpha - beta;
    QuadElem a = (u1 - u0 * beta) / diff;
    QuadElem b = (u0 * alpha - u1) / diff;
    Integer w = lcm(integrality_scale(a), integrality_scale(b));
    ClosedForm cf{std::move(alpha), std::move(beta), std::move(a), std::move(b), std::move(w)};
    check_identity(cf.eval(0) == u0 && cf.eval(1) == u1, "closed form does not reproduce u0, u1");
    return cf;
}

Integer term(const RecurrenceSpec& spec, unsigned long n) {
    if (n == 0) return spec.u0;
    if (n > kMatrixThreshold) {
        Mat2 result{1, 0, 0, 1}, base{spec.r, spec.s, 1, 0};
        unsigned long e = n - 1;
        while (e) {
            if (e & 1u) result = mul(result, base);
            e >>= 1u;
            if (e) base = mul(base, base);
        }
        return result.a * spec.u1 + result.b * spec.u0;
    }
    Integer prev = spec.u0, cur = spec.u1;
    for (unsigned long k = 1; k < n; ++k) {
        Integer next = spec.r * cur + spec.s * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<Integer> terms(const RecurrenceSpec& spec, unsigned long count) {
    std::vector<Integer> out;
    out.reserve(count);
    for (unsigned long k = 0; k < count; ++k) {
        if (k == 0)
            out.push_back(spec.u0);
        else if (k == 1)
            out.push_back(spec.u1);
        else
            out.push_back(spec.r * out[k - 1] + spec.s * out[k - 2]);
    }
    return out;
}

Integer lucas_term(const RecurrenceSpec& spec, unsigned long n) {
    require(spec.discriminant() != 0, "degenerate discriminant: r^2 + 4s = 0");
    return term(spec.lucas(), n);
}

Integer term_mod(const RecurrenceSpec& spec, unsigned long n, const Integer& m) {
    require(m >= 1, "term_mod: modulus must be positive");
    auto reduce = [&](const Integer& x) {
        Integer out;
        mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        return out;
    };
    Integer prev = reduce(spec.u0), cur = reduce(spec.u1);
    if (n == 0) return prev;
    const Integer r = reduce(spec.r), s = reduce(spec.s);
    for (unsigned long k = 1; k < n; ++k) {
        Integer next = reduce(r * cur + s * prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::string to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::None: return "none";
        case Degeneracy::ZeroDiscriminant: return "zero-discriminant";
        case Degeneracy::ZeroRoot: return "zero-root";
        case Degeneracy::ZeroCoefficient: return "zero-coefficient";
        case Degeneracy::RootOfUnity: return "root-of-unity";
    }
    return "unknown";
}

NondegeneracyReport is_nondegenerate(const RecurrenceSpec& spec) {
    NondegeneracyReport rep;
    if (spec.discriminant() == 0) {
        rep.reason = Degeneracy::ZeroDiscriminant;
        return rep;
    }
    if (spec.s == 0) {
        rep.reason = Degeneracy::ZeroRoot;
        return rep;
    }
    const ClosedForm cf = closed_form(spec);
    if (cf.a.is_zero() || cf.b.is_zero()) {
        rep.reason = Degeneracy::ZeroCoefficient;
        return rep;
    }
    // t_k = 0 exactly when (alpha/beta)^k = 1; both routes must agree.
    unsigned lucas_order = 0;
    for (unsigned long k = 1; k <= 6 && lucas_order == 0; ++k)
        if (lucas_term(spec, k) == 0) lucas_order = static_cast<unsigned>(k);
    const auto power_order = is_root_of_unity(cf.alpha / cf.beta);
    check_identity(power_order.value_or(0) == lucas_order,
                   "Lucas-term and exact-power root of unity tests disagree for " + spec.to_string());
    if (power_order) {
        rep.reason = Degeneracy::RootOfUnity;
        rep.root_order = *power_order;
        return rep;
    }
    rep.nondegenerate = true;
    return rep;
}

EvenOddSplit split_even_odd(const RecurrenceSpec& spec) {
    require(spec.discriminant() != 0, "degenerate discriminant: r^2 + 4s = 0");
    EvenOddSplit out;
    out.g = gcd(Integer(spec.r * spec.r), spec.s);
    const Integer& g = out.g;
    const Integer r2 = (spec.r * spec.r + 2 * spec.s) / g;
    const Integer sg = spec.s / g;
    const Integer s2 = -(sg * sg);

    const Integer u2 = spec.r * spec.u1 + spec.s * spec.u0;
    const Integer u3 = spec.r * u2 + spec.s * spec.u1;
    Rational v1(u2, g), w1(u3, g);
    v1.canonicalize();
    w1.canonicalize();
    out.scale_v = v1.get_den();
    out.scale_w = w1.get_den();
    out.v = {r2, s2, out.scale_v * spec.u0, Integer(v1.get_num())};
    out.w = {r2, s2, out.scale_w * spec.u1, Integer(w1.get_num())};

    const auto u = terms(spec, 2 * kSplitCheckTerms + 2);
    const auto v = terms(out.v, kSplitCheckTerms);
    const auto w = terms(out.w, kSplitCheckTerms);
    Integer gn = 1;
    for (unsigned long n = 0; n < kSplitCheckTerms; ++n) {
        check_identity(gn * v[n] == out.scale_v * u[2 * n], "even split fails at n = " + std::to_string(n));
        check_identity(gn * w[n] == out.scale_w * u[2 * n + 1], "odd split fails at n = " + std::to_string(n));
        gn *= g;
    }
    return out;
}

bool shift_identity_check(const RecurrenceSpec& spec, unsigned long m, unsigned long k) {
    require(m >= k, "shift identity needs m >= k");
    const ClosedForm cf = closed_form(spec);
    const Integer& delta = cf.alpha.delta();
    auto lift = [&](const Integer& v) { return QuadElem::rational(Rational(v), delta); };
    const QuadElem lhs = lift(term(spec, m)) - pow(cf.beta, static_cast<long>(k)) * lift(term(spec, m - k));
    const QuadElem rhs =
        cf.a * (cf.alpha - cf.beta) * pow(cf.alpha, static_cast<long>(m - k)) * lift(lucas_term(spec, k));
    return lhs == rhs;
}

}  // namespace binrec
