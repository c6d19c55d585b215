#include "binrec/muldep.hpp"

#include <map>
#include <numeric>

#include "binrec/cyclotomic.hpp"

namespace binrec {

namespace {

QuadElem lift(const Integer& v, const Integer& delta) { return QuadElem::rational(Rational(v), delta); }

// Exponent vector of a nonzero rational over the primes of its numerator and denominator.
std::map<Integer, long> exponent_vector(const Rational& x) {
    std::map<Integer, long> out;
    for (const auto& pf : factorize(x.get_num()).factors) out[pf.prime] += pf.exponent;
    for (const auto& pf : factorize(x.get_den()).factors) out[pf.prime] -= static_cast<long>(pf.exponent);
    return out;
}

// Direction (k0, l0), k0 > 0, forced on (k, l) by |norm(A)|^k = |norm(R)|^l; nullopt when
// only (0, 0) fits. Both norms must not be +-1 simultaneously.
std::optional<std::pair<long, long>> norm_direction(const Rational& nA, const Rational& nR) {
    auto va = exponent_vector(abs(nA)), vr = exponent_vector(abs(nR));
    std::map<Integer, std::pair<long, long>> joint;
    for (auto& [q, e] : va) joint[q].first = e;
    for (auto& [q, e] : vr) joint[q].second = e;
    std::optional<std::pair<long, long>> dir;
    for (auto& [q, ar] : joint) {
        auto [aq, rq] = ar;
        if (aq == 0 && rq == 0) continue;
        if (aq == 0 || rq == 0) return std::nullopt;
        // k aq = l rq
        long g = std::gcd(aq, rq);
        long k0 = rq / g, l0 = aq / g;
        if (k0 < 0) k0 = -k0, l0 = -l0;
        if (dir && *dir != std::pair{k0, l0}) return std::nullopt;
        dir = {k0, l0};
    }
    return dir;
}

void fill_from_kl(DependenceWitness& w, const QuadElem& A, const QuadElem& R) {
    const long g0 = std::gcd(w.k, std::abs(w.l));
    w.k1 = w.k / g0;
    w.l1 = w.l / g0;
    const auto z = RootOfUnity::of(pow(A, w.k1) / pow(R, w.l1));
    check_identity(z.has_value(), "(a/b)^k1 / (alpha/beta)^l1 is not a root of unity of order 1, 2, 3, 4 or 6");
    w.zeta = *z;
    Integer gx, gy;
    extended_gcd(Integer(w.l1), Integer(w.k1), gx, gy);
    const long al1 = std::abs(w.l1);
    w.y = mod_floor(gy.get_si() - 1, al1) + 1;
    w.x = (1 - w.y * w.k1) / w.l1;
    check_identity(w.x * w.l1 + w.y * w.k1 == 1, "Bezout pair is wrong");
    w.rho = pow(A, w.x) * pow(R, w.y);
    w.kase = w.x >= 0 ? DependenceCase::XNonneg : DependenceCase::XNeg;
}

void require_conjugate(const ThetaData& th) {
    require(th.conjugate_branch, "needs theta1 = complex conjugate of theta2");
}

Interval log_lambda(const ThetaData& th, mpfr_prec_t prec) {
    return (log_abs(th.N, prec) - log_abs(th.g, prec)) / Interval::point(Integer(2), prec);
}

}  // namespace

RootOfUnity::RootOfUnity(int e, long k) {
    require(e >= 1, "root of unity order must be positive");
    k = mod_floor(k, e);
    if (k == 0) return;
    const long g = std::gcd(k, static_cast<long>(e));
    e_ = e / static_cast<int>(g);
    k_ = k / g;
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    const int e = std::lcm(a.e_, b.e_);
    return RootOfUnity(e, a.k_ * (e / a.e_) + b.k_ * (e / b.e_));
}

QuadElem RootOfUnity::in_field(const Integer& delta) const {
    if (e_ <= 2) return QuadElem::rational(e_ == 1 ? 1 : -1, delta);
    check_ring_tag(e_);
    return to_quad(zeta(e_, k_), delta);
}

std::string RootOfUnity::to_string() const {
    return "zeta_" + std::to_string(e_) + "^" + std::to_string(k_);
}

std::optional<RootOfUnity> RootOfUnity::of(const QuadElem& x) {
    if (x.is_zero()) return std::nullopt;
    const auto order = is_root_of_unity(x);
    if (!order) return std::nullopt;
    const int e = static_cast<int>(*order);
    for (long k = 0; k < e; ++k) {
        RootOfUnity z(e, k);
        if (z.order() == e && z.in_field(x.delta()) == x) return z;
    }
    throw IdentityError("root of unity " + x.to_string() + " has no descriptor");
}

std::string to_string(DependenceCase c) {
    switch (c) {
        case DependenceCase::LZero: return "l-zero";
        case DependenceCase::XNonneg: return "x-nonneg";
        case DependenceCase::XNeg: return "x-neg";
    }
    return "unknown";
}

std::optional<DependenceWitness> find_dependence(const ClosedForm& cf, long bound) {
    require(bound >= 1, "dependence bound must be positive");
    require(!cf.a.is_zero() && !cf.b.is_zero() && !cf.alpha.is_zero() && !cf.beta.is_zero(),
            "degenerate closed form");
    const QuadElem A = cf.a / cf.b, R = cf.alpha / cf.beta;
    require(!is_root_of_unity(R), "alpha/beta is a root of unity");

    DependenceWitness w;
    if (auto z = RootOfUnity::of(A)) {
        w.k = z->order();
        w.l = 0;
        w.zeta = *RootOfUnity::of(-(cf.b / cf.a));
        w.rho = R;
        w.kase = DependenceCase::LZero;
        return w;
    }

    const Rational nA = A.norm(), nR = R.norm();
    if (abs(nA) != 1 || abs(nR) != 1) {
        const auto dir = norm_direction(nA, nR);
        if (!dir) return std::nullopt;
        auto [k0, l0] = *dir;
        for (long t = 1; t * k0 <= bound && std::abs(t * l0) <= bound; ++t) {
            if (pow(A, t * k0) == pow(R, t * l0)) {
                w.k = t * k0;
                w.l = t * l0;
                fill_from_kl(w, A, R);
                return w;
            }
        }
        return std::nullopt;
    }

    std::vector<QuadElem> rpos{A.one()}, rneg{A.one()};
    const QuadElem Rinv = R.one() / R;
    for (long l = 1; l <= bound; ++l) {
        rpos.push_back(rpos.back() * R);
        rneg.push_back(rneg.back() * Rinv);
    }
    QuadElem Ak = A.one();
    for (long k = 1; k <= bound; ++k) {
        Ak = Ak * A;
        for (long l = 1; l <= bound; ++l) {
            const long sl = Ak == rpos[l] ? l : (Ak == rneg[l] ? -l : 0);
            if (sl != 0) {
                w.k = k;
                w.l = sl;
                fill_from_kl(w, A, R);
                return w;
            }
        }
    }
    return std::nullopt;
}

bool witness_invariants_hold(const DependenceWitness& w, const ClosedForm& cf) {
    const QuadElem A = cf.a / cf.b, R = cf.alpha / cf.beta;
    const Integer& delta = A.delta();
    if (w.k <= 0 || pow(A, w.k) != pow(R, w.l)) return false;
    if (w.kase == DependenceCase::LZero) return w.l == 0 && w.zeta.in_field(delta) == -(cf.b / cf.a);
    if (w.l == 0) return false;
    const long g0 = std::gcd(w.k, std::abs(w.l));
    if (w.l1 != w.l / g0 || w.k1 != w.k / g0) return false;
    if (w.x * w.l1 + w.y * w.k1 != 1 || w.y <= 0 || w.y > std::abs(w.l1)) return false;
    if ((w.kase == DependenceCase::XNonneg) != (w.x >= 0)) return false;
    if (pow(A, w.k1) != pow(R, w.l1) * w.zeta.in_field(delta)) return false;
    return pow(w.rho, w.l1) == A * w.zeta.pow(-w.y).in_field(delta) &&
           pow(w.rho, w.k1) == R * w.zeta.pow(w.x).in_field(delta);
}

CycloInt ThetaData::cyclo1(int e) const {
    require(field_tag != 0, "theta does not lie in Q(i) or Q(zeta_3)");
    return to_cyclo(theta1, e);
}

CycloInt ThetaData::cyclo2(int e) const {
    require(field_tag != 0, "theta does not lie in Q(i) or Q(zeta_3)");
    return to_cyclo(theta2, e);
}

ThetaData make_theta(QuadElem theta1, QuadElem theta2) {
    require(!theta1.is_zero() && !theta2.is_zero(), "theta values must be nonzero");
    require(theta1.is_algebraic_integer() && theta2.is_algebraic_integer(), "theta values must be algebraic integers");
    const QuadElem sum = theta1 + theta2, prod = theta1 * theta2;
    require(sum.is_integer() && prod.is_integer(), "theta1 + theta2 and theta1 theta2 must be rational integers");
    require(!sum.is_zero() && !prod.is_zero(), "theta1 + theta2 and theta1 theta2 must be nonzero");
    require(!is_root_of_unity(theta1 / theta2), "theta1/theta2 is a root of unity");

    ThetaData th;
    th.trace = sum.a0().get_num();
    th.N = prod.a0().get_num();
    th.g = gcd(Integer(th.trace * th.trace), th.N);
    const Integer& delta = theta1.delta();
    th.field_tag = theta1.split() ? 0 : cyclotomic_tag_of_field(delta);
    th.conjugate_branch = !theta1.split() && delta < 0 && theta2 == theta1.conj();

    check_identity(mpz_divisible_p(Integer(th.trace * th.trace).get_mpz_t(), th.g.get_mpz_t()) &&
                       mpz_divisible_p(th.N.get_mpz_t(), th.g.get_mpz_t()),
                   "quartic for lambda has non-integral coefficients");
    if (th.conjugate_branch)
        check_identity(th.N * th.N >= 2 * th.g * th.g, "|lambda1| < 2^(1/4) although theta1/theta2 has infinite order");
    th.theta1 = std::move(theta1);
    th.theta2 = std::move(theta2);
    return th;
}

ThetaData build_theta(const DependenceWitness& w, const ClosedForm& cf) {
    if (w.kase == DependenceCase::LZero) return make_theta(cf.alpha, cf.beta);
    const Rational scale(cf.w);
    const QuadElem wa = cf.a * scale, wb = cf.b * scale;
    check_identity(wa.is_algebraic_integer() && wb.is_algebraic_integer(), "w a or w b is not integral");
    QuadElem t1, t2;
    if (w.x >= 0) {
        t1 = pow(wa, w.x) * pow(cf.alpha, w.y);
        t2 = pow(wb, w.x) * pow(cf.beta, w.y);
    } else {
        t1 = pow(wb, -w.x) * pow(cf.alpha, w.y);
        t2 = pow(wa, -w.x) * pow(cf.beta, w.y);
    }
    check_identity(t1 / t2 == w.rho, "theta1/theta2 differs from rho");
    return make_theta(std::move(t1), std::move(t2));
}

bool verify_theta_identity(const ThetaData& th, const DependenceWitness& w, const ClosedForm& cf,
                           const RecurrenceSpec& spec, std::uint64_t n) {
    const Integer& delta = cf.alpha.delta();
    const QuadElem wu = lift(cf.w * term(spec, n), delta);
    const QuadElem wa = cf.a * Rational(cf.w), wb = cf.b * Rational(cf.w);
    const long ln = static_cast<long>(n);
    if (w.kase == DependenceCase::LZero)
        return wu == wa * (pow(th.theta1, ln) - w.zeta.in_field(delta) * pow(th.theta2, ln));
    const long L = w.l1 + w.k1 * ln;
    const QuadElem lhs = pow(th.theta2, L) * wu;
    const QuadElem rhs = wb * pow(cf.beta, ln) * w.zeta.pow(w.y - w.x * ln).in_field(delta) *
                         (pow(th.theta1, L) + w.zeta.pow(w.x * ln - w.y).in_field(delta) * pow(th.theta2, L));
    return lhs == rhs;
}

std::string to_string(UnitCase c) {
    switch (c) {
        case UnitCase::One: return "one";
        case UnitCase::MinusOne: return "minus-one";
        case UnitCase::Cyclotomic: return "cyclotomic";
    }
    return "unknown";
}

DivisibilityResult divisibility_consequence(const ThetaData& th, const DependenceWitness& w, const ClosedForm& cf,
                                            const RecurrenceSpec& spec, std::uint64_t n) {
    require(n >= 1, "divisibility needs n >= 1");
    const Integer& delta = cf.alpha.delta();
    const long ln = static_cast<long>(n);
    const bool lzero = w.kase == DependenceCase::LZero;
    const long M = lzero ? ln : w.k1 * ln + w.l1;
    require(M >= 1, "divisibility needs k1 n + l1 >= 1");
    const RootOfUnity c = lzero ? w.zeta : RootOfUnity(2, 1) * w.zeta.pow(w.x * ln - w.y);

    QuadElem multiple = lift(cf.w * term(spec, n), delta);
    if (!lzero) multiple = pow(th.theta2, M) * multiple;
    const QuadElem twisted = pow(th.theta1, M) - c.in_field(delta) * pow(th.theta2, M);

    DivisibilityResult out;
    const auto um = static_cast<std::uint64_t>(M);
    if (c.is_one() || c.is_minus_one()) {
        out.unit_case = c.is_one() ? UnitCase::One : UnitCase::MinusOne;
        out.index = c.is_one() ? um : 2 * um;
        out.e = c.order();
        const QuadElem phi = phi_eval(out.index, th.theta1, th.theta2);
        const QuadElem q = twisted / phi;
        check_identity(q.is_algebraic_integer(), "Phi_" + std::to_string(out.index) + " does not divide " +
                                                     twisted.to_string());
        out.divides_sequence_multiple = (multiple / phi).is_algebraic_integer();
        check_identity(out.divides_sequence_multiple, "Phi_" + std::to_string(out.index) +
                                                          " does not divide the sequence multiple");
        out.divisor = phi.to_string();
        out.twisted = twisted.to_string();
        out.quotient = q.to_string();
        return out;
    }

    check_identity(c.order() == 3 || c.order() == 4 || c.order() == 6,
                   "root of unity of order " + std::to_string(c.order()) + " in a quadratic field");
    require(th.field_tag != 0 && ring_contains_zeta(th.field_tag, c.order()), "root of unity outside the field");
    out.unit_case = UnitCase::Cyclotomic;
    out.index = um;
    out.e = c.order();
    out.i = c.exponent();
    const CycloInt t1 = th.cyclo1(out.e), t2 = th.cyclo2(out.e);
    const CycloInt phi = phi_ie_eval(um, out.e, out.i, t1, t2);
    const CycloInt tw = to_cyclo(twisted, out.e);
    check_identity(tw == twisted_difference(um, out.e, out.i, t1, t2), "twisted difference mismatch");
    const CycloInt q = divide_exact(tw, phi);
    out.divides_sequence_multiple = try_divide(to_cyclo(multiple, out.e), phi).has_value();
    check_identity(out.divides_sequence_multiple, "Phi_{M,e}^(i) does not divide the sequence multiple");
    out.divisor = phi.to_string();
    out.twisted = tw.to_string();
    out.quotient = q.to_string();
    return out;
}

Rational mahler_lambda(const ThetaData& th) {
    require_conjugate(th);
    return th.lambda_abs_sq();
}

LogGapMargin log_gap_margins(const ThetaData& th, int e, long k, std::uint64_t n, mpfr_prec_t prec) {
    require_conjugate(th);
    require(e == 3 || e == 4 || e == 6, "zeta must be a 3rd, 4th or 6th root of unity");
    require(th.field_tag != 0 && ring_contains_zeta(th.field_tag, e), "zeta_" + std::to_string(e) + " is not in the field");
    require(n >= 1, "n must be positive");
    const CycloInt z = pow(th.cyclo1(e), n) - zeta(e, k) * pow(th.cyclo2(e), n);
    const Integer nz = z.norm();
    require(nz != 0, "lambda1^n = zeta lambda2^n");
    const Integer cap = 4 * pow(th.N, n);

    LogGapMargin m;
    m.n = n;
    m.upper_holds = nz <= cap;
    m.near_equality = nz == cap;
    check_identity(m.upper_holds, "|lambda1^n - zeta lambda2^n| exceeds 2 |lambda1|^n");
    const Interval two = Interval::point(Integer(2), prec);
    const Interval nn = Interval::point(from_u64(n), prec);
    const Interval ll = log_lambda(th, prec);
    m.observed = log_abs(nz, prec) / two - nn / two * log_abs(th.g, prec);
    m.upper = nn * ll + log(two);
    m.c1 = ((nn * ll - m.observed) / (log_abs(from_u64(n + 1), prec) * ll)).midpoint();
    return m;
}

PartialPhiMargin partial_phi_margins(const ThetaData& th, int e, long i, std::uint64_t n, mpfr_prec_t prec) {
    require_conjugate(th);
    require(e == 3 || e == 4 || e == 6, "e must be 3, 4 or 6");
    require(std::gcd(mod_floor(i, e), static_cast<long>(e)) == 1, "i must be coprime to e");
    require(th.field_tag != 0 && ring_contains_zeta(th.field_tag, e), "zeta_" + std::to_string(e) + " is not in the field");
    require(n >= 1, "n must be positive");

    PartialPhiMargin m;
    m.n = n;
    m.degree = partial_cyclotomic_degree(n, e);
    m.value = phi_ie_eval(n, e, i, th.cyclo1(e), th.cyclo2(e));
    const Integer nv = m.value.norm();
    const Integer gd = pow(th.g, m.degree);
    check_identity(mpz_divisible_p(nv.get_mpz_t(), gd.get_mpz_t()), "g^degree does not divide the norm of Phi");
    m.lambda_norm = nv / gd;
    m.half_degree_exceeded = nv * nv > pow(th.N, m.degree) * gd;

    const Interval two = Interval::point(Integer(2), prec);
    const Interval ll = log_lambda(th, prec);
    m.observed = log_abs(m.lambda_norm, prec) / two;
    m.main_term = Interval::point(from_u64(m.degree), prec) * ll;
    if (n > 2) {
        const Interval q = Interval::point(from_u64(two_pow_omega(n)), prec);
        m.c = std::abs(((m.main_term - m.observed) / (q * log_abs(from_u64(n), prec) * ll)).midpoint());
    }
    return m;
}

Rational phi_value_ord(const ThetaData& th, int e, std::uint64_t n, const Integer& p) {
    require_conjugate(th);
    require(e == 3 || e == 4 || e == 6, "e must be 3, 4 or 6");
    const std::uint64_t ne = n * static_cast<std::uint64_t>(e);
    const CycloInt v = phi_eval(ne, th.cyclo1(e), th.cyclo2(e));
    check_identity(v.is_rational(), "Phi_ne(theta1, theta2) is not rational");
    require(v.u() != 0, "Phi_ne vanishes");
    const long half = static_cast<long>(euler_phi(ne) / 2);
    return Rational(static_cast<long>(ord_p_unchecked(v.u(), p)) - half * static_cast<long>(ord_p_unchecked(th.g, p)));
}

OrdpMargin phi_value_margin(const ThetaData& th, int e, std::uint64_t n, const Integer& p, mpfr_prec_t prec) {
    require(p > 2 && is_prime(p), "margins need a prime p > 2");
    Rational observed = phi_value_ord(th, e, n, p);
    const std::uint64_t ne = n * static_cast<std::uint64_t>(e);
    return make_margin(MarginKind::PhiValue, p, n, std::move(observed), valuation_bound(p, ne, log_lambda(th, prec), prec));
}

}  // namespace binrec
