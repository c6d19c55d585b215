#include "binrec/cycloring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace binrec {

namespace {

int combine_tags(int a, int b) {
    if (a == b) return a;
    const int l = std::lcm(a, b);
    require(l == 1 || l == 2 || l == 3 || l == 4 || l == 6,
            "elements of Z[zeta_" + std::to_string(a) + "] and Z[zeta_" + std::to_string(b) + "] do not share a ring");
    return l;
}

// Nearest integer to num / den for den > 0.
Integer round_div(const Integer& num, const Integer& den) {
    Integer q;
    Integer twice = 2 * num + den;
    Integer dd = 2 * den;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), dd.get_mpz_t());
    return q;
}

bool in_canonical_sector(const CycloInt& z) {
    switch (z.family()) {
        case RingFamily::Rational: return z.u() > 0;
        case RingFamily::Gaussian: return z.u() > 0 && z.v() >= 0;
        case RingFamily::Eisenstein: return z.u() > z.v() && z.v() >= 0;
    }
    return false;
}

bool factor_less(const CycloPrimeFactor& a, const CycloPrimeFactor& b) {
    if (a.rational_prime != b.rational_prime) return a.rational_prime < b.rational_prime;
    if (a.pi.u() != b.pi.u()) return a.pi.u() < b.pi.u();
    return a.pi.v() < b.pi.v();
}

}  // namespace

void check_ring_tag(int e) {
    require(e == 1 || e == 2 || e == 3 || e == 4 || e == 6,
            "unsupported cyclotomic ring tag e = " + std::to_string(e) + " (expected 1, 2, 3, 4 or 6)");
}

RingFamily family_of(int e) {
    check_ring_tag(e);
    if (e == 4) return RingFamily::Gaussian;
    if (e == 3 || e == 6) return RingFamily::Eisenstein;
    return RingFamily::Rational;
}

CycloInt::CycloInt(int e, Integer u, Integer v) : e_(e), u_(std::move(u)), v_(std::move(v)) {
    check_ring_tag(e_);
    require(family() != RingFamily::Rational || v_ == 0, "rational ring element with nonzero v coefficient");
}

CycloInt CycloInt::with_tag(int e) const {
    check_ring_tag(e);
    const RingFamily target = family_of(e);
    require(target == family() || is_rational(), "cannot move element between Z[i] and Z[w]");
    return CycloInt(e, u_, v_);
}

CycloInt CycloInt::conj() const {
    switch (family()) {
        case RingFamily::Rational: return *this;
        case RingFamily::Gaussian: return CycloInt(e_, u_, -v_);
        case RingFamily::Eisenstein: return CycloInt(e_, u_ - v_, -v_);  // conj(w) = w^2 = -1 - w
    }
    return *this;
}

Integer CycloInt::norm() const {
    switch (family()) {
        case RingFamily::Rational: return u_ * u_;
        case RingFamily::Gaussian: return u_ * u_ + v_ * v_;
        case RingFamily::Eisenstein: return u_ * u_ - u_ * v_ + v_ * v_;
    }
    return 0;
}

CycloInt& CycloInt::operator+=(const CycloInt& o) {
    e_ = combine_tags(e_, o.e_);
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

CycloInt& CycloInt::operator-=(const CycloInt& o) {
    e_ = combine_tags(e_, o.e_);
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

CycloInt& CycloInt::operator*=(const CycloInt& o) {
    e_ = combine_tags(e_, o.e_);
    Integer nu, nv;
    if (family() == RingFamily::Eisenstein) {
        // w^2 = -1 - w
        const Integer vv = v_ * o.v_;
        nu = u_ * o.u_ - vv;
        nv = u_ * o.v_ + v_ * o.u_ - vv;
    } else {
        nu = u_ * o.u_ - v_ * o.v_;
        nv = u_ * o.v_ + v_ * o.u_;
    }
    u_ = std::move(nu);
    v_ = std::move(nv);
    return *this;
}

std::string CycloInt::to_string() const {
    if (family() == RingFamily::Rational || v_ == 0) return u_.get_str();
    const char* unit = family() == RingFamily::Gaussian ? "i" : "w";
    std::ostringstream os;
    if (u_ != 0) os << u_.get_str() << (v_ < 0 ? "-" : "+");
    else if (v_ < 0) os << '-';
    if (abs(v_) != 1) os << Integer(abs(v_)).get_str() << '*';
    os << unit;
    return os.str();
}

CycloInt CycloInt::parse(const std::string& text, int e) {
    check_ring_tag(e);
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    require(!t.empty(), "empty ring element");
    const RingFamily fam = family_of(e);
    const char unit_char = fam == RingFamily::Gaussian ? 'i' : 'w';
    if (t.back() != 'i' && t.back() != 'w') return CycloInt(e, parse_integer(t), 0);
    require(fam != RingFamily::Rational && t.back() == unit_char,
            "element '" + text + "' does not belong to Z[zeta_" + std::to_string(e) + "]");
    t.pop_back();
    if (!t.empty() && t.back() == '*') t.pop_back();
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;) {
        if (t[k] == '+' || t[k] == '-') {
            split = k;
            break;
        }
    }
    std::string real_part = split == std::string::npos ? "0" : t.substr(0, split);
    std::string coef = split == std::string::npos ? t : t.substr(split);
    if (coef.empty() || coef == "+") coef = "1";
    if (coef == "-") coef = "-1";
    return CycloInt(e, parse_integer(real_part), parse_integer(coef));
}

CycloInt zeta(int e, long k) {
    check_ring_tag(e);
    const long j = mod_floor(k, e);
    switch (e) {
        case 1: return CycloInt(1, 1);
        case 2: return CycloInt(2, j == 0 ? 1 : -1);
        case 4: {
            static const int us[4] = {1, 0, -1, 0};
            static const int vs[4] = {0, 1, 0, -1};
            return CycloInt(4, us[j], vs[j]);
        }
        case 3: {
            // 1, w, w^2 = -1 - w
            static const int us[3] = {1, 0, -1};
            static const int vs[3] = {0, 1, -1};
            return CycloInt(3, us[j], vs[j]);
        }
        default: {
            // zeta_6 = 1 + w = -w^2
            static const int us[6] = {1, 1, 0, -1, -1, 0};
            static const int vs[6] = {0, 1, 1, 0, -1, -1};
            return CycloInt(6, us[j], vs[j]);
        }
    }
}

CycloInt pow(const CycloInt& z, unsigned long k) {
    CycloInt result = z.one();
    CycloInt base = z;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

std::optional<CycloInt> try_divide(const CycloInt& z, const CycloInt& w) {
    require(!w.is_zero(), "division by zero in Z[zeta_e]");
    const Integer n = w.norm();
    CycloInt t = z * w.conj();
    if (!mpz_divisible_p(t.u().get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(t.v().get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    Integer qu, qv;
    mpz_divexact(qu.get_mpz_t(), t.u().get_mpz_t(), n.get_mpz_t());
    mpz_divexact(qv.get_mpz_t(), t.v().get_mpz_t(), n.get_mpz_t());
    return CycloInt(t.tag(), std::move(qu), std::move(qv));
}

CycloInt divide_exact(const CycloInt& z, const CycloInt& w) {
    auto q = try_divide(z, w);
    if (!q) throw IdentityError(w.to_string() + " does not divide " + z.to_string());
    return *q;
}

std::pair<CycloInt, CycloInt> euclid_divmod(const CycloInt& z, const CycloInt& w) {
    require(!w.is_zero(), "division by zero in Z[zeta_e]");
    const Integer n = w.norm();
    CycloInt t = z * w.conj();
    CycloInt q(t.tag(), round_div(t.u(), n), round_div(t.v(), n));
    CycloInt r = z - q * w;
    return {q, r};
}

CycloInt gcd(CycloInt a, CycloInt b) {
    while (!b.is_zero()) {
        CycloInt r = euclid_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return canonical_associate(a).first;
}

std::vector<CycloInt> units(int e) {
    switch (family_of(e)) {
        case RingFamily::Rational: return {CycloInt(e, 1), CycloInt(e, -1)};
        case RingFamily::Gaussian: return {zeta(4, 0), zeta(4, 1), zeta(4, 2), zeta(4, 3)};
        case RingFamily::Eisenstein: {
            std::vector<CycloInt> out;
            for (long k = 0; k < 6; ++k) out.push_back(zeta(6, k).with_tag(e));
            return out;
        }
    }
    return {};
}

std::pair<CycloInt, CycloInt> canonical_associate(const CycloInt& z) {
    require(!z.is_zero(), "zero has no canonical associate");
    for (const CycloInt& c : units(z.tag())) {
        // z = c * (conj(c) * z) since c * conj(c) = 1
        CycloInt candidate = c.conj() * z;
        if (in_canonical_sector(candidate)) return {candidate.with_tag(z.tag()), c};
    }
    throw IdentityError("no associate of " + z.to_string() + " lies in the canonical sector");
}

CycloInt CycloFactorization::product() const {
    CycloInt acc = unit;
    for (const auto& f : factors) acc *= pow(f.pi, f.exponent);
    return acc;
}

std::vector<CycloPrimeFactor> primes_above(const Integer& p, int e) {
    const RingFamily fam = family_of(e);
    auto make = [&](CycloInt pi, PrimeKind kind) {
        return CycloPrimeFactor{canonical_associate(pi).first, 0, p, kind};
    };
    std::vector<CycloPrimeFactor> out;
    if (fam == RingFamily::Rational) {
        out.push_back(make(CycloInt(e, p), PrimeKind::Inert));
        return out;
    }
    if (fam == RingFamily::Gaussian) {
        if (p == 2) {
            out.push_back(make(CycloInt(e, 1, 1), PrimeKind::Ramified));
        } else if (p % 4 == 3) {
            out.push_back(make(CycloInt(e, p), PrimeKind::Inert));
        } else {
            const Integer x = sqrt_mod_prime(Integer(-1), p);
            CycloInt pi = gcd(CycloInt(e, p), CycloInt(e, x, 1));
            check_identity(pi.norm() == p, "Gaussian prime above " + p.get_str() + " has wrong norm");
            out.push_back(make(pi, PrimeKind::Split));
            out.push_back(make(pi.conj(), PrimeKind::Split));
        }
    } else {
        if (p == 3) {
            out.push_back(make(CycloInt(e, 1, -1), PrimeKind::Ramified));
        } else if (p % 3 == 2) {
            out.push_back(make(CycloInt(e, p), PrimeKind::Inert));
        } else {
            // w = (-1 + sqrt(-3)) / 2 has a root c modulo p; the prime is gcd(p, w - c).
            const Integer x = sqrt_mod_prime(Integer(-3), p);
            Integer inv2 = (p + 1) / 2;
            Integer c = (x - 1) * inv2 % p;
            CycloInt pi = gcd(CycloInt(e, p), CycloInt(e, -c, 1));
            check_identity(pi.norm() == p, "Eisenstein prime above " + p.get_str() + " has wrong norm");
            out.push_back(make(pi, PrimeKind::Split));
            out.push_back(make(pi.conj(), PrimeKind::Split));
        }
    }
    std::sort(out.begin(), out.end(), factor_less);
    return out;
}

CycloFactorization factor_element(const CycloInt& z, const FactorOptions& options) {
    require(!z.is_zero(), "factor_element: zero has no factorization");
    CycloFactorization out;
    const Factorization nf = factorize(z.norm(), options);
    CycloInt rest = z;
    for (const auto& pf : nf.factors) {
        for (CycloPrimeFactor cand : primes_above(pf.prime, z.tag())) {
            while (auto q = try_divide(rest, cand.pi)) {
                rest = *q;
                ++cand.exponent;
            }
            if (cand.exponent) out.factors.push_back(cand);
        }
    }
    check_identity(rest.is_unit(), "cofactor " + rest.to_string() + " of " + z.to_string() + " is not a unit");
    out.unit = rest.with_tag(z.tag());
    std::sort(out.factors.begin(), out.factors.end(), factor_less);
    check_identity(out.product() == z, "factorization of " + z.to_string() + " does not reassemble");
    return out;
}

int cyclotomic_tag_of_field(const Integer& delta) {
    if (delta >= 0) return 0;
    const auto [kernel, root] = squarefree_kernel(delta);
    if (kernel == -1) return 4;
    if (kernel == -3) return 3;
    return 0;
}

bool ring_contains_zeta(int ring_e, int e) {
    check_ring_tag(ring_e);
    check_ring_tag(e);
    if (e <= 2) return true;
    return family_of(ring_e) == family_of(e);
}

CycloInt to_cyclo(const QuadElem& x, int e) {
    const RingFamily fam = family_of(e);
    if (fam == RingFamily::Rational || x.is_rational()) {
        require(x.is_integer(), "element " + x.to_string() + " is not a rational integer");
        require(fam != RingFamily::Rational || x.is_rational(), "irrational element in a rational ring");
        return CycloInt(e, x.a0().get_num(), 0);
    }
    const auto [kernel, root] = squarefree_kernel(x.delta());
    const Rational m(root);
    Rational u, v;
    if (fam == RingFamily::Gaussian) {
        require(kernel == -1, "field Q(sqrt(" + x.delta().get_str() + ")) is not Q(i)");
        u = x.a0();
        v = x.a1() * m;
    } else {
        require(kernel == -3, "field Q(sqrt(" + x.delta().get_str() + ")) is not Q(zeta_3)");
        u = x.a0() + x.a1() * m;
        v = 2 * x.a1() * m;
    }
    u.canonicalize();
    v.canonicalize();
    require(u.get_den() == 1 && v.get_den() == 1, "element " + x.to_string() + " is not integral in Z[zeta_e]");
    return CycloInt(e, u.get_num(), v.get_num());
}

QuadElem to_quad(const CycloInt& z, const Integer& delta) {
    if (z.is_rational()) return QuadElem::rational(Rational(z.u()), delta);
    const auto [kernel, root] = squarefree_kernel(delta);
    const Rational m(root);
    if (z.family() == RingFamily::Gaussian) {
        require(kernel == -1, "field Q(sqrt(" + delta.get_str() + ")) does not contain i");
        return QuadElem(Rational(z.u()), Rational(z.v()) / m, delta);
    }
    require(kernel == -3, "field Q(sqrt(" + delta.get_str() + ")) does not contain zeta_3");
    return QuadElem(Rational(z.u()) - Rational(z.v()) / 2, Rational(z.v()) / (2 * m), delta);
}

}  // namespace binrec
