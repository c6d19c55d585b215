#include "binrec/padic.hpp"

#include <algorithm>

#include "binrec/cyclotomic.hpp"
#include "binrec/muldep.hpp"

namespace binrec {

namespace {

Integer mod(const Integer& x, const Integer& m) {
    Integer out;
    mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return out;
}

void require_prime(const Integer& p) { require(p >= 2 && is_prime(p), p.get_str() + " is not prime"); }

void require_coprime_to_s(const RecurrenceSpec& spec, const Integer& p) {
    require(mod(spec.s, p) != 0, "p = " + p.get_str() + " divides alpha*beta = -s");
}

}  // namespace

RankRecord rank_of_apparition(const RecurrenceSpec& spec, const Integer& p) {
    require_prime(p);
    require_coprime_to_s(spec, p);
    const Integer r = mod(spec.r, p), s = mod(spec.s, p);
    Integer prev = 0, cur = 1;  // t_0, t_1 mod p
    RankRecord rec;
    rec.p = p;
    const Integer limit = p + 1;
    for (std::uint64_t n = 1; n <= to_u64(limit); ++n) {
        if (cur == 0) {
            rec.l = n;
            break;
        }
        Integer next = mod(r * cur + s * prev, p);
        prev = std::move(cur);
        cur = std::move(next);
    }
    check_identity(rec.l != 0, "no rank of apparition up to p + 1 for p = " + p.get_str());
    rec.ord_t_l = lucas_term_ord(spec, rec.l, p);
    rec.ord_t_2l = lucas_term_ord(spec, 2 * rec.l, p);
    return rec;
}

unsigned long lucas_term_ord(const RecurrenceSpec& spec, std::uint64_t n, const Integer& p) {
    require(n >= 1, "lucas_term_ord needs n >= 1");
    unsigned long k = 8;
    for (;;) {
        const Integer pk = pow(p, k);
        const Integer t = term_mod(spec.lucas(), n, pk);
        if (t != 0) return ord_p_unchecked(t, p);
        require(k < (1ul << 20), "t_n vanishes modulo a huge power of p (t_n = 0?)");
        k *= 2;
    }
}

unsigned long lucas_valuation(const RecurrenceSpec& spec, std::uint64_t n, const Integer& p) {
    require(n >= 1, "lucas_valuation needs n >= 1");
    require(gcd(spec.r, spec.s) == 1, "the valuation law needs gcd(r, s) = 1");
    const RankRecord rec = rank_of_apparition(spec, p);
    if (n % rec.l != 0) return 0;
    const std::uint64_t k = n / rec.l;
    const unsigned long ord_k = ord_p_unchecked(from_u64(k), p);
    unsigned long v;
    if (p != 2)
        v = rec.ord_t_l + ord_k;
    else if (k % 2 == 1)
        v = rec.ord_t_l;
    else
        v = rec.ord_t_2l + ord_k - 1;

    const Integer modulus = pow(p, v + 1);
    const Integer t = term_mod(spec.lucas(), n, modulus);
    check_identity(mod(t, pow(p, v)) == 0 && t != 0,
                   "valuation law disagrees with t_n mod p^(v+1) at n = " + std::to_string(n) + ", p = " + p.get_str());
    return v;
}

std::string to_string(PhiPrimeClass c) {
    switch (c) {
        case PhiPrimeClass::Special: return "special";
        case PhiPrimeClass::PlusMinusOne: return "pm1";
        case PhiPrimeClass::Unclassified: return "unclassified";
    }
    return "unknown";
}

bool PhiPrimeReport::exhaustive() const {
    return unfactored.empty() &&
           std::none_of(entries.begin(), entries.end(),
                        [](const PhiPrimeEntry& e) { return e.cls == PhiPrimeClass::Unclassified; });
}

Integer phi_at_roots(const RecurrenceSpec& spec, std::uint64_t n) {
    require(n >= 2, "phi_at_roots needs n >= 2");
    std::vector<Integer> num, den;
    for (std::uint64_t d : divisors(n)) {
        const int mu = moebius(n / d);
        if (mu == 0) continue;
        Integer t = lucas_term(spec, d);
        require(t != 0, "t_d vanishes (alpha/beta is a root of unity)");
        (mu > 0 ? num : den).push_back(std::move(t));
    }
    return detail::fraction_free_product(num, den, Integer(1));
}

PhiPrimeReport phi_prime_structure(const RecurrenceSpec& spec, std::uint64_t n, const FactorOptions& options,
                                   bool report_only) {
    require(n > 4 && n != 6 && n != 12, "prime structure needs n > 4 and n not in {6, 12}");
    if (!report_only)
        require(gcd(Integer(spec.r * spec.r), spec.s) == 1, "prime structure needs gcd(r^2, s) = 1");
    require(spec.s != 0 && spec.discriminant() != 0, "degenerate roots");
    require(!is_root_of_unity(closed_form(spec.lucas()).alpha / closed_form(spec.lucas()).beta),
            "alpha/beta is a root of unity");

    PhiPrimeReport rep;
    rep.n = n;
    rep.value = phi_at_roots(spec, n);
    const std::uint64_t reduced = n / (n % 3 == 0 ? 3 : 1);
    rep.special = factor_small(reduced).back().first;

    Factorization f;
    try {
        f = factorize(rep.value, options);
    } catch (const FactorBudgetError& err) {
        f = err.partial();
        rep.unfactored = err.cofactors();
    }
    const Integer nz = from_u64(n);
    for (const PrimeFactor& pf : f.factors) {
        PhiPrimeEntry e{pf.prime, pf.exponent, PhiPrimeClass::Unclassified};
        const Integer res = mod(pf.prime, nz);
        if (pf.prime == rep.special && pf.exponent <= 1)
            e.cls = PhiPrimeClass::Special;
        else if (res == 1 || res == nz - 1)
            e.cls = PhiPrimeClass::PlusMinusOne;
        if (!report_only)
            check_identity(e.cls != PhiPrimeClass::Unclassified,
                           "prime " + pf.prime.get_str() + " of Phi_" + std::to_string(n) + " is unclassified");
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

std::string to_string(MarginKind k) {
    switch (k) {
        case MarginKind::GeneralTerm: return "general-term";
        case MarginKind::LucasTerm: return "lucas-term";
        case MarginKind::PhiValue: return "phi-value";
    }
    return "unknown";
}

Interval valuation_bound(const Integer& p, std::uint64_t index, const Interval& factor, mpfr_prec_t precision_bits) {
    require(p > 2, "the valuation bound needs p > 2");
    require(index >= 2, "the valuation bound needs an index >= 2");
    const Interval logp = log_abs(p, precision_bits);
    const Interval exponent = -(logp / (Interval::decimal("51.9", precision_bits) * log(logp)));
    return Interval::point(p, precision_bits) * exp(exponent) * log_abs(from_u64(index), precision_bits) * factor;
}

OrdpMargin make_margin(MarginKind kind, const Integer& p, std::uint64_t n, Rational observed, Interval bound) {
    OrdpMargin m;
    m.kind = kind;
    m.p = p;
    m.n = n;
    m.ratio = observed == 0 ? 0.0 : observed.get_d() / bound.midpoint();
    m.observed = std::move(observed);
    m.bound = std::move(bound);
    return m;
}

OrdpMargin ordp_bound_margin(MarginKind kind, const RecurrenceSpec& spec, std::uint64_t n, const Integer& p,
                             mpfr_prec_t precision_bits) {
    require_prime(p);
    require(p > 2, "margins need p > 2");
    require(n >= 2, "margins need n >= 2");
    const auto nd = is_nondegenerate(spec);
    require(nd.nondegenerate, "sequence is degenerate: " + to_string(nd.reason));

    if (kind == MarginKind::GeneralTerm) {
        require(!find_dependence(closed_form(spec), kDefaultDependenceBound),
                "a/b and alpha/beta are multiplicatively dependent");
        const Integer u = term(spec, n);
        const Rational observed = u == 0 ? Rational(0) : Rational(static_cast<long>(ord_p_unchecked(u, p)));
        return make_margin(kind, p, n, observed,
                           valuation_bound(p, n, Interval::point(Integer(1), precision_bits), precision_bits));
    }
    require(kind == MarginKind::LucasTerm, "phi-value margins are computed from theta data");
    require(gcd(spec.r, spec.s) == 1, "Lucas-term margins need gcd(r, s) = 1");
    const ClosedForm cf = closed_form(spec.lucas());
    const Interval a = embed_abs(cf.alpha, precision_bits), b = embed_abs(cf.beta, precision_bits);
    const Interval big = a.midpoint() >= b.midpoint() ? a : b;
    const Rational observed(static_cast<long>(lucas_term_ord(spec, n, p)));
    return make_margin(kind, p, n, observed, valuation_bound(p, n, log(big), precision_bits));
}

}  // namespace binrec
