#include "binrec/primitive.hpp"

#include "binrec/cyclotomic.hpp"

namespace binrec {

Interval primitive_bound(std::uint64_t m, mpfr_prec_t prec) {
    require(m >= 3, "the bound needs m >= 3");
    const Interval lm = log_abs(from_u64(m), prec);
    return Interval::point(from_u64(m), prec) * exp(lm / (Interval::decimal("103.95", prec) * log(lm)));
}

PrimitiveResult primitive_prime_search(const ThetaData& th, int e, long i, std::uint64_t m,
                                       const FactorOptions& options, mpfr_prec_t prec) {
    require(th.conjugate_branch, "needs theta1 = complex conjugate of theta2");
    require(e == 3 || e == 4 || e == 6, "e must be 3, 4 or 6");
    require(mod_floor(i, e) == 1 || mod_floor(i, e) == e - 1, "i must be 1 or -1");
    require(th.field_tag != 0 && ring_contains_zeta(th.field_tag, e), "zeta_" + std::to_string(e) + " is not in the field");
    require(m >= 1, "m must be positive");

    PrimitiveResult out;
    out.m = m;
    out.e = e;
    out.i = mod_floor(i, e);
    out.in_window = m * static_cast<std::uint64_t>(e) > 12;
    const CycloInt t1 = th.cyclo1(e), t2 = th.cyclo2(e);
    out.value = phi_ie_eval(m, e, out.i, t1, t2);
    out.factorization = factor_element(out.value, options);
    check_identity(out.factorization.product() == out.value, "factorization does not reassemble");

    const CycloInt twisted = twisted_difference(m, e, out.i, t1, t2);
    divide_exact(twisted, out.value);
    for (const CycloPrimeFactor& f : out.factorization.factors) {
        check_identity(try_divide(twisted, f.pi).has_value(),
                       f.pi.to_string() + " does not divide theta1^m - zeta^i theta2^m");
        if (!out.p || f.rational_prime > *out.p) {
            out.p = f.rational_prime;
            out.pi = f.pi;
            out.split = f.kind != PrimeKind::Inert;
        }
    }
    if (m >= 3) {
        out.bound = primitive_bound(m, prec);
        out.exceeds_bound = out.p && out.bound.certainly_less(*out.p);
    }
    return out;
}

}  // namespace binrec
