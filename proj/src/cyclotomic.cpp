#include "binrec/cyclotomic.hpp"

#include <numeric>

namespace binrec {

std::int64_t partial_cyclotomic_twist(std::int64_t m, std::int64_t i, std::int64_t e) {
    return mod_floor(inverse_mod(m, e) * mod_floor(i, e), e);
}

std::uint64_t partial_cyclotomic_degree(std::uint64_t n, int e) {
    check_ring_tag(e);
    return euler_phi(n * static_cast<std::uint64_t>(e)) / euler_phi(static_cast<std::uint64_t>(e));
}

CycloInt twisted_difference(std::uint64_t n, int e, std::int64_t i, const CycloInt& x, const CycloInt& y) {
    return pow(x, n) - zeta(e, i) * pow(y, n);
}

CycloInt phi_ie_eval(std::uint64_t n, int e, std::int64_t i, const CycloInt& x, const CycloInt& y) {
    require(n >= 1, "phi_ie_eval: n must be positive");
    check_ring_tag(e);
    if (std::gcd(mod_floor(i, e), static_cast<std::int64_t>(e)) != 1) return CycloInt(e, 1);

    const CycloInt xe = x.with_tag(e), ye = y.with_tag(e);
    std::vector<CycloInt> num, den;
    std::int64_t degree = 0;
    for (std::uint64_t m : divisors(n)) {
        const int mu = moebius(m);
        if (mu == 0 || std::gcd(m, static_cast<std::uint64_t>(e)) != 1) continue;
        const std::int64_t twist = partial_cyclotomic_twist(static_cast<std::int64_t>(m), i, e);
        CycloInt f = pow(xe, n / m) - zeta(e, twist) * pow(ye, n / m);
        require(!f.is_zero(), "phi_ie_eval: a factor vanishes (x/y is a root of unity)");
        (mu > 0 ? num : den).push_back(std::move(f));
        degree += mu * static_cast<std::int64_t>(n / m);
    }
    check_identity(degree == static_cast<std::int64_t>(partial_cyclotomic_degree(n, e)),
                   "Moebius degree count disagrees with phi(ne)/phi(e)");
    return detail::fraction_free_product(num, den, xe);
}

CycloInt psi_ie_eval(std::uint64_t n, int e, std::int64_t i, const CycloInt& x, const CycloInt& y) {
    require(std::gcd(mod_floor(i, e), static_cast<std::int64_t>(e)) == 1, "psi_ie_eval needs gcd(i, e) = 1");
    const CycloInt phi = phi_ie_eval(n, e, i, x, y);
    require(!phi.is_zero(), "psi_ie_eval: Phi vanishes");
    const CycloInt full = twisted_difference(n, e, i, x.with_tag(e), y.with_tag(e));
    CycloInt psi = divide_exact(full, phi);
    check_identity(phi * psi == full, "Phi * Psi != x^n - zeta^i y^n");
    return psi;
}

}  // namespace binrec
