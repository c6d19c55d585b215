#pragma once

// The rings Z[zeta_e] for e in {1, 2, 3, 4, 6}: the rational integers (e = 1, 2),
// the Gaussian integers Z[i] (e = 4) and the Eisenstein integers Z[w], w = zeta_3
// (e = 3, 6). Elements are stored as u + v*i or u + v*w.

#include <string>
#include <utility>
#include <vector>

#include "binrec/arith.hpp"
#include "binrec/quadfield.hpp"

namespace binrec {

enum class RingFamily { Rational, Gaussian, Eisenstein };

/// Throws unless e is one of 1, 2, 3, 4, 6.
void check_ring_tag(int e);
RingFamily family_of(int e);

class CycloInt {
public:
    CycloInt() = default;
    CycloInt(int e, Integer u, Integer v = 0);

    int tag() const { return e_; }
    RingFamily family() const { return family_of(e_); }
    const Integer& u() const { return u_; }
    const Integer& v() const { return v_; }

    /// Same value, different root-of-unity tag within a compatible ring.
    CycloInt with_tag(int e) const;

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_rational() const { return v_ == 0; }
    bool is_unit() const { return norm() == 1; }

    CycloInt conj() const;
    /// z * conj(z), a non-negative rational integer.
    Integer norm() const;

    CycloInt& operator+=(const CycloInt& o);
    CycloInt& operator-=(const CycloInt& o);
    CycloInt& operator*=(const CycloInt& o);

    friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
    friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
    friend CycloInt operator*(CycloInt a, const CycloInt& b) { return a *= b; }
    friend CycloInt operator-(const CycloInt& a) { return CycloInt(a.e_, -a.u_, -a.v_); }

    /// Value equality; the tag is bookkeeping and does not take part.
    friend bool operator==(const CycloInt& a, const CycloInt& b) { return a.u_ == b.u_ && a.v_ == b.v_; }

    CycloInt one() const { return CycloInt(e_, 1, 0); }

    /// "u+v*i" (Gaussian), "u+v*w" (Eisenstein) or "u" (rational).
    std::string to_string() const;
    static CycloInt parse(const std::string& text, int e);

private:
    int e_ = 1;
    Integer u_ = 0;
    Integer v_ = 0;
};

/// zeta_e^k as an exact element with tag e.
CycloInt zeta(int e, long k);

CycloInt pow(const CycloInt& z, unsigned long k);

/// q with q * w = z; throws IdentityError when w does not divide z.
CycloInt divide_exact(const CycloInt& z, const CycloInt& w);
/// Quotient when w | z, otherwise nullopt.
std::optional<CycloInt> try_divide(const CycloInt& z, const CycloInt& w);

/// Euclidean division with the quotient rounded to the nearest lattice point;
/// norm(remainder) < norm(w).
std::pair<CycloInt, CycloInt> euclid_divmod(const CycloInt& z, const CycloInt& w);
CycloInt gcd(CycloInt a, CycloInt b);

/// Units of the ring: {+-1}, {+-1, +-i}, or {+-1, +-w, +-w^2}.
std::vector<CycloInt> units(int e);

/// The associate of z in the canonical sector together with the unit c such that
/// z = c * associate. Rational: u > 0. Gaussian: u > 0, v >= 0. Eisenstein:
/// u > v >= 0, i.e. the sector of arguments [0, pi/3).
std::pair<CycloInt, CycloInt> canonical_associate(const CycloInt& z);

enum class PrimeKind { Inert, Split, Ramified };

struct CycloPrimeFactor {
    CycloInt pi;
    unsigned exponent = 0;
    Integer rational_prime;  // p with pi = p (inert) or pi * conj(pi) = p
    PrimeKind kind = PrimeKind::Inert;
};

struct CycloFactorization {
    CycloInt unit;
    std::vector<CycloPrimeFactor> factors;

    CycloInt product() const;
};

/// Canonical factorization into primary-normalized irreducibles. Factors are
/// sorted by rational prime, then by (u, v).
CycloFactorization factor_element(const CycloInt& z, const FactorOptions& options = {});

/// Irreducibles above the rational prime p, canonical and sorted.
std::vector<CycloPrimeFactor> primes_above(const Integer& p, int e);

/// Element of Q(sqrt(D)) with squarefree kernel -1 (Gaussian) or -3 (Eisenstein)
/// mapped into Z[i] / Z[w], where sqrt(D) = m*i resp. m*(1 + 2w). Throws if the
/// element is not integral or the field is not of that form.
CycloInt to_cyclo(const QuadElem& x, int e);
/// Inverse of to_cyclo in the field Q(sqrt(D)).
QuadElem to_quad(const CycloInt& z, const Integer& delta);

/// Ring tag of Q(sqrt(D)) when it is Q(i) (4) or Q(zeta_3) (3); 0 otherwise.
int cyclotomic_tag_of_field(const Integer& delta);

/// Whether zeta_e lies in the ring carrying tag `ring_e`.
bool ring_contains_zeta(int ring_e, int e);

}  // namespace binrec
