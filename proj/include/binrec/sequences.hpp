#pragma once

// Binary recurrence sequences u_n = r u_{n-1} + s u_{n-2}.

#include <string>
#include <vector>

#include "binrec/arith.hpp"
#include "binrec/quadfield.hpp"

namespace binrec {

struct RecurrenceSpec {
    Integer r;
    Integer s;
    Integer u0;
    Integer u1;

    Integer discriminant() const { return r * r + 4 * s; }
    /// The companion Lucas sequence t_0 = 0, t_1 = 1 with the same (r, s).
    RecurrenceSpec lucas() const { return {r, s, 0, 1}; }

    std::string to_string() const;
    /// Parses "r,s,u0,u1".
    static RecurrenceSpec parse(const std::string& text);

    friend bool operator==(const RecurrenceSpec&, const RecurrenceSpec&) = default;
};

/// u_n = a alpha^n + b beta^n, with w the least positive integer making w a and
/// w b algebraic integers.
struct ClosedForm {
    QuadElem alpha;
    QuadElem beta;
    QuadElem a;
    QuadElem b;
    Integer w;

    QuadElem eval(unsigned long n) const;
};

ClosedForm closed_form(const RecurrenceSpec& spec);

/// Least positive w with w * x an algebraic integer.
Integer integrality_scale(const QuadElem& x);

/// u_n by iteration (2x2 matrix powering for large n).
Integer term(const RecurrenceSpec& spec, unsigned long n);
/// u_0, ..., u_{count-1}.
std::vector<Integer> terms(const RecurrenceSpec& spec, unsigned long count);
/// t_n of the companion Lucas sequence; rejects r^2 + 4s = 0.
Integer lucas_term(const RecurrenceSpec& spec, unsigned long n);

/// u_n modulo m by iterating residues.
Integer term_mod(const RecurrenceSpec& spec, unsigned long n, const Integer& m);

enum class Degeneracy { None, ZeroDiscriminant, ZeroRoot, ZeroCoefficient, RootOfUnity };
std::string to_string(Degeneracy d);

struct NondegeneracyReport {
    bool nondegenerate = false;
    Degeneracy reason = Degeneracy::None;
    /// Order of alpha/beta when reason == RootOfUnity.
    unsigned root_order = 0;
};

/// abab != 0 and alpha/beta not a root of unity; reports the first failed condition.
NondegeneracyReport is_nondegenerate(const RecurrenceSpec& spec);

/// Even/odd subsequences divided by g^n, g = gcd(r^2, s):
///   g^n v_n = scale_v * u_{2n},   g^n w_n = scale_w * u_{2n+1}.
/// Both satisfy x_n = ((r^2 + 2s)/g) x_{n-1} - (s/g)^2 x_{n-2}. The scales are 1
/// whenever g | u_2 and g | u_3; otherwise they are the least integers keeping
/// the initial terms integral.
struct EvenOddSplit {
    Integer g;
    RecurrenceSpec v;
    RecurrenceSpec w;
    Integer scale_v = 1;
    Integer scale_w = 1;
};

EvenOddSplit split_even_odd(const RecurrenceSpec& spec);

/// Checks u_m - beta^k u_{m-k} = a (alpha - beta) alpha^{m-k} t_k exactly in Q(sqrt(D)).
bool shift_identity_check(const RecurrenceSpec& spec, unsigned long m, unsigned long k);

}  // namespace binrec
