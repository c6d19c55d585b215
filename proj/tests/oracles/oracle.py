"""Independent reference computations for the golden files.

Run from the repository root:  python3 tests/oracles/oracle.py
Writes tests/golden/*.json and tests/data/fibonacci_phi_hints.json.
"""

import json
import sys
from pathlib import Path

import mpmath
import sympy

ROOT = Path(__file__).resolve().parents[2]
GOLDEN = ROOT / "tests" / "golden"
DATA = ROOT / "tests" / "data"

mpmath.mp.dps = 60


def terms(r, s, u0, u1, count):
    out = [u0, u1]
    while len(out) < count:
        out.append(r * out[-1] + s * out[-2])
    return out[:count]


def bound(n, c):
    n = mpmath.mpf(n)
    return n * mpmath.exp(mpmath.log(n) / (mpmath.mpf(c) * mpmath.log(mpmath.log(n))))


def violation(u, b):
    """True when P(u) <= b, with P(0) = P(+-1) = 1; decided by trial division up to floor(b)."""
    if u == 0:
        return True
    m = abs(u)
    limit = int(mpmath.floor(b))
    for p in sympy.primerange(2, limit + 1):
        while m % p == 0:
            m //= p
        if m == 1:
            break
    return m == 1


def sweep(spec, limit, c="104"):
    u = terms(*spec, limit + 1)
    viol = []
    for n in range(3, limit + 1):
        b = bound(n, c)
        frac = b - mpmath.floor(b)
        assert frac > mpmath.mpf(10) ** -40, f"bound too close to an integer at n={n}"
        if violation(u[n], b):
            viol.append(n)
    return viol


def density(limit, viol):
    vs = set(viol)
    blocks = []
    cc = cv = 0
    j = 1
    while (1 << j) <= limit:
        lo, hi = 1 << j, 2 << j
        ns = [n for n in range(max(lo, 3), min(hi, limit + 1))]
        if ns:
            v = sum(1 for n in ns if n in vs)
            cc += len(ns)
            cv += v
            blocks.append({"block_lo": lo, "block_hi": hi, "count": len(ns), "violations": v,
                           "cumulative_count": cc, "cumulative_violations": cv})
        j += 1
    return blocks


def phi_at_roots(n, r=1, s=1):
    t = terms(r, s, 0, 1, n + 1)
    num, den = 1, 1
    for d in sympy.divisors(n):
        mu = sympy.mobius(n // d)
        if mu == 1:
            num *= t[d]
        elif mu == -1:
            den *= t[d]
    assert num % den == 0
    return num // den


def hints(limit, threshold=10**15):
    primes = set()
    for n in range(2, limit + 1):
        v = abs(phi_at_roots(n))
        for p in sympy.factorint(v):
            if p > threshold:
                primes.add(p)
        print(f"phi {n} done", file=sys.stderr, flush=True)
    return sorted(primes)


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    DATA.mkdir(parents=True, exist_ok=True)
    fib = sweep((1, 1, 0, 1), 300)
    (GOLDEN / "fibonacci_gpf_300.json").write_text(
        json.dumps({"spec": "1,1,0,1", "limit": 300, "constant": "104", "violations": fib,
                    "density": density(300, fib)}, indent=1) + "\n")
    comp = sweep((4, -5, 2, 2), 200)
    (GOLDEN / "gaussian_gpf_200.json").write_text(
        json.dumps({"spec": "4,-5,2,2", "limit": 200, "constant": "104", "violations": comp,
                    "density": density(200, comp)}, indent=1) + "\n")
    if "--no-hints" not in sys.argv:
        (DATA / "fibonacci_phi_hints.json").write_text(
            json.dumps({"primes": [str(p) for p in hints(300)]}, indent=1) + "\n")


if __name__ == "__main__":
    main()
