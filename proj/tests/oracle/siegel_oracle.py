"""Straight-line reference for Siegel series and their logarithms.

Coefficients of 1 + sum phi_a(k) t^k, t = q^(1/N), are computed by
multiplying the binomials directly in Q[z]/(z^N - 1) and reducing modulo
Phi_N.  Log coefficients come from log(1 - c t^m) = -sum_j c^j t^(mj) / j,
which shares no code path with a recursive formal logarithm.
"""
import json
import sys
from fractions import Fraction
from math import gcd

import sympy

KMAX = 16
z = sympy.Symbol("z")


def reduce(vec, n):
    phi = sympy.cyclotomic_poly(n, z)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z**i for i, c in enumerate(vec))
    r = sympy.Poly(sympy.rem(sympy.expand(expr), phi, z), z)
    deg = sympy.degree(phi, z)
    out = [sympy.Rational(0)] * deg
    for (e,), c in r.terms():
        out[e] = c
    return [str(c) for c in out]


def factors(n, a1, a2, kmax):
    out = []
    for nn in range(0, kmax + 1):
        m = nn * n + a1
        if 0 < m <= kmax:
            out.append((a2 % n, m))
        m = nn * n + n - a1
        if 0 < m <= kmax:
            out.append(((-a2) % n, m))
    return out


def series(n, a1, a2, kmax):
    s = [[Fraction(0)] * n for _ in range(kmax + 1)]
    s[0][0] = Fraction(1)
    for r, m in factors(n, a1, a2, kmax):
        new = [row[:] for row in s]
        for k in range(m, kmax + 1):
            for i in range(n):
                new[k][(i + r) % n] -= s[k - m][i]
        s = new
    return s


def log_series(n, a1, a2, kmax):
    s = [[Fraction(0)] * n for _ in range(kmax + 1)]
    for r, m in factors(n, a1, a2, kmax):
        j = 1
        while m * j <= kmax:
            s[m * j][(r * j) % n] -= Fraction(1, j)
            j += 1
    return s


def main():
    out = {"kmax": KMAX, "points": []}
    for n in (2, 3, 4, 6):
        for a1 in range(n):
            for a2 in range(n):
                if gcd(gcd(a1, a2), n) != 1:
                    continue
                ser = series(n, a1, a2, KMAX)
                lg = log_series(n, a1, a2, KMAX)
                out["points"].append({
                    "n": n, "a1": a1, "a2": a2,
                    "series": [reduce(c, n) for c in ser],
                    "log": [reduce(c, n) for c in lg[1:]],
                })
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
