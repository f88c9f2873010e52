#!/usr/bin/env python3
"""Straight-line reference evaluation of the height-bound formulas.

Generates a seeded random corpus of inputs and evaluates every formula with
mpmath at 120 significant digits.  Reference log-values are written truncated
toward -inf at 50 significant digits so that a correctly upward-rounded
implementation can never fall below them.

This script is deliberately independent of the C++ library: no shared code,
formulas typed in directly.

    python3 tests/oracle/bounds_oracle.py > tests/data/bounds_oracle.json
"""

import json
import random
import sys

import mpmath as mp

mp.mp.dps = 120

FLOOR = mp.e * (1 + mp.mpf(2) ** -20)


def phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime_power(n):
    return n >= 2 and len(prime_factors(n)) == 1


def raise_level(n):
    return 3 * n if prime_factors(n) == [2] else 2 * n


def log_floored(x):
    return mp.log(mp.mpf(x) if mp.mpf(x) > FLOOR else FLOOR)


def loglog_floored(x):
    return mp.log(log_floored(x))


def down50(x):
    # truncate toward -inf at 50 significant digits
    v = mp.mpf(x)
    if v == 0:
        return "0"
    e = int(mp.floor(mp.log10(abs(v))))
    scale = mp.mpf(10) ** (49 - e)
    t = mp.floor(v * scale) / scale
    return mp.nstr(t, 50, min_fixed=-5, max_fixed=0, strip_zeros=False)


def zeta(d):
    dp = max(d, 3)
    return 1201 * (mp.log(dp) / mp.log(mp.log(dp))) ** 3


def log_delta(d0, D0, N, norms):
    f = phi(N)
    inner = d0 * N * mp.log(N) + f * mp.log(D0)
    val = -d0 * mp.log(d0) + inner / 2
    val += d0 * f * mp.log(max(inner, mp.log(FLOOR)))
    val += f * sum(mp.log(log_floored(q)) for q in norms)
    return val


def log_thm1(N, C):
    f = phi(N)
    return (f * mp.log(C) + (mp.mpf(3) / 2 * f + 10) * mp.log(N)
            + (mp.mpf(5) / 2 * f - 2) * loglog_floored(N))


def log_thm2(d0, D0, s0, norms, p, N, C):
    return (2 * s0 * N * mp.log(C * d0 * s0 * N * N)
            + 3 * s0 * N * loglog_floored(d0 * N)
            + d0 * N * mp.log(p)
            + log_delta(d0, D0, N, norms))


def log_lambda_one(s0, N):
    f = phi(N)
    inner = (N * f * mp.log(24 * mp.mpf(N) ** 14 + 24 * mp.mpf(N) ** 9)
             + N * mp.log(48 * mp.mpf(N) ** 2 * (mp.mpf(N) ** 6 + N + 1))
             + mp.log(2))
    return mp.log(s0 * N * inner)


def pipeline(d, s, N, RS, C, p):
    if s == 1:
        s = 2
    r = s - 1
    z = zeta(d)
    R = mp.mpf(r) ** (2 * r)
    theta0 = 24 * d * mp.mpf(N) ** 7 * mp.log(2)
    theta_prod = R * z ** r * RS
    alpha = 4 * d * s * R * z * mp.mpf(N) ** 8
    beta = R * z ** r * RS + 188 * d * s * R * z * mp.mpf(N) ** 8 * mp.log(N)
    ups = mp.mpf(C) ** r * d * d * mp.log(2 * d)
    if p > 1:
        ups = max(ups, (mp.mpf(C) * d) ** (2 * r + 6) * mp.mpf(p) ** d)
    C1 = alpha * N * ups * theta0 * theta_prod
    C2 = 48 * alpha * mp.mpf(N) ** 8 * mp.log(2) + beta
    assert C1 > 1
    h = 2 * s * C1 * mp.log(C1) / alpha + s * (2 * C2 - beta) / alpha + s * mp.log(2)
    return {
        "log_bound": mp.log(h),
        "log_alpha": mp.log(alpha),
        "log_beta": mp.log(beta),
        "log_C1": mp.log(C1),
        "log_C2": mp.log(C2),
        "log_upsilon": mp.log(ups),
        "log_theta0": mp.log(theta0),
        "log_theta_prod": mp.log(theta_prod),
    }


def dyadic(rng, lo, hi):
    # exactly representable constants k/8
    return mp.mpf(rng.randint(int(lo * 8), int(hi * 8))) / 8


def rand_field(rng):
    d0 = rng.randint(1, 6)
    D0 = 1 if d0 == 1 else rng.randint(3, 10 ** rng.randint(1, 12))
    primes = [2, 3, 5, 7, 11, 13, 101, 997]
    nf = rng.randint(0, 3)
    norms = []
    for _ in range(nf):
        q = rng.choice(primes)
        norms.append(q ** rng.randint(1, min(d0, 3)))
    p = max([prime_factors(q)[0] for q in norms], default=1)
    s0 = nf + rng.randint(1, d0)
    return d0, D0, s0, norms, p


def main():
    rng = random.Random(20261016)
    corpus = []
    non_pp = [n for n in range(6, 121) if not is_prime_power(n) and n > 1]
    pp = [n for n in range(2, 130) if is_prime_power(n)]
    for _ in range(10):
        N = rng.choice(non_pp)
        C = dyadic(rng, 0.5, 40)
        corpus.append({"kind": "theorem1", "N": N, "C": str(C),
                       "expected": {"log_bound": down50(log_thm1(N, C))}})
    for _ in range(10):
        d0, D0, s0, norms, p = rand_field(rng)
        N = rng.choice([n for n in non_pp if n <= 60])
        C = dyadic(rng, 0.5, 40)
        corpus.append({"kind": "theorem2", "N": N, "C": str(C),
                       "field": {"d0": d0, "disc_abs": str(D0), "s0": s0,
                                 "finite_place_norms": norms, "p": p},
                       "expected": {
                           "log_bound": down50(log_thm2(d0, D0, s0, norms, p, N, C)),
                           "log_delta": down50(log_delta(d0, D0, N, norms))}})
    for _ in range(10):
        d0, D0, s0, norms, p = rand_field(rng)
        N = rng.choice([n for n in pp if n <= 32])
        M = raise_level(N)
        C = dyadic(rng, 0.5, 40)
        corpus.append({"kind": "theorem3", "N": N, "M": M, "C": str(C),
                       "field": {"d0": d0, "disc_abs": str(D0), "s0": s0,
                                 "finite_place_norms": norms, "p": p},
                       "expected": {
                           "log_bound_thm1_shape": down50(log_thm1(M, C)),
                           "log_bound_thm2_shape": down50(
                               log_thm2(d0, D0, s0, norms, p, M, C))}})
    for _ in range(10):
        d = rng.randint(1, 40)
        s = rng.randint(1, 12)
        N = rng.choice(non_pp[:20])
        RS = dyadic(rng, 0.125, 5000)
        C = dyadic(rng, 0.5, 40)
        p = rng.choice([1, 1, 2, 3, 7, 101])
        res = pipeline(d, s, N, RS, C, p)
        corpus.append({"kind": "pipeline", "d": d, "s": s, "N": N,
                       "RS": str(RS), "C": str(C), "p": p,
                       "expected": {k: down50(v) for k, v in res.items()}})
    for _ in range(10):
        s0 = rng.randint(1, 20)
        N = rng.randint(2, 400)
        corpus.append({"kind": "lambda_one", "s0": s0, "N": N,
                       "expected": {"log_bound": down50(log_lambda_one(s0, N))}})

    ln10 = mp.log(10)
    examples = {
        "zeta_d1": mp.nstr(zeta(1), 30),
        "zeta_d10": mp.nstr(zeta(10), 30),
        "zeta_d16": mp.nstr(zeta(16), 30),
        "zeta_d15": mp.nstr(zeta(15), 30),
        "s_regulator_d2_D8": mp.nstr(mp.mpf(1) / 4 * mp.sqrt(8) * mp.log(8), 30),
        "delta_Q_N6": mp.nstr(mp.exp(log_delta(1, 1, 6, [])), 30),
        "thm1_N6_log10": mp.nstr(log_thm1(6, 1) / ln10, 30),
        "thm1_N10_log": mp.nstr(log_thm1(10, 1), 30),
        "thm2_Q_N6_log10": mp.nstr(log_thm2(1, 1, 1, [], 1, 6, 1) / ln10, 30),
        "upsilon_arch_d4_r3_C1_log": mp.nstr(mp.log(16 * mp.log(8)), 30),
        "upsilon_fin_d4_r3_p5_C1_log": mp.nstr(mp.log(mp.mpf(4) ** 12 * 5 ** 4), 30),
        "hW_s2_N2_q1": mp.nstr(2 * 2 * 256 + 94 * 2 * 256 * mp.log(2), 30),
        "lambda_one_N6_s0_1_log": mp.nstr(log_lambda_one(1, 6), 30),
        "pipeline_toy_log": mp.nstr(pipeline(2, 2, 6, 1, 1, 1)["log_bound"], 30),
    }
    json.dump({"schema_version": 1, "generator": "bounds_oracle.py",
               "precision_digits": 120, "corpus": corpus,
               "examples": examples}, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
