#!/usr/bin/env python3
"""Independent oracle computations whose outputs are frozen into the
Rust test suite. Each value is computed by a route deliberately
different from the production implementation (scipy adaptive quad +
brentq vs. the crate's Simpson-on-substituted-integrand + bisection;
mpmath-free closed forms evaluated in double precision).
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq


def mp_density(x, gamma):
    a = (1 - math.sqrt(gamma)) ** 2
    b = (1 + math.sqrt(gamma)) ** 2
    if x <= a or x >= b:
        return 0.0
    return math.sqrt((b - x) * (x - a)) / (2 * math.pi * gamma * x)


def mp_median(gamma):
    a = (1 - math.sqrt(gamma)) ** 2
    b = (1 + math.sqrt(gamma)) ** 2

    def cdf(t):
        val, _ = quad(mp_density, a, t, args=(gamma,), limit=400,
                      epsabs=1e-13, epsrel=1e-13)
        return val

    total = cdf(b)
    assert abs(total - 1.0) < 1e-9, total
    return brentq(lambda t: cdf(t) - 0.5, a + 1e-12, b - 1e-12, xtol=1e-13)


def centering(n_dim, n_samples):
    a, b = n_samples - 0.5, n_dim - 0.5
    mu = (math.sqrt(a) + math.sqrt(b)) ** 2
    xi = (math.sqrt(a) + math.sqrt(b)) * (1 / math.sqrt(a) + 1 / math.sqrt(b)) ** (1 / 3)
    return mu, xi


def xi_corrected(n_dim, n_samples):
    mu, xi = centering(n_dim, n_samples)
    ns = n_dim * n_samples
    rad = xi**2 - 2.0 / ns * mu**2
    if rad <= 0:
        return None
    return math.sqrt(ns / (2.0 + ns) * rad)


# TW1 quantiles frozen from tools/gen_tw1_table.py output
Q = {0.03: -3.4323787862, 0.05: -3.1803811145, 0.10: -2.7824285354,
     0.90: 0.4501432248, 0.95: 0.9793159854, 0.97: None, 0.99: 2.0234492508}


def tw1_quantile_from_table(p):
    z, f = [], []
    with open("crates/core/data/tw1_cdf.txt") as fh:
        for line in fh:
            if line.startswith("#"):
                continue
            zi, pi = line.split()
            z.append(float(zi))
            f.append(float(pi))
    return np.interp(p, f, z)


def t1(n_dim, n_samples, alpha1):
    mu, xi = centering(n_dim, n_samples)
    q = tw1_quantile_from_table(alpha1)
    return n_samples * (xi * q + mu) / (math.sqrt(n_samples) - math.sqrt(n_dim)) ** 2


def t2(n_dim, n_samples, alpha2):
    mu, _ = centering(n_dim, n_samples)
    xc = xi_corrected(n_dim, n_samples)
    q = tw1_quantile_from_table(1.0 - alpha2)
    return 1.0 / (xc * q + mu)


if __name__ == "__main__":
    print("mp_median:")
    for g in (0.0625, 0.25, 0.5, 0.9, 1.0):
        print(f"  gamma={g}: {mp_median(g):.12f}")

    print("centering (mu, xi):")
    for n, s in ((2, 2), (256, 3), (64, 256), (100, 400), (256, 512), (10, 2000)):
        mu, xi = centering(n, s)
        print(f"  (N={n}, s={s}): mu={mu:.12f} xi={xi:.12f}")

    print("xi_corrected:")
    for n, s in ((2, 2), (256, 3), (64, 256), (100, 400), (256, 512), (10, 2000), (16, 16)):
        print(f"  (N={n}, s={s}): {xi_corrected(n, s)}")

    print("thresholds:")
    print(f"  T1(N=64,  s=256, a=0.95) = {t1(64, 256, 0.95):.12f}")
    print(f"  T1(N=64,  s=256, a=0.97) = {t1(64, 256, 0.97):.12f}")
    print(f"  T1(N=256, s=3,   a=0.97) = {t1(256, 3, 0.97):.12f}")
    print(f"  T1(N=256, s=512, a=0.97) = {t1(256, 512, 0.97):.12f}")
    print(f"  T2(N=64,  s=256, a=0.97) = {t2(64, 256, 0.97):.12f}")
    print(f"  T2(N=256, s=512, a=0.97) = {t2(256, 512, 0.97):.12f}")
    print(f"  T2(N=100, s=400, a=0.90) = {t2(100, 400, 0.90):.12f}")
    q097 = tw1_quantile_from_table(0.97)
    print(f"  tw1_quantile(0.97) = {q097:.10f}")
    print(f"  tw1_quantile(0.03) = {tw1_quantile_from_table(0.03):.10f}")
