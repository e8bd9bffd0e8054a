#!/usr/bin/env python3
"""Generate the embedded Tracy-Widom (beta=1) CDF table.

Writes crates/core/data/tw1_cdf.txt: two ASCII columns (z, F_TW1(z)),
one pair per line, strictly increasing z, '#' comment header.

Method
------
F_TW1 is evaluated from the Hastings-McLeod solution q(x) of the
Painleve II equation

    q'' = x q + 2 q^3,   q(x) ~ Ai(x)  as x -> +inf,

via the Tracy-Widom representations

    F2(s) = exp( - \int_s^inf (x - s) q(x)^2 dx )
    F1(s) = sqrt(F2(s)) * exp( - 1/2 \int_s^inf q(x) dx ).

The ODE is integrated backward from x0 = +10 (where q = Ai to machine
precision) with DOP853 at rtol=3e-13, with the three integrals carried
as extra state components so no post-hoc quadrature is needed:

    u' = -q,  w' = -q^2,  v' = -w,
    u(x0) = \int_{x0}^inf Ai,          (= 1/3 - itairy(x0))
    w(x0) = Ai'(x0)^2 - x0 Ai(x0)^2,
    v(x0) = \int_{x0}^inf (t - x0) Ai(t)^2 dt.

Backward integration is the stable direction for the Hastings-McLeod
solution (Bi-type error modes decay as x decreases).

Validation: the generated table is checked against published TW1
percentiles (e.g. Bejan's tables / Chiani 2014): F1^{-1}(0.90)=0.4501,
F1^{-1}(0.95)=0.9793, F1^{-1}(0.975)=1.4538, F1^{-1}(0.99)=2.0234, and
against the known moments mean = -1.2065335746, var = 1.6077810346.
The script fails loudly if any anchor is off by more than 5e-4.
"""

import numpy as np
from scipy.integrate import solve_ivp, quad
from scipy.special import airy, itairy
from scipy.interpolate import PchipInterpolator

X0 = 10.0
Z_MIN, Z_MAX, Z_STEP = -7.0, 5.0, 0.01


def initial_state(x0: float) -> np.ndarray:
    ai, aip, _, _ = airy(x0)
    u0 = 1.0 / 3.0 - itairy(x0)[0]          # int_{x0}^inf Ai
    w0 = aip**2 - x0 * ai**2                # int_{x0}^inf Ai^2
    # int_{x0}^inf t Ai(t)^2 dt = -(x0^2 Ai^2 - x0 Ai'^2 + Ai Ai')/3
    t_ai2 = -(x0**2 * ai**2 - x0 * aip**2 + ai * aip) / 3.0
    v0 = t_ai2 - x0 * w0
    return np.array([ai, aip, u0, w0, v0])


def rhs(x, y):
    q, qp, _, w, _ = y
    return [qp, x * q + 2.0 * q**3, -q, -q * q, -w]


def solve(z_grid: np.ndarray):
    sol = solve_ivp(
        rhs,
        (X0, z_grid[0]),
        initial_state(X0),
        method="DOP853",
        t_eval=z_grid[::-1],
        rtol=3e-13,
        atol=1e-16,
    )
    assert sol.success, sol.message
    y = sol.y[:, ::-1]
    u, v = y[2], y[4]
    f2 = np.exp(-v)
    f1 = np.exp(-0.5 * (v + u))
    return f1, f2


def main():
    n = int(round((Z_MAX - Z_MIN) / Z_STEP)) + 1
    z = np.round(np.linspace(Z_MIN, Z_MAX, n), 10)
    f1, f2 = solve(z)

    assert np.all(np.diff(f1) > 0), "F1 table must be strictly increasing"
    assert 0.0 < f1[0] < 1e-6 and 1.0 - f1[-1] < 1e-4

    # --- validation against published anchors ---
    inv = lambda p: np.interp(p, f1, z)  # close enough for anchor checks
    anchors = {0.90: 0.4501, 0.95: 0.9793, 0.975: 1.4538, 0.99: 2.0234}
    print("percentile checks (published -> computed):")
    for p, zq in anchors.items():
        got = inv(p)
        print(f"  F1^-1({p}) = {got:.6f}  (published {zq}), diff {got - zq:+.2e}")
        assert abs(got - zq) < 5e-4, (p, got, zq)

    # Moments from the CDF by parts: E[X] = int_0^inf (1-F) - int_-inf^0 F,
    # E[X^2] = int_0^inf 2z(1-F) + int_-inf^0 (-2z)F  (tails beyond the
    # grid are < 1e-5 in mass and ignored).
    neg, pos = z <= 0.0, z >= 0.0
    mean = np.trapezoid(1.0 - f1[pos], z[pos]) - np.trapezoid(f1[neg], z[neg])
    ex2 = np.trapezoid(2.0 * z[pos] * (1.0 - f1[pos]), z[pos]) + np.trapezoid(
        -2.0 * z[neg] * f1[neg], z[neg]
    )
    var = ex2 - mean**2
    print(f"moment checks: mean {mean:.8f} (ref -1.20653357), "
          f"var {var:.8f} (ref 1.60778103)")
    assert abs(mean - (-1.2065335746)) < 5e-4
    assert abs(var - 1.6077810346) < 5e-4

    # Independent route for F2: Fredholm determinant of the Airy kernel
    # (Bornemann's method, Gauss-Legendre with an exponential map).
    def f2_fredholm(s, m=120, L=12.0):
        u_nodes, u_w = np.polynomial.legendre.leggauss(m)
        t = s + L * (1 + u_nodes) / (1 - u_nodes)
        jac = L * 2.0 / (1 - u_nodes) ** 2
        ai, aip, _, _ = airy(t)
        x = t[:, None]
        yy = t[None, :]
        num = ai[:, None] * aip[None, :] - aip[:, None] * ai[None, :]
        den = x - yy
        with np.errstate(divide="ignore", invalid="ignore"):
            k = num / den
        dg = aip**2 - t * ai**2
        k[np.eye(m, dtype=bool)] = dg
        wts = np.sqrt(u_w * jac)
        a = wts[:, None] * k * wts[None, :]
        return np.linalg.det(np.eye(m) - a)

    print("F2 cross-check (Painleve vs Fredholm):")
    for s in (-3.0, -1.0, 0.0, 1.0):
        pa = np.interp(s, z, f2)
        fr = f2_fredholm(s)
        print(f"  s={s:+.1f}: painleve {pa:.12f}, fredholm {fr:.12f}, "
              f"diff {pa - fr:+.2e}")
        assert abs(pa - fr) < 1e-5

    # --- emit the table ---
    out = "crates/core/data/tw1_cdf.txt"
    with open(out, "w") as fh:
        fh.write("# Tracy-Widom beta=1 cumulative distribution table\n")
        fh.write("# columns: z  F_TW1(z); strictly increasing in both\n")
        fh.write(f"# grid: z in [{Z_MIN}, {Z_MAX}] step {Z_STEP}\n")
        fh.write("# generated by tools/gen_tw1_table.py: Hastings-McLeod\n")
        fh.write("# solution of Painleve II (backward DOP853, rtol 3e-13),\n")
        fh.write("# validated against published TW1 percentiles and moments\n")
        fh.write("# and a Fredholm-determinant evaluation of F2.\n")
        for zi, pi in zip(z, f1):
            fh.write(f"{zi:.2f} {pi:.16e}\n")
    print(f"wrote {out} ({n} rows)")

    # --- frozen oracle values for the test suite ---
    interp = PchipInterpolator(z, f1)

    def quantile(p):
        lo, hi = z[0], z[-1]
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if interp(mid) < p:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    print("\nfrozen oracle values:")
    for p in (0.01, 0.03, 0.05, 0.10, 0.50, 0.90, 0.95, 0.975, 0.99, 0.999):
        print(f"  quantile({p}) = {quantile(p):.10f}")
    for s in (-3.0, -2.0, -1.0, 0.0, 0.9793, 2.0234):
        print(f"  cdf({s}) = {float(interp(s)):.10f}")


if __name__ == "__main__":
    main()
