#!/usr/bin/env python3
"""High-precision reference values frozen into tests/reference_values.hpp.

Everything here is computed with mpmath at 100+ significant digits, directly
from the defining series / integrals, and is independent of the C++ library.
Run:  python3 tests/oracles/compute_reference_values.py
"""
import mpmath as mp

mp.mp.dps = 60


def prabhakar_series(alpha, beta, gamma, z, rel=mp.mpf(10) ** -60):
    """Sum_{k>=0} (gamma)_k z^k / (k! Gamma(alpha k + beta)) at working precision."""
    total = mp.mpf(0)
    poch_over_fact = mp.mpf(1)
    zk = mp.mpf(1)
    small = 0
    k = 0
    while True:
        term = poch_over_fact * zk * mp.rgamma(alpha * k + beta)
        total += term
        if k > 5 and abs(term) <= rel * abs(total):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
        poch_over_fact *= (gamma + k) / (k + 1)
        zk *= z
        k += 1
        if k > 200000:
            raise RuntimeError("series did not converge")


def cm_kernel(alpha, beta, gamma, omega, t):
    return t ** (beta - 1) * prabhakar_series(alpha, beta, gamma, omega * t ** alpha)


def fmt(x):
    return mp.nstr(x, 20, min_fixed=-1, max_fixed=-1)


def fmtc(x):
    x = mp.mpc(x)
    return "{%s, %s}" % (fmt(x.real), fmt(x.imag))


def main():
    a, b, g, w = mp.mpf("0.8"), mp.mpf("0.9"), mp.mpf("0.8"), mp.mpf(-1)
    out = []

    out.append(("kE_08_09_08_m2", fmt(prabhakar_series(a, b, g, -2))))
    out.append(("kE_08_09_08_m1", fmt(prabhakar_series(a, b, g, -1))))

    s = mp.mpc(1, 1)
    lt = s ** (a * g - b) / (s ** a - w) ** g
    out.append(("kKernelLaplace_1p1i", fmtc(lt)))

    # Prabhakar integral of tau^0.9 at t = 1 by direct quadrature of the
    # convolution (substitution r = u^(1/beta) removes the kernel singularity).
    mp.mp.dps = 40
    nu, t = mp.mpf("0.9"), mp.mpf(1)

    def integrand(u):
        r = u ** (1 / b)
        return prabhakar_series(a, b, g, w * r ** a, mp.mpf(10) ** -35) * (t - r) ** nu / b

    val = mp.quad(integrand, [0, mp.mpf("0.5"), t ** b])
    out.append(("kIntegralPower_nu09_t1", fmt(val)))
    mp.mp.dps = 60

    # Negative-axis values for the series/asymptotic overlap check.
    grid_full = [-20, -25, -30, -40, -50, -75, -100, -150, -200]
    for tag, (al, be, ga), grid in [
        ("A", (mp.mpf("0.8"), mp.mpf("0.9"), mp.mpf("0.8")), grid_full),
        ("B", (mp.mpf("0.6"), mp.mpf("0.9"), mp.mpf("1.2")), [-20, -25, -30, -40, -50]),
        ("C", (mp.mpf("1.0"), mp.mpf("1.0"), mp.mpf("0.5")), grid_full),
    ]:
        vals = []
        for z in grid:
            # Cancellation grows like exp(|z|^(1/alpha)); bump precision.
            need = int(float(abs(z) ** (1 / al)) / 2.3) + 60
            mp.mp.dps = max(60, need)
            vals.append("{%d.0, %s}" % (z, fmt(prabhakar_series(al, be, ga, mp.mpf(z)))))
        mp.mp.dps = 60
        out.append(("kOverlap" + tag, "{" + ", ".join(vals) + "}"))

    # Inverse-factorial coefficients c1, c2 of
    # F(s) = G(g+s)G(a s+1-g+b)/(G(s+1)G(a s+b)) = a^(1-g) sum_k c_k / (a s + th)_k.
    mp.mp.dps = 120
    for tag, (al, be, ga) in {
        "A": (mp.mpf("0.8"), mp.mpf("0.9"), mp.mpf("0.8")),
        "B": (mp.mpf("0.6"), mp.mpf("0.9"), mp.mpf("1.2")),
    }.items():
        th = 1 - ga + be

        def ratio(s):
            return mp.exp(mp.loggamma(ga + s) + mp.loggamma(al * s + th)
                          - mp.loggamma(s + 1) - mp.loggamma(al * s + be)) / al ** (1 - ga)

        # c1 from the 1/s term of the Stirling expansion; c2 as the limit of
        # the remaining 1/s^2 coefficient (error O(1/s), s = 1e15; larger s
        # would need more digits than dps since log-gamma itself is O(s log s)).
        c1 = (1 - ga) * (2 * be - ga - al * ga) / 2
        s_big = mp.mpf(10) ** 15
        x = al * s_big + th
        c2 = (ratio(s_big) - 1 - c1 / x) * x * (x + 1)
        out.append(("kInvFact" + tag, "{1.0, %s, %s}" % (fmt(c1), fmt(c2))))

    # Small-time series reference y(t) for D y = A y, y(0) = 1, A = A1.
    mp.mp.dps = 60
    A1 = mp.mpc("0.866", "1.171")
    for t in [mp.mpf("0.5"), mp.mpf(1)]:
        y = mp.mpc(0)
        for j in range(0, 200):
            term = A1 ** j * t ** (j * b) * prabhakar_series(a, j * b + 1, j * g, w * t ** a,
                                                             mp.mpf(10) ** -40)
            y += term
            if j > 3 and abs(term) < mp.mpf(10) ** -40:
                break
        out.append(("kSmallTimeA1_t" + mp.nstr(t, 2).replace(".", "p"), fmtc(y)))

    # Large-time expansion y(50) for A1 (residue term + algebraic tail).
    mp.mp.dps = 80
    t = mp.mpf(50)

    def F(s):
        return s ** (b - a * g) * (s ** a - w) ** g

    for tag, Araw in {"A1": ("0.866", "1.171"), "A3": ("0.936", "1.151")}.items():
        A = mp.mpc(*Araw)
        sb = mp.findroot(lambda s: F(s) - A, mp.mpc(0, 1))
        C = (sb ** a - w) / (b * sb ** a - (b - a * g) * w)
        tail = mp.mpc(0)
        best = None
        for k in range(1, 40):
            term = t ** (-k * b) / A ** k * prabhakar_series(a, 1 - k * b, -k * g, w * t ** a)
            if best is not None and abs(term) > best:
                break
            best = abs(term)
            tail += term
        out.append(("kSBar" + tag, fmtc(sb)))
        out.append(("kLargeTime" + tag + "_t50", fmtc(C * mp.exp(sb * t) - tail)))

    # Boundary point Lambda(theta) = F(i mu(theta)), mu from the root locus,
    # at theta = 0.2 * alpha pi / 2.
    mp.mp.dps = 60
    theta = mp.mpf("0.2") * a * mp.pi / 2
    mu = (abs(w) * mp.sin(theta) / mp.sin(a * mp.pi / 2 - theta)) ** (1 / a)
    iu = mp.mpc(0, mu)
    out.append(("kCurvePoint_02", fmtc(iu ** (b - a * g) * (iu ** a - w) ** g)))

    for name, value in out:
        print("%s = %s" % (name, value))


if __name__ == "__main__":
    main()
