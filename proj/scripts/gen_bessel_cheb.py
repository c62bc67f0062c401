"""Generate Chebyshev coefficients for the scaled modified Bessel functions.

For x >= 2 the library evaluates K_nu(x) = exp(-x) / sqrt(x) * S_nu(u) with
u = 4/x - 1 in (-1, 1], where S_nu(u) = exp(x) sqrt(x) K_nu(x) is smooth on
the closed interval (including the x -> infinity endpoint u = -1).
Run: python3 scripts/gen_bessel_cheb.py > core/src/kernel/bessel_cheb.inc
"""
import mpmath as mp

mp.mp.dps = 50
N = 48


def scaled(nu, u):
    if u == -1:
        return mp.sqrt(mp.pi / 2)
    x = 4 / (u + 1)
    return mp.exp(x) * mp.sqrt(x) * mp.besselk(nu, x)


def cheb(nu):
    nodes = [mp.cos(mp.pi * (k + mp.mpf(1) / 2) / N) for k in range(N)]
    vals = [scaled(nu, u) for u in nodes]
    coeffs = []
    for j in range(N):
        s = mp.fsum(vals[k] * mp.cos(mp.pi * j * (k + mp.mpf(1) / 2) / N) for k in range(N))
        coeffs.append(2 * s / N)
    coeffs[0] /= 2
    while abs(coeffs[-1]) < mp.mpf("1e-19"):
        coeffs.pop()
    return coeffs


print("// Generated by scripts/gen_bessel_cheb.py; do not edit.")
for nu in (0, 1):
    c = cheb(nu)
    print(f"inline constexpr double kScaledK{nu}Cheb[{len(c)}] = {{")
    for v in c:
        print(f"    {mp.nstr(v, 20, min_fixed=1, max_fixed=0)},")
    print("};")
