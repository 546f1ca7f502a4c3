"""Independent high-precision reference values for the C++ unit tests.

Every constant frozen into tests/unit/*.cpp that is not a trivial identity is
printed by this script. It uses mpmath only and shares no code with the
library, so it stays an independent check of the C++ formulas.

    python3 tests/oracles/frozen_values.py
"""
from mpmath import mp, mpf, pi, sqrt, gamma, e, exp, quad, ceil, zeta

mp.dps = 40


def alpha(n):
    return zeta(2) - sum(mpf(1) / k**2 for k in range(1, n + 1))


def beta(n):
    return zeta(4) - sum(mpf(1) / k**4 for k in range(1, n + 1))


def c_mp(m, p):
    p = mpf(p)
    g = gamma((p + 1) / 2)
    inner = exp(-2 / p) * (gamma(p + 1) + e / (p + 1)) ** (2 / p) \
        + (2 * m - 4) / pi ** (2 / p) * g ** (4 / p)
    return g ** (1 / p) * sqrt(inner)


def hat_c(m, p):
    if p == 2:
        return sqrt(m) / (sqrt(12) * pi)
    p = mpf(p)
    return c_mp(m, p) * sqrt(p - 1) / (sqrt(3) * pi ** ((2 * p + 1) / (2 * p)))


def chi2_abs(p, c):
    # direct 2-d polar integral, not the closed form under test
    return quad(lambda r: abs(r * r - c) ** p * r * exp(-r * r / 2), [0, sqrt(abs(c)) if c > 0 else 1, mp.inf])


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 17)}")


show("alpha(0)", alpha(0))
show("beta(0)", beta(0))
show("alpha(1)", alpha(1))
show("beta(1)", beta(1))
show("alpha(5)", alpha(5))
show("alpha(10)", alpha(10))
show("1/(2 pi)", 1 / (2 * pi))
show("tail1/tail2 example", sqrt(alpha(1)) / (sqrt(2) * pi))
show("c_mp(2,4)", c_mp(2, 4))
show("c_mp(3,3)", c_mp(3, 3))
show("c_mp(5,6)", c_mp(5, 6))
show("hat_c(2,2)", hat_c(2, 2))
show("hat_c(2,4)", hat_c(2, 4))
show("hat_c(3,3)", hat_c(3, 3))
show("choose_n raw m2 p2 h1 eps.01", hat_c(2, 2) / mpf("0.01"))
show("n_wik raw", sqrt(10) / (sqrt(24) * pi) / mpf("0.01"))
show("n_fs raw", 1 / (2 * pi**2) * gamma(2) / mpf("0.01") ** 2)
show("l2_fs_exact(1,1)", sqrt(alpha(1) / (2 * pi**2)))
show("l2_fs_exact(1,10)", sqrt(alpha(10) / (2 * pi**2)))
show("ia_max(m2,h1,n1)", sqrt(2 / (4 * pi**2) * beta(1) / alpha(1)))
show("ia_max(m3,h1,n2)", sqrt(3 / (4 * pi**2) * beta(2) / alpha(2)))
show("cor45(m2,h1,n1)", sqrt(2) / (sqrt(12) * pi))
show("sigma2 single term", mpf(1) / (4 * pi**2) / 4 * 5)
show("sigma2_inf(1,1)", alpha(1) / (2 * pi**2))
show("eq29(m2,h1,n1)", 2 / (8 * pi**4) * beta(1))
show("eq30(m2,h1,n1)", 4 / (16 * pi**4) * beta(1))
show("eq29(m3,h1,n2)", 3 / (8 * pi**4) * beta(2))
show("gauss_abs(1,1)", sqrt(2 / pi))
show("gauss_abs(3,2)", (sqrt(2) * 2) ** 3 / sqrt(pi) * gamma(2))
show("gauss_abs(2.5,1)", sqrt(2) ** mpf(2.5) / sqrt(pi) * gamma(mpf(3.5) / 2))
show("chi2_abs(1,0) quad", chi2_abs(1, 0))
show("chi2_abs(2,2) quad", chi2_abs(2, 2))
show("chi2_abs(2.5,1) quad", chi2_abs(mpf(2.5), 1))
show("chi2_abs(4,2) quad", chi2_abs(4, 2))
show("chi2_abs(1,2) quad", chi2_abs(1, 2))
show("chi2_abs(2.5,-1) quad", chi2_abs(mpf(2.5), -1))
show("fs_lp(p=3,h1,n1)", 2 / (sqrt(2) * pi) * gamma(mpf(2.5)) ** (mpf(1) / 3) * sqrt(alpha(1)))
show("ia_lp_max(m3,p4,h1,n2)", c_mp(3, 4) * sqrt(3) / pi ** (mpf(9) / 8) * sqrt(beta(2) / alpha(2)))
show("wik/ia ratio m3", sqrt(5 * 2 / mpf(2)))


# Philox4x64-10 known answers, from numpy's independent implementation.
# numpy increments the counter before each block, so pass counter - 1.
def philox_block(counter, key):
    import numpy as np
    from numpy.random import Philox

    v = (sum(w << (64 * i) for i, w in enumerate(counter)) - 1) % (1 << 256)
    c = np.array([(v >> (64 * i)) & (2**64 - 1) for i in range(4)], dtype=np.uint64)
    bg = Philox(counter=c, key=np.array(key, dtype=np.uint64))
    return [int(v) for v in bg.random_raw(4)]


for ctr, key in [
    ([0, 0, 0, 0], [0, 0]),
    ([2**64 - 1] * 4, [2**64 - 1] * 2),
    ([0x243F6A8885A308D3, 0x13198A2E03707344, 0xA4093822299F31D0, 0x082EFA98EC4E6C89],
     [0x452821E638D01377, 0xBE5466CF34E90C6C]),
    ([7, 42, 0, 0], [20210121, 0]),
]:
    words = " ".join(f"{w:016x}" for w in philox_block(ctr, key))
    print(f"philox ctr={[hex(c) for c in ctr]} key={[hex(k) for k in key]}\n    {words}")
