"""Independent reference values for the unit tests, computed with mpmath.

Run `python3 tests/oracles/oracles.py` to regenerate; the printed digits are
frozen as literals in the C++ tests.
"""
from mpmath import mp, mpf, jtheta, exp, log, pi, sqrt, ellipk, agm, findroot

mp.dps = 60


def lam(y):
    q = exp(-pi * y)
    return (jtheta(2, 0, q) / jtheta(3, 0, q)) ** 4


def q_dlam_dq(y):
    q = exp(-pi * y)
    l = lam(y)
    return l * (1 - l) * jtheta(3, 0, q) ** 4


def lam_inv(a):
    return ellipk(1 - mpf(a)) / ellipk(mpf(a))


def green_worst(d, g):
    n = 3 * d
    s1 = sqrt(mpf(1) / 2)
    u = d / (1 - s1)
    f = u ** mpf(1.5) * log(u)
    M = 4 * d * exp(3 * pi)
    c1 = 128 * exp(3 * pi) * mpf(d) ** 4 / (pi ** 2 * g)
    return 330 * n * f + mpf("13.2") * n * c1 + (n - 1) * log(M)


def merkl(n, r1, M, c1):
    f = (1 - r1) ** mpf(-1.5) * log(1 / (1 - r1))
    return 330 * n * f + mpf("13.2") * n * c1 + (n - 1) * log(M)


rows = {
    "q_dlam_dq(1)": q_dlam_dq(1),
    "q_dlam_dq(4/5)": q_dlam_dq(mpf(4) / 5),
    "lambda(2)": lam(2),
    "lambda_inverse(2/3)": lam_inv(mpf(2) / 3),
    "lambda_inverse(1/24)": lam_inv(mpf(1) / 24),
    "root check": findroot(lambda y: lam(y) - mpf(2) / 3, 0.85),
    "agm(1,1/2)": agm(1, mpf(1) / 2),
    "wronskian scalar": mpf("4.5") + log(1 / (1 - sqrt(mpf(1) / 2))) + log(256 * exp(3 * pi) / pi ** 2) / 2,
    "green(3,1)": green_worst(3, 1),
    "green(64,1)": green_worst(64, 1),
    "merkl(3,3/4,2,1)": merkl(3, mpf(3) / 4, 2, 1),
    "c1 coefficient": mpf(8) / 3 * log(2) - mpf(1) / 4,
    "14580 log 12": 14580 * log(12),
    "r1(3)": sqrt(mpf(1) / 2) ** (mpf(1) / 3),
    "pi": +pi,
    "exp(1)": exp(1),
    "log(10)": log(10),
    "e - log 2": exp(1) - log(2),
}

for k, v in rows.items():
    print(f"{k:24s} {mp.nstr(v, 40)}")
