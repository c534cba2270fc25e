"""Independent reference values for the C++ test suites.

Run with `python3 tests/oracles/derive.py`; the printed numbers are frozen
into the tests. Uses mpmath quadrature and numpy, nothing from the library.
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 30


def hat(x):
    return mp.mpf(0) if x <= 0 or x >= 2 else (x if x <= 1 else 2 - x)


def hat_corr(n):
    return mp.quad(lambda x: hat(x) * hat(x - n), [0, 1, 2, 3])


print("hat R(0), R(1), R(2):", hat_corr(0), hat_corr(1), hat_corr(2))
print("int_0^2 sin^2(pi x):", mp.quad(lambda x: mp.sin(mp.pi * x) ** 2, [0, 1, 2]))

# Coefficients of sin(pi x) on the Haar cells.
for j in range(4):
    for n in range(2 ** j):
        a, b = mp.mpf(n) / 2 ** j, mp.mpf(n + 1) / 2 ** j
        c = 2 ** (mp.mpf(j) / 2) * mp.quad(lambda x: mp.sin(mp.pi * x), [a, b])
        print(f"coef j={j} n={n}: {mp.nstr(c, 20)}")

# L2 error of the Haar approximation of sin(pi x) on [0,1].
for j in range(4):
    err2 = mp.mpf(0)
    for n in range(2 ** j):
        a, b = mp.mpf(n) / 2 ** j, mp.mpf(n + 1) / 2 ** j
        mean = mp.quad(lambda x: mp.sin(mp.pi * x), [a, b]) / (b - a)
        err2 += mp.quad(lambda x: (mp.sin(mp.pi * x) - mean) ** 2, [a, b])
    print(f"||f - A_{j} f|| = {mp.nstr(mp.sqrt(err2), 20)}")

# Theta value: sum_n exp(-pi n^2) = pi^(1/4) / Gamma(3/4).
print("sum exp(-pi n^2):", mp.nsum(lambda n: mp.e ** (-mp.pi * n * n), [-mp.inf, mp.inf]),
      mp.pi ** 0.25 / mp.gamma(0.75))
print("sum exp(-pi (n+1/2)^2):", mp.nsum(lambda n: mp.e ** (-mp.pi * (n + 0.5) ** 2), [-mp.inf, mp.inf]))

# Non-MRA regression filter: quadrature defect with S == 1 (pulse phi).
rng = np.random.default_rng(20240611)
h = np.round(rng.normal(size=4), 6)
print("regression filter:", list(h))
M = 1024
w = 2 * np.pi * np.arange(M) / M
H = np.array([np.sum(h * np.exp(-1j * wm * np.arange(4))) for wm in w])
defect = np.abs(np.abs(H) ** 2 + np.abs(np.roll(H, -M // 2)) ** 2 - 2.0)
print("regression defect:", repr(defect.max()))

# Raised cosine / cos^2 periodizations are identically 1 (Nyquist); checked
# symbolically here at a few points.
for beta in (0.25, 0.5):
    def rc(x, beta=beta):
        ax = abs(x)
        a, b = (1 - beta) / 2, (1 + beta) / 2
        if ax < a:
            return mp.mpf(1)
        if ax < b:
            return (1 + mp.cos(mp.pi / beta * (ax - a))) / 2
        return mp.mpf(0)
    print("raised cosine sum at 0.3:", beta, rc(0.3) + rc(0.3 - 1))
