"""Independent oracles for the frozen values in oracle_values.hpp.

Rational series use exact fractions; the rest use 60-digit mpmath Taylor
expansion of the closed-form generating function. Run:
    python3 tests/oracles/generate.py > tests/oracle_values.hpp
"""
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 60


def half_power(order):
    """Exact coefficients of (1 - s)^(1/2)."""
    c = [Fraction(1)]
    for k in range(1, order + 1):
        c.append(c[-1] * (k - 1 - Fraction(1, 2)) / k)
    return c


def reciprocal(u):
    g = [1 / u[0]]
    for m in range(1, len(u)):
        g.append(-sum(u[j] * g[m - j] for j in range(1, m + 1)) / u[0])
    return g


def taylor(f, order):
    return mp.taylor(f, 0, order)


def max_amplitude(b, alpha):
    k = -2 * mp.pi / mp.log(b)
    return (alpha / mp.gamma(1 - alpha)) / abs((alpha + 1j * k) / mp.gamma(1 - alpha - 1j * k))


def emit(name, values):
    body = ",\n    ".join(mp.nstr(mp.mpf(v), 17, min_fixed=-1, max_fixed=-1) for v in values)
    print(f"inline constexpr double {name}[] = {{\n    {body}}};\n")


def psi_factory(b, alpha, A):
    b, alpha, A = mp.mpf(b), mp.mpf(alpha), mp.mpf(A)
    k = -2 * mp.pi / mp.log(b)
    return lambda u: u**alpha * (1 - A * mp.cos(k * mp.log(u)))


print("#pragma once\n")
print("// Generated by tests/oracles/generate.py. Do not edit by hand.\n")
print("namespace oracle {\n")

# DML(lambda=2, alpha=0.5): 1 / (1 + 2 (1-s)^(1/2)), exact.
u = [2 * c for c in half_power(64)]
u[0] += 1
emit("kDml2Half", [float(x) for x in reciprocal(u)])

# AlphaPoisson(1, 0.6): exp{-(1-s)^0.6}.
emit("kAlphaPoisson1Point6", taylor(lambda s: mp.exp(-(1 - s) ** mp.mpf("0.6")), 11))

# AlphaBinomial(n=3, b=0.4, alpha=0.7): [1 - 0.4 (1-s)^0.7]^3.
emit("kAlphaBinomial3", taylor(lambda s: (1 - mp.mpf("0.4") * (1 - s) ** mp.mpf("0.7")) ** 3, 9))

# psi(1-s) series for b=0.25, alpha=0.5, A=0.3.
psi = psi_factory("0.25", "0.5", "0.3")
emit("kPsiSeries", taylor(lambda s: psi(1 - s), 9))

# DSS(b=0.25, alpha=0.5, A=0.3): not a pmf (negative at index 2).
emit("kDssInvalid", taylor(lambda s: mp.exp(-psi(1 - s)), 9))

# DSML(b=0.25, alpha=0.5, A=6e-5): admissible amplitude, a genuine pmf.
psi_small = psi_factory("0.25", "0.5", "6e-5")
emit("kDsmlAdmissible", taylor(lambda s: 1 / (1 + psi_small(1 - s)), 11))

# Largest admissible amplitude.
emit("kMaxAmplitude", [max_amplitude(mp.mpf("0.25"), mp.mpf("0.5")),
                       max_amplitude(mp.mpf("0.6"), mp.mpf("0.5")),
                       max_amplitude(mp.mpf("0.3"), mp.log(2) / -mp.log(mp.mpf("0.3")))])

# Poisson mixture with Exp(1) mixing, by quadrature: Geometric0(1).
emit("kExpMixedPoisson",
     [mp.quad(lambda w: mp.exp(-w) * w**k / mp.factorial(k) * mp.exp(-w), [0, mp.inf]) for k in range(8)])

print("}  // namespace oracle")
