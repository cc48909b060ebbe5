"""Exact rational reference values, computed without touching the package.

Factorials are explicit products and binomials come from Pascal's triangle,
so these stay independent of ``math.comb``/``math.factorial`` in the library.
"""

from fractions import Fraction


def fact(n):
    out = 1
    for j in range(2, n + 1):
        out *= j
    return out


def pascal(n, k):
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def error_coef(n):
    return Fraction((-1) ** (n - 1), (2 * n - 1) * fact(n - 1))


def multiplier(n, k, lam):
    return pascal(n + lam - 1, lam) * n**k


def weight(n, k, lam, gamma, sign):
    gamma = Fraction(gamma)
    return Fraction(multiplier(n, k, lam)) * (n + sign * gamma) / ((1 - gamma) * (2 * n - 1) * fact(n - 1))


def quad(k, lam, gamma, b1):
    gamma, b1 = Fraction(gamma), Fraction(b1)
    d = 2**k * (2 - gamma) * (1 + lam)
    return 3 * (1 - gamma) / d - 3 * (1 + gamma) / d * b1


def upper(k, lam, gamma, b1, r):
    r, b1 = Fraction(r), Fraction(b1)
    return (1 + b1) * r + quad(k, lam, gamma, b1) * r * r


def lower(k, lam, gamma, b1, r):
    r, b1 = Fraction(r), Fraction(b1)
    return (1 - b1) * r - quad(k, lam, gamma, b1) * r * r


def poly_eval(coeffs, z):
    """Direct power sum, no Horner."""
    return sum(c * z ** (i + 1) for i, c in enumerate(coeffs))
