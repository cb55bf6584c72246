"""Independent reference computations used to freeze expected test values.

Everything here deliberately avoids the library's production code paths:
lattice sums are enumerated state by state, Bell/Poisson values come from
the Touchard recurrence, beta moments from term-by-term integration, the
Irwin-Hall CDF from piecewise-polynomial convolution, and the normal CDF
from a rational Maclaurin series with Machin's formula for pi.
"""

from fractions import Fraction
from itertools import product
from math import comb


def enum_sum_moment(support, n, j):
    """E (X_1+...+X_n)^j by full enumeration of i.i.d. lattice draws.

    ``support`` is a list of (value, probability) pairs with rational
    entries; cost is len(support)**n.
    """
    total = Fraction(0)
    for draws in product(support, repeat=n):
        s = sum((v for v, _ in draws), Fraction(0))
        p = Fraction(1)
        for _, q in draws:
            p *= q
        total += p * s**j
    return total


RADEMACHER_SUPPORT = [(Fraction(-1), Fraction(1, 2)), (Fraction(1), Fraction(1, 2))]


def touchard_moments(lam, order):
    """Poisson(lam) raw moments via mu_{n+1} = lam * sum_k C(n,k) mu_k."""
    mu = [Fraction(1)]
    for n in range(order):
        mu.append(Fraction(lam) * sum(comb(n, k) * mu[k] for k in range(n + 1)))
    return mu


def bell_numbers(order):
    return [int(v) for v in touchard_moments(1, order)]


def beta_moment_integral(r, k):
    """E beta(r)^k = r * int_0^1 t^k (1-t)^{r-1} dt, expanded termwise."""
    if r == 0:
        return Fraction(1)
    total = Fraction(0)
    for i in range(r):
        total += Fraction(comb(r - 1, i) * (-1) ** i, k + i + 1)
    return r * total


def shift_moments(mu, c):
    """Moments of Y + c from the moments of Y, exact."""
    c = Fraction(c)
    out = []
    for k in range(len(mu)):
        acc = Fraction(0)
        for i in range(k + 1):
            acc += comb(k, i) * Fraction(mu[i]) * c ** (k - i)
        out.append(acc)
    return out


def gamma_raw_moments(t, order):
    """Gamma(shape=t, rate=1) raw moments: rising factorial t(t+1)...(t+k-1)."""
    mu = [Fraction(1)]
    for k in range(order):
        mu.append(mu[-1] * (Fraction(t) + k))
    return mu


class PiecewisePoly:
    """CDF of a sum of standard uniforms as polynomials on [k, k+1]."""

    def __init__(self, n):
        # density of one uniform: 1 on [0,1]
        dens = [[Fraction(1)]]
        for _ in range(n - 1):
            dens = _convolve_with_uniform(dens)
        self.cdf_pieces = _integrate_pieces(dens)
        self.n = n

    def cdf(self, x):
        x = Fraction(x)
        if x <= 0:
            return Fraction(0)
        if x >= self.n:
            return Fraction(1)
        piece = int(x) if x != int(x) else int(x) - (0 if x < self.n else 1)
        if piece >= len(self.cdf_pieces):
            piece = len(self.cdf_pieces) - 1
        return _eval_poly(self.cdf_pieces[piece], x)


def _eval_poly(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _antiderivative(coeffs):
    return [Fraction(0)] + [c / (i + 1) for i, c in enumerate(coeffs)]


def _convolve_with_uniform(pieces):
    # density of (sum + U): g(x) = int_{x-1}^{x} f(u) du = F(x) - F(x-1)
    cdf_pieces = _integrate_pieces(pieces)
    m = len(pieces)
    out = []
    for k in range(m + 1):
        # on [k, k+1]: F(x) - F(x-1) with F clamped to its support
        upper = cdf_pieces[k] if k < m else [Fraction(1)]
        lower = [Fraction(0)] if k == 0 else _shift_poly(cdf_pieces[k - 1], 1)
        out.append(_poly_sub(upper, lower))
    return out


def _integrate_pieces(pieces):
    # cumulative integral, continuous across the breakpoints
    out = []
    running = Fraction(0)
    for k, poly in enumerate(pieces):
        anti = _antiderivative(poly)
        offset = running - _eval_poly(anti, Fraction(k))
        piece = anti[:]
        piece[0] += offset
        out.append(piece)
        running = _eval_poly(piece, Fraction(k + 1))
    return out


def _shift_poly(coeffs, h):
    # p(x - h) expanded in x
    out = [Fraction(0)] * len(coeffs)
    for i, c in enumerate(coeffs):
        for k in range(i + 1):
            out[k] += c * comb(i, k) * Fraction(-h) ** (i - k)
    return out


def _poly_sub(a, b):
    size = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(size)
    ]


def machin_pi(digits=45):
    """Rational pi via 16 atan(1/5) - 4 atan(1/239), alternating series."""
    def atan_inv(q, terms):
        total = Fraction(0)
        for k in range(terms):
            term = Fraction(1, (2 * k + 1) * q ** (2 * k + 1))
            total += -term if k % 2 else term
        return total

    terms = digits // 1 + 5
    return 16 * atan_inv(5, terms) - 4 * atan_inv(239, terms)


def erf_series(x, terms=120):
    """erf(x) = (2/sqrt(pi)) sum (-1)^k x^{2k+1} / (k! (2k+1)), rational x."""
    x = Fraction(x)
    total = Fraction(0)
    fact = 1
    for k in range(terms):
        term = x ** (2 * k + 1) / (fact * (2 * k + 1))
        total += -term if k % 2 else term
        fact *= k + 1
    pi = machin_pi()
    # 2/sqrt(pi) via isqrt on a large scaled integer
    import math as _math

    scale = 10**50
    sqrt_pi = Fraction(_math.isqrt(int(pi * scale * scale)), scale)
    return 2 * total / sqrt_pi


def normal_cdf_series(x):
    """Reference standard normal CDF via the rational erf series."""
    import math as _math

    half_scaled = erf_series(Fraction(x) / Fraction(_math.isqrt(2 * 10**60), 10**30))
    return float(Fraction(1, 2) + half_scaled / 2)
