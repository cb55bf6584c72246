"""Moments of i.i.d. partial sums and cumulants, by independent routes.

E S_n^j collapses to a finite sum over the Stirling table with at most
floor(j/(r+1)) + 1 terms when the first r moments of Y vanish; a finite
recursion expresses E S_n^j for large n through the values at n < tau.
Cumulants come from the table, from an alternating binomial over sum
moments, and from the series logarithm, and all three must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .powerseries import QC, egf_log, egf_pow
from .randomvars import MomentSeq, vanishing_order
from .stirling import psn_egf_cached


def falling(n: int, m: int) -> int:
    """Descending factorial (n)_m = n(n-1)...(n-m+1)."""
    out = 1
    for i in range(m):
        out *= n - i
    return out


@dataclass(frozen=True)
class SumMomentReport:
    n: int
    j: int
    value: QC
    route: str


@dataclass(frozen=True)
class CumulantSeq:
    """Cumulants kappa_1..kappa_J; kappa[i] is kappa_{i+1}."""

    kappa: tuple

    @property
    def order(self) -> int:
        return len(self.kappa)


def _resolve_r(m: MomentSeq, r) -> int:
    v = vanishing_order(m)
    if r is None:
        return v
    if r > v:
        raise ValueError(f"requested r={r} exceeds the vanishing order {v}")
    return r


def sum_moment(m: MomentSeq, n: int, j: int, r=None) -> QC:
    """E S_n^j = sum_{m <= n ^ tau} S_Y(j,m) (n)_m with tau = floor(j/(r+1)).

    r defaults to the vanishing order of the sequence (tightest tau); any
    smaller r is also valid and accepted for testing.
    """
    if j > m.order:
        raise ValueError("j exceeds the available moment order")
    if n < 0:
        raise ValueError("n must be nonnegative")
    r = _resolve_r(m, r)
    tau = j // (r + 1)
    table = psn_egf_cached(m)
    acc = QC(0)
    for mm in range(min(n, tau) + 1):
        acc = acc + falling(n, mm) * table.entry(j, mm)
    return acc


def sum_moment_egf(m: MomentSeq, n: int, j: int) -> QC:
    """Oracle route: coefficient j of the n-th MGF power."""
    if j > m.order:
        raise ValueError("j exceeds the available moment order")
    return egf_pow(m.to_egf(), n)[j]


def sum_moment_recursion(m: MomentSeq, n: int, j: int, r=None) -> QC:
    """E S_n^j for n >= tau from the moments at k < tau and S_Y(j,tau).

    Evaluates (n)_tau * [ S_Y(j,tau)
        + (1/(tau-1)!) sum_{k<tau} C(tau-1,k) (-1)^{tau-k-1}/(n-k) E S_k^j ].
    """
    r = _resolve_r(m, r)
    tau = j // (r + 1)
    if tau < 1:
        raise ValueError("recursion needs tau >= 1, i.e. j >= r + 1")
    if n < tau:
        raise ValueError(f"recursion needs n >= tau = {tau}")
    table = psn_egf_cached(m)
    acc = QC.of(table.entry(j, tau))
    for k in range(tau):
        sign = -1 if (tau - k - 1) % 2 else 1
        coeff = Fraction(sign * comb(tau - 1, k), (n - k) * factorial(tau - 1))
        acc = acc + coeff * sum_moment_egf(m, k, j)
    return falling(n, tau) * acc


def sum_moment_report(m: MomentSeq, n: int, j: int, route: str = "stirling") -> SumMomentReport:
    if route == "stirling":
        value = sum_moment(m, n, j)
    elif route == "recursion":
        value = sum_moment_recursion(m, n, j)
    elif route == "egf-oracle":
        value = sum_moment_egf(m, n, j)
    else:
        raise ValueError(f"unknown route {route!r}")
    return SumMomentReport(n, j, value, route)


def even_moment_sequence(m: MomentSeq, j: int, n_max: int):
    """The non-increasing sequence E S_n^{2j}/(n)_j for n = j..n_max, plus its limit.

    Requires a real centered sequence; the limit is the 2j-th moment of a
    centered normal with the same variance, sigma^{2j} (2j)!/(j! 2^j).
    """
    if not m.is_real:
        raise ValueError("even-moment sequence needs real moments")
    if vanishing_order(m) < 1:
        raise ValueError("even-moment sequence needs a centered distribution")
    if 2 * j > m.order:
        raise ValueError("2j exceeds the available moment order")
    sigma2 = m.mu[2].as_fraction()
    values = [
        sum_moment(m, n, 2 * j).as_fraction() / falling(n, j)
        for n in range(j, n_max + 1)
    ]
    limit = sigma2**j * Fraction(factorial(2 * j), factorial(j) * 2**j)
    return values, limit


def cumulants_from_stirling(m: MomentSeq) -> CumulantSeq:
    """kappa_j = sum_m (-1)^{m-1} (m-1)! S_Y(j,m) over the table."""
    table = psn_egf_cached(m)
    kappa = []
    for j in range(1, m.order + 1):
        acc = QC(0)
        for mm in range(1, j + 1):
            sign = -1 if (mm - 1) % 2 else 1
            acc = acc + (sign * factorial(mm - 1)) * table.entry(j, mm)
        kappa.append(acc)
    return CumulantSeq(tuple(kappa))


def cumulants_from_sum_moments(m: MomentSeq) -> CumulantSeq:
    """kappa_j = sum_k C(j,k) (-1)^{k-1}/k * E S_k^j, the binomial route."""
    pows = [egf_pow(m.to_egf(), k) for k in range(m.order + 1)]
    kappa = []
    for j in range(1, m.order + 1):
        acc = QC(0)
        for k in range(1, j + 1):
            sign = -1 if (k - 1) % 2 else 1
            acc = acc + Fraction(sign * comb(j, k), k) * pows[k][j]
        kappa.append(acc)
    return CumulantSeq(tuple(kappa))


def cumulants_oracle(m: MomentSeq) -> CumulantSeq:
    """Reference route: coefficients of the series logarithm of the MGF."""
    log_series = egf_log(m.to_egf())
    return CumulantSeq(tuple(log_series[j] for j in range(1, m.order + 1)))
