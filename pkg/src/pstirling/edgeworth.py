"""Explicit Edgeworth expansions driven by the Stirling table of Y + iZ.

For a standardized Y whose first r moments match the standard normal,
the distribution function of S_n/sqrt(n) expands as G(y) minus g(y)
times a series in n^{-1/2} whose coefficients are exact rationals: the
table entries of the complexified variable Y + iZ divided by j!, times
the exact factor (n)_m/n^m, times Hermite values.  Floats enter only
through g(y), H(y) and the half-integer powers of n.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .moments import falling
from .powerseries import QC, DomainError
from .randomvars import DistSpec, MomentSeq, hat_transform, moments_of, vanishing_order
from .stirling import StirlingTable, psn_egf


class LatticeWarning(UserWarning):
    """The expansion was evaluated for a lattice distribution.

    The expansion's validity needs an integrable characteristic function,
    which moment data cannot certify; results are produced anyway.
    """


def hermite_eval(n: int, y: float) -> float:
    """Probabilists' Hermite H_n(y) via H_{k+1} = y H_k - k H_{k-1}."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return 1.0
    prev, cur = 1.0, float(y)
    for k in range(1, n):
        prev, cur = cur, y * cur - k * prev
    return cur


def normal_pdf(y: float) -> float:
    return math.exp(-0.5 * y * y) / math.sqrt(2.0 * math.pi)


def normal_cdf(y: float) -> float:
    # erfc form keeps full accuracy in the left tail
    return 0.5 * math.erfc(-y / math.sqrt(2.0))


def delta_set(r: int, n: int, k: int) -> list:
    """Index pairs (m, j): 1 <= m <= n, j = 2m + k, j >= m(r+1).

    Equivalently m runs to min(n, floor(k/(r-1))); empty for k < r - 1.
    """
    if r < 2:
        raise ValueError("matching order r must be at least 2")
    if k < r - 1:
        return []
    return [(m, 2 * m + k) for m in range(1, min(n, k // (r - 1)) + 1)]


@dataclass(frozen=True)
class EdgeworthModel:
    """Expansion state: matching order r, hat table, truncation K, moment order J."""

    r: int
    hat_table: StirlingTable
    K: int
    J: int
    lattice: bool = False

    def __post_init__(self):
        if self.r < 2:
            raise DomainError("expansion needs matching order r >= 2")
        if not self.hat_table.is_real:
            raise DomainError("hat table must be real")
        for j in range(self.hat_table.order + 1):
            for m in range(j + 1):
                if j < m * (self.r + 1) and self.hat_table.entry(j, m) != 0:
                    raise DomainError("hat table violates the vanishing structure")
        max_m = self.K // (self.r - 1)
        if 2 * max_m + self.K > self.J:
            raise DomainError(
                f"truncation K={self.K} needs moment order >= {2 * max_m + self.K}"
            )


def edgeworth_model(source, K: int, order: int | None = None) -> EdgeworthModel:
    """Build the expansion model from a spec or a standardized moment sequence.

    The source must have mean 0 and variance 1; the matching order is
    read off the hat-transformed sequence.  ``order`` controls how many
    moments are consumed (default 3K, always enough for K terms).
    """
    lattice = False
    if isinstance(source, DistSpec):
        J = order if order is not None else max(3 * K, 4)
        mom = moments_of(source, J)
        lattice = source.lattice
    else:
        mom = source
        if order is not None and order != mom.order:
            raise ValueError("order conflicts with the supplied sequence")
        J = mom.order
    if mom.order < 2 or mom.mu[1] != 0 or mom.mu[2] != 1:
        raise DomainError("expansion needs a standardized source (mean 0, variance 1)")
    hat = hat_transform(mom)
    r = vanishing_order(hat)
    if r < 2:
        raise DomainError("source does not match the normal through order 2")
    return EdgeworthModel(r=r, hat_table=psn_egf(hat), K=K, J=J, lattice=lattice)


def edgeworth_term(model: EdgeworthModel, k: int, n: int, y: float) -> float:
    """The order-n^{-k/2} correction term at y.

    -g(y) n^{-k/2} sum_{(m,j)} S(j,m)/j! * (n)_m/n^m * H_{j-1}(y), with the
    rational factor computed exactly before the single float conversion.
    """
    if not model.r - 1 <= k <= model.K:
        raise ValueError(f"k must lie in [{model.r - 1}, {model.K}]")
    total = 0.0
    for m, j in delta_set(model.r, n, k):
        entry = model.hat_table.entry(j, m).as_fraction()
        if entry == 0:
            continue
        coeff = entry / factorial(j) * Fraction(falling(n, m), n**m)
        total += float(coeff) * hermite_eval(j - 1, y)
    return -normal_pdf(y) * float(n) ** (-k / 2.0) * total


def edgeworth_cdf(model: EdgeworthModel, n: int, y: float) -> float:
    """G(y) plus all correction terms k = r-1 .. K."""
    if model.lattice:
        warnings.warn(
            "expansion evaluated for a lattice distribution; the integrable-"
            "characteristic-function hypothesis cannot hold",
            LatticeWarning,
            stacklevel=2,
        )
    total = normal_cdf(y)
    for k in range(model.r - 1, model.K + 1):
        total += edgeworth_term(model, k, n, y)
    return total


class HatEvenMoment(NamedTuple):
    value: QC
    matched: bool


def hat_even_moment(m: MomentSeq, s: int) -> HatEvenMoment:
    """E (Y+iZ)^{2s} by direct binomial expansion.

    When the hat sequence vanishes through order 2s-1 (``matched``), the
    value equals E Y^{2s} - E Z^{2s}; otherwise the computed value is
    returned with the flag lowered.
    """
    if 2 * s > m.order:
        raise ValueError("2s exceeds the available moment order")
    hat = hat_transform(m)
    return HatEvenMoment(hat[2 * s], vanishing_order(hat) >= 2 * s - 1)
