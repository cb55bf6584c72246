"""Distribution catalog as truncated moment sequences, plus transforms.

Every distribution is represented only by its moments E Y^k up to a
truncation order; all catalog moments are exact rationals.  The module
also provides the x^2-biased (tilde) transform, the Y+iZ (hat) transform
against an independent standard normal, vanishing-order classification,
beta(r) moments, and seeded samplers for the Monte Carlo oracle.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .powerseries import EXACT, QC, DomainError, EGFSeries

SQRT3 = math.sqrt(3.0)

POINT_MASS = "pointmass"
RADEMACHER = "rademacher"
BERNOULLI = "bernoulli"
UNIFORM_STD = "uniformstd"
POISSON = "poisson"
EXPONENTIAL = "exponential"
GAMMA_SHAPE = "gamma"
NORMAL = "normal"
CUSTOM = "custom"

_LATTICE_KINDS = frozenset({POINT_MASS, RADEMACHER, BERNOULLI, POISSON})
_SYMMETRIC_KINDS = frozenset({RADEMACHER, UNIFORM_STD, NORMAL})


class UnsupportedSpecError(ValueError):
    """Requested operation is not available for this distribution spec."""


@dataclass(frozen=True)
class MomentSeq:
    """Truncated moment sequence mu_k = E Y^k, k = 0..J, with mu_0 = 1."""

    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(QC.of(v) for v in self.mu))
        if len(self.mu) == 0 or self.mu[0] != 1:
            raise DomainError("moment sequence must start with mu_0 = 1")

    @property
    def order(self) -> int:
        return len(self.mu) - 1

    @property
    def is_real(self) -> bool:
        return all(m.is_real for m in self.mu)

    def __getitem__(self, k: int) -> QC:
        return self.mu[k]

    def to_egf(self) -> EGFSeries:
        return EGFSeries(self.mu, EXACT)


@dataclass(frozen=True)
class DistSpec:
    """Catalog distribution: a variant tag plus at most one rational parameter.

    ``param`` holds c for point masses, p for Bernoulli, lambda for
    Poisson, the shape for gamma, and the variance for normal.  Custom
    specs carry an explicit moment list instead.
    """

    kind: str
    param: Optional[Fraction] = None
    custom_moments: Optional[tuple] = None

    def __post_init__(self):
        if self.param is not None:
            object.__setattr__(self, "param", Fraction(self.param))
        if self.kind in {POINT_MASS, BERNOULLI, POISSON, GAMMA_SHAPE, NORMAL}:
            if self.param is None:
                raise ValueError(f"{self.kind} spec needs its parameter")
        if self.kind == BERNOULLI and not 0 <= self.param <= 1:
            raise ValueError("bernoulli parameter must satisfy 0 <= p <= 1")
        if self.kind == POISSON and self.param <= 0:
            raise ValueError("poisson rate must be positive")
        if self.kind == GAMMA_SHAPE and self.param <= 0:
            raise ValueError("gamma shape must be positive")
        if self.kind == NORMAL and self.param < 0:
            raise ValueError("normal variance must be nonnegative")
        if self.kind == CUSTOM:
            if self.custom_moments is None:
                raise ValueError("custom spec needs a moment list")
            object.__setattr__(
                self, "custom_moments", tuple(QC.of(v) for v in self.custom_moments)
            )
            if self.custom_moments[0] != 1:
                raise ValueError("custom moments must start with mu_0 = 1")
        elif self.kind not in {
            POINT_MASS, RADEMACHER, BERNOULLI, UNIFORM_STD,
            POISSON, EXPONENTIAL, GAMMA_SHAPE, NORMAL,
        }:
            raise ValueError(f"unknown distribution kind {self.kind!r}")

    @property
    def lattice(self) -> bool:
        return self.kind in _LATTICE_KINDS

    @property
    def symmetric(self) -> bool:
        if self.kind == POINT_MASS:
            return self.param == 0
        return self.kind in _SYMMETRIC_KINDS


def point_mass(c) -> DistSpec:
    return DistSpec(POINT_MASS, Fraction(c))


def rademacher() -> DistSpec:
    return DistSpec(RADEMACHER)


def bernoulli(p) -> DistSpec:
    return DistSpec(BERNOULLI, Fraction(p))


def uniform_std() -> DistSpec:
    """Uniform on [-sqrt(3), sqrt(3)]: variance 1, all moments rational."""
    return DistSpec(UNIFORM_STD)


def poisson(lam) -> DistSpec:
    return DistSpec(POISSON, Fraction(lam))


def exponential() -> DistSpec:
    return DistSpec(EXPONENTIAL)


def gamma_shape(a) -> DistSpec:
    return DistSpec(GAMMA_SHAPE, Fraction(a))


def normal(sigma2=1) -> DistSpec:
    return DistSpec(NORMAL, Fraction(sigma2))


def custom(moments) -> DistSpec:
    return DistSpec(CUSTOM, custom_moments=tuple(moments))


def normal_even_moment(l: int) -> Fraction:
    """E Z^l for standard normal Z: (2m)!/(m! 2^m) at l = 2m, 0 for odd l."""
    if l % 2 == 1:
        return Fraction(0)
    m = l // 2
    return Fraction(factorial(2 * m), factorial(m) * 2**m)


def moments_of(spec: DistSpec, order: int) -> MomentSeq:
    """Exact rational moments mu_0..mu_J for a catalog spec."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    k_range = range(order + 1)
    if spec.kind == POINT_MASS:
        mu = [spec.param**k for k in k_range]
    elif spec.kind == RADEMACHER:
        mu = [Fraction(1 - k % 2) for k in k_range]
    elif spec.kind == BERNOULLI:
        mu = [Fraction(1)] + [spec.param] * order
    elif spec.kind == UNIFORM_STD:
        mu = [
            Fraction(3 ** (k // 2), k + 1) if k % 2 == 0 else Fraction(0)
            for k in k_range
        ]
    elif spec.kind == POISSON:
        # Touchard recurrence: mu_{n+1} = lambda * sum_k C(n,k) mu_k.
        mu = [Fraction(1)]
        for n in range(order):
            mu.append(spec.param * sum(comb(n, k) * mu[k] for k in range(n + 1)))
    elif spec.kind == EXPONENTIAL:
        mu = [Fraction(factorial(k)) for k in k_range]
    elif spec.kind == GAMMA_SHAPE:
        mu = [Fraction(1)]
        for k in range(order):
            mu.append(mu[-1] * (spec.param + k))
    elif spec.kind == NORMAL:
        mu = [
            spec.param ** (k // 2) * normal_even_moment(k) if k % 2 == 0 else Fraction(0)
            for k in k_range
        ]
    elif spec.kind == CUSTOM:
        if order > len(spec.custom_moments) - 1:
            raise ValueError("custom spec does not carry that many moments")
        return MomentSeq(spec.custom_moments[: order + 1])
    else:  # pragma: no cover - ruled out at construction
        raise ValueError(f"unknown distribution kind {spec.kind!r}")
    return MomentSeq(tuple(mu))


def abs_moments_of(spec: DistSpec, order: int) -> MomentSeq:
    """E |Y|^k where these are exact rationals; raises otherwise.

    Nonnegative catalog variants reuse their plain moments; point masses
    and Rademacher take absolute parameter values.  The standardized
    uniform and the normal have irrational odd absolute moments, and
    custom specs carry no support information.
    """
    if spec.kind in {BERNOULLI, POISSON, EXPONENTIAL, GAMMA_SHAPE}:
        return moments_of(spec, order)
    if spec.kind == POINT_MASS:
        return moments_of(point_mass(abs(spec.param)), order)
    if spec.kind == RADEMACHER:
        return moments_of(point_mass(1), order)
    raise UnsupportedSpecError(
        f"exact absolute moments are unavailable for {spec.kind!r}"
    )


def beta_moments(r: int, order: int) -> MomentSeq:
    """Moments of beta(r) with density r(1-t)^{r-1} on [0,1]; beta(0) = 1.

    E beta(r)^k = k! r!/(k+r)! for r >= 1.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return MomentSeq((Fraction(1),) * (order + 1))
    mu = [Fraction(factorial(k) * factorial(r), factorial(k + r)) for k in range(order + 1)]
    return MomentSeq(tuple(mu))


def tilde_transform(m: MomentSeq) -> MomentSeq:
    """x^2-biased moments nu_k = mu_{k+2}/mu_2, dropping two orders.

    The degenerate mu_2 = 0 case maps to the point mass at 0.
    """
    if not m.is_real:
        raise DomainError("tilde transform is defined for real moment sequences")
    if m.order < 2:
        raise DomainError("tilde transform needs order >= 2")
    mu2 = m.mu[2].as_fraction()
    if mu2 == 0:
        return MomentSeq((Fraction(1),) + (Fraction(0),) * (m.order - 2))
    if mu2 < 0:
        raise DomainError("second moment must be nonnegative")
    return MomentSeq(tuple(m.mu[k + 2] / mu2 for k in range(m.order - 1)))


def hat_transform(m: MomentSeq) -> MomentSeq:
    """Moments of Y + iZ for Z standard normal independent of Y.

    mu_hat_s = sum_k C(s,k) mu_k i^{s-k} E Z^{s-k}; only even normal
    moments survive, so real input yields a real output sequence.
    """
    out = []
    for s in range(m.order + 1):
        acc = QC(0)
        for k in range(s + 1):
            l = s - k
            if l % 2 == 0:
                sign = -1 if (l // 2) % 2 else 1
                acc = acc + (sign * normal_even_moment(l) * comb(s, k)) * m.mu[k]
        out.append(acc)
    return MomentSeq(tuple(out))


def vanishing_order(m: MomentSeq) -> int:
    """Largest r <= J with mu_1 = ... = mu_r = 0 (0 when mu_1 != 0)."""
    r = 0
    while r < m.order and m.mu[r + 1] == 0:
        r += 1
    return r


def standardize_moments(m: MomentSeq) -> MomentSeq:
    """Moments of (Y - mu_1)/sigma, exact; needs sigma rational.

    Raises DomainError when the variance is zero or has no rational
    square root, since the scaled odd moments would leave the rationals.
    """
    if not m.is_real:
        raise DomainError("standardization is defined for real moment sequences")
    mean = m.mu[1].as_fraction()
    centered = []
    for k in range(m.order + 1):
        acc = Fraction(0)
        for i in range(k + 1):
            acc += comb(k, i) * m.mu[i].as_fraction() * (-mean) ** (k - i)
        centered.append(acc)
    var = centered[2] if m.order >= 2 else Fraction(0)
    if var == 0:
        raise DomainError("cannot standardize a degenerate distribution")
    sigma = _rational_sqrt(var)
    if sigma is None:
        raise DomainError("variance has no rational square root")
    return MomentSeq(tuple(c / sigma**k for k, c in enumerate(centered)))


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    ns = math.isqrt(q.numerator)
    ds = math.isqrt(q.denominator)
    if ns * ns == q.numerator and ds * ds == q.denominator:
        return Fraction(ns, ds)
    return None


# --- samplers ---------------------------------------------------------------
#
# All samplers draw from a caller-owned random.Random instance so that a
# fixed seed fixes the entire stream.  The normal sampler is Box-Muller
# on two uniforms; Poisson uses the product method; gamma sums whole
# exponentials and handles a fractional shape by beta rejection.


def _sample_normal(rng: random.Random, sigma: float) -> float:
    u1 = 1.0 - rng.random()
    u2 = rng.random()
    return sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def _sample_poisson(rng: random.Random, lam: float) -> int:
    limit = math.exp(-lam)
    k = 0
    p = rng.random()
    while p > limit:
        k += 1
        p *= rng.random()
    return k


def _sample_gamma(rng: random.Random, shape: Fraction) -> float:
    whole = int(shape)
    frac = float(shape - whole)
    total = 0.0
    for _ in range(whole):
        total += -math.log(1.0 - rng.random())
    if frac > 0.0:
        # Johnk rejection for the fractional shape in (0,1).
        while True:
            x = rng.random() ** (1.0 / frac)
            y = rng.random() ** (1.0 / (1.0 - frac))
            if x + y <= 1.0:
                break
        total += -math.log(1.0 - rng.random()) * x / (x + y)
    return total


def sample_one(spec: DistSpec, rng: random.Random) -> float:
    """One draw of Y for a samplable (non-custom) spec."""
    if spec.kind == POINT_MASS:
        return float(spec.param)
    if spec.kind == RADEMACHER:
        return 1.0 if rng.random() < 0.5 else -1.0
    if spec.kind == BERNOULLI:
        return 1.0 if rng.random() < spec.param else 0.0
    if spec.kind == UNIFORM_STD:
        return SQRT3 * (2.0 * rng.random() - 1.0)
    if spec.kind == POISSON:
        return float(_sample_poisson(rng, float(spec.param)))
    if spec.kind == EXPONENTIAL:
        return -math.log(1.0 - rng.random())
    if spec.kind == GAMMA_SHAPE:
        return _sample_gamma(rng, spec.param)
    if spec.kind == NORMAL:
        return _sample_normal(rng, math.sqrt(float(spec.param)))
    raise UnsupportedSpecError(f"{spec.kind!r} specs cannot be sampled")


def sample_sum(spec: DistSpec, n: int, rng: random.Random) -> float:
    """One draw of S_n = Y_1 + ... + Y_n, deterministic given the rng state."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(sample_one(spec, rng) for _ in range(n))


# --- JSON wire format -------------------------------------------------------


def _fraction_to_str(q: Fraction) -> str:
    return str(q)


def _scalar_to_json(v: QC):
    if v.is_real:
        return _fraction_to_str(v.re)
    return {"re": _fraction_to_str(v.re), "im": _fraction_to_str(v.im)}


def _scalar_from_json(v) -> QC:
    if isinstance(v, dict):
        return QC(Fraction(v["re"]), Fraction(v.get("im", 0)))
    return QC(Fraction(v))


def dist_to_json(spec: DistSpec) -> dict:
    out = {"dist": spec.kind}
    if spec.kind == POINT_MASS:
        out["c"] = _fraction_to_str(spec.param)
    elif spec.kind == BERNOULLI:
        out["p"] = _fraction_to_str(spec.param)
    elif spec.kind == POISSON:
        out["lambda"] = _fraction_to_str(spec.param)
    elif spec.kind == GAMMA_SHAPE:
        out["a"] = _fraction_to_str(spec.param)
    elif spec.kind == NORMAL:
        out["sigma2"] = _fraction_to_str(spec.param)
    elif spec.kind == CUSTOM:
        out["moments"] = [_scalar_to_json(v) for v in spec.custom_moments]
    return out


def dist_from_json(data: dict) -> DistSpec:
    """Parse {"dist": "<name>", ...params}; rationals are "p/q" strings."""
    kind = data.get("dist")
    if kind == POINT_MASS:
        return point_mass(Fraction(data["c"]))
    if kind == RADEMACHER:
        return rademacher()
    if kind == BERNOULLI:
        return bernoulli(Fraction(data["p"]))
    if kind == UNIFORM_STD:
        return uniform_std()
    if kind == POISSON:
        return poisson(Fraction(data["lambda"]))
    if kind == EXPONENTIAL:
        return exponential()
    if kind == GAMMA_SHAPE:
        return gamma_shape(Fraction(data["a"]))
    if kind == NORMAL:
        return normal(Fraction(data.get("sigma2", 1)))
    if kind == CUSTOM:
        return custom(tuple(_scalar_from_json(v) for v in data["moments"]))
    raise ValueError(f"unknown distribution kind {kind!r}")
