"""Moment functions for centered Levy processes and centered subordinators.

A centered square-integrable Levy process enters through its Gaussian
variance sigma^2, jump variance kappa^2, and the moments of the
jump-size-biased variable U; the indicator-mixing construction
T = U 1{V < kappa^2/(sigma^2+kappa^2)} reduces both parts to a single
moment sequence.  A centered subordinator enters through tau^2 and the
moments of the size-biased jump T*.  Every moment of the process is a
polynomial in 1/t with nonnegative coefficients built from beta(2)-
weighted sums, which is what the complete-monotonicity check certifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .randomvars import MomentSeq, normal_even_moment
from .stirling import weighted_sum_moment


@dataclass(frozen=True)
class LevySpec:
    """Centered Levy process Y(t) parameterized by (sigma^2, kappa^2, U-moments)."""

    sigma2: Fraction
    kappa2: Fraction
    u_moments: MomentSeq

    def __post_init__(self):
        object.__setattr__(self, "sigma2", Fraction(self.sigma2))
        object.__setattr__(self, "kappa2", Fraction(self.kappa2))
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be nonnegative")
        if self.kappa2 <= 0:
            raise ValueError("kappa2 must be positive")
        if not self.u_moments.is_real:
            raise ValueError("U must be real-valued")


@dataclass(frozen=True)
class SubordinatorSpec:
    """Centered subordinator X(t) parameterized by (tau^2, T*-moments)."""

    tau2: Fraction
    tstar_moments: MomentSeq

    def __post_init__(self):
        object.__setattr__(self, "tau2", Fraction(self.tau2))
        if self.tau2 < 0:
            raise ValueError("tau2 must be nonnegative")
        if not self.tstar_moments.is_real:
            raise ValueError("T* must be real-valued")
        if any(v.re < 0 for v in self.tstar_moments.mu):
            raise ValueError("T* moments must be nonnegative")


def tstar_moments(spec: LevySpec, order: int) -> MomentSeq:
    """Moments of T = U 1{V < w} with mixing weight w = kappa^2/(sigma^2+kappa^2).

    E T^k = w E U^k for k >= 1 and E T^0 = 1.
    """
    if order > spec.u_moments.order:
        raise ValueError("U moments do not reach the requested order")
    w = spec.kappa2 / (spec.sigma2 + spec.kappa2)
    mu = [Fraction(1)] + [w * spec.u_moments[k].as_fraction() for k in range(1, order + 1)]
    return MomentSeq(tuple(mu))


def _moment_coefficients(var2: Fraction, tm: MomentSeq, j: int) -> list:
    # coefficient of t^{-(floor(j/2)-m)} for m = 0..floor(j/2); the m=0
    # entry vanishes for j >= 1 since W_0 = 0
    half = j // 2
    out = []
    for m in range(half + 1):
        w_mom = weighted_sum_moment(tm, 2, m, j - 2 * m).as_fraction()
        out.append(comb(j, 2 * m) * var2**m * normal_even_moment(2 * m) * w_mom)
    return out


def _needed_tail_order(j: int) -> int:
    return max(0, j - 2)


def cm_coefficients(spec, j: int) -> list:
    """Coefficients of the 1/t-polynomial t^{floor(j/2)-m}, m = 1..floor(j/2).

    Nonnegativity of every entry certifies complete monotonicity of the
    moment function.  Levy specs are restricted to even j: odd powers of
    a signed T can carry odd weighted-sum moments of unknown sign.
    """
    if isinstance(spec, LevySpec):
        if j % 2 == 1:
            raise ValueError("complete-monotonicity check applies to even j only")
        tm = tstar_moments(spec, _needed_tail_order(j))
        var2 = spec.sigma2 + spec.kappa2
    elif isinstance(spec, SubordinatorSpec):
        tm = _truncate(spec.tstar_moments, _needed_tail_order(j))
        var2 = spec.tau2
    else:
        raise TypeError("spec must be a LevySpec or SubordinatorSpec")
    return _moment_coefficients(var2, tm, j)[1:]


def _truncate(m: MomentSeq, order: int) -> MomentSeq:
    if order > m.order:
        raise ValueError("moment sequence does not reach the requested order")
    return MomentSeq(m.mu[: order + 1])


def _eval_poly(coeffs: list, j: int, t):
    half = j // 2
    if isinstance(t, float):
        return sum(float(c) * t ** (m - half) for m, c in enumerate(coeffs))
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    return sum(c * t ** (m - half) for m, c in enumerate(coeffs))


def levy_moment_g(spec: LevySpec, j: int, t):
    """g_j(t) = E Y(t)^j / t^{floor(j/2)}, exact for rational t."""
    tm = tstar_moments(spec, _needed_tail_order(j))
    coeffs = _moment_coefficients(spec.sigma2 + spec.kappa2, tm, j)
    return _eval_poly(coeffs, j, t)


def subordinator_moment_h(spec: SubordinatorSpec, j: int, t):
    """h_j(t) = E (X(t)-t)^j / t^{floor(j/2)}, exact for rational t."""
    tm = _truncate(spec.tstar_moments, _needed_tail_order(j))
    coeffs = _moment_coefficients(spec.tau2, tm, j)
    return _eval_poly(coeffs, j, t)


def levy_process_moments(spec: LevySpec, order: int, t: Fraction) -> MomentSeq:
    """Moment sequence of Y(t) at fixed rational t, from the g functions."""
    t = Fraction(t)
    mu = [levy_moment_g(spec, j, t) * t ** (j // 2) for j in range(order + 1)]
    return MomentSeq(tuple(mu))


def centered_subordinator_moments(spec: SubordinatorSpec, order: int, t: Fraction) -> MomentSeq:
    """Moment sequence of X(t) - t at fixed rational t, from the h functions."""
    t = Fraction(t)
    mu = [subordinator_moment_h(spec, j, t) * t ** (j // 2) for j in range(order + 1)]
    return MomentSeq(tuple(mu))


def levy_cumulant(spec: LevySpec, j: int, t):
    """kappa_j(Y(t)) = t (sigma^2+kappa^2) E T^{j-2} for j >= 2."""
    if j < 2:
        raise ValueError("the cumulant formula applies for j >= 2")
    tm = tstar_moments(spec, j - 2)
    value = (spec.sigma2 + spec.kappa2) * tm[j - 2].as_fraction()
    if isinstance(t, float):
        return float(value) * t
    return value * Fraction(t)


# --- named processes and JSON wire format -----------------------------------


def compensated_unit_jump(order: int) -> LevySpec:
    """Unit jumps compensated to zero mean: sigma^2 = 0, kappa^2 = 1, U = 1."""
    return LevySpec(0, 1, MomentSeq((Fraction(1),) * (order + 1)))


def gaussian_part_only(order: int, sigma2=1, kappa2=1) -> LevySpec:
    """U = 0: only the Gaussian part contributes beyond the variance."""
    mu = (Fraction(1),) + (Fraction(0),) * order
    return LevySpec(sigma2, kappa2, MomentSeq(mu))


def poisson_subordinator(order: int) -> SubordinatorSpec:
    """Standard Poisson process: T = T* = 1, tau^2 = 1."""
    return SubordinatorSpec(1, MomentSeq((Fraction(1),) * (order + 1)))


def gamma_subordinator(order: int) -> SubordinatorSpec:
    """Gamma process: T* has density theta e^{-theta}, so E T*^k = (k+1)!."""
    from math import factorial

    mu = tuple(Fraction(factorial(k + 1)) for k in range(order + 1))
    return SubordinatorSpec(1, MomentSeq(mu))


def process_to_json(spec) -> dict:
    if isinstance(spec, LevySpec):
        return {
            "sigma2": str(spec.sigma2),
            "kappa2": str(spec.kappa2),
            "u_moments": [str(v.re) for v in spec.u_moments.mu],
        }
    if isinstance(spec, SubordinatorSpec):
        return {
            "tau2": str(spec.tau2),
            "tstar_moments": [str(v.re) for v in spec.tstar_moments.mu],
        }
    raise TypeError("spec must be a LevySpec or SubordinatorSpec")


def process_from_json(data: dict):
    """Parse a process spec; the key set picks the process family."""
    if "u_moments" in data:
        return LevySpec(
            Fraction(data["sigma2"]),
            Fraction(data["kappa2"]),
            MomentSeq(tuple(Fraction(v) for v in data["u_moments"])),
        )
    if "tstar_moments" in data:
        return SubordinatorSpec(
            Fraction(data["tau2"]),
            MomentSeq(tuple(Fraction(v) for v in data["tstar_moments"])),
        )
    raise ValueError("process spec needs u_moments or tstar_moments")
