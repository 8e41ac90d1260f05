"""Laws of the current population size: survival, pmf, n-step transitions,
Green kernel, correlation structure, conditional limits, near-critical
scaling, and the continuous-time embedding of the iterate semigroup."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CriticalRegime, InvalidParameters
from .errors import DIVERGENT
from .mechanisms import (
    CRITICAL,
    EPS_CRITICAL,
    SUBCRITICAL,
    LFParams,
    classify,
    fixed_point_rho,
    lf_iterate,
    phi_from_iterate,
)


@dataclass(frozen=True)
class RegimeSurvival:
    """Exact survival probability at generation n with its regime asymptotic."""

    n: float
    value: float
    regime: str
    asymptotic: float


def survival(p: LFParams, n) -> RegimeSurvival:
    """P(extinction time > n) = 1/(a_n + b_n), exact at every n."""
    an, bn = lf_iterate(p, n)
    value = 1.0 / (an + bn)
    regime = classify(p)
    if regime == SUBCRITICAL:
        asym = (1.0 - p.pib / p.pi0) * p.mu**n
    elif regime == CRITICAL:
        asym = (p.pi / p.pib) / n if n > 0 else math.inf
    else:
        # for this family the supercritical "asymptotic" is exact at all n
        rho = fixed_point_rho(p)
        asym = (1.0 - rho) / (1.0 - rho * p.mu ** (-n))
    return RegimeSurvival(n, value, regime, asym)


def mean_current(p: LFParams, n) -> float:
    return p.mu**n


def var_current(p: LFParams, n) -> float:
    an, bn = lf_iterate(p, n)
    return (2.0 * bn + an - 1.0) / an**2


def pmf_current(p: LFParams, n, k: int) -> float:
    """P(N_n = k) for one founder: geometric with an atom at 0."""
    if n < 1 or k < 0:
        raise InvalidParameters("need n >= 1 and k >= 0")
    an, bn = lf_iterate(p, n)
    s = an + bn
    if k == 0:
        return 1.0 - 1.0 / s
    return (an / s**2) * (bn / s) ** (k - 1)


def transition_power(p: LFParams, n, i: int, j: int) -> float:
    """P(N_n = j | N_0 = i): binomially convolved geometric closed form."""
    if i < 1 or j < 0 or n < 1:
        raise InvalidParameters("need i >= 1, j >= 0, n >= 1")
    an, bn = lf_iterate(p, n)
    s = an + bn
    p0 = 1.0 - 1.0 / s  # P(N_n = 0) from one founder
    if j == 0:
        return p0**i
    pbar = bn / s
    ratio = an / (s * bn)  # (one-founder atom) * pi_n / pibar_n
    acc = 0.0
    for k in range(1, min(i, j) + 1):
        acc += (
            math.comb(i, k) * math.comb(j - 1, k - 1) * ratio**k * p0 ** (i - k)
        )
    return pbar**j * acc


def green_kernel(p: LFParams, u: float, i: int, j: int, tol: float = 1e-12):
    """Sum_n u^n P^n(i,j) by term-wise summation.

    Returns the Divergent marker when the terms have not decayed below tol
    within 10^4 summands; at u=1, j=0 the terms tend to a positive constant
    (state 0 is absorbing and almost surely reached off the supercritical
    survival event), so that case is always flagged.
    """
    if not 0.0 <= u <= 1.0:
        raise InvalidParameters("need u in [0, 1]")
    total = 1.0 if i == j else 0.0
    if u == 0.0:
        return total
    prev = math.inf
    for n in range(1, 10_001):
        term = u**n * transition_power(p, n, i, j)
        total += term
        if term < tol and term <= prev:
            return total
        prev = term
    return DIVERGENT


def autocovariance(p: LFParams, n1, n) -> tuple[float, float]:
    """cov(N_{n1}, N_{n1+n}) and the matching correlation, one founder."""
    if n1 <= 0 or n <= 0:
        raise InvalidParameters("need n1 > 0 and n > 0")
    mu = p.mu
    v1 = var_current(p, n1)
    v2 = var_current(p, n1 + n)
    cov = v1 * mu**n
    corr = cov / math.sqrt(v1 * v2)
    return cov, corr


class YaglomLimit:
    """Conditional limit law descriptor for a non-critical mechanism.

    Subcritical: N_n | N_n > 0 converges to a shifted-geometric law; `mean`
    is its geometric parameter b/(a-1) (the tail scale), `conditional_mean`
    the actual expectation 1 + b/(a-1), `kolmogorov` the constant 1/mean,
    and `survival_prefactor` the constant c in P(N_n > 0) ~ c*mu^n.

    Supercritical: N_n/mu^n converges to W with an atom of mass rho_e at 0
    and an exponential component of mean b/(1-a) on the survival event.
    """

    def __init__(self, p: LFParams):
        self.params = p
        regime = classify(p)
        if regime == CRITICAL:
            raise CriticalRegime("no fixed-n limit at criticality; see critical_yaglom")
        self.kind = "geometric" if regime == SUBCRITICAL else "exponential-with-atom"
        if self.kind == "geometric":
            self.mean = p.b / (p.a - 1.0)  # = pib/(pi - pi0b)
            self.kolmogorov = 1.0 / self.mean
            self.conditional_mean = 1.0 + self.mean
            self.survival_prefactor = 1.0 - p.pib / p.pi0
            self.decay = p.pib / p.pi0
            self.atom = None
        else:
            self.mean = p.b / (1.0 - p.a)  # = pib/(pi0b - pi)
            self.atom = fixed_point_rho(p)
            self.kolmogorov = None
            self.conditional_mean = None
            self.survival_prefactor = None
            self.decay = None

    def pgf(self, z: float) -> float:
        """Limit p.g.f. of N_n | N_n > 0 (subcritical only)."""
        if self.kind != "geometric":
            raise InvalidParameters("p.g.f. limit exists in the subcritical case only")
        return z / (1.0 + self.mean * (1.0 - z))

    def lst(self, lam: float) -> float:
        """Laplace transform of the supercritical scaling limit W."""
        if self.kind != "exponential-with-atom":
            raise InvalidParameters("LST limit exists in the supercritical case only")
        return self.atom + (1.0 - self.atom) / (1.0 + self.mean * lam)


def yaglom_limits(p: LFParams) -> YaglomLimit:
    return YaglomLimit(p)


@dataclass(frozen=True)
class CriticalYaglom:
    """At criticality N_n/n | N_n > 0 is asymptotically exponential."""

    kind: str
    mean: float


def critical_yaglom(p: LFParams) -> CriticalYaglom:
    if classify(p) != CRITICAL:
        raise InvalidParameters("critical mechanism required")
    return CriticalYaglom("exponential", p.b)


def finite_size_scaling(p: LFParams, x: float, n: int) -> tuple[float, float]:
    """Survival of the slightly supercritical member mu = 1 + x/n.

    The base must be critical; the family keeps pi fixed and perturbs pi0.
    Returns (n * P(extinction time > n), r(x)) with the scaling limit
    r(x) = (1/sigma_c^2) * 2x e^x/(e^x - 1).
    """
    if classify(p) != CRITICAL:
        raise InvalidParameters("base parameters must be critical")
    if x <= 0.0 or n < 1:
        raise InvalidParameters("need x > 0 and n >= 1")
    mu = 1.0 + x / n
    perturbed = LFParams(1.0 - p.pi * mu, p.pi)
    exact = n * survival(perturbed, n).value
    sigma_c2 = 2.0 * p.pi0 / p.pi
    r = (1.0 / sigma_c2) * 2.0 * x * math.exp(x) / math.expm1(x)
    return exact, r


def embed_continuous_time(p: LFParams, t: float, z: float) -> float:
    """phi_t(z) from the continuous-time embedding; matches the discrete
    iterate at integer t.  Undefined at criticality (a = 1)."""
    if abs(p.a - 1.0) <= EPS_CRITICAL:
        raise CriticalRegime("embedding parameters degenerate at a = 1")
    if t < 0.0:
        raise InvalidParameters("t >= 0")
    A = -math.log(p.a)
    B = -2.0 * p.b * math.log(p.a) / (1.0 - p.a)
    at = math.exp(-A * t)
    bt = (B / (2.0 * A)) * -math.expm1(-A * t)
    return phi_from_iterate(at, bt, z)


def conditional_pmf_current(p: LFParams, n, k: int) -> float:
    """P(N_n = k | N_n > 0) for k >= 1."""
    if k < 1:
        raise InvalidParameters("k >= 1")
    return pmf_current(p, n, k) / survival(p, n).value
