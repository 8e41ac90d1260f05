"""Doob-transform conditionings of the LF process and the frequency spectrum.

Four changes of measure, each mapping the LF family into itself or into an
explicit neighbor: conditioning on almost-sure extinction, on immortality,
on staying alive forever (the Q-process), and forcing criticality by an
exponential tilt at the tangency point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AlreadyCritical,
    InvalidParameters,
    NoRoot,
    NotSupercritical,
)
from .mechanisms import (
    CRITICAL,
    EPS_CRITICAL,
    SUPERCRITICAL,
    Geo1,
    LFParams,
    LinearFractional,
    classify,
    fixed_point_rho,
    fixed_point_tau,
    phi_n_eval,
)
from .population import transition_power


def _require_supercritical(p: LFParams):
    if classify(p) != SUPERCRITICAL:
        raise NotSupercritical("transform needs mu > 1")


def harris_sevastyanov(p: LFParams) -> LFParams:
    """Mechanism of the process conditioned on eventual extinction.

    Stays linear-fractional with the roles of the two tail parameters
    swapped; the new mean is phi'(rho_e) < 1.
    """
    _require_supercritical(p)
    return LFParams(p.pib, p.pi0b)


def hs_iterate_identity(p: LFParams, n, z: float) -> tuple[float, float]:
    """Both sides of the conjugation phi0~_n(z) = phi_n(rho_e z)/rho_e."""
    rho = fixed_point_rho(p)
    lhs = phi_n_eval(harris_sevastyanov(p), n, z)
    rhs = phi_n_eval(p, n, rho * z) / rho
    return lhs, rhs


def condition_immortal(p: LFParams) -> Geo1:
    """Mechanism of the tree of immortal individuals: every individual is
    productive, with a shifted-geometric offspring count of mean mu-ish
    success pi/pi0b."""
    _require_supercritical(p)
    return Geo1(p.pi / p.pi0b)


def immortal_iterate_identity(p: LFParams, n: int, z: float) -> tuple[float, float]:
    """Both sides of phi_inf~^n(z) = [phi_n(rho_e + (1-rho_e)z) - rho_e]/(1-rho_e).

    The left side uses the closed n-iterate of the shifted geometric:
    Geo1(s) iterated n times is Geo1(s^n).
    """
    rho = fixed_point_rho(p)
    s = p.pi / p.pi0b
    sn = s**n
    lhs = sn * z / (1.0 - (1.0 - sn) * z)
    rhs = (phi_n_eval(p, n, rho + (1.0 - rho) * z) - rho) / (1.0 - rho)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Q-process


@dataclass(frozen=True)
class QInvariant:
    """Invariant law of the Q-process.

    The printed closed-form family K*[(rho_e/a)^i - rho_e^i] indexed by an
    inner parameter a in (rho_e, 1) collapses: the scalar equation pinning
    a has no interior root (the bracket scan below reports any sign changes
    it does find), and the actual invariant law is the a->1 endpoint of the
    family, the size-biased geometric i * rho_e^(i-1) * (1-rho_e)^2.  That
    law is exactly stationary: the column sums of the killed transition
    matrix are constantly gamma for this family, so the left eigenvector
    has constant entries and v(z) = (pi0b/pi0) z/(1-z) solves the Abel
    equation with v(pi0)=1, v(0)=0, v(rho_e)=1/(1-gamma).
    """

    aQ: float
    m: float
    K: float
    decay: float
    degenerate: bool
    sign_changes: tuple
    rho_e: float

    def pmf(self, i: int) -> float:
        if i < 1:
            return 0.0
        if self.degenerate:
            return i * self.rho_e ** (i - 1) * (1.0 - self.rho_e) ** 2
        return self.K * ((self.rho_e / self.aQ) ** i - self.rho_e**i)


def _q_scalar_equation(p: LFParams, a: float) -> float:
    """Residual of the pinned-value condition v(rho_e) = 1/(1-gamma) for the
    printed log-form candidate, reduced to one scalar unknown."""
    rho = fixed_point_rho(p)
    gamma = p.pi / p.pi0b
    m = a * p.pi0b / (a - p.pi0)
    return p.pi0b * (a - rho) * m ** (gamma / (1.0 - gamma)) - (1.0 - rho) * (
        a - p.pi0
    )


def q_invariant(p: LFParams) -> QInvariant:
    _require_supercritical(p)
    rho = fixed_point_rho(p)
    delta = 1e-9
    lo = max(rho, p.pi0) + delta
    hi = 1.0 - delta
    if not lo < hi:
        raise NoRoot(f"empty bracket for pi0={p.pi0}, pi={p.pi}")
    # audit scan: the printed family's pinning equation, all sign changes
    grid = 2000
    changes = []
    prev_a = lo
    prev_f = _q_scalar_equation(p, lo)
    for k in range(1, grid + 1):
        a = lo + (hi - lo) * k / grid
        f = _q_scalar_equation(p, a)
        if prev_f == 0.0 or prev_f * f < 0.0:
            aa, bb = prev_a, a
            for _ in range(80):
                mid = 0.5 * (aa + bb)
                if _q_scalar_equation(p, aa) * _q_scalar_equation(p, mid) <= 0.0:
                    bb = mid
                else:
                    aa = mid
            changes.append(0.5 * (aa + bb))
        prev_a, prev_f = a, f
    # the invariant law itself is the endpoint limit of the printed family
    return QInvariant(
        aQ=1.0,
        m=1.0,
        K=(1.0 - rho) ** 2,  # pmf_i = K * i * rho_e^(i-1)
        decay=rho,
        degenerate=True,
        sign_changes=tuple(changes),
        rho_e=rho,
    )


def q_process(p: LFParams):
    """Mechanism p.g.f. of the process conditioned to survive forever, plus
    its invariant law."""
    _require_supercritical(p)
    pi0, pi0b = p.pi0, p.pi0b

    def pgf(z: float) -> float:
        return z * (pi0b / (1.0 - pi0 * z)) ** 2

    return pgf, q_invariant(p)


def q_mean(p: LFParams) -> float:
    _require_supercritical(p)
    return 1.0 + 2.0 * p.pi0 / p.pi0b


def q_transition(p: LFParams, i: int, j: int) -> float:
    """One-step transition of the Q-process: the size-harmonic h-transform
    of the killed chain, h(i) = i*rho_e^(i-1)."""
    _require_supercritical(p)
    if i < 1 or j < 1:
        raise InvalidParameters("Q-process lives on {1,2,...}")
    rho = fixed_point_rho(p)
    gamma = p.pi / p.pi0b
    return rho ** (j - i) * (j / (i * gamma)) * transition_power(p, 1, i, j)


def abel_v(p: LFParams, z: float) -> float:
    """Generating function of the constant left eigenvector of the killed
    chain, normalized so v(pi0) = 1; solves v(phi(z)) - 1 = gamma v(z)."""
    _require_supercritical(p)
    if not -1.0 < z < 1.0:
        raise InvalidParameters("need |z| < 1")
    return (p.pi0b / p.pi0) * z / (1.0 - z)


def size_biased_pgf(p: LFParams, z: float) -> float:
    """p.g.f. z*phi'(z)/phi'(rho_e) of the size-biased offspring count."""
    mech = LinearFractional(p.pi0, p.pi)
    gamma = p.pi / p.pi0b
    return z * mech.pgf_derivative(z, 1) / gamma


# ---------------------------------------------------------------------------
# forced criticality


def force_critical(p: LFParams) -> LFParams:
    """Exponential tilt phi(tau z)/phi(tau) at the tangency point; the
    result is linear-fractional with mean exactly 1."""
    if classify(p) == CRITICAL:
        raise AlreadyCritical("mechanism already has mean 1")
    tau = fixed_point_tau(p)
    mech = LinearFractional(p.pi0, p.pi)
    phi_tau = mech.pgf(tau)
    return LFParams(p.pi0 / phi_tau, 1.0 - p.pib * tau)


def forced_critical_variance(p: LFParams) -> float:
    """Variance tau^2 phi''(tau)/phi(tau) of the tilted critical mechanism."""
    if classify(p) == CRITICAL:
        raise AlreadyCritical("mechanism already has mean 1")
    tau = fixed_point_tau(p)
    mech = LinearFractional(p.pi0, p.pi)
    return tau**2 * mech.pgf_derivative(tau, 2) / mech.pgf(tau)


# ---------------------------------------------------------------------------
# frequency spectrum


def frequency_spectrum(p: LFParams, i: int) -> float:
    """Asymptotic occupation weight of state i; not summable in i."""
    if i < 1:
        raise InvalidParameters("i >= 1")
    regime = classify(p)
    if regime == CRITICAL:
        return p.pi / p.pib
    rho = fixed_point_rho(p)
    mu = p.mu
    if regime == SUPERCRITICAL:
        return (rho ** (-i) - 1.0) / (i * math.log(mu))
    return (1.0 - rho ** (-i)) / (i * math.log(1.0 / mu))


def spectrum_gf(p: LFParams, z: float) -> float:
    """Closed log form of sum_i spectrum_i z^i; solves the shift equation
    g(phi(z)) = g(z) + 1 below the relevant fixed point."""
    regime = classify(p)
    if regime == CRITICAL:
        raise InvalidParameters("critical spectrum has no log closed form")
    rho = fixed_point_rho(p)
    mu = p.mu
    if regime == SUPERCRITICAL:
        if not 0.0 <= z < rho:
            raise InvalidParameters("need z in [0, rho_e)")
        return math.log((1.0 - z) / (1.0 - z / rho)) / math.log(mu)
    if not 0.0 <= z < 1.0:
        raise InvalidParameters("need z in [0, 1)")
    return math.log((1.0 - z / rho) / (1.0 - z)) / math.log(1.0 / mu)
