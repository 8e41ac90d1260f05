"""Offspring mechanisms and the linear-fractional family in closed form.

The linear-fractional (LF) mechanism puts mass pi0 at zero and a shifted
geometric with ratio 1-pi on {1,2,...}.  Its generating function is a
Moebius transform, so n-fold iterates stay in the family; everything
downstream (population laws, conditionings, passage times) leans on the
two scalars (a_n, b_n) computed here.  A small catalog of non-LF
mechanisms (binary, Poisson, negative binomial, binomial, affine, damped
Sibuya) feeds the generic-machinery checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AffineMechanism,
    DegenerateTau,
    InvalidParameters,
    SingularHomography,
)
from .series import DEFAULT_ORDER, PowerSeries

# |mu - 1| below this takes the critical code path; the non-critical
# branch of the iterate recurrences loses precision as a -> 1.
EPS_CRITICAL = 1e-9

SUBCRITICAL = "subcritical"
CRITICAL = "critical"
SUPERCRITICAL = "supercritical"


# ---------------------------------------------------------------------------
# parameters and homography algebra


@dataclass(frozen=True)
class LFParams:
    """Linear-fractional offspring law: P(M=0)=pi0, P(M=m)=(1-pi0)*pi*(1-pi)^(m-1)."""

    pi0: float
    pi: float

    def __post_init__(self):
        if not (0.0 < self.pi0 < 1.0 and 0.0 < self.pi < 1.0):
            raise InvalidParameters("need 0 < pi0 < 1 and 0 < pi < 1")

    @property
    def pib(self) -> float:
        return 1.0 - self.pi

    @property
    def pi0b(self) -> float:
        return 1.0 - self.pi0

    @property
    def a(self) -> float:
        return self.pi / self.pi0b

    @property
    def b(self) -> float:
        return self.pib / self.pi0b

    @property
    def mu(self) -> float:
        return self.pi0b / self.pi

    @property
    def sigma2(self) -> float:
        return self.pi0b * (self.pib + self.pi0) / self.pi**2

    def pmf(self, m: int) -> float:
        if m < 0:
            return 0.0
        if m == 0:
            return self.pi0
        return self.pi0b * self.pi * self.pib ** (m - 1)


@dataclass(frozen=True)
class Homography:
    """Moebius transform z -> (alpha*z + beta)/(gamma*z + delta)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    @property
    def det(self) -> float:
        return self.alpha * self.delta - self.beta * self.gamma

    def apply(self, z: float) -> float:
        return (self.alpha * z + self.beta) / (self.gamma * z + self.delta)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]])


def lf_homography(p: LFParams) -> Homography:
    """Matrix encoding of the one-step p.g.f.; determinant equals P(M=1)."""
    return Homography(p.pi - p.pi0, p.pi0, -p.pib, 1.0)


def _params_from_homography(h: Homography) -> LFParams | None:
    """Recover LFParams when h has the canonical one-step shape, else None."""
    if abs(h.delta - 1.0) > 1e-12:
        return None
    pib = -h.gamma
    pi = 1.0 - pib
    pi0 = h.beta
    if not (0.0 < pi < 1.0 and 0.0 < pi0 < 1.0):
        return None
    if abs(h.alpha - (pi - pi0)) > 1e-12:
        return None
    return LFParams(pi0, pi)


def homography_power(h, n) -> Homography:
    """n-fold composition power of a Moebius transform.

    For the canonical one-step shape the eigen-decomposition closed form
    is used (Jordan form on the double-eigenvalue branch pi == 1-pi0, the
    critical case), so n may be any real >= 0.  Other homographies fall
    back to an integer matrix power.
    """
    if isinstance(h, LFParams):
        p: LFParams | None = h
        h = lf_homography(h)
    else:
        p = _params_from_homography(h)
    if h.det == 0.0:
        raise SingularHomography("determinant is zero; powers collapse")
    if p is not None:
        pi, pi0, pib, pi0b = p.pi, p.pi0, p.pib, p.pi0b
        if abs(pib - pi0) <= 1e-12:
            # double eigenvalue pi: Jordan closed form
            s = pi ** (n - 1)
            return Homography(
                s * (pi - n * pib),
                s * n * pib,
                -s * n * pib,
                s * (pi + n * pib),
            )
        den = pib - pi0
        pn = pi**n
        qn = pi0b**n
        return Homography(
            (pib * pn - pi0 * qn) / den,
            (pi0 * qn - pi0 * pn) / den,
            (pib * pn - pib * qn) / den,
            (pib * qn - pi0 * pn) / den,
        )
    if n != int(n) or n < 0:
        raise InvalidParameters("real powers need the canonical one-step shape")
    m = np.linalg.matrix_power(h.matrix, int(n))
    return Homography(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def homography_taylor(h: Homography, K: int = DEFAULT_ORDER) -> PowerSeries:
    """Coefficients of (alpha*z+beta)/(gamma*z+delta) about 0."""
    if h.gamma == 0.0:
        c = np.zeros(K + 1)
        c[0] = h.beta / h.delta
        if K >= 1:
            c[1] = h.alpha / h.delta
        return PowerSeries(c)
    A = h.alpha / h.gamma
    B = h.beta - h.alpha * h.delta / h.gamma
    c = np.zeros(K + 1)
    t = B / h.delta
    c[0] = A + t
    r = -h.gamma / h.delta
    for k in range(1, K + 1):
        t *= r
        c[k] = t
    return PowerSeries(c)


# ---------------------------------------------------------------------------
# iterates


def lf_iterate(p: LFParams, n) -> tuple[float, float]:
    """Scalars (a_n, b_n) of the n-fold iterate; n may be real >= 0."""
    if n < 0:
        raise InvalidParameters("n >= 0")
    if abs(p.mu - 1.0) <= EPS_CRITICAL:
        return 1.0, p.b * n
    la = math.log(p.a)
    an = math.exp(n * la)
    bn = p.b * math.expm1(n * la) / math.expm1(la)
    return an, bn


def phi_from_iterate(an: float, bn: float, z: float) -> float:
    """Evaluate 1 - (1-z)/(b_n(1-z) + a_n); exact 1 at z=1."""
    if z == 1.0:
        return 1.0
    return 1.0 - (1.0 - z) / (bn * (1.0 - z) + an)


def phi_n_eval(p: LFParams, n, z: float) -> float:
    """n-step generating function phi_n(z) for one founder."""
    an, bn = lf_iterate(p, n)
    return phi_from_iterate(an, bn, z)


def lf_params_n(p: LFParams, n) -> LFParams:
    """The n-step population law is again linear-fractional; these are its parameters."""
    an, bn = lf_iterate(p, n)
    s = an + bn
    return LFParams(1.0 - 1.0 / s, an / s)


# ---------------------------------------------------------------------------
# fixed points


def fixed_point_rho(p: LFParams) -> float:
    """The non-unit fixed point of the p.g.f., pi0/(1-pi); below 1 iff mu>1."""
    return p.pi0 / p.pib


def extinction_probability(p: LFParams) -> float:
    return min(fixed_point_rho(p), 1.0)


def fixed_point_tau(p: LFParams, fallback: bool = True) -> float:
    """Tangency point: the positive root of phi(t) - t*phi'(t) = 0.

    Closed radical when pi != pi0; on the degenerate diagonal pi == pi0
    (plain geometric mechanism) the radical is 0/0 and the limit 1/(2*(1-pi))
    is used instead unless fallback is disabled.
    """
    if abs(p.pi - p.pi0) <= 1e-12:
        if not fallback:
            raise DegenerateTau("radical degenerates at pi == pi0")
        return 1.0 / (2.0 * p.pib)
    disc = p.pi0 * p.pi0b * p.pi * p.pib
    return (-p.pi0 * p.pib + math.sqrt(disc)) / (p.pib * (p.pi - p.pi0))


def _bisect_newton(g, gprime, lo, hi, tol=1e-13):
    """Bracketed bisection to tol, then a short Newton polish."""
    glo = g(lo)
    ghi = g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0.0:
        raise InvalidParameters(f"no sign change on bracket ({lo}, {hi})")
    while hi - lo > tol * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            lo = hi = mid
            break
        if glo * gm < 0.0:
            hi = mid
        else:
            lo, glo = mid, gm
    x = 0.5 * (lo + hi)
    for _ in range(4):
        gp = gprime(x)
        if gp == 0.0:
            break
        step = g(x) / gp
        if not math.isfinite(step):
            break
        x -= step
    return x


def tau_generic(mech) -> tuple[float, float]:
    """Tangency point tau and z_c = 1/phi'(tau) for any catalog mechanism.

    g(t) = phi(t) - t*phi'(t) decreases from phi(0) > 0; the root sits in
    (rho_e, 1) when mu > 1 and in (1, z*) when mu < 1.  Affine mechanisms
    have no tangency point (g never vanishes).
    """
    if getattr(mech, "kind", None) == "affine":
        raise AffineMechanism("affine p.g.f. has no tangency point")
    mu = mech.mean

    def g(t):
        return mech.pgf(t) - t * mech.pgf_derivative(t, 1)

    def gp(t):
        return -t * mech.pgf_derivative(t, 2)

    if abs(mu - 1.0) <= EPS_CRITICAL:
        tau = 1.0
    elif mu > 1.0:
        lo = extinction_probability_generic(mech)
        tau = _bisect_newton(g, gp, lo, 1.0)
    else:
        lo = 1.0
        if math.isfinite(mech.radius):
            hi = 0.999 * mech.radius
        else:
            hi = 2.0
            while g(hi) > 0.0:
                hi *= 2.0
                if hi > 1e12:
                    raise InvalidParameters("tangency bracket not found")
        tau = _bisect_newton(g, gp, lo, hi)
    zc = 1.0 / mech.pgf_derivative(tau, 1)
    return tau, zc


def extinction_probability_generic(mech) -> float:
    """Smallest root of phi(z) = z in [0,1] for any mechanism."""
    if mech.mean <= 1.0 + EPS_CRITICAL:
        return 1.0

    def g(z):
        return mech.pgf(z) - z

    def gp(z):
        return mech.pgf_derivative(z, 1) - 1.0

    return _bisect_newton(g, gp, 0.0, 1.0 - 1e-12)


# ---------------------------------------------------------------------------
# thinning / compounding representation


@dataclass(frozen=True)
class CompoundRepresentation:
    """How the LF law decomposes: Bernoulli-thinned geometric, or a
    geometric number of clusters, or the plain-geometric boundary."""

    kind: str  # "thinned-geometric" | "compound-geo0" | "geo0-boundary"
    q: float | None = None
    nu: float | None = None
    cluster: Homography | None = None

    def cluster_pgf(self, z: float) -> float:
        if self.cluster is None:
            raise InvalidParameters("no cluster p.g.f. in this representation")
        return self.cluster.apply(z)


def compound_representation(p: LFParams) -> CompoundRepresentation:
    if abs(p.pi0 - p.pi) <= 1e-12:
        return CompoundRepresentation("geo0-boundary", q=1.0)
    if p.pi0 < p.pi:
        q = p.pi0 / p.pi
        nu = (p.pi - p.pi0) / p.pi0b
        return CompoundRepresentation("thinned-geometric", q=q, nu=nu)
    # pi0 > pi: geometric(pi) count of i.i.d. clusters with p.g.f. psi
    d = p.pi0 - p.pi
    cluster = Homography(
        -(d - p.pi * p.pib) / p.pib,
        d / p.pib,
        -d,
        p.pi0,
    )
    return CompoundRepresentation("compound-geo0", cluster=cluster)


# ---------------------------------------------------------------------------
# mechanism catalog


def _table_sample(rng, size: int, pmf: np.ndarray) -> np.ndarray:
    cum = np.cumsum(pmf)
    cum[-1] = max(cum[-1], 1.0)
    return np.searchsorted(cum, rng.random(size), side="right").astype(np.int64)


class Mechanism:
    """Offspring-law interface: p.g.f., derivatives, coefficients, sampling."""

    kind = "abstract"

    def pgf(self, z: float) -> float:
        raise NotImplementedError

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        raise NotImplementedError

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        """Series of phi(z0 + w) in w; exact per-kind closed forms."""
        raise NotImplementedError

    def coefficients(self, K: int = DEFAULT_ORDER) -> np.ndarray:
        return self.taylor_about(0.0, K).c

    @property
    def mean(self) -> float:
        return self.pgf_derivative(1.0, 1)

    @property
    def variance(self) -> float:
        m = self.mean
        return self.pgf_derivative(1.0, 2) + m - m * m

    @property
    def radius(self) -> float:
        return math.inf

    def sample(self, rng, size: int) -> np.ndarray:
        # generic inverse-cdf fallback over a truncated coefficient table
        K = 256
        while True:
            pmf = self.coefficients(K)
            if 1.0 - pmf.sum() < 1e-12 or K >= 1 << 16:
                break
            K *= 4
        return _table_sample(rng, size, pmf)

    def shifted_series(self, K: int = DEFAULT_ORDER) -> PowerSeries:
        """Series of phi(1-x) - 1 + mean*x; starts at x^2 for proper laws."""
        t = self.taylor_about(1.0, K)
        c = t.c * np.where(np.arange(K + 1) % 2 == 0, 1.0, -1.0)
        c[0] = 0.0
        if K >= 1:
            c[1] = 0.0
        return PowerSeries(c)


class LinearFractional(Mechanism):
    kind = "lf"

    def __init__(self, pi0: float, pi: float):
        self.params = pi0 if isinstance(pi0, LFParams) else LFParams(pi0, pi)
        p = self.params
        self._h = lf_homography(p)
        # phi(z) = A + B/(gamma*z + delta)
        self._A = self._h.alpha / self._h.gamma
        self._B = self._h.beta - self._h.alpha * self._h.delta / self._h.gamma

    def pgf(self, z: float) -> float:
        return phi_from_iterate(self.params.a, self.params.b, z)

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        if order == 0:
            return self.pgf(z)
        g, d = self._h.gamma, self._h.delta
        den = g * z + d
        out = self._B
        for k in range(1, order + 1):
            out *= -g * k / den
        return out / den

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        g, d = self._h.gamma, self._h.delta
        den = g * z0 + d
        c = np.zeros(K + 1)
        t = self._B / den
        c[0] = self._A + t
        for k in range(1, K + 1):
            t *= -g / den
            c[k] = t
        return PowerSeries(c)

    @property
    def mean(self) -> float:
        return self.params.mu

    @property
    def variance(self) -> float:
        return self.params.sigma2

    @property
    def radius(self) -> float:
        return 1.0 / self.params.pib

    def sample(self, rng, size: int) -> np.ndarray:
        p = self.params
        out = np.zeros(size, dtype=np.int64)
        alive = rng.random(size) >= p.pi0
        k = int(alive.sum())
        if k:
            out[alive] = rng.geometric(p.pi, k)
        return out


class Geo0(LinearFractional):
    """Geometric on {0,1,2,...} with success pi0; the diagonal pi == pi0."""

    kind = "geo0"

    def __init__(self, pi0: float):
        super().__init__(pi0, pi0)

    def sample(self, rng, size: int) -> np.ndarray:
        return rng.geometric(self.params.pi0, size).astype(np.int64) - 1


class Geo1:
    """Shifted geometric on {1,2,...}: p.g.f. s*z/(1-(1-s)z).

    Population-side law (no mass at 0), used by conditioned processes.
    """

    kind = "geo1"

    def __init__(self, s: float):
        if not 0.0 < s <= 1.0:
            raise InvalidParameters("need 0 < s <= 1")
        self.s = s

    def pgf(self, z: float) -> float:
        return self.s * z / (1.0 - (1.0 - self.s) * z)

    def pmf(self, k: int) -> float:
        if k < 1:
            return 0.0
        return self.s * (1.0 - self.s) ** (k - 1)

    @property
    def mean(self) -> float:
        return 1.0 / self.s

    def sample(self, rng, size: int) -> np.ndarray:
        return rng.geometric(self.s, size).astype(np.int64)


class Binary(Mechanism):
    """At most two offspring: masses (q, r, p) at (0, 1, 2)."""

    kind = "binary"

    def __init__(self, q: float, r: float, p: float):
        if min(q, r, p) < 0.0 or abs(q + r + p - 1.0) > 1e-12:
            raise InvalidParameters("need q,r,p >= 0 with q+r+p = 1")
        self.q, self.r, self.p = q, r, p

    def pgf(self, z: float) -> float:
        return self.q + self.r * z + self.p * z * z

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        if order == 0:
            return self.pgf(z)
        if order == 1:
            return self.r + 2.0 * self.p * z
        if order == 2:
            return 2.0 * self.p
        return 0.0

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        c = np.zeros(K + 1)
        c[0] = self.pgf(z0)
        if K >= 1:
            c[1] = self.r + 2.0 * self.p * z0
        if K >= 2:
            c[2] = self.p
        return PowerSeries(c)

    def sample(self, rng, size: int) -> np.ndarray:
        return _table_sample(rng, size, np.array([self.q, self.r, self.p]))


class Poisson(Mechanism):
    kind = "poisson"

    def __init__(self, mu: float):
        if mu <= 0.0:
            raise InvalidParameters("need mu > 0")
        self.mu = mu

    def pgf(self, z: float) -> float:
        return math.exp(-self.mu * (1.0 - z))

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        return self.mu**order * self.pgf(z)

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        c = np.zeros(K + 1)
        t = self.pgf(z0)
        c[0] = t
        for k in range(1, K + 1):
            t *= self.mu / k
            c[k] = t
        return PowerSeries(c)

    def sample(self, rng, size: int) -> np.ndarray:
        return rng.poisson(self.mu, size).astype(np.int64)


class NegBin(Mechanism):
    """Negative binomial with mean alpha and shape theta:
    p.g.f. (theta/(theta + alpha(1-z)))^theta."""

    kind = "negbin"

    def __init__(self, alpha: float, theta: float):
        if alpha <= 0.0 or theta <= 0.0:
            raise InvalidParameters("need alpha > 0 and theta > 0")
        self.alpha, self.theta = alpha, theta

    def pgf(self, z: float) -> float:
        return (self.theta / (self.theta + self.alpha * (1.0 - z))) ** self.theta

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        if order == 0:
            return self.pgf(z)
        den = self.theta + self.alpha * (1.0 - z)
        out = self.pgf(z)
        for j in range(order):
            out *= (self.theta + j) * self.alpha / den
        return out

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        den = self.theta + self.alpha * (1.0 - z0)
        c = np.zeros(K + 1)
        t = (self.theta / den) ** self.theta
        c[0] = t
        for k in range(1, K + 1):
            t *= (self.theta + k - 1) / k * (self.alpha / den)
            c[k] = t
        return PowerSeries(c)

    @property
    def mean(self) -> float:
        return self.alpha

    @property
    def radius(self) -> float:
        return (self.theta + self.alpha) / self.alpha

    def sample(self, rng, size: int) -> np.ndarray:
        p = self.theta / (self.theta + self.alpha)
        return rng.negative_binomial(self.theta, p, size).astype(np.int64)


class Binomial(Mechanism):
    """Binomial(d, alpha/d): mean alpha, at most d offspring."""

    kind = "binomial"

    def __init__(self, alpha: float, d: int):
        if d < 1 or d != int(d):
            raise InvalidParameters("need integer d >= 1")
        if not 0.0 < alpha < d:
            raise InvalidParameters("need 0 < alpha < d")
        self.alpha, self.d = alpha, int(d)

    def pgf(self, z: float) -> float:
        return (1.0 - self.alpha / self.d * (1.0 - z)) ** self.d

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        if order == 0:
            return self.pgf(z)
        if order > self.d:
            return 0.0
        base = 1.0 - self.alpha / self.d * (1.0 - z)
        out = base ** (self.d - order)
        for j in range(order):
            out *= (self.d - j) * self.alpha / self.d
        return out

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        base = 1.0 - self.alpha / self.d * (1.0 - z0)
        c = np.zeros(K + 1)
        t = base**self.d
        c[0] = t
        top = min(K, self.d)
        for k in range(1, top + 1):
            t *= (self.d - k + 1) / k * (self.alpha / self.d) / base
            c[k] = t
        return PowerSeries(c)

    @property
    def mean(self) -> float:
        return self.alpha

    def sample(self, rng, size: int) -> np.ndarray:
        return rng.binomial(self.d, self.alpha / self.d, size).astype(np.int64)


class Affine(Mechanism):
    """Bernoulli offspring: p.g.f. (1-alpha) + alpha*z."""

    kind = "affine"

    def __init__(self, alpha: float):
        if not 0.0 < alpha < 1.0:
            raise InvalidParameters("need 0 < alpha < 1")
        self.alpha = alpha

    def pgf(self, z: float) -> float:
        return 1.0 - self.alpha + self.alpha * z

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        if order == 0:
            return self.pgf(z)
        return self.alpha if order == 1 else 0.0

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        c = np.zeros(K + 1)
        c[0] = self.pgf(z0)
        if K >= 1:
            c[1] = self.alpha
        return PowerSeries(c)

    def sample(self, rng, size: int) -> np.ndarray:
        return (rng.random(size) < self.alpha).astype(np.int64)


class DampedSibuya(Mechanism):
    """Heavy-tailed law from h(z) = 1 - lam*(1 - z/zstar)**alpha, normalized
    by h(1); tail index alpha with geometric damping for zstar > 1."""

    kind = "damped-sibuya"

    def __init__(self, alpha: float, lam: float, zstar: float):
        if not 0.0 < alpha < 1.0:
            raise InvalidParameters("need 0 < alpha < 1")
        if not 0.0 < lam <= 1.0:
            raise InvalidParameters("need 0 < lam <= 1")
        if zstar < 1.0:
            raise InvalidParameters("need zstar >= 1")
        self.alpha, self.lam, self.zstar = alpha, lam, zstar
        self.h1 = 1.0 - lam * (1.0 - 1.0 / zstar) ** alpha

    def h(self, z: float) -> float:
        return 1.0 - self.lam * (1.0 - z / self.zstar) ** self.alpha

    def pgf(self, z: float) -> float:
        return self.h(z) / self.h1

    def pgf_derivative(self, z: float, order: int = 1) -> float:
        if order == 0:
            return self.pgf(z)
        base = 1.0 - z / self.zstar
        out = -self.lam / self.h1 * base**self.alpha
        for j in range(order):
            out *= (self.alpha - j) * (-1.0 / self.zstar) / base
        return out

    def taylor_about(self, z0: float, K: int = DEFAULT_ORDER) -> PowerSeries:
        R = 1.0 - z0 / self.zstar
        if R <= 0.0:
            raise InvalidParameters("expansion point beyond the radius")
        c = np.zeros(K + 1)
        c[0] = (1.0 - self.lam * R**self.alpha) / self.h1
        # k >= 1: -(lam/h1) * R^alpha * binom(alpha,k) * (-1/(R*zstar))^k
        t = -self.lam / self.h1 * R**self.alpha
        for k in range(1, K + 1):
            t *= (self.alpha - k + 1) / k * (-1.0 / (R * self.zstar))
            c[k] = t
        return PowerSeries(c)

    @property
    def radius(self) -> float:
        return self.zstar


def mechanism_from_json(obj) -> Mechanism:
    """Build a catalog mechanism from its JSON parameter object."""
    if "kind" not in obj or obj.get("kind") == "lf":
        return LinearFractional(float(obj["pi0"]), float(obj["pi"]))
    kind = obj["kind"]
    if kind == "geo0":
        return Geo0(float(obj["pi0"]))
    if kind == "binary":
        return Binary(float(obj["q"]), float(obj["r"]), float(obj["p"]))
    if kind == "poisson":
        return Poisson(float(obj["mu"]))
    if kind == "negbin":
        return NegBin(float(obj["alpha"]), float(obj["theta"]))
    if kind == "binomial":
        return Binomial(float(obj["alpha"]), int(obj["d"]))
    if kind == "affine":
        return Affine(float(obj["alpha"]))
    if kind == "damped-sibuya":
        return DampedSibuya(float(obj["alpha"]), float(obj["lam"]), float(obj["zstar"]))
    raise InvalidParameters(f"unknown mechanism kind {kind!r}")


def mechanism_to_json(mech) -> dict:
    if isinstance(mech, Geo0):
        return {"kind": "geo0", "pi0": mech.params.pi0}
    if isinstance(mech, LinearFractional):
        return {"kind": "lf", "pi0": mech.params.pi0, "pi": mech.params.pi}
    if isinstance(mech, Binary):
        return {"kind": "binary", "q": mech.q, "r": mech.r, "p": mech.p}
    if isinstance(mech, Poisson):
        return {"kind": "poisson", "mu": mech.mu}
    if isinstance(mech, NegBin):
        return {"kind": "negbin", "alpha": mech.alpha, "theta": mech.theta}
    if isinstance(mech, Binomial):
        return {"kind": "binomial", "alpha": mech.alpha, "d": mech.d}
    if isinstance(mech, Affine):
        return {"kind": "affine", "alpha": mech.alpha}
    if isinstance(mech, DampedSibuya):
        return {
            "kind": "damped-sibuya",
            "alpha": mech.alpha,
            "lam": mech.lam,
            "zstar": mech.zstar,
        }
    raise InvalidParameters("not a catalog mechanism")


def ps_shift_compose(mech: Mechanism, inner: PowerSeries) -> PowerSeries:
    """phi(inner(z)) when inner has a nonzero constant term, by re-expanding
    the p.g.f. about that constant; only possible with the analytic mechanism."""
    c0 = float(inner.c[0])
    outer = mech.taylor_about(c0, inner.order)
    shifted = PowerSeries(inner.c.copy())
    shifted.c[0] = 0.0
    return outer.compose(shifted)


def classify(x) -> str:
    """Criticality class from a mean, LFParams, or Mechanism."""
    if isinstance(x, LFParams):
        mu = x.mu
    elif isinstance(x, (int, float)):
        mu = float(x)
    else:
        mu = x.mean
    if abs(mu - 1.0) <= EPS_CRITICAL:
        return CRITICAL
    return SUPERCRITICAL if mu > 1.0 else SUBCRITICAL


def census_report() -> dict:
    """Classic surname-survival fit (white-male lines, 1920 US census).

    The published summary quotes mu=1.163, sigma=1.633 and a tail value
    P(M>3)=0.0325 at pi0=0.481, 1-pi=0.559, but those numbers are not
    reproducible from the stated closed forms; both the quoted and the
    recomputed values are reported, and only the extinction probability
    is treated as a reliable target.
    """
    p = LFParams(0.481, 1.0 - 0.559)
    tail_formula = p.pi0b * p.pi**4 / p.pib  # printed form pi0b*pi^(l+1)/pib, l=3
    tail_pmf = p.pi0b * p.pib**3  # mass of {4,5,...} under the pmf
    return {
        "inputs": {"pi0": p.pi0, "pib": p.pib},
        "quoted": {"mu": 1.163, "sigma": 1.633, "tail_gt3": 0.0325},
        "recomputed": {
            "rho_e": fixed_point_rho(p),
            "mu": p.mu,
            "sigma": math.sqrt(p.sigma2),
            "tail_gt3_formula": tail_formula,
            "tail_gt3_pmf": tail_pmf,
        },
    }
