"""Truncated formal power series over float coefficients.

Every coefficient-extraction formula in the package funnels through this
module: Cauchy products, composition, integer powers, reciprocals, and the
Lagrange-inversion route to total-progeny laws.  Coefficients are plain
float64; truncation error dominates rounding error for every law handled
here because all tails decay at least geometrically off criticality.
"""

from __future__ import annotations

import numpy as np

from .errors import NonzeroConstantTerm, ZeroDenominator

# Default truncation: 65 coefficients c_0..c_64 (order 64), overridable per call.
DEFAULT_ORDER = 64


class PowerSeries:
    """Dense truncated power series c_0 + c_1 z + ... + c_K z^K."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        self.c = c

    @property
    def order(self) -> int:
        return self.c.size - 1

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls(np.zeros(order + 1))

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        c = np.zeros(order + 1)
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    def coeff(self, k: int) -> float:
        if k < 0 or k > self.order:
            return 0.0
        return float(self.c[k])

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return PowerSeries(np.concatenate([self.c, np.zeros(order - self.order)]))
        return PowerSeries(self.c[: order + 1])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(self.c[: n + 1] + other.c[: n + 1])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(self.c[: n + 1] - other.c[: n + 1])

    def scale(self, s: float) -> "PowerSeries":
        return PowerSeries(self.c * s)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        full = np.convolve(self.c[: n + 1], other.c[: n + 1])
        return PowerSeries(full[: n + 1])

    def pow(self, n: int) -> "PowerSeries":
        if n < 0:
            raise ValueError("negative powers via reciprocal() only")
        result = PowerSeries.zero(self.order)
        result.c[0] = 1.0
        base = self
        # repeated squaring keeps the work at O(log n) convolutions
        while n > 0:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(z)); requires inner constant term exactly 0."""
        if inner.c[0] != 0.0:
            raise NonzeroConstantTerm(
                "composition needs inner constant term 0; "
                "re-expand through the mechanism instead"
            )
        n = min(self.order, inner.order)
        inner_t = inner.truncate(n)
        # Horner from the top coefficient down
        acc = PowerSeries.zero(n)
        for k in range(n, -1, -1):
            acc = acc * inner_t
            acc.c[0] += self.coeff(k)
        return acc

    def reciprocal(self) -> "PowerSeries":
        if self.c[0] == 0.0:
            raise ZeroDenominator("reciprocal of a series vanishing at 0")
        n = self.order
        out = np.zeros(n + 1)
        out[0] = 1.0 / self.c[0]
        for k in range(1, n + 1):
            out[k] = -np.dot(self.c[1 : k + 1], out[k - 1 :: -1][:k]) / self.c[0]
        return PowerSeries(out)

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries([0.0])
        return PowerSeries(self.c[1:] * np.arange(1, self.order + 1))

    def eval(self, x: float) -> float:
        acc = 0.0
        for ck in self.c[::-1]:
            acc = acc * x + ck
        return float(acc)

    def __repr__(self) -> str:
        head = ", ".join(f"{v:.6g}" for v in self.c[:6])
        tail = ", ..." if self.order >= 6 else ""
        return f"PowerSeries([{head}{tail}], order={self.order})"


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the shared order."""
    return a * b


def ps_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """outer(inner(z)) for inner with zero constant term."""
    return outer.compose(inner)


def ps_pow(f: PowerSeries, n: int) -> PowerSeries:
    """f(z)^n by repeated squaring, truncated to f's order."""
    if n < 1:
        raise ValueError("n >= 1")
    return f.pow(n)


def ps_lagrange_progeny(mech, i: int = 1, K: int = DEFAULT_ORDER) -> PowerSeries:
    """Series of Phi(z)^i where Phi solves Phi = z*phi(Phi).

    Coefficient n is (i/n)[z^(n-i)] phi(z)^n, the total-progeny pmf of a
    forest of i independent trees.  Exact up to float rounding; the same
    numbers that exhaustive tree enumeration produces.
    """
    if i < 1:
        raise ValueError("founders i >= 1")
    if K < i:
        raise ValueError("K >= i required")
    phi = PowerSeries(mech.coefficients(K))
    out = np.zeros(K + 1)
    power = PowerSeries(np.zeros(K + 1))
    power.c[0] = 1.0
    for n in range(1, K + 1):
        power = power * phi
        if n >= i:
            out[n] = (i / n) * power.coeff(n - i)
    return PowerSeries(out)
