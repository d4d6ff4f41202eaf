"""Truncated Taylor series in one variable, vectorised over samples.

A :class:`Series` stores coefficients ``c[k]`` of ``sum_k c[k] t^k`` with
shape ``(order + 1, *sample_shape)``.  Pushing the family parameter through
the reflection formulas as a series yields its derivatives to rounding error,
which finite differences cannot deliver near the unstable axis orbit.
"""

from __future__ import annotations

import math

import numpy as np

DEFAULT_ORDER = 4


class Series:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, t, order: int = DEFAULT_ORDER) -> "Series":
        t = np.asarray(t, dtype=float)
        c = np.zeros((order + 1,) + t.shape)
        c[0] = t
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, like: "Series") -> "Series":
        c = np.zeros_like(like.c)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def value(self) -> np.ndarray:
        return self.c[0]

    def derivative_values(self) -> list[np.ndarray]:
        """``[f, f', f'', ...]`` at the expansion point."""
        return [math.factorial(k) * self.c[k] for k in range(self.order + 1)]

    def diff(self) -> "Series":
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * (self.c.ndim - 1))
        return Series(self.c[1:] * k)

    def _coerce(self, other):
        if isinstance(other, Series):
            m = min(self.order, other.order)
            return self.c[: m + 1], other.c[: m + 1]
        c = np.zeros_like(self.c)
        c[0] = other
        return self.c, c

    def __add__(self, other):
        a, b = self._coerce(other)
        return Series(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return Series(a - b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return Series(b - a)

    def __neg__(self):
        return Series(-self.c)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series(self.c * other)
        a, b = self._coerce(other)
        out = np.zeros_like(a)
        for k in range(a.shape[0]):
            out[k] = sum(a[j] * b[k - j] for j in range(k + 1))
        return Series(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Series):
            return Series(self.c / other)
        a, b = self._coerce(other)
        q = np.zeros_like(a)
        for k in range(a.shape[0]):
            q[k] = (a[k] - sum(b[j] * q[k - j] for j in range(1, k + 1))) / b[0]
        return Series(q)

    def __rtruediv__(self, other):
        return Series.constant(other, self) / self

    def __pow__(self, n: int):
        out = self
        for _ in range(n - 1):
            out = out * self
        return out


def _integrate(d: Series, c0) -> Series:
    out = np.zeros((d.order + 2,) + d.c.shape[1:])
    out[0] = c0
    for k in range(1, d.order + 2):
        out[k] = d.c[k - 1] / k
    return Series(out)


def sqrt(u: Series) -> Series:
    r = np.zeros_like(u.c)
    r[0] = np.sqrt(u.c[0])
    for k in range(1, u.order + 1):
        r[k] = (u.c[k] - sum(r[j] * r[k - j] for j in range(1, k))) / (2.0 * r[0])
    return Series(r)


def sincos(u: Series) -> tuple[Series, Series]:
    s = np.zeros_like(u.c)
    c = np.zeros_like(u.c)
    s[0], c[0] = np.sin(u.c[0]), np.cos(u.c[0])
    for k in range(1, u.order + 1):
        s[k] = sum(j * u.c[j] * c[k - j] for j in range(1, k + 1)) / k
        c[k] = -sum(j * u.c[j] * s[k - j] for j in range(1, k + 1)) / k
    return Series(s), Series(c)


def sin(u: Series) -> Series:
    return sincos(u)[0]


def cos(u: Series) -> Series:
    return sincos(u)[1]


def atan2(y: Series, x: Series, value=None) -> Series:
    """Angle series; ``value`` overrides the zeroth coefficient (for unwrapping)."""
    rate = (x * y.diff() - y * x.diff()) / (x * x + y * y)
    c0 = np.arctan2(y.c[0], x.c[0]) if value is None else value
    return _integrate(rate, c0)


def arccos(u: Series) -> Series:
    m = u.order - 1
    v = Series(u.c[: m + 1])
    rate = -u.diff() / sqrt(1.0 - v * v)
    return _integrate(rate, np.arccos(u.c[0]))
