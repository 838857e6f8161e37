"""Truncated Taylor polynomials (jets) in one and two variables.

A jet of order N stores the Taylor coefficients of a function at a local
origin, i.e. ``c[k] = f^(k)(0) / k!`` (one variable) or
``c[i, j] = d_u^i d_v^j f(0, 0) / (i! j!)`` (two variables).  Every
arithmetic operation is exact through the stated order.  Jets are
immutable; combining jets of different orders truncates to the lower one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Real

import numpy as np
from scipy.signal import convolve2d

from .errors import DivisionByNearZero, DomainViolation, NotDivisible

TOL_ZERO = 1e-12
TOL_DIVISIBILITY = 1e-9

DEFAULT_SURFACE_ORDER = 8
DEFAULT_CURVE_ORDER = 9


@lru_cache(maxsize=None)
def _triangle(order):
    i, j = np.indices((order + 1, order + 1))
    mask = (i + j) <= order
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=None)
def _factorials(n):
    return np.array([math.factorial(k) for k in range(n + 1)], dtype=float)


class Jet:
    """Common behaviour of :class:`Jet1` and :class:`Jet2`."""

    __slots__ = ("c", "order")
    ndim = 0

    def __init__(self, coeffs, order=None):
        c = np.array(coeffs, dtype=float)
        if c.ndim != self.ndim:
            raise ValueError(f"{type(self).__name__} needs a {self.ndim}-d coefficient array")
        if order is None:
            order = c.shape[0] - 1
        c = self._fit(c, order)
        if not np.all(np.isfinite(c)):
            raise ValueError("jet coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "order", int(order))

    def __setattr__(self, name, value):
        raise AttributeError("jets are immutable")

    # -- construction helpers ------------------------------------------------
    @classmethod
    def _fit(cls, c, order):
        raise NotImplementedError

    @classmethod
    def constant(cls, value, order):
        c = np.zeros((order + 1,) * cls.ndim)
        c[(0,) * cls.ndim] = value
        return cls(c, order)

    def _new(self, c, order):
        return type(self)(c, order)

    def _coerce(self, other):
        if isinstance(other, Jet):
            if type(other) is not type(self):
                raise TypeError("cannot combine one- and two-variable jets")
            return other
        if isinstance(other, Real):
            return self.constant(float(other), self.order)
        return NotImplemented

    @property
    def value(self):
        return float(self.c[(0,) * self.ndim])

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return self._new(self.c, order)

    def with_constant(self, value):
        c = self.c.copy()
        c[(0,) * self.ndim] = value
        return self._new(c, self.order)

    def max_abs(self):
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return self._new(self._cut(self.c, n) + self._cut(other.c, n), n)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.c, self.order)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return self._new(self.c * float(other), self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return self._new(self._conv(self._cut(self.c, n), self._cut(other.c, n), n), n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Real):
            if abs(other) <= TOL_ZERO:
                raise DivisionByNearZero(f"division by scalar {other!r}")
            return self._new(self.c / float(other), self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        return power(self, p)

    def reciprocal(self):
        a0 = self.value
        if abs(a0) <= TOL_ZERO:
            raise DivisionByNearZero(f"constant term {a0!r} is too close to zero")
        k = np.arange(self.order + 1)
        return self._compose_series((-1.0) ** k / a0 ** (k + 1))

    def _compose_series(self, coeffs):
        """Evaluate sum_k coeffs[k] * (self - self(0))**k by Horner's rule."""
        h = self.with_constant(0.0)
        out = self.constant(coeffs[self.order], self.order)
        for k in range(self.order - 1, -1, -1):
            out = out * h + coeffs[k]
        return out

    def __repr__(self):
        return f"{type(self).__name__}(order={self.order}, coeffs={self.c.tolist()})"

    def allclose(self, other, rtol=1e-12, atol=0.0):
        other = self._coerce(other)
        n = min(self.order, other.order)
        a, b = self._cut(self.c, n), self._cut(other.c, n)
        return bool(np.allclose(a, b, rtol=rtol, atol=atol))


class Jet1(Jet):
    """Jet of a function of one variable ``t`` at ``t = 0``."""

    __slots__ = ()
    ndim = 1

    @classmethod
    def _fit(cls, c, order):
        out = np.zeros(order + 1)
        m = min(order + 1, c.shape[0])
        out[:m] = c[:m]
        return out

    @staticmethod
    def _cut(c, n):
        return c[: n + 1]

    @staticmethod
    def _conv(a, b, n):
        return np.convolve(a, b)[: n + 1]

    @classmethod
    def variable(cls, order, base=0.0):
        c = np.zeros(order + 1)
        c[0] = base
        if order >= 1:
            c[1] = 1.0
        return cls(c, order)

    def derivative_at_zero(self, k):
        """k-th derivative at the base point."""
        return float(self.c[k] * math.factorial(k)) if k <= self.order else float("nan")

    def derivatives(self, upto=None):
        upto = self.order if upto is None else min(upto, self.order)
        return [self.derivative_at_zero(k) for k in range(upto + 1)]

    def d(self, times=1):
        c = self.c
        n = self.order
        for _ in range(times):
            if n == 0:
                raise ValueError("cannot differentiate an order-0 jet")
            c = c[1:] * np.arange(1, n + 1)
            n -= 1
        return Jet1(c, n)

    def antiderivative(self):
        n = self.order + 1
        c = np.zeros(n + 1)
        c[1:] = self.c / np.arange(1, n + 1)
        return Jet1(c, n)

    def divide_by_t(self, power=1, tol=TOL_DIVISIBILITY):
        return _shift_divide(self, 0, power, tol)

    def times_t(self, power=1):
        c = np.zeros(self.order + 1)
        c[power:] = self.c[: self.order + 1 - power]
        return Jet1(c, self.order)

    def reflect(self):
        """Jet of t -> f(-t)."""
        return Jet1(self.c * (-1.0) ** np.arange(self.order + 1), self.order)

    def __call__(self, t):
        return float(np.polynomial.polynomial.polyval(t, self.c))

    def compose(self, inner):
        """Jet of ``self(inner(.))``; ``inner`` must vanish at the origin."""
        if abs(inner.value) > TOL_ZERO * max(1.0, inner.max_abs()):
            raise ValueError("inner jet of a composition must vanish at the origin")
        h = inner.with_constant(0.0)
        out = inner.constant(self.c[self.order], min(self.order, inner.order))
        for k in range(self.order - 1, -1, -1):
            out = out * h + float(self.c[k])
        return out

    def revert(self):
        """Compositional inverse of a jet with s(0) = 0 and s'(0) != 0."""
        s1 = float(self.c[1]) if self.order >= 1 else 0.0
        if abs(s1) <= TOL_ZERO:
            raise DivisionByNearZero("series reversion needs a nonzero linear term")
        ident = Jet1.variable(self.order)
        t = ident / s1
        for _ in range(self.order + 1):
            t = t - (self.compose(t) - ident) / s1
        return t

    def lift(self, axis="u"):
        """View as a two-variable jet that does not depend on the other variable."""
        c = np.zeros((self.order + 1, self.order + 1))
        if axis == "u":
            c[:, 0] = self.c
        else:
            c[0, :] = self.c
        return Jet2(c, self.order)


class Jet2(Jet):
    """Jet of a function of ``(u, v)`` at the local origin (total degree <= order)."""

    __slots__ = ()
    ndim = 2

    @classmethod
    def _fit(cls, c, order):
        out = np.zeros((order + 1, order + 1))
        m0 = min(order + 1, c.shape[0])
        m1 = min(order + 1, c.shape[1])
        out[:m0, :m1] = c[:m0, :m1]
        out[~_triangle(order)] = 0.0
        return out

    @staticmethod
    def _cut(c, n):
        out = c[: n + 1, : n + 1].copy()
        out[~_triangle(n)] = 0.0
        return out

    @staticmethod
    def _conv(a, b, n):
        out = convolve2d(a, b)[: n + 1, : n + 1]
        out[~_triangle(n)] = 0.0
        return out

    @classmethod
    def variable(cls, axis, order, base=0.0):
        c = np.zeros((order + 1, order + 1))
        c[0, 0] = base
        if order >= 1:
            c[(1, 0) if axis == "u" else (0, 1)] = 1.0
        return cls(c, order)

    @classmethod
    def variables(cls, order, base=(0.0, 0.0)):
        return cls.variable("u", order, base[0]), cls.variable("v", order, base[1])

    def coeff(self, i, j):
        return float(self.c[i, j]) if i + j <= self.order else float("nan")

    def partial_at_zero(self, i, j):
        return self.coeff(i, j) * math.factorial(i) * math.factorial(j)

    def partial(self, axis, times=1):
        c = self.c
        n = self.order
        for _ in range(times):
            if n == 0:
                raise ValueError("cannot differentiate an order-0 jet")
            if axis == "u":
                c = c[1:, :-1] * np.arange(1, n + 1)[:, None]
            else:
                c = c[:-1, 1:] * np.arange(1, n + 1)[None, :]
            n -= 1
        return Jet2(c, n)

    @property
    def du(self):
        return self.partial("u")

    @property
    def dv(self):
        return self.partial("v")

    def divide_by_coordinate(self, axis, power, tol=TOL_DIVISIBILITY):
        return _shift_divide(self, 0 if axis == "u" else 1, power, tol)

    def times_coordinate(self, axis, power=1):
        c = np.zeros_like(self.c)
        n = self.order
        if axis == "u":
            c[power:, :] = self.c[: n + 1 - power, :]
        else:
            c[:, power:] = self.c[:, : n + 1 - power]
        return Jet2(c, n)

    def antiderivative(self, axis="u"):
        """Jet of int_0^u g(tau, v) d tau (or along v); order goes up by one."""
        n = self.order + 1
        c = np.zeros((n + 1, n + 1))
        k = np.arange(1, n + 1)
        if axis == "u":
            c[1:, : n] = self.c / k[:, None]
        else:
            c[: n, 1:] = self.c / k[None, :]
        return Jet2(c, n)

    def restrict(self, axis="u"):
        """Restriction to the ``axis`` coordinate line (the other variable set to 0)."""
        if axis == "u":
            return Jet1(self.c[:, 0], self.order)
        return Jet1(self.c[0, :], self.order)

    def __call__(self, u, v):
        return float(np.polynomial.polynomial.polyval2d(u, v, self.c))

    def compose(self, x, y):
        """Jet of ``self(x, y)`` where ``x``, ``y`` vanish at the origin.

        ``x`` and ``y`` may be one- or two-variable jets (restriction to a
        curve or a change of coordinates respectively).
        """
        for z in (x, y):
            if abs(z.value) > TOL_ZERO * max(1.0, z.max_abs()):
                raise ValueError("inner jets of a composition must vanish at the origin")
        x = x.with_constant(0.0)
        y = y.with_constant(0.0)
        n = min(self.order, x.order, y.order)
        x, y = x.truncate(n), y.truncate(n)
        xp = [x.constant(1.0, n)]
        yp = [y.constant(1.0, n)]
        for _ in range(n):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        out = x.constant(0.0, n)
        for i in range(n + 1):
            row = None
            for j in range(n + 1 - i):
                cij = self.c[i, j]
                if cij != 0.0:
                    term = yp[j] * cij
                    row = term if row is None else row + term
            if row is not None:
                out = out + xp[i] * row
        return out


def _shift_divide(a, axis, power, tol):
    n = a.order - power
    if n < 0:
        raise NotDivisible(f"jet of order {a.order} cannot be divided by a power {power}")
    scale = a.max_abs()
    if a.ndim == 1:
        low = a.c[:power]
        quotient = a.c[power:]
    elif axis == 0:
        low = a.c[:power, :]
        quotient = a.c[power:, :]
    else:
        low = a.c[:, :power]
        quotient = a.c[:, power:]
    worst = float(np.max(np.abs(low))) if low.size else 0.0
    if worst > tol * scale:
        raise NotDivisible(
            f"coefficient of size {worst:.3e} below the requested power exceeds "
            f"{tol:.1e} x {scale:.3e}"
        )
    return type(a)(quotient, n)


# ---------------------------------------------------------------------------
# elementary functions: compose the univariate Taylor series of fn at a(0)
# with the nilpotent part of a.
def _series(fn, a0, n, exponent=None):
    k = np.arange(n + 1)
    fact = _factorials(n)
    if fn == "exp":
        return math.exp(a0) / fact
    if fn in ("sin", "cos", "sinh", "cosh"):
        if fn == "sin":
            cyc = [math.sin(a0), math.cos(a0), -math.sin(a0), -math.cos(a0)]
        elif fn == "cos":
            cyc = [math.cos(a0), -math.sin(a0), -math.cos(a0), math.sin(a0)]
        elif fn == "sinh":
            cyc = [math.sinh(a0), math.cosh(a0)] * 2
        else:
            cyc = [math.cosh(a0), math.sinh(a0)] * 2
        return np.array([cyc[i % 4] for i in k]) / fact
    if fn == "log":
        out = np.empty(n + 1)
        out[0] = math.log(a0)
        out[1:] = (-1.0) ** (k[1:] + 1) / (k[1:] * a0 ** k[1:])
        return out
    if fn == "pow":
        p = float(exponent)
        out = np.empty(n + 1)
        binom = 1.0
        for i in range(n + 1):
            out[i] = binom * a0 ** (p - i)
            binom *= (p - i) / (i + 1)
        return out
    raise ValueError(f"unknown elementary function {fn!r}")


ELEMENTARY = ("sqrt", "exp", "log", "sin", "cos", "sinh", "cosh", "pow_rational")


def jet_elementary(fn, a, exponent=None):
    """Apply an elementary function to a jet, exactly through its order."""
    a0 = a.value
    if fn == "sqrt":
        fn, exponent = "pow_rational", Fraction(1, 2)
    if fn == "pow_rational":
        return power(a, exponent)
    if fn == "log" and a0 <= TOL_ZERO:
        raise DomainViolation(f"log needs a positive constant term, got {a0!r}")
    return a._compose_series(_series(fn, a0, a.order))


def power(a, p):
    """``a ** p`` for an integer or rational exponent ``p``."""
    if isinstance(p, Fraction) and p.denominator == 1:
        p = int(p)
    if isinstance(p, float) and p.is_integer():
        p = int(p)
    if isinstance(p, int):
        if p < 0:
            return power(a.reciprocal(), -p)
        out = a.constant(1.0, a.order)
        base = a
        while p:
            if p & 1:
                out = out * base
            p >>= 1
            if p:
                base = base * base
        return out
    a0 = a.value
    if a0 <= TOL_ZERO:
        raise DomainViolation(f"non-integer power needs a positive constant term, got {a0!r}")
    return a._compose_series(_series("pow", a0, a.order, p))


def sqrt(a):
    return power(a, Fraction(1, 2))


def exp(a):
    return jet_elementary("exp", a)


def log(a):
    return jet_elementary("log", a)


def sin(a):
    return jet_elementary("sin", a)


def cos(a):
    return jet_elementary("cos", a)


def sinh(a):
    return jet_elementary("sinh", a)


def cosh(a):
    return jet_elementary("cosh", a)


def jet_algebra(a, b, op):
    """Binary ring operation ``op`` in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def jet_antiderivative(g):
    return g.antiderivative()


def jet_divide_by_coordinate(a, axis, power, tol=TOL_DIVISIBILITY):
    if isinstance(a, Jet1):
        return a.divide_by_t(power, tol)
    return a.divide_by_coordinate(axis, power, tol)


def jet_partial(a, axis, times=1):
    if isinstance(a, Jet1):
        return a.d(times)
    return a.partial(axis, times)


# ---------------------------------------------------------------------------
class JetVec:
    """A 2- or 3-component vector of jets of one kind and one order."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = list(components)
        if len(comps) not in (2, 3):
            raise ValueError("JetVec needs 2 or 3 components")
        kinds = {type(c) for c in comps if isinstance(c, Jet)}
        if len(kinds) != 1 or not all(isinstance(c, Jet) for c in comps):
            raise TypeError("JetVec components must be jets of one kind")
        n = min(c.order for c in comps)
        object.__setattr__(self, "components", tuple(c.truncate(n) for c in comps))

    def __setattr__(self, name, value):
        raise AttributeError("JetVec is immutable")

    @property
    def dim(self):
        return len(self.components)

    @property
    def order(self):
        return self.components[0].order

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __len__(self):
        return len(self.components)

    def map(self, fn):
        return JetVec(fn(c) for c in self.components)

    def value(self):
        return np.array([c.value for c in self.components])

    def __add__(self, other):
        return JetVec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return JetVec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return self.map(lambda c: -c)

    def __mul__(self, s):
        return self.map(lambda c: c * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self.map(lambda c: c / s)

    def truncate(self, order):
        return self.map(lambda c: c.truncate(order))

    def partial(self, axis, times=1):
        return self.map(lambda c: jet_partial(c, axis, times))

    def restrict(self, axis="u"):
        return self.map(lambda c: c.restrict(axis))

    def compose(self, *inner):
        return self.map(lambda c: c.compose(*inner))

    def d(self, times=1):
        return self.map(lambda c: c.d(times))

    def derivative_at_zero(self, k):
        return np.array([c.derivative_at_zero(k) for c in self.components])

    def coeff_array(self):
        return np.stack([c.c for c in self.components])


def dot(a, b):
    out = a[0] * b[0]
    for x, y in zip(list(a)[1:], list(b)[1:]):
        out = out + x * y
    return out


def cross(a, b):
    return JetVec(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )


def det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def det3(a, b, c):
    return dot(a, cross(b, c))


def norm(a):
    return sqrt(dot(a, a))


def normalize(a):
    return a / norm(a)
