"""Normal form of a 5/2-cuspidal edge: builder and closed-form invariants.

The builder realizes

    f(u, v) = (u,
               sum_{i=2..5} a_i u^i/i! + v^2/2,
               sum_{i=2..5} b_i0 u^i/i! + sum_{i=1..3} b_i2 u^i v^2/i!
               + b14 u v^4/4! + b04 v^4/4! + b05 v^5/5! + h(u, v))

with h = 0 unless a remainder is supplied.  The formulas in
:func:`boxed_invariants` give the edge invariants at the origin (derivatives
with respect to arc length of the singular image); they serve as an oracle
for the jet pipeline in :mod:`cusplab.frontal`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Callable, Optional

import numpy as np

from .jets import DEFAULT_SURFACE_ORDER, Jet2, JetVec

COEFF_NAMES = ("a2", "a3", "a4", "a5", "b20", "b30", "b40", "b50", "b12", "b22", "b32", "b14", "b04", "b05")


@dataclass(frozen=True)
class NormalFormCoeffs:
    a2: float = 0.0
    a3: float = 0.0
    a4: float = 0.0
    a5: float = 0.0
    b20: float = 0.0
    b30: float = 0.0
    b40: float = 0.0
    b50: float = 0.0
    b12: float = 0.0
    b22: float = 0.0
    b32: float = 0.0
    b14: float = 0.0
    b04: float = 0.0
    b05: float = 0.0

    @classmethod
    def random(cls, rng, low=-2.0, high=2.0):
        return cls(*(float(x) for x in rng.uniform(low, high, len(COEFF_NAMES))))

    @classmethod
    def parse(cls, text):
        """Read a flat ``a2=1, b05=4`` (comma or whitespace separated) list."""
        values = {}
        for item in text.replace(",", " ").split():
            key, sep, val = item.partition("=")
            if not sep or key not in COEFF_NAMES:
                raise ValueError(f"bad coefficient entry {item!r}; expected one of {', '.join(COEFF_NAMES)}")
            values[key] = float(val)
        return cls(**values)

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class BoxedInvariants:
    kappa_nu: tuple
    kappa_s: tuple
    kappa_t: tuple
    r_b: tuple
    r_c0: float

    @property
    def r_Pi0(self):
        return self.kappa_nu[0] * self.r_c0

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)} | {"r_Pi0": self.r_Pi0}


def build_surface(
    c: NormalFormCoeffs,
    order: int = DEFAULT_SURFACE_ORDER,
    h: Optional[Callable[[Jet2, Jet2], Jet2]] = None,
) -> JetVec:
    u, v = Jet2.variables(order)
    fact = math.factorial
    y = v * v * 0.5
    for i, a in zip(range(2, 6), (c.a2, c.a3, c.a4, c.a5)):
        y = y + u**i * (a / fact(i))
    z = Jet2.constant(0.0, order)
    for i, b in zip(range(2, 6), (c.b20, c.b30, c.b40, c.b50)):
        z = z + u**i * (b / fact(i))
    v2 = v * v
    for i, b in zip(range(1, 4), (c.b12, c.b22, c.b32)):
        z = z + u**i * v2 * (b / fact(i))
    v4 = v2 * v2
    z = z + u * v4 * (c.b14 / 24) + v4 * (c.b04 / 24) + v4 * v * (c.b05 / 120)
    if h is not None:
        z = z + h(u, v)
    return JetVec([u, y, z])


def boxed_invariants(c: NormalFormCoeffs) -> BoxedInvariants:
    a2, a3, a4, a5 = c.a2, c.a3, c.a4, c.a5
    b20, b30, b40, b50 = c.b20, c.b30, c.b40, c.b50
    b12, b22, b32, b14, b04, b05 = c.b12, c.b22, c.b32, c.b14, c.b04, c.b05
    kn = (
        b20,
        b30 - 2 * a2 * b12,
        b40 - 4 * a3 * b12 - 2 * a2**2 * b20 - 2 * a2 * b22 - 3 * b20**3 - 4 * b12**2 * b20,
        b50
        + 14 * a2**3 * b12
        - 7 * a2**2 * b30
        - 6 * a4 * b12
        - 6 * a3 * b22
        - 12 * b12 * b20 * b22
        - 12 * b12**2 * b30
        - 19 * b20**2 * b30
        + a2 * (-6 * a3 * b20 - 2 * b32 + 24 * b12**3 + 32 * b20**2 * b12),
    )
    ks = (
        a2,
        a3 + 2 * b12 * b20,
        a4 - 4 * a2 * (b12**2 + b20**2) + 2 * b20 * b22 + 4 * b12 * b30 - 3 * a2**3,
        a5
        - a2**2 * (8 * b12 * b20 + 19 * a3)
        - 2 * a3 * (6 * b12**2 + 5 * b20**2)
        - 3 * a2 * (4 * b12 * b22 + 5 * b20 * b30)
        - 24 * b20 * b12**3
        + 2 * b12 * (3 * b40 - 13 * b20**3)
        + 6 * b22 * b30
        + 2 * b20 * b32,
    )
    kt = (
        2 * b12,
        2 * b22 - a2 * b20,
        2 * b32 + 4 * a2**2 * b12 - a3 * b20 - 2 * a2 * b30 - 16 * b12**3 - 8 * b20**2 * b12,
    )
    rb = (b04, b14 - 12 * a2 * b12)
    return BoxedInvariants(kn, ks, kt, rb, 3 * b05)


def curvature_scalars_at_origin(c: NormalFormCoeffs):
    """(K, H, K_v, H_v) at the origin of the normal form."""
    K = c.b20 * c.b04 / 3 - 4 * c.b12**2
    H = c.b20 / 2 + c.b04 / 6
    return K, H, c.b20 * c.b05 / 8, c.b05 / 16


def random_coeffs(n, seed, low=-2.0, high=2.0):
    rng = np.random.default_rng(seed)
    return [NormalFormCoeffs.random(rng, low, high) for _ in range(n)]
