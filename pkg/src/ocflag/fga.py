"""The formal group algebra S in its power-series model.

``S`` is modelled as power series in ``x_1..x_n`` where ``x_i`` stands for
``x_{omega_i}``; the element ``x_lambda`` for ``lambda = sum c_i omega_i`` is
the formal sum ``F([c_1](x_1), ..., [c_n](x_n))``.  The Weyl group acts by
``w(x_lambda) = x_{w lambda}``, realised as substitution of the generators.
"""

from __future__ import annotations

from typing import Sequence

from .formal import FormalGroupLaw
from .rootdata import RootSystem
from .series import INF, NotDivisible, PrecisionError, Series, SeriesRing


class FormalGroupAlgebra:
    """S for a root system and a formal group law.

    ``trunc`` is the degree N to which results are reported; ``cap`` is the
    working degree at which series are stored.  The law itself is expanded two
    degrees further than ``cap`` because ``G`` loses two degrees to the
    division by ``t u``.
    """

    def __init__(self, rs: RootSystem, fgl_spec: str = "additive", trunc: int = 6,
                 cap: int | None = None, integral: bool = False):
        self.rs = rs
        self.trunc = trunc
        self.cap = cap if cap is not None else trunc + 2 * rs.npos + 2
        if self.cap < trunc:
            raise ValueError("working degree must be at least the truncation degree")
        if isinstance(fgl_spec, FormalGroupLaw):
            self.fgl = fgl_spec
        else:
            self.fgl = FormalGroupLaw.parse(fgl_spec, self.cap + 2)
        if integral and self.fgl.kind == "generic":
            raise ValueError("generic law needs rational scalars")
        if integral and rs.family == "C":
            raise ValueError("type C is not supported over the integers")
        names = tuple(f"x{i + 1}" for i in range(rs.rank))
        self.ring = SeriesRing(names, self.fgl.params, self.cap, integral=integral)
        self._x: dict[tuple, Series] = {}
        self._images: dict[int, list[Series]] = {}
        self._root_x = [self.x_of_weight(r) for r in rs.roots]
        self._kappa = [None] * len(rs.roots)
        self._u = [None] * len(rs.roots)
        self._upow: dict[tuple[int, int], Series] = {}
        self._xpow: dict[tuple[int, int], Series] = {}

    # -- generators --------------------------------------------------------

    def gen(self, i: int) -> Series:
        return self.ring.gen(i)

    def one(self) -> Series:
        return self.ring.one()

    def zero(self) -> Series:
        return self.ring.zero()

    def const(self, c) -> Series:
        return self.ring.const(c)

    def x_of_weight(self, lam: Sequence[int]) -> Series:
        lam = tuple(int(c) for c in lam)
        got = self._x.get(lam)
        if got is not None:
            return got
        pieces = []
        for i, c in enumerate(lam):
            if c:
                pieces.append(self.fgl.m_series(c).substitute([self.ring.gen(i)]))
        out = self.fgl.nary_sum(pieces, self.ring)
        self._x[lam] = out
        return out

    def x_root(self, r: int) -> Series:
        return self._root_x[r]

    def kappa(self, r: int) -> Series:
        if self._kappa[r] is None:
            self._kappa[r] = self.fgl.kappa_series().substitute([self._root_x[r]])
        return self._kappa[r]

    def u(self, r: int) -> Series:
        if self._u[r] is None:
            self._u[r] = self.kappa(r) * self._root_x[r] - 1
        return self._u[r]

    def u_power(self, r: int, k: int) -> Series:
        """``u_r^k`` for a positive root index ``r`` and any integer ``k``."""
        key = (r, k)
        got = self._upow.get(key)
        if got is None:
            if k == 0:
                got = self.one()
            elif k == 1:
                got = self.u(r)
            elif k == -1:
                got = self.u(r).inverse()
            else:
                step = 1 if k > 0 else -1
                got = self.u_power(r, k - step) * self.u_power(r, step)
            self._upow[key] = got
        return got

    def x_power(self, r: int, k: int) -> Series:
        key = (r, k)
        got = self._xpow.get(key)
        if got is None:
            if k == 0:
                got = self.one()
            elif k == 1:
                got = self._root_x[r]
            else:
                got = self.x_power(r, k - 1) * self._root_x[r]
            self._xpow[key] = got
        return got

    def x_parabolic(self) -> Series:
        out = self.one()
        for r in self.rs.levi_positive:
            out = out * self._root_x[self.rs.neg_root(r)]
        return out

    def x_full(self) -> Series:
        out = self.one()
        for r in range(self.rs.npos):
            out = out * self._root_x[self.rs.neg_root(r)]
        return out

    # -- Weyl action -------------------------------------------------------

    def generator_images(self, w: int) -> list[Series]:
        got = self._images.get(w)
        if got is None:
            n = self.rs.rank
            got = []
            for i in range(n):
                omega = tuple(1 if k == i else 0 for k in range(n))
                got.append(self.x_of_weight(self.rs.act_on_weight(w, omega)))
            self._images[w] = got
        return got

    def weyl_act(self, w: int, s: Series, prec=None) -> Series:
        if w == 0:
            return s
        return s.substitute(self.generator_images(w), prec)

    # -- augmentation and units --------------------------------------------

    @staticmethod
    def augment(s: Series):
        return s.constant()

    @staticmethod
    def in_splus(s: Series) -> bool:
        return s.part(0).is_zero()

    @staticmethod
    def in_one_plus_splus(s: Series) -> bool:
        return (s.part(0) - 1).is_zero()

    @staticmethod
    def invert(s: Series) -> Series:
        return s.inverse()

    @staticmethod
    def try_divide(n: Series, d: Series) -> Series:
        return n.divide(d)

    def require(self, s: Series, what: str = "result") -> Series:
        if s.prec < self.trunc:
            raise PrecisionError(
                f"{what} known only to degree {s.prec}, below truncation {self.trunc}; "
                f"raise the working degree (currently {self.cap})")
        return s

    def agree(self, a: Series, b, upto: int | None = None) -> bool:
        return a.agrees(b, self.trunc if upto is None else upto)


__all__ = ["FormalGroupAlgebra", "NotDivisible", "PrecisionError", "INF"]
