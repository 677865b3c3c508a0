"""The localization Q of S at the elements x_beta.

An element of Q is stored as ``num * prod_beta x_beta^e_beta`` where ``num``
is a series, ``beta`` runs over the positive roots and the exponents ``e`` may
be negative.  Negative roots never appear: ``x_{-beta} = x_beta / u_beta``
with ``u_beta`` a unit of S.  Keeping the root factors symbolic means that
most cancellations between numerators and denominators happen on exponent
vectors and cost no precision; a genuine division only occurs in
:meth:`QElem.to_S`.

:class:`RootMono` is the multiplicative group generated by the ``x_beta`` and
``u_beta``, with an exact and cheap Weyl action.  Coefficients of the
generators of the twisted group algebra are of this form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint

from .fga import FormalGroupAlgebra
from .series import INF, NotDivisible, PrecisionError, Series


class NotInS(ArithmeticError):
    """An element of Q that is not (to the available precision) in S."""


def _fq(c):
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


class RootMono:
    """``coeff * prod x_beta^xe[beta] * prod u_beta^ue[beta]`` over positive roots."""

    __slots__ = ("coeff", "xe", "ue")

    def __init__(self, coeff, xe: tuple, ue: tuple):
        self.coeff = _fq(coeff)
        self.xe = xe
        self.ue = ue

    @classmethod
    def one(cls, npos: int) -> "RootMono":
        z = (0,) * npos
        return cls(1, z, z)

    @classmethod
    def build(cls, rs, coeff=1, x=(), u=()) -> "RootMono":
        """Monomial from lists of (root index, exponent); any root, any sign."""
        xe = [0] * rs.npos
        ue = [0] * rs.npos
        for r, e in x:
            if rs.is_positive(r):
                xe[r] += e
            else:
                g = rs.neg_root(r)
                xe[g] += e
                ue[g] -= e
        for r, e in u:
            if rs.is_positive(r):
                ue[r] += e
            else:
                ue[rs.neg_root(r)] -= e
        return cls(coeff, tuple(xe), tuple(ue))

    def __mul__(self, other: "RootMono") -> "RootMono":
        if not isinstance(other, RootMono):
            return NotImplemented
        return RootMono(self.coeff * other.coeff,
                        tuple(a + b for a, b in zip(self.xe, other.xe)),
                        tuple(a + b for a, b in zip(self.ue, other.ue)))

    def inverse(self) -> "RootMono":
        return RootMono(1 / self.coeff, tuple(-a for a in self.xe), tuple(-a for a in self.ue))

    def scale(self, c) -> "RootMono":
        return RootMono(self.coeff * _fq(c), self.xe, self.ue)

    def __neg__(self):
        return self.scale(-1)

    def weyl(self, rs, w: int) -> "RootMono":
        if w == 0:
            return self
        act = rs.root_action[w]
        npos = rs.npos
        xe = [0] * npos
        ue = [0] * npos
        for b in range(npos):
            e = self.xe[b]
            f = self.ue[b]
            if not e and not f:
                continue
            r = act[b]
            if r < npos:
                xe[r] += e
                ue[r] += f
            else:
                g = r - npos
                xe[g] += e
                ue[g] -= e + f
        return RootMono(self.coeff, tuple(xe), tuple(ue))

    def key(self):
        return (self.xe, self.ue)

    def __eq__(self, other):
        return isinstance(other, RootMono) and self.coeff == other.coeff and self.key() == other.key()

    def __hash__(self):
        return hash((str(self.coeff), self.xe, self.ue))

    def __repr__(self):
        return f"RootMono({self.coeff}, x={self.xe}, u={self.ue})"


class QRing:
    """Arithmetic context for Q over a fixed formal group algebra."""

    def __init__(self, S: FormalGroupAlgebra):
        self.S = S
        self.rs = S.rs
        self.npos = S.rs.npos
        self.ring = S.ring
        self._zero_exp = (0,) * self.npos
        self._ucache: dict[tuple, Series] = {self._zero_exp: S.one()}
        self._xcache: dict[tuple, Series] = {self._zero_exp: S.one()}
        self._one = QElem(self, S.one(), self._zero_exp)
        self.x_exact = all(S.x_root(r).is_exact for r in range(self.npos))

    # -- cached products of root series ------------------------------------

    def u_product(self, ue: tuple) -> Series:
        got = self._ucache.get(ue)
        if got is None:
            got = self.S.one()
            for b, f in enumerate(ue):
                if f:
                    got = got * self.S.u_power(b, f)
            self._ucache[ue] = got
        return got

    def x_product(self, xe: tuple) -> Series:
        got = self._xcache.get(xe)
        if got is None:
            got = self.S.one()
            for b, e in enumerate(xe):
                if e < 0:
                    raise ValueError("x_product needs nonnegative exponents")
                if e:
                    got = got * self.S.x_power(b, e)
            self._xcache[xe] = got
        return got

    # -- constructors ------------------------------------------------------

    def one(self) -> "QElem":
        return self._one

    def zero(self) -> "QElem":
        return QElem(self, self.S.zero(), self._zero_exp)

    def from_S(self, s: Series) -> "QElem":
        return QElem(self, s, self._zero_exp)

    def scalar(self, c) -> "QElem":
        return QElem(self, self.S.const(c), self._zero_exp)

    def from_mono(self, m: RootMono) -> "QElem":
        num = self.u_product(m.ue)
        if m.coeff != 1:
            num = num.scale(m.coeff)
        return QElem(self, num, m.xe)

    def coerce(self, a) -> "QElem":
        if isinstance(a, QElem):
            return a
        if isinstance(a, RootMono):
            return self.from_mono(a)
        if isinstance(a, Series):
            return self.from_S(a)
        return self.scalar(a)

    def mono(self, coeff=1, x=(), u=()) -> RootMono:
        return RootMono.build(self.rs, coeff, x, u)

    def x(self, r: int) -> "QElem":
        return self.from_mono(self.mono(x=[(r, 1)]))

    def inv_x(self, r: int) -> "QElem":
        return self.from_mono(self.mono(x=[(r, -1)]))

    def u(self, r: int) -> "QElem":
        return self.from_mono(self.mono(u=[(r, 1)]))

    def kappa(self, r: int) -> "QElem":
        return self.from_S(self.S.kappa(r))

    def inv_root_monomial(self, roots: Sequence[int]) -> "QElem":
        """Inverse of ``prod x_beta`` over the given (possibly repeated) roots."""
        return self.from_mono(self.mono(x=[(r, -1) for r in roots]))

    def x_G_mono(self) -> RootMono:
        rs = self.rs
        return self.mono(x=[(rs.neg_root(b), 1) for b in range(rs.npos)])

    def x_L_mono(self) -> RootMono:
        rs = self.rs
        return self.mono(x=[(rs.neg_root(b), 1) for b in rs.levi_positive])

    # -- sums --------------------------------------------------------------

    def sum(self, items) -> "QElem | None":
        """Sum of an iterable of QElems (``None`` entries skipped); ``None`` if empty."""
        items = [a for a in items if a is not None]
        if not items:
            return None
        m = list(items[0].xe)
        for a in items[1:]:
            for b, e in enumerate(a.xe):
                if e < m[b]:
                    m[b] = e
        m = tuple(m)
        total = None
        for a in items:
            if a.xe == m:
                t = a.num
            else:
                t = a.num * self.x_product(tuple(e - f for e, f in zip(a.xe, m)))
            total = t if total is None else total + t
        return QElem(self, total, m)


class QElem:
    __slots__ = ("Q", "num", "xe")

    def __init__(self, Q: QRing, num: Series, xe: tuple):
        self.Q = Q
        self.num = num
        self.xe = xe

    # -- inspection --------------------------------------------------------

    @property
    def prec(self):
        """Degree to which the value is known (a bookkeeping estimate)."""
        if self.num.prec == INF:
            return INF
        return self.num.prec + sum(self.xe)

    def denominator_degree(self) -> int:
        return -sum(e for e in self.xe if e < 0)

    def is_exact_zero(self) -> bool:
        return not self.num.parts and self.num.prec == INF

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QElem):
            other = self.Q.coerce(other)
        if other.is_exact_zero():
            return self
        if self.is_exact_zero():
            return other
        if self.xe == other.xe:
            return QElem(self.Q, self.num + other.num, self.xe)
        return self.Q.sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.Q, -self.num, self.xe)

    def __sub__(self, other):
        if not isinstance(other, QElem):
            other = self.Q.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.Q.coerce(other) - self

    def __mul__(self, other):
        Q = self.Q
        if isinstance(other, RootMono):
            num = self.num
            if any(other.ue):
                num = num * Q.u_product(other.ue)
            if other.coeff != 1:
                num = num.scale(other.coeff)
            return QElem(Q, num, tuple(a + b for a, b in zip(self.xe, other.xe)))
        if isinstance(other, Series):
            return QElem(Q, self.num * other, self.xe)
        if not isinstance(other, QElem):
            return QElem(Q, self.num.scale(_fq(other)), self.xe)
        return QElem(Q, self.num * other.num, tuple(a + b for a, b in zip(self.xe, other.xe)))

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        """Inverse when the numerator is a unit of S."""
        return QElem(self.Q, self.num.inverse(), tuple(-e for e in self.xe))

    def weyl(self, w: int) -> "QElem":
        """General Weyl action; the numerator is transformed by substitution."""
        if w == 0:
            return self
        Q = self.Q
        num = Q.S.weyl_act(w, self.num)
        m = RootMono(1, self.xe, Q._zero_exp).weyl(Q.rs, w)
        return QElem(Q, num, Q._zero_exp) * m

    # -- S membership ------------------------------------------------------

    def reduce(self) -> "QElem":
        """Cancel denominator factors that divide the numerator."""
        num = self.num
        xe = list(self.xe)
        S = self.Q.S
        for b, e in enumerate(self.xe):
            while xe[b] < 0:
                try:
                    num = num.divide(S.x_root(b))
                except NotDivisible:
                    break
                xe[b] += 1
        return QElem(self.Q, num, tuple(xe))

    def to_S(self, need: int | None = None) -> Series:
        """The element as a series; raises :class:`NotInS` if it is not in S."""
        S = self.Q.S
        num = self.num
        pos = tuple(e if e > 0 else 0 for e in self.xe)
        for b, e in enumerate(self.xe):
            for _ in range(-e):
                try:
                    num = num.divide(S.x_root(b))
                except NotDivisible as exc:
                    raise NotInS(f"not in S: numerator not divisible by x_{S.rs.root_name(b)}") from exc
        if any(pos):
            num = num * self.Q.x_product(pos)
        if need is not None and num.prec < need:
            raise PrecisionError(
                f"value known only to degree {num.prec}, need {need}; raise the working degree "
                f"(currently {S.cap})")
        return num

    def in_S(self) -> bool:
        try:
            self.to_S()
        except NotInS:
            return False
        return True

    def equals(self, other, upto: int | None = None) -> bool:
        """Equality in Q, decided on the numerator of the difference."""
        d = self - other
        if upto is not None and d.prec < upto:
            raise PrecisionError(f"difference known only to degree {d.prec}, need {upto}")
        return d.num.is_zero()

    def serialize(self) -> dict:
        rs = self.Q.rs
        den = {",".join(map(str, rs.roots[b])): e for b, e in enumerate(self.xe) if e}
        return {"num": self.num.serialize(), "roots": den}

    def __repr__(self):
        factors = " ".join(f"x[{self.Q.rs.root_name(b)}]^{e}" for b, e in enumerate(self.xe) if e)
        return f"QElem({self.num.to_str()}{' * ' + factors if factors else ''})"
