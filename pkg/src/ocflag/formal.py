"""One-dimensional commutative formal group laws, truncated at a fixed degree.

Three kinds are supported: the additive law ``t + u``, the multiplicative law
``t + u - k t u`` (``k`` a rational number or the formal parameter ``kappa``)
and a generic law of finite depth ``d``, obtained from the logarithm
``t + m1 t^2 + ... + md t^(d+1)`` with formal parameters ``m1..md``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .series import INF, Series, SeriesRing


class FGLSpecError(ValueError):
    pass


class FormalGroupLaw:
    """``F(t, u) = t + u - t u G(t, u)`` with its formal inverse and m-series."""

    def __init__(self, kind: str = "additive", cap: int = 6, value=None, depth: int = 0):
        self.kind = kind
        self.cap = cap
        self.value = value
        self.depth = depth
        if kind == "additive":
            params = ()
        elif kind == "multiplicative":
            if value is None:
                raise FGLSpecError("multiplicative law needs a value or 'formal'")
            params = ("kappa",) if value == "formal" else ()
        elif kind == "generic":
            if depth < 1:
                raise FGLSpecError("generic law needs depth >= 1")
            params = tuple(f"m{k}" for k in range(1, depth + 1))
        else:
            raise FGLSpecError(f"unknown formal group law {kind!r}")
        self.params = params
        self.ring1 = SeriesRing(("t",), params, cap)
        self.ring2 = SeriesRing(("t", "u"), params, cap)
        t, u = self.ring2.gen(0), self.ring2.gen(1)
        if kind == "additive":
            self.F = t + u
        elif kind == "multiplicative":
            k = self.ring2.param("kappa") if value == "formal" else self.ring2.const(Fraction(value))
            self.F = t + u - k * t * u
        else:
            self.F = self._generic_law()
        self.G = (t + u - self.F).divide(t * u)
        self.iota = self._formal_inverse()
        self._mcache = {0: self.ring1.zero(), 1: self.ring1.gen(0)}
        self._kappa = None

    @classmethod
    def parse(cls, spec: str, cap: int) -> "FormalGroupLaw":
        """Build a law from ``additive``, ``multiplicative:<q|formal>`` or ``generic:<d>``."""
        kind, _, arg = spec.strip().partition(":")
        kind = kind.strip().lower()
        if kind == "additive":
            if arg:
                raise FGLSpecError("additive law takes no argument")
            return cls("additive", cap)
        if kind == "multiplicative":
            arg = arg.strip() or "1"
            if arg != "formal":
                try:
                    Fraction(arg)
                except ValueError:
                    raise FGLSpecError(f"bad multiplicative parameter {arg!r}") from None
            return cls("multiplicative", cap, value=arg)
        if kind == "generic":
            try:
                depth = int(arg)
            except ValueError:
                raise FGLSpecError(f"bad generic depth {arg!r}") from None
            return cls("generic", cap, depth=depth)
        raise FGLSpecError(f"unknown formal group law {spec!r}")

    @classmethod
    def validate_spec(cls, spec: str) -> None:
        """Raise :class:`FGLSpecError` for a malformed law description."""
        cls.parse(spec, 2)

    @property
    def spec(self) -> str:
        if self.kind == "additive":
            return "additive"
        if self.kind == "multiplicative":
            return f"multiplicative:{self.value}"
        return f"generic:{self.depth}"

    # -- construction ------------------------------------------------------

    def logarithm(self) -> Series:
        r = self.ring1
        t = r.gen(0)
        log = t
        for k in range(1, self.depth + 1):
            log = log + r.param(f"m{k}") * t ** (k + 1)
        return log

    def _generic_law(self) -> Series:
        r1 = self.ring1
        y = r1.gen(0)
        log = self.logarithm()
        # exp is the compositional inverse of log: exp = y - (log(exp) - exp)
        higher = log - y
        exp = y
        for _ in range(self.cap):
            exp = y - higher.substitute([exp.truncate(self.cap)])
        exp = exp.truncate(self.cap)
        self._exp = exp
        r2 = self.ring2
        s = log.substitute([r2.gen(0)]) + log.substitute([r2.gen(1)])
        return exp.substitute([s])

    def _formal_inverse(self) -> Series:
        r1 = self.ring1
        t = r1.gen(0)
        if self.kind == "additive":
            return -t
        if self.kind == "multiplicative":
            # F(t, i) = 0 gives i = -t / (1 - k t)
            kk = r1.param("kappa") if self.value == "formal" else r1.const(Fraction(self.value))
            return -t * (r1.one() - kk * t).inverse()
        # generic: i = exp(-log t)
        return self._exp.substitute([-self.logarithm()])

    # -- evaluation --------------------------------------------------------

    def add(self, a: Series, b: Series) -> Series:
        """``F(a, b)`` for series with zero constant term in a common ring."""
        if a.valuation() < 1 or b.valuation() < 1:
            raise ValueError("formal group law arguments must have zero constant term")
        if self.kind == "additive":
            return a + b
        return self.F.substitute([a, b])

    def G_at(self, a: Series, b: Series) -> Series:
        return self.G.substitute([a, b])

    def kappa_series(self) -> Series:
        """The univariate series ``G(t, iota(t))``, so that ``kappa_beta = k(x_beta)``."""
        if self._kappa is None:
            t = self.ring1.gen(0)
            self._kappa = self.G_at(t, self.inverse_of(t))
        return self._kappa

    def inverse_of(self, a: Series) -> Series:
        if self.kind == "additive":
            return -a
        return self.iota.substitute([a])

    def m_series(self, m: int) -> Series:
        """The univariate series ``[m](t)``."""
        if m in self._mcache:
            return self._mcache[m]
        if m < 0:
            out = self.inverse_of(self.m_series(-m))
        else:
            out = self.add(self.ring1.gen(0), self.m_series(m - 1)) if m > 1 else self.ring1.gen(0)
        self._mcache[m] = out
        return out

    def nary_sum(self, items: Sequence[Series], ring: SeriesRing | None = None) -> Series:
        items = list(items)
        if not items:
            if ring is None:
                raise ValueError("empty sum needs a target ring")
            return ring.zero()
        acc = items[0]
        if acc.valuation() < 1:
            raise ValueError("formal group law arguments must have zero constant term")
        for b in items[1:]:
            if acc.valuation() == INF:
                acc = b
            elif b.valuation() == INF:
                continue
            else:
                acc = self.add(acc, b)
        return acc

    # -- axioms ------------------------------------------------------------

    def check_axioms(self, degree: int | None = None) -> dict[str, bool]:
        """Check unit, commutativity, associativity and inverse mod ``degree + 1``."""
        deg = min(self.cap, degree if degree is not None else self.cap)
        r1, r2 = self.ring1, self.ring2
        t, u = r2.gen(0), r2.gen(1)
        out = {}
        out["unit"] = _unit_check(self, deg)
        out["commutative"] = self.F.substitute([u, t]).agrees(self.F, deg)
        r3 = SeriesRing(("t", "u", "v"), self.params, self.cap)
        a, b, c = r3.gen(0), r3.gen(1), r3.gen(2)
        lhs = self.add(self.add(a, b), c)
        rhs = self.add(a, self.add(b, c))
        out["associative"] = lhs.agrees(rhs, deg)
        tt = r1.gen(0)
        out["inverse"] = self.add(tt, self.iota).is_zero(deg)
        return out


def _unit_check(fgl: FormalGroupLaw, deg: int) -> bool:
    # F(t, 0) = t: every term of F other than t itself involves u
    for exps, c in fgl.F.terms():
        if exps[1] == 0 and not (exps[0] == 1 and c == 1):
            if exps[0] <= deg:
                return False
    return True
