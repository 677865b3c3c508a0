"""Truncated multivariate power series with exact rational coefficients.

A :class:`Series` is stored as a list of parts, ``parts[d]`` being the
component that is homogeneous of degree ``d`` in the series variables.  The
coefficients live in a polynomial ring over the rationals in optional
parameter variables (``kappa``, ``m1``, ...), which do not count towards the
degree.  Each series carries a precision ``prec``: the series is known modulo
terms of degree ``> prec``.  ``prec == INF`` marks an exact polynomial.

The arithmetic is a thin layer over ``flint.fmpq_mpoly``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

INF = float("inf")


class PrecisionError(ArithmeticError):
    """Raised when a result would be known to lower precision than required."""


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist."""


def _to_fmpq(c):
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, str):
        f = Fraction(c)
        return flint.fmpq(f.numerator, f.denominator)
    return c


class SeriesRing:
    """Ring of power series in ``names`` over ``Q[params]``, truncated at ``cap``."""

    def __init__(self, names: Sequence[str], params: Sequence[str] = (), cap: int = 6,
                 integral: bool = False):
        self.names = tuple(names)
        self.params = tuple(params)
        self.n = len(self.names)
        self.cap = cap
        self.integral = integral
        self.ctx = flint.fmpq_mpoly_ctx.get(self.names + self.params, "degrevlex")
        self._gens = self.ctx.gens()
        self._zero_poly = self.ctx.from_dict({})

    def __repr__(self):
        return f"SeriesRing({self.names}, params={self.params}, cap={self.cap})"

    def same_as(self, other: "SeriesRing") -> bool:
        return self.ctx is other.ctx and self.cap == other.cap

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Series":
        return Series(self, [], INF)

    def one(self) -> "Series":
        return self.const(1)

    def const(self, c) -> "Series":
        p = self.ctx.constant(_to_fmpq(c)) if not isinstance(c, flint.fmpq_mpoly) else c
        return Series(self, [p], INF)

    def gen(self, i: int) -> "Series":
        return Series(self, [self._zero_poly, self._gens[i]], INF)

    def param(self, name: str) -> "Series":
        return Series(self, [self._gens[self.n + self.params.index(name)]], INF)

    def param_poly(self, name: str):
        return self._gens[self.n + self.params.index(name)]

    def xdeg(self, exps: Sequence[int]) -> int:
        return sum(exps[: self.n])

    def from_poly(self, p, prec=INF) -> "Series":
        """Split an arbitrary polynomial into homogeneous parts."""
        buckets: dict[int, dict] = {}
        for exps, c in p.terms():
            d = int(sum(exps[: self.n]))
            if d <= prec and d <= self.cap:
                buckets.setdefault(d, {})[exps] = c
        top = max(buckets) if buckets else -1
        if prec == INF and p.terms() and any(int(sum(e[: self.n])) > self.cap for e in p.monoms()):
            prec = self.cap
        parts = [self.ctx.from_dict(buckets.get(d, {})) for d in range(top + 1)]
        return Series(self, parts, prec)

    def from_terms(self, terms: Iterable, prec=INF) -> "Series":
        d = {}
        for exps, c in terms:
            exps = tuple(exps)
            d[exps] = d.get(exps, 0) + _to_fmpq(c)
        return self.from_poly(self.ctx.from_dict(d), prec)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Series":
        exps = tuple(exps) + (0,) * (self.n + len(self.params) - len(exps))
        return self.from_terms([(exps, coeff)])

    def coerce(self, c) -> "Series":
        if isinstance(c, Series):
            return c
        return self.const(c)

    # -- substitution ------------------------------------------------------

    def substitute(self, s: "Series", values: Sequence["Series"], prec=None) -> "Series":
        """Evaluate ``s`` (an element of this ring) at ``x_i = values[i]``.

        Every value must have zero constant term.  Parameters are matched by
        name in the ring of the values.  Evaluation is by nested Horner
        schemes, one variable at a time; precision is tracked by the
        multiplications themselves.
        """
        for v in values:
            if v.valuation() < 1:
                raise ValueError("substituted values must have zero constant term")
        target = values[0].ring if values else self
        pmap = [target.n + target.params.index(p) for p in self.params]
        width = target.n + len(target.params)
        n = self.n
        terms = []
        for part in s.parts:
            for exps, c in part.terms():
                terms.append((tuple(int(e) for e in exps), c))

        def leaf(group):
            d = {}
            for exps, c in group:
                full = [0] * width
                for j, e in enumerate(exps[n:]):
                    full[pmap[j]] = e
                d[tuple(full)] = c
            return Series(target, [target.ctx.from_dict(d)], INF)

        def horner(group, k):
            if k == n:
                return leaf(group)
            by = {}
            for t in group:
                by.setdefault(t[0][k], []).append(t)
            v = values[k]
            acc = None
            last = None
            for i in sorted(by, reverse=True):
                inner = horner(by[i], k + 1)
                if acc is None:
                    acc = inner
                else:
                    acc = acc * (v ** (last - i)) + inner if last - i > 1 else acc * v + inner
                last = i
            if last:
                acc = acc * (v ** last) if last > 1 else acc * v
            return acc

        result = horner(terms, 0) if terms else target.zero()
        out_prec = s.prec if prec is None else min(s.prec, prec)
        if out_prec != INF:
            result = result.truncate(out_prec)
        return result

    def rename(self, s: "Series", mapping: Sequence[int]) -> "Series":
        """Relabel variable ``i`` of ``s.ring`` as variable ``mapping[i]`` of self."""
        src = s.ring
        parts = []
        for part in s.parts:
            d = {}
            for exps, c in part.terms():
                new = [0] * (self.n + len(self.params))
                for i in range(src.n):
                    new[mapping[i]] += exps[i]
                for j, name in enumerate(src.params):
                    new[self.n + self.params.index(name)] += exps[src.n + j]
                d[tuple(new)] = c
            parts.append(self.ctx.from_dict(d))
        return Series(self, parts, s.prec)


class Series:
    __slots__ = ("ring", "parts", "prec")

    def __init__(self, ring: SeriesRing, parts: list, prec=INF):
        self.ring = ring
        top = len(parts) - 1
        while top >= 0 and parts[top].is_zero():
            top -= 1
        parts = parts[: top + 1]
        if prec == INF and len(parts) > ring.cap + 1:
            prec = ring.cap
        if prec != INF:
            prec = min(prec, ring.cap)
            parts = parts[: prec + 1] if prec >= 0 else []
        self.parts = parts
        self.prec = prec

    # -- inspection --------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def part(self, d: int):
        if d < len(self.parts):
            return self.parts[d]
        return self.ring._zero_poly

    def valuation(self):
        for d, p in enumerate(self.parts):
            if not p.is_zero():
                return d
        return INF if self.prec == INF else self.prec + 1

    def is_zero(self, upto=None) -> bool:
        top = len(self.parts) - 1 if upto is None else min(upto, len(self.parts) - 1)
        return all(self.parts[d].is_zero() for d in range(top + 1))

    def constant(self):
        """Augmentation: the degree-0 part, as an fmpq when parameter-free."""
        p = self.part(0)
        if p.is_zero():
            return flint.fmpq(0)
        if p.is_constant():
            return p.leading_coefficient()
        return p

    def degree(self) -> int:
        return len(self.parts) - 1

    def truncate(self, prec) -> "Series":
        if prec >= self.prec:
            return self
        return Series(self.ring, list(self.parts[: max(prec, -1) + 1]), prec)

    def require(self, prec) -> "Series":
        if self.prec < prec:
            raise PrecisionError(f"series known to degree {self.prec}, need {prec}")
        return self

    def agrees(self, other, upto: int) -> bool:
        """Equality modulo degree ``upto + 1``; both sides must be known that far."""
        other = self.ring.coerce(other)
        if self.prec < upto or other.prec < upto:
            raise PrecisionError(f"comparison at degree {upto} needs more precision "
                                 f"({self.prec}, {other.prec})")
        for d in range(upto + 1):
            if self.part(d) != other.part(d):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Series):
            try:
                other = self.ring.coerce(other)
            except Exception:
                return NotImplemented
        if self.prec != other.prec:
            return False
        n = max(len(self.parts), len(other.parts))
        return all(self.part(d) == other.part(d) for d in range(n))

    def __hash__(self):
        return hash((self.prec, tuple(str(p) for p in self.parts)))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            other = self.ring.coerce(other)
        prec = min(self.prec, other.prec)
        a, b = self.parts, other.parts
        top = max(len(a), len(b))
        if prec != INF:
            top = min(top, prec + 1)
        z = self.ring._zero_poly
        parts = [(a[d] if d < len(a) else z) + (b[d] if d < len(b) else z) for d in range(top)]
        return Series(self.ring, parts, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.ring, [-p for p in self.parts], self.prec)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = self.ring.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def scale(self, c) -> "Series":
        c = _to_fmpq(c)
        if c == 0:
            return Series(self.ring, [], self.prec)
        return Series(self.ring, [p * c for p in self.parts], self.prec)

    def __mul__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, (int, Fraction, flint.fmpq)):
                return self.scale(other)
            other = self.ring.coerce(other)
        ring = self.ring
        va, vb = self.valuation(), other.valuation()
        prec = min(self.prec + vb, other.prec + va)
        a, b = self.parts, other.parts
        if prec == INF:
            top = len(a) + len(b) - 2
            if top > ring.cap:
                prec = ring.cap
                top = ring.cap
        else:
            prec = min(prec, ring.cap)
            top = min(prec, len(a) + len(b) - 2)
        if top < 0 or va == INF or vb == INF:
            return Series(ring, [], prec)
        parts = []
        z = ring._zero_poly
        la, lb = len(a), len(b)
        for d in range(top + 1):
            acc = None
            lo = max(va, d - lb + 1)
            hi = min(d - vb, la - 1)
            for i in range(lo, hi + 1):
                pa = a[i]
                pb = b[d - i]
                if pa.is_zero() or pb.is_zero():
                    continue
                t = pa * pb
                acc = t if acc is None else acc + t
            parts.append(z if acc is None else acc)
        return Series(ring, parts, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divide(self, d: "Series") -> "Series":
        """Exact quotient ``self / d`` in the power-series ring.

        Solved degree by degree against the lowest nonvanishing part of ``d``.
        Raises :class:`NotDivisible` when some degree within the known
        precision leaves a remainder.
        """
        if not isinstance(d, Series):
            d = self.ring.coerce(d)
        ring = self.ring
        v = d.valuation()
        if v == INF or v > d.prec:
            raise ZeroDivisionError("division by a series not known to be nonzero")
        n = self
        for k in range(min(v, len(n.parts))):
            if k <= n.prec and not n.parts[k].is_zero():
                raise NotDivisible(f"dividend has a nonzero part of degree {k} below the divisor valuation {v}")
        if n.is_exact and d.is_exact:
            num = sum(n.parts, ring._zero_poly)
            den = sum(d.parts, ring._zero_poly)
            q, r = divmod(num, den)
            if r.is_zero():
                return ring.from_poly(q)
            top_prec = ring.cap
            npre = ring.cap + v
        else:
            npre = n.prec
            top_prec = min(n.prec - v, d.prec - v + max(0, n.valuation() - v))
        lead = d.parts[v]
        qparts = []
        limit = min(top_prec, ring.cap)
        last = limit if npre == INF else min(limit, int(npre - v))
        for k in range(int(last) + 1):
            r = n.part(k + v)
            for j in range(1, k + 1):
                if v + j >= len(d.parts):
                    break
                qk = qparts[k - j]
                if not qk.is_zero():
                    r = r - qk * d.parts[v + j]
            if r.is_zero():
                qparts.append(ring._zero_poly)
                continue
            q, rem = divmod(r, lead)
            if not rem.is_zero():
                raise NotDivisible(f"no exact quotient in degree {k}")
            qparts.append(q)
        q = Series(ring, qparts, top_prec)
        if ring.integral:
            q.check_integral()
        return q

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self.scale(flint.fmpq(1) / _to_fmpq(other))
        return self.divide(other)

    def inverse(self) -> "Series":
        c = self.part(0)
        if c.is_zero() or not c.is_constant():
            raise NotDivisible("series is not a unit: constant term is not a nonzero rational")
        return self.ring.one().divide(self)

    def check_integral(self):
        for p in self.parts:
            for c in p.coeffs():
                if c.q != 1:
                    raise NotDivisible(f"non-integral coefficient {c}")
        return self

    # -- evaluation --------------------------------------------------------

    def substitute(self, values, prec=None) -> "Series":
        return self.ring.substitute(self, values, prec)

    # -- serialization -----------------------------------------------------

    def terms(self):
        """Sorted ``(exponents, coefficient)`` pairs; graded reverse lex order."""
        out = []
        n = self.ring.n
        for p in self.parts:
            for exps, c in p.terms():
                out.append((tuple(int(e) for e in exps), c))
        out.sort(key=lambda t: (sum(t[0][:n]), sum(t[0]), tuple(-e for e in reversed(t[0]))))
        return out

    def serialize(self) -> dict:
        prec = None if self.prec == INF else int(self.prec)
        return {"prec": prec, "terms": [[list(e), str(c)] for e, c in self.terms()]}

    @classmethod
    def deserialize(cls, ring: SeriesRing, data: dict) -> "Series":
        prec = INF if data.get("prec") is None else data["prec"]
        return ring.from_terms(((tuple(e), Fraction(c)) for e, c in data["terms"]), prec)

    def __repr__(self):
        return f"Series({self.to_str()})"

    def to_str(self) -> str:
        names = self.ring.names + self.ring.params
        chunks = []
        for exps, c in self.terms():
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}") for i, e in enumerate(exps) if e
            )
            cs = str(c)
            if not mono:
                chunks.append(cs)
            elif cs == "1":
                chunks.append(mono)
            elif cs == "-1":
                chunks.append("-" + mono)
            else:
                chunks.append(f"{cs}*{mono}")
        body = " + ".join(chunks).replace("+ -", "- ") or "0"
        if self.prec != INF:
            body += f" + O({self.prec + 1})"
        return body

    __str__ = to_str
