"""The twisted group algebra Q_W and the Demazure / push-pull elements.

An element of Q_W is a dict ``{z: coefficient}`` of delta-coordinates,
coefficients being :class:`QElem` or, for the generators, :class:`RootMono`.
The product is ``(q d_z)(q' d_z') = q z(q') d_{zz'}``.
"""

from __future__ import annotations

from typing import Sequence

from .qring import NotInS, QElem, QRing, RootMono
from .series import Series


def _add_coeff(Q: QRing, a, b):
    if a is None:
        return b
    if isinstance(a, RootMono) and isinstance(b, RootMono) and a.key() == b.key():
        c = a.coeff + b.coeff
        return None if c == 0 else RootMono(c, a.xe, a.ue)
    return Q.coerce(a) + Q.coerce(b)


def _mul_coeff(Q: QRing, a, b):
    if isinstance(a, RootMono):
        if isinstance(b, RootMono):
            return a * b
        return Q.coerce(b) * a
    return a * b


class QW:
    """An element ``sum_z q_z delta_z`` of the twisted group algebra."""

    __slots__ = ("Q", "coeffs")

    def __init__(self, Q: QRing, coeffs: dict):
        self.Q = Q
        self.coeffs = {z: c for z, c in coeffs.items() if c is not None}

    def __getitem__(self, z):
        return self.coeffs.get(z)

    def coeff_q(self, z) -> QElem | None:
        c = self.coeffs.get(z)
        return None if c is None else self.Q.coerce(c)

    def __add__(self, other: "QW") -> "QW":
        out = dict(self.coeffs)
        for z, c in other.coeffs.items():
            out[z] = _add_coeff(self.Q, out.get(z), c)
        return QW(self.Q, out)

    def __neg__(self):
        return QW(self.Q, {z: (-c) for z, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "QW":
        """Left multiplication by an element of Q (or a RootMono)."""
        return QW(self.Q, {z: _mul_coeff(self.Q, q, c) for z, c in self.coeffs.items()})

    def __mul__(self, other: "QW") -> "QW":
        return mul_qw(self, other)

    def support(self):
        return sorted(self.coeffs)


def _twist(Q: QRing, y: int, c):
    if isinstance(c, RootMono):
        return c.weyl(Q.rs, y)
    return c.weyl(y)


def mul_qw(h: QW, g: QW) -> QW:
    Q = h.Q
    mult = Q.rs.mult
    out: dict[int, list] = {}
    for y, p in h.coeffs.items():
        for z, q in g.coeffs.items():
            out.setdefault(mult[y][z], []).append(_mul_coeff(Q, p, _twist(Q, y, q)))
    coeffs = {}
    for z, terms in out.items():
        if len(terms) == 1:
            coeffs[z] = terms[0]
        else:
            acc = None
            monos = [t for t in terms if isinstance(t, RootMono)]
            if len(monos) == len(terms):
                for t in terms:
                    acc = _add_coeff(Q, acc, t)
                coeffs[z] = acc
            else:
                coeffs[z] = Q.sum([Q.coerce(t) for t in terms])
    return QW(Q, coeffs)


class TwistedAlgebra:
    """Generators of Q_W and D for a fixed root system, law and word table."""

    def __init__(self, Q: QRing, x_sign: int = 1):
        if x_sign not in (1, -1):
            raise ValueError("x_sign must be 1 or -1")
        self.Q = Q
        self.x_sign = x_sign
        self.rs = Q.rs
        self.S = Q.S
        self._seq = {"Y": {(): self.delta(0)}, "X": {(): self.delta(0)}}
        self._base = {}

    # -- generators --------------------------------------------------------

    def delta(self, z: int, coeff=None) -> QW:
        c = RootMono.one(self.rs.npos) if coeff is None else coeff
        return QW(self.Q, {z: c})

    def one(self) -> QW:
        return self.delta(0)

    def y_of(self, i: int) -> QW:
        """Y_s = x_{-a}^{-1} d_e + x_a^{-1} d_s for the simple reflection ``s_i``."""
        rs, Q = self.rs, self.Q
        a = rs.simple_root_index[i]
        return QW(Q, {0: Q.mono(x=[(rs.neg_root(a), -1)]),
                      rs.gen_index[i]: Q.mono(x=[(a, -1)])})

    def x_of(self, i: int) -> QW:
        """X_s = x_a^{-1} (d_e - d_s), times ``x_sign``."""
        rs, Q = self.rs, self.Q
        a = rs.simple_root_index[i]
        sg = self.x_sign
        return QW(Q, {0: Q.mono(sg, x=[(a, -1)]), rs.gen_index[i]: Q.mono(-sg, x=[(a, -1)])})

    def generator(self, family: str, i: int) -> QW:
        return self.y_of(i) if family == "Y" else self.x_of(i)

    def y_parab(self) -> QW:
        """Y_P = sum over W_L of d_v x_L^{-1} = sum v(x_L^{-1}) d_v."""
        inv = self.Q.x_L_mono().inverse()
        return QW(self.Q, {v: inv.weyl(self.rs, v) for v in self.rs.levi})

    def y_gl(self) -> QW:
        """Y_{G,L} = sum over W^L of w(x_G^{-1} x_L) d_w."""
        m = self.Q.x_G_mono().inverse() * self.Q.x_L_mono()
        return QW(self.Q, {w: m.weyl(self.rs, w) for w in self.rs.min_reps})

    def y_full(self) -> QW:
        inv = self.Q.x_G_mono().inverse()
        return QW(self.Q, {z: inv.weyl(self.rs, z) for z in range(self.rs.order)})

    # -- words -------------------------------------------------------------

    def seq(self, family: str, word: Sequence[int]) -> QW:
        word = tuple(word)
        memo = self._seq[family]
        got = memo.get(word)
        if got is None:
            got = mul_qw(self.seq(family, word[:-1]), self.generator(family, word[-1]))
            got = QW(self.Q, {z: (c.reduce() if isinstance(c, QElem) else c)
                              for z, c in got.coeffs.items()})
            memo[word] = got
        return got

    def y_seq(self, word) -> QW:
        return self.seq("Y", word)

    def x_seq(self, word) -> QW:
        return self.seq("X", word)

    def basis_element(self, family: str, z: int) -> QW:
        return self.seq(family, self.rs.words[z])

    # -- action on S and Q ---------------------------------------------------

    def act_on(self, h: QW, q) -> QElem:
        """``sum_y q_y y(q)``; in particular ``Y_s . 1 = kappa_alpha``."""
        Q = self.Q
        q = Q.coerce(q)
        terms = []
        for y, c in h.coeffs.items():
            terms.append(Q.coerce(c) * q.weyl(y) if not isinstance(c, RootMono) else q.weyl(y) * c)
        return Q.sum(terms) or Q.zero()

    def act_on_S(self, h: QW, q, need: int | None = None) -> Series:
        return self.act_on(h, q).to_S(need)

    def delta_delta_coeff(self, h: QW) -> dict:
        return {z: self.Q.coerce(c) for z, c in h.coeffs.items()}

    # -- base change -------------------------------------------------------

    def base_change(self, family: str) -> "BaseChange":
        got = self._base.get(family)
        if got is None:
            got = BaseChange(self, family)
            self._base[family] = got
        return got

    def b_of_sequence(self, family: str, word: Sequence[int]) -> dict:
        """Coefficients ``b_{I,z}`` of ``T_I`` in the basis ``T_z`` (nonzero ones)."""
        return self.base_change(family).expand_qw(self.seq(family, word))


class BaseChange:
    """``T_z = sum a_{z,y} d_y`` and ``d_z = sum b_{z,y} T_y`` for T = Y or X."""

    def __init__(self, alg: TwistedAlgebra, family: str):
        self.alg = alg
        self.family = family
        rs = alg.rs
        Q = alg.Q
        self.Q = Q
        N = rs.order
        self.a: list[dict[int, QElem]] = []
        self.a_mono_diag: list[RootMono] = []
        for z in range(N):
            el = alg.basis_element(family, z)
            diag = el[z]
            if not isinstance(diag, RootMono):
                raise AssertionError("diagonal coefficient of a basis element is not a monomial")
            self.a_mono_diag.append(diag)
            self.a.append({y: Q.coerce(c) for y, c in el.coeffs.items()})
            for y in el.coeffs:
                if not rs.bruhat_leq(y, z):
                    raise AssertionError(f"a_{{{rs.name(z)},{rs.name(y)}}} nonzero but not below in Bruhat order")
        # b by triangular inversion, in order of length so that b_{y,*} is ready
        self.b: list[dict[int, Series]] = [None] * N
        self.bq: list[dict[int, QElem]] = [None] * N
        trunc = alg.S.trunc
        for z in sorted(range(N), key=lambda t: rs.length[t]):
            inv_diag = self.a_mono_diag[z].inverse()
            row = {}
            rowq = {}
            below = [y for y in self.a[z] if y != z]
            for x in range(N):
                if not rs.bruhat_leq(x, z):
                    continue
                terms = []
                if x == z:
                    terms.append(Q.one())
                for y in below:
                    byx = self.bq[y].get(x)
                    if byx is not None:
                        terms.append(-(self.a[z][y] * byx))
                total = Q.sum(terms)
                if total is None:
                    continue
                val = total * inv_diag
                try:
                    s = val.to_S(trunc)
                except NotInS as exc:
                    raise NotInS(f"b_{{{rs.name(z)},{rs.name(x)}}} ({family}) is not in S") from exc
                if s.is_exact and not s.parts:
                    continue
                row[x] = s
                rowq[x] = Q.from_S(s)
            self.b[z] = row
            self.bq[z] = rowq

    def a_entry(self, z: int, y: int) -> QElem | None:
        return self.a[z].get(y)

    def b_entry(self, z: int, y: int) -> Series | None:
        return self.b[z].get(y)

    def check_inverse(self) -> bool:
        """``A B = I`` in Q, entrywise."""
        rs, Q = self.alg.rs, self.Q
        for z in range(rs.order):
            for x in range(rs.order):
                terms = [self.a[z][y] * self.bq[y][x] for y in self.a[z] if x in self.bq[y]]
                total = Q.sum(terms)
                expect = 1 if x == z else 0
                if total is None:
                    if expect:
                        return False
                    continue
                if not total.to_S().agrees(Q.S.const(expect), Q.S.trunc):
                    return False
        return True

    def expand_qw(self, h: QW) -> dict:
        """Coefficients of ``h`` in the T-basis, as series (must lie in S)."""
        Q = self.Q
        acc: dict[int, list] = {}
        for y, c in h.coeffs.items():
            cq = Q.coerce(c)
            for x, b in self.bq[y].items():
                acc.setdefault(x, []).append(cq * b)
        out = {}
        for x, terms in acc.items():
            s = Q.sum(terms).to_S(Q.S.trunc)
            if not (s.is_exact and not s.parts):
                out[x] = s
        return out
