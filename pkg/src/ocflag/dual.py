"""The dual side: Q_W^* and D^* as functions on W with pointwise operations.

An element is a dict ``{z: value}`` where the value is the coefficient of the
indicator function ``f_z``.  The twisted group algebra acts by
``(h . f)(z) = sum_y z(q_y) f(zy)`` for ``h = sum_y q_y delta_y``.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .linalg import SingularMatrix, invert_over_S, rank_poly
from .qring import NotInS, QElem, RootMono
from .series import PrecisionError, Series
from .twisted import QW, TwistedAlgebra


class MismatchError(AssertionError):
    """Two independent computations of the same object disagree."""


class DualElem:
    """A function on ``domain`` (all of W, or W_L for the Levi side)."""

    __slots__ = ("Q", "domain", "vals")

    def __init__(self, Q, domain: tuple, vals: dict):
        self.Q = Q
        self.domain = domain
        self.vals = {z: v for z, v in vals.items() if v is not None}

    def __call__(self, z: int) -> QElem | None:
        return self.vals.get(z)

    def value(self, z: int) -> QElem:
        v = self.vals.get(z)
        return self.Q.zero() if v is None else v

    def _combine(self, other, op):
        out = {}
        for z in self.domain:
            out[z] = op(self.vals.get(z), other.vals.get(z))
        return DualElem(self.Q, self.domain, out)

    def __add__(self, other: "DualElem") -> "DualElem":
        def op(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return a + b
        return self._combine(other, op)

    def __neg__(self):
        return DualElem(self.Q, self.domain, {z: -v for z, v in self.vals.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DualElem):
            def op(a, b):
                if a is None or b is None:
                    return None
                return a * b
            return self._combine(other, op)
        c = self.Q.coerce(other)
        return DualElem(self.Q, self.domain, {z: v * c for z, v in self.vals.items()})

    __rmul__ = __mul__

    def reduce(self) -> "DualElem":
        return DualElem(self.Q, self.domain, {z: v.reduce() for z, v in self.vals.items()})

    def equals(self, other: "DualElem") -> bool:
        d = self - other
        return all(v.is_zero() for v in d.vals.values())

    def to_S(self, need=None) -> dict:
        return {z: v.to_S(need) for z, v in self.vals.items()}


class DualModel:
    """Caches and operations for D^* over a twisted algebra and its word table."""

    def __init__(self, T: TwistedAlgebra):
        self.T = T
        self.Q = T.Q
        self.S = T.S
        self.rs = T.rs
        self.trunc = T.S.trunc
        self.W = tuple(range(self.rs.order))
        self.WL = tuple(self.rs.levi)
        self._xg = self.Q.x_G_mono()
        self._xg_inv_at = [self._xg.inverse().weyl(self.rs, y) for y in self.W]
        self._times: dict = {}
        self._times_seq: dict = {}
        self._dual: dict = {}
        self._zstar: dict = {}
        self._gram = None
        self._yp_times: dict = {}

    # -- basic elements ----------------------------------------------------

    def f_point(self, z: int) -> DualElem:
        return DualElem(self.Q, self.W, {z: self.Q.one()})

    def const(self, q, domain=None) -> DualElem:
        q = self.Q.coerce(q)
        dom = self.W if domain is None else domain
        return DualElem(self.Q, dom, {z: q for z in dom})

    def one(self) -> DualElem:
        return self.const(1)

    def from_values(self, vals: dict, domain=None) -> DualElem:
        return DualElem(self.Q, self.W if domain is None else domain,
                        {z: self.Q.coerce(v) for z, v in vals.items()})

    # -- the bullet action ---------------------------------------------------

    def bullet(self, h: QW, f: DualElem) -> DualElem:
        rs, Q = self.rs, self.Q
        mult = rs.mult
        out = {}
        for z in f.domain:
            terms = []
            for y, c in h.coeffs.items():
                zy = mult[z][y]
                val = f.vals.get(zy)
                if val is None:
                    continue
                if zy not in f.domain:
                    raise ValueError("bullet leaves the domain of the function")
                if isinstance(c, RootMono):
                    terms.append(val * c.weyl(rs, z))
                else:
                    terms.append(val * c.weyl(z))
            out[z] = Q.sum(terms)
        return DualElem(Q, f.domain, out)

    def act(self, v: int, f: DualElem) -> DualElem:
        """``delta_v . f``, i.e. ``z -> f(zv)``."""
        mult = self.rs.mult
        return DualElem(self.Q, f.domain, {z: f.vals.get(mult[z][v]) for z in f.domain})

    # -- Bott-Samelson classes ---------------------------------------------

    def _times_from_word(self, family: str, word: tuple) -> DualElem:
        key = (family, word)
        got = self._times_seq.get(key)
        if got is None:
            if not word:
                got = DualElem(self.Q, self.W, {0: self.Q.from_mono(self._xg)})
            else:
                inner = self._times_from_word(family, word[:-1])
                got = self.bullet(self.T.generator(family, word[-1]), inner).reduce()
            self._times_seq[key] = got
        return got

    def times_iterated(self, z: int, family: str = "Y") -> DualElem:
        """``T_{I_z rev} . x_G f_e``: the generator for the first letter acts first."""
        return self._times_from_word(family, tuple(self.rs.words[z]))

    def times_closed(self, z: int, family: str = "Y") -> DualElem:
        """``sum_{y <= z} a_{z,y} y(x_G) f_y``."""
        bc = self.T.base_change(family)
        vals = {}
        for y, a in bc.a[z].items():
            vals[y] = (a * self._xg.weyl(self.rs, y)).reduce()
        return DualElem(self.Q, self.W, vals)

    def times(self, z: int, family: str = "Y", check: bool = False) -> DualElem:
        key = (family, z)
        got = self._times.get(key)
        if got is None:
            got = self.times_iterated(z, family)
            self._times[key] = got
        if check:
            other = self.times_closed(z, family)
            if not got.equals(other):
                raise MismatchError(f"{family}_{self.rs.name(z)}^x: iterated and closed forms differ")
        return got

    def y_times(self, z: int, check: bool = False) -> DualElem:
        return self.times(z, "Y", check)

    def x_times(self, z: int, check: bool = False) -> DualElem:
        return self.times(z, "X", check)

    # -- dual bases and expansions -----------------------------------------

    def dual_basis(self, family: str = "Y") -> list[DualElem]:
        got = self._dual.get(family)
        if got is None:
            bq = self.T.base_change(family).bq
            got = []
            for x in self.W:
                got.append(DualElem(self.Q, self.W, {z: bq[z][x] for z in self.W if x in bq[z]}))
            self._dual[family] = got
        return got

    def dual(self, x: int, family: str = "Y") -> DualElem:
        return self.dual_basis(family)[x]

    def expand_in(self, f: DualElem, family: str = "Y", domain=None) -> dict:
        """Coefficients ``c_x = sum_y a_{x,y} f(y)`` with ``f = sum c_x T_x^*``; all in S."""
        a = self.T.base_change(family).a
        dom = f.domain if domain is None else domain
        out = {}
        for x in dom:
            terms = [c * f.vals[y] for y, c in a[x].items() if y in f.vals]
            total = self.Q.sum(terms)
            if total is None:
                continue
            try:
                out[x] = total.to_S(self.trunc)
            except NotInS as exc:
                raise NotInS(f"coefficient at {family}_{self.rs.name(x)}^* is not in S") from exc
        return out

    def rebuild(self, coeffs: dict, family: str = "Y") -> DualElem:
        out = None
        basis = self.dual_basis(family)
        for x, c in coeffs.items():
            term = basis[x] * self.Q.from_S(c)
            out = term if out is None else out + term
        return out if out is not None else DualElem(self.Q, self.W, {})

    def expand_in_times(self, g: DualElem, family: str = "Y") -> dict:
        """Coefficients of ``g`` in the basis ``T_w^x``: ``sum_y g(y) y(x_G)^{-1} b_{y,w}``."""
        bq = self.T.base_change(family).bq
        acc: dict[int, list] = {}
        for y, val in g.vals.items():
            base = val * self._xg_inv_at[y]
            for w, b in bq[y].items():
                acc.setdefault(w, []).append(base * b)
        return {w: self.Q.sum(t).to_S(self.trunc) for w, t in acc.items()}

    # -- pairings ----------------------------------------------------------

    def pairing(self, f: DualElem, g: DualElem) -> Series:
        """``Y_G . (fg)``, a constant function; returns the constant.

        ``(Y_G . h)(z) = sum_y y(x_G^{-1}) h(y)`` for every ``z``, so the value
        is computed once.
        """
        fg = f * g
        terms = [v * self._xg_inv_at[y] for y, v in fg.vals.items()]
        total = self.Q.sum(terms)
        if total is None:
            return self.S.zero()
        return total.to_S(self.trunc)

    def project_parab(self, f: DualElem) -> DualElem:
        return self.bullet(self.T.y_parab(), f).reduce()

    def is_WL_invariant(self, f: DualElem) -> bool:
        for i in sorted(self.rs.parabolic):
            s = self.rs.gen_index[i]
            if not self.act(s, f).equals(f):
                return False
        return True

    def pairing_parab(self, f: DualElem, g: DualElem, check: bool = False) -> Series:
        """The constant value of ``Y_{G,L} . (fg)``."""
        if check and not (self.is_WL_invariant(f) and self.is_WL_invariant(g)):
            raise ValueError("parabolic pairing needs W_L-invariant arguments")
        fg = f * g
        m = self.Q.x_G_mono().inverse() * self.Q.x_L_mono()
        terms = []
        for w in self.rs.min_reps:
            v = fg.vals.get(w)
            if v is not None:
                terms.append(v * m.weyl(self.rs, w))
        total = self.Q.sum(terms)
        if total is None:
            return self.S.zero()
        return total.to_S(self.trunc)

    def yp_times(self, z: int) -> DualElem:
        got = self._yp_times.get(z)
        if got is None:
            got = self.project_parab(self.y_times(z))
            self._yp_times[z] = got
        return got

    def gram(self) -> list[list[Series]]:
        """``<X_w'^*, Y_P . Y_w''^x>`` over the minimal coset representatives."""
        if self._gram is None:
            reps = self.rs.min_reps
            X = self.dual_basis("X")
            self._gram = [[self.pairing_parab(X[a], self.yp_times(b)) for b in reps] for a in reps]
        return self._gram

    def z_star(self, w: int) -> DualElem:
        got = self._zstar.get(w)
        if got is not None:
            return got
        reps = self.rs.min_reps
        if w not in reps:
            raise ValueError(f"{self.rs.name(w)} is not a minimal coset representative")
        G = self.gram()
        try:
            inv = invert_over_S(G, self.S.one(), self.S.zero())
        except SingularMatrix as exc:
            raise SingularMatrix("Gram system for the Z-basis is singular") from exc
        X = self.dual_basis("X")
        # Z_w = sum_a c_a X_a with sum_a c_a G[a][b] = [w == b]; so c = row w of G^{-1}
        k = reps.index(w)
        for j, rep in enumerate(reps):
            out = None
            for a, ra in enumerate(reps):
                c = inv[j][a]
                if c.is_zero() and c.is_exact:
                    continue
                term = X[ra] * self.Q.from_S(c)
                out = term if out is None else out + term
            self._zstar[rep] = out.reduce() if out is not None else DualElem(self.Q, self.W, {})
        return self._zstar[reps[k]]

    # -- Levi side ---------------------------------------------------------

    def levi_duals(self, family: str = "Y") -> list[DualElem]:
        """``T_{v,L}^*`` on W_L; the Levi generators are the same elements of Q_W."""
        bq = self.T.base_change(family).bq
        out = []
        for v in self.WL:
            out.append(DualElem(self.Q, self.WL, {z: bq[z][v] for z in self.WL if v in bq[z]}))
        return out

    def restrict_L(self, f: DualElem) -> DualElem:
        return DualElem(self.Q, self.WL, {z: f.vals.get(z) for z in self.WL})

    def section_j_a(self, g: DualElem, family: str = "Y") -> DualElem:
        coeffs = self.expand_in(g, family, domain=self.WL)
        return self.rebuild(coeffs, family)

    # -- characteristic and Borel maps -------------------------------------

    def char_map(self, p: Series, domain=None) -> DualElem:
        dom = self.W if domain is None else domain
        return DualElem(self.Q, dom, {w: self.Q.from_S(self.S.weyl_act(w, p)) for w in dom})

    def char_map_L(self, p: Series) -> DualElem:
        return self.char_map(p, self.WL)

    def char_map_bullet(self, p: Series) -> DualElem:
        """``p . 1`` computed with the bullet action of ``p delta_e``."""
        h = QW(self.Q, {0: self.Q.from_S(p)})
        return self.bullet(h, self.one())

    def borel_rho(self, p: Series, q: Series) -> DualElem:
        return self.char_map(q) * self.Q.from_S(p)

    def rho_surjectivity_check(self, max_degree: int, family: str = "Y") -> dict:
        """Degreewise rank of the images of monomials under ``ch_a``, modulo S_+.

        By Nakayama, ``rho`` is onto iff the classes of ``ch_a(q)`` span
        ``D^*/S_+ D^*``, a free module of rank ``|W|`` over the coefficient ring.
        """
        rs = self.rs
        n = rs.rank
        rows = []
        report = {"degrees": [], "rank": None, "order": rs.order, "first_failure": None}
        for d in range(max_degree + 1):
            for mono in combinations_with_replacement(range(n), d):
                exps = [0] * n
                for i in mono:
                    exps[i] += 1
                q = self.S.ring.monomial(exps)
                coeffs = self.expand_in(self.char_map(q), family)
                rows.append([coeffs[x].part(0) if x in coeffs else self.S.ring._zero_poly
                             for x in self.W])
            r = rank_poly(rows)
            expected = sum(1 for x in self.W if rs.length[x] <= d)
            report["degrees"].append({"degree": d, "rank": r, "expected": expected})
            if r < expected and report["first_failure"] is None:
                report["first_failure"] = d
        report["rank"] = report["degrees"][-1]["rank"] if report["degrees"] else 0
        report["surjective"] = report["rank"] == rs.order and report["first_failure"] is None
        return report

    # -- characters ---------------------------------------------------------

    def character_trace(self, v: int, family: str = "Y") -> tuple[Series, Series]:
        """Traces of ``delta_v .`` on D^* and on D_L^* in the dual bases."""
        if v not in self.WL:
            raise ValueError("character is defined for elements of W_L")
        bc = self.T.base_change(family)
        mult = self.rs.mult

        def trace(domain):
            terms = []
            for x in domain:
                for y, a in bc.a[x].items():
                    if y not in domain:
                        continue
                    b = bc.bq[mult[y][v]].get(x)
                    if b is not None:
                        terms.append(a * b)
            total = self.Q.sum(terms)
            return self.S.zero() if total is None else total.to_S(self.trunc)

        return trace(self.W), trace(self.WL)


__all__ = ["DualElem", "DualModel", "MismatchError", "NotInS", "PrecisionError"]
