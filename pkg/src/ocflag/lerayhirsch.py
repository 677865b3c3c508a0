"""Leray-Hirsch matrices: e-coefficients, structure constants, the matrix C and its certificate.

Rows and columns of C are indexed by W in the fixed linear order; the row of
``z = wv`` (``w`` in W^L, ``v`` in W_L) holds the coefficients of
``Z_w^* Y_v^*`` (geometric tag) or ``X_w^* X_v^*`` (algebraic tag) in the
basis ``Y^*`` resp. ``X^*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dual import DualModel, MismatchError
from .linalg import det_poly, invert_over_S
from .qring import QElem, RootMono
from .series import Series
from .twisted import QW, mul_qw

TAGS = {"geometric": "Y", "algebraic": "X"}


def family_of(tag: str) -> str:
    if tag in TAGS:
        return TAGS[tag]
    if tag in ("Y", "X"):
        return tag
    raise ValueError(f"unknown tag {tag!r}; use geometric or algebraic")


@dataclass
class CMatrix:
    tag: str
    entries: list[list[Series]]
    rs: object
    trunc: int
    fgl: str

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, row: int, col: int) -> Series:
        return self.entries[row][col]

    def block(self, w: int, w2: int) -> list[list[Series]]:
        rs = self.rs
        return [[self.entries[rs.mult[w][v]][rs.mult[w2][v2]] for v2 in rs.levi] for v in rs.levi]

    def augmented(self) -> list[list]:
        return [[e.part(0) for e in row] for row in self.entries]


@dataclass
class LHReport:
    tag: str
    trunc: int
    block_upper: bool = True
    diag_blocks_upper_mod: bool = True
    diag_residues_ok: bool = True
    diag_in_one_plus: bool = True
    det_augmentation: str = ""
    det_is_one: bool = False
    unitriangular: bool = False
    failures: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return (self.block_upper and self.diag_blocks_upper_mod and self.diag_residues_ok
                and self.diag_in_one_plus and self.det_is_one)

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "trunc": self.trunc,
            "block_upper_triangular": self.block_upper,
            "diagonal_blocks_upper_mod_S+": self.diag_blocks_upper_mod,
            "diagonal_residues_match": self.diag_residues_ok,
            "diagonal_in_1+S+": self.diag_in_one_plus,
            "det_augmentation": self.det_augmentation,
            "augmented_unitriangular": self.unitriangular,
            "verdict": self.verdict,
            "failures": list(self.failures),
        }


class LerayHirsch:
    def __init__(self, D: DualModel, fgl_name: str = ""):
        self.D = D
        self.T = D.T
        self.Q = D.Q
        self.S = D.S
        self.rs = D.rs
        self.trunc = D.trunc
        self.fgl_name = fgl_name
        self._e = None
        self._bseq: dict = {}
        self._bprod: dict = {}
        self._gz: dict = {}
        self._ydot: dict = {}

    # -- e coefficients ----------------------------------------------------

    def y_dot_one(self, v: int) -> Series:
        got = self._ydot.get(v)
        if got is None:
            got = self.T.act_on_S(self.T.basis_element("Y", v), 1, self.trunc)
            self._ydot[v] = got
        return got

    def e_coeffs(self) -> dict:
        """``e[z][w']``: coefficient of ``Y_P . Y_{w'}^x`` in ``Y_P . Y_z^x``."""
        if self._e is None:
            D = self.D
            out = {}
            for z in range(self.rs.order):
                yp = D.yp_times(z)
                row = {}
                for w in self.rs.min_reps:
                    c = D.pairing_parab(yp, D.z_star(w))
                    if not c.is_zero():
                        row[w] = c
                out[z] = row
            self._e = out
        return self._e

    def check_e_lemma(self) -> list[str]:
        """``e_{wv,w} = w(Y_v . 1)`` and ``e_{wv,w'} = 0`` unless ``w' <= w``."""
        rs, S = self.rs, self.S
        problems = []
        e = self.e_coeffs()
        for w in rs.min_reps:
            for v in rs.levi:
                z = rs.mult[w][v]
                expect = S.weyl_act(w, self.y_dot_one(v))
                got = e[z].get(w, S.zero())
                if not got.agrees(expect, self.trunc):
                    problems.append(f"e_{{{rs.name(z)},{rs.name(w)}}} != {rs.name(w)}(Y_{rs.name(v)}.1)")
                for w2, c in e[z].items():
                    if not rs.bruhat_leq(w2, w) and not c.is_zero(self.trunc):
                        problems.append(f"e_{{{rs.name(z)},{rs.name(w2)}}} nonzero but not below {rs.name(w)}")
        return problems

    # -- multiplication by q -------------------------------------------------

    def multqs_expand(self, q: QElem, z: int) -> dict:
        """Coefficients of ``q Y_z^x`` in ``{Y_w^x}``: ``sum_y y(q) a_{z,y} b_{y,w}``."""
        bc = self.T.base_change("Y")
        acc: dict[int, list] = {}
        for y, a in bc.a[z].items():
            base = q.weyl(y) * a
            for w, b in bc.bq[y].items():
                acc.setdefault(w, []).append(base * b)
        out = {}
        for w, terms in acc.items():
            s = self.Q.sum(terms).to_S(self.trunc)
            if not s.is_zero():
                out[w] = s
        return out

    def multqs_direct(self, q: QElem, z: int) -> dict:
        """The same coefficients from ``(q d_e) . Y_z^x``, bullet first and expansion after."""
        g = self.D.bullet(QW(self.Q, {0: q}), self.D.y_times(z))
        return {w: c for w, c in self.D.expand_in_times(g).items() if not c.is_zero()}

    # -- Z_w^* in the Y^* basis ---------------------------------------------

    def z_star_expansion(self, w: int, check: bool = True) -> dict:
        rs = self.rs
        coeffs = self.D.expand_in(self.D.z_star(w), "Y")
        if check:
            for v in rs.levi:
                z = rs.mult[w][v]
                expect = self.S.weyl_act(w, self.y_dot_one(v))
                if not coeffs.get(z, self.S.zero()).agrees(expect, self.trunc):
                    raise MismatchError(f"Z_{rs.name(w)}^*: coefficient at Y_{rs.name(z)}^* "
                                        f"is not {rs.name(w)}(Y_{rs.name(v)}.1)")
            for z, c in coeffs.items():
                w2, _ = rs.decomp[z]
                if w2 != w and not rs.bruhat_lt(w, w2) and not c.is_zero(self.trunc):
                    raise MismatchError(f"Z_{rs.name(w)}^* has a term at Y_{rs.name(z)}^* outside w' >= w")
        return coeffs

    # -- Goldin-Zhong structure constants ------------------------------------

    def gz_B_factor(self, letter: int, case: int, family: str = "Y") -> QW:
        """``B_j`` for a simple reflection; ``case`` counts membership in E and F (0, 1 or 2)."""
        rs, Q = self.rs, self.Q
        a = rs.simple_root_index[letter]
        na = rs.neg_root(a)
        s = rs.gen_index[letter]
        if family == "Y":
            if case == 2:
                return QW(Q, {s: Q.mono(x=[(a, 1)])})
            if case == 1:
                return QW(Q, {s: Q.mono(-1, u=[(a, 1)])})
            return QW(Q, {0: Q.mono(x=[(na, -1)]), s: Q.mono(x=[(a, 1), (na, -2)])})
        # Demazure family: -x_a d_s, d_s, X_s; flipping the sign of X_s flips the first case
        if case == 2:
            return QW(Q, {s: Q.mono(-self.T.x_sign, x=[(a, 1)])})
        if case == 1:
            return QW(Q, {s: RootMono.one(rs.npos)})
        return self.T.x_of(letter)

    def _b_seq(self, family: str, letters: tuple) -> dict:
        key = (family, letters)
        got = self._bseq.get(key)
        if got is None:
            got = {z: self.Q.from_S(c) for z, c in self.T.b_of_sequence(family, letters).items()}
            self._bseq[key] = got
        return got

    def _b_product(self, family: str, word: tuple, cases: tuple) -> QW:
        if not cases:
            return self.T.one()
        key = (family, word[: len(cases)], cases)
        got = self._bprod.get(key)
        if got is None:
            prev = self._b_product(family, word, cases[:-1])
            got = mul_qw(prev, self.gz_B_factor(word[len(cases) - 1], cases[-1], family))
            got = QW(self.Q, {z: (c.reduce() if isinstance(c, QElem) else c)
                              for z, c in got.coeffs.items()})
            self._bprod[key] = got
        return got

    def gz_constants(self, w: int, family: str = "Y", us=None, vs=None) -> dict:
        """``{(u, v): p_{u,v}^w}`` by the subsequence formula over ``I_w``."""
        key = (family, w)
        cached = self._gz.get(key)
        if cached is not None and us is None and vs is None:
            return cached
        word = tuple(self.rs.words[w])
        p = len(word)
        Q = self.Q
        subsets = range(1 << p)
        letters = {m: tuple(word[i] for i in range(p) if m >> i & 1) for m in subsets}
        acc: dict[tuple, list] = {}
        for E in subsets:
            bE = self._b_seq(family, letters[E])
            if us is not None:
                bE = {u: c for u, c in bE.items() if u in us}
            if not bE:
                continue
            inner: dict[int, list] = {}
            for F in subsets:
                bF = self._b_seq(family, letters[F])
                if vs is not None:
                    bF = {v: c for v, c in bF.items() if v in vs}
                if not bF:
                    continue
                cases = tuple((E >> i & 1) + (F >> i & 1) for i in range(p))
                val = self.T.act_on(self._b_product(family, word, cases), 1)
                if val.is_exact_zero():
                    continue
                for v, c in bF.items():
                    inner.setdefault(v, []).append(val * c)
            for v, terms in inner.items():
                iv = Q.sum(terms)
                for u, c in bE.items():
                    acc.setdefault((u, v), []).append(iv * c)
        out = {}
        for uv, terms in acc.items():
            s = Q.sum(terms).to_S(self.trunc)
            if not s.is_zero():
                out[uv] = s
        if us is None and vs is None:
            self._gz[key] = out
        return out

    def gz_structure_const(self, u: int, v: int, w: int, family: str = "Y") -> Series:
        return self.gz_constants(w, family).get((u, v), self.S.zero())

    def oracle_structconst(self, u: int, v: int, family: str = "Y") -> dict:
        """``{w: p_{u,v}^w}`` from the pointwise product of dual basis elements."""
        D = self.D
        prod = D.dual(u, family) * D.dual(v, family)
        return {w: c for w, c in D.expand_in(prod, family).items() if not c.is_zero()}

    def compare_gz_oracle(self, family: str = "Y") -> list[str]:
        rs = self.rs
        problems = []
        gz = {w: self.gz_constants(w, family) for w in range(rs.order)}
        zero = self.S.zero()
        for u in range(rs.order):
            for v in range(rs.order):
                oracle = self.oracle_structconst(u, v, family)
                for w in range(rs.order):
                    a = gz[w].get((u, v), zero)
                    b = oracle.get(w, zero)
                    if not a.agrees(b, self.trunc):
                        problems.append(f"{family}: p^{rs.name(w)}_{{{rs.name(u)},{rs.name(v)}}} differs")
        return problems

    # -- the matrix C ----------------------------------------------------------

    def row_direct(self, z: int, tag: str) -> dict:
        rs, D = self.rs, self.D
        w, v = rs.decomp[z]
        fam = family_of(tag)
        if fam == "Y":
            prod = D.z_star(w) * D.dual(v, "Y")
        else:
            prod = D.dual(w, "X") * D.dual(v, "X")
        return D.expand_in(prod, fam)

    def row_via_e(self, z: int, source: str = "gz") -> dict:
        """``c_{w,v}^{z''} = sum_{z'} e_{z',w} p^{z''}_{z',v}`` with p from the chosen source."""
        rs = self.rs
        w, v = rs.decomp[z]
        e = self.e_coeffs()
        acc: dict[int, list] = {}
        for z1 in range(rs.order):
            c = e[z1].get(w)
            if c is None:
                continue
            if source == "gz":
                consts = {}
                for z2 in range(rs.order):
                    pc = self.gz_constants(z2, "Y").get((z1, v))
                    if pc is not None:
                        consts[z2] = pc
            else:
                consts = self.oracle_structconst(z1, v, "Y")
            for z2, pc in consts.items():
                acc.setdefault(z2, []).append(c * pc)
        out = {}
        for z2, terms in acc.items():
            total = terms[0]
            for t in terms[1:]:
                total = total + t
            out[z2] = total
        return out

    def assemble_C(self, tag: str = "geometric", check_routes: bool = True, source: str = "oracle") -> CMatrix:
        rs, S = self.rs, self.S
        rows = []
        for z in range(rs.order):
            direct = self.row_direct(z, tag)
            if check_routes and family_of(tag) == "Y":
                other = self.row_via_e(z, source)
                for z2 in range(rs.order):
                    a = direct.get(z2, S.zero())
                    b = other.get(z2, S.zero())
                    if not a.agrees(b, self.trunc):
                        raise MismatchError(
                            f"C entry ({rs.name(z)}, {rs.name(z2)}): e.p assembly and direct expansion differ")
            rows.append([direct.get(z2, S.zero()).truncate(self.trunc) for z2 in range(rs.order)])
        return CMatrix(tag, rows, rs, self.trunc, self.fgl_name)

    # -- certification -------------------------------------------------------

    def verify_report(self, C: CMatrix) -> LHReport:
        rs, S = self.rs, self.S
        rep = LHReport(C.tag, self.trunc)
        pos = {w: k for k, w in enumerate(rs.min_reps)}
        lpos = {v: k for k, v in enumerate(rs.levi)}
        for z in range(rs.order):
            w, v = rs.decomp[z]
            for z2 in range(rs.order):
                w2, v2 = rs.decomp[z2]
                c = C.entries[z][z2]
                if pos[w2] < pos[w] and not c.is_zero():
                    rep.block_upper = False
                    rep.failures.append(f"block ({rs.name(w)}, {rs.name(w2)}) nonzero at "
                                        f"({rs.name(z)}, {rs.name(z2)})")
                if w2 == w and lpos[v2] < lpos[v] and not S.in_splus(c):
                    rep.diag_blocks_upper_mod = False
                    rep.failures.append(f"entry ({rs.name(z)}, {rs.name(z2)}) below the diagonal of "
                                        f"block {rs.name(w)} is not in S_+")
            d = C.entries[z][z]
            expect = self.diagonal_prediction(z)
            if (d.part(0) - expect.part(0)) != 0:
                rep.diag_residues_ok = False
                rep.failures.append(f"diagonal at {rs.name(z)} differs from (-1)^l prod u_gamma mod S_+")
            if not S.in_one_plus_splus(d):
                rep.diag_in_one_plus = False
                rep.failures.append(f"diagonal at {rs.name(z)} is not in 1 + S_+")
        aug = C.augmented()
        det = det_poly(aug)
        rep.det_augmentation = str(det)
        rep.det_is_one = det == 1
        if not rep.det_is_one:
            rep.failures.append(f"augmented determinant is {det}, not 1")
        rep.unitriangular = is_unitriangular(aug)
        return rep

    def diagonal_prediction(self, z: int) -> Series:
        """``(-1)^{l(z)} prod_j u_{gamma_j}`` along ``I_z``."""
        S = self.S
        out = S.const((-1) ** self.rs.length[z])
        for g in self.rs.gamma_sequence(self.rs.words[z]):
            if self.rs.is_positive(g):
                out = out * S.u(g)
            else:
                out = out * S.u_power(self.rs.neg_root(g), -1)
        return out

    # -- inverse application -------------------------------------------------

    def lh_expand(self, f, C: CMatrix, report: LHReport | None = None) -> dict:
        """Coefficients of ``f`` in the product basis underlying ``C``."""
        if report is not None and not report.verdict:
            raise ValueError("matrix C is not certified; refusing to invert")
        fam = family_of(C.tag)
        rs, S = self.rs, self.S
        d = self.D.expand_in(f, fam)
        inv = invert_over_S(C.entries, S.one(), S.zero())
        out = {}
        for z in range(rs.order):
            terms = [d[z2] * inv[z2][z] for z2 in d]
            total = S.zero()
            for t in terms:
                total = total + t
            total = total.truncate(self.trunc)
            if not total.is_zero():
                out[z] = total
        return out


def is_unitriangular(M: list[list]) -> bool:
    n = len(M)
    for i in range(n):
        if M[i][i] != 1:
            return False
        for j in range(i):
            if not M[i][j].is_zero():
                return False
    return True


def nonequivariant_specialize(C: CMatrix) -> list[list]:
    return C.augmented()


__all__ = ["CMatrix", "LHReport", "LerayHirsch", "is_unitriangular", "nonequivariant_specialize",
           "family_of"]
