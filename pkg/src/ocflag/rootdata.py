"""Root systems, finite Weyl groups and the combinatorics of reduced words.

Everything is expressed in fundamental-weight coordinates: a weight is a
tuple ``(c_1, ..., c_n)`` meaning ``sum c_i omega_i``.  Cartan matrices
follow ``cartan[i][j] = <alpha_i^vee, alpha_j>`` so that the weight
coordinates of ``alpha_j`` are the column ``j`` of the Cartan matrix, and the
simple reflection ``s_i`` acts by ``lambda -> lambda - lambda_i alpha_i``.

Group elements are stored as integer indices into :attr:`RootSystem.elements`,
which is sorted by the lexicographic order on the factorization
``W = W^L W_L``.  Index ``0`` is always the identity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

LETTERS = "stuv"
SUPPORTED = {"A": (1, 4), "B": (2, 4), "C": (2, 4), "D": (4, 4), "G": (2, 2)}


class UnsupportedRootSystem(ValueError):
    pass


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    family = family.upper()
    if family not in SUPPORTED:
        raise UnsupportedRootSystem(f"unsupported family {family!r}")
    lo, hi = SUPPORTED[family]
    if not lo <= rank <= hi:
        raise UnsupportedRootSystem(f"unsupported rank {rank} for type {family}")
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
    if family == "G":
        a[0][1], a[1][0] = -3, -1
        return tuple(map(tuple, a))
    if family == "D":
        edges = [(0, 1), (1, 2), (1, 3)]
    else:
        edges = [(i, i + 1) for i in range(rank - 1)]
    for i, j in edges:
        a[i][j] = a[j][i] = -1
    if family == "B":
        a[rank - 1][rank - 2] = -2
    elif family == "C":
        a[rank - 2][rank - 1] = -2
    return tuple(map(tuple, a))


Matrix = tuple[tuple[int, ...], ...]


def _matmul(m1: Matrix, m2: Matrix) -> Matrix:
    n = len(m1)
    return tuple(
        tuple(sum(m1[r][k] * m2[k][c] for k in range(n)) for c in range(n))
        for r in range(n)
    )


def _apply(m: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[c] * v[c] for c in range(len(v))) for row in m)


@dataclass(frozen=True)
class PositionedSubseq:
    """A subsequence of a fixed reference sequence, remembered by position.

    ``meet`` works on positions, so two subsequences that pick the same
    letter from different slots of the reference do not intersect.
    """

    ref: tuple[int, ...]
    positions: frozenset[int]

    @classmethod
    def full(cls, ref: Sequence[int]) -> "PositionedSubseq":
        return cls(tuple(ref), frozenset(range(len(ref))))

    def letters(self) -> tuple[int, ...]:
        return tuple(self.ref[i] for i in sorted(self.positions))

    def _check(self, other: "PositionedSubseq") -> None:
        if self.ref != other.ref:
            raise ValueError("subsequences of different reference sequences")

    def join(self, other: "PositionedSubseq") -> "PositionedSubseq":
        self._check(other)
        return PositionedSubseq(self.ref, self.positions | other.positions)

    def meet(self, other: "PositionedSubseq") -> "PositionedSubseq":
        self._check(other)
        return PositionedSubseq(self.ref, self.positions & other.positions)

    def minus(self, other: "PositionedSubseq") -> "PositionedSubseq":
        self._check(other)
        return PositionedSubseq(self.ref, self.positions - other.positions)

    def issubseq(self, other: "PositionedSubseq") -> bool:
        self._check(other)
        return self.positions <= other.positions

    def __contains__(self, pos: int) -> bool:
        return pos in self.positions

    def __len__(self) -> int:
        return len(self.positions)


def all_subsequences(ref: Sequence[int]) -> list[PositionedSubseq]:
    ref = tuple(ref)
    out = []
    for mask in range(1 << len(ref)):
        out.append(PositionedSubseq(ref, frozenset(i for i in range(len(ref)) if mask >> i & 1)))
    return out


class RootSystem:
    """A based root system together with its Weyl group and a parabolic.

    ``parabolic`` is a set of 0-based simple-reflection indices generating
    ``W_L``.  All tables are built eagerly; instances are never mutated
    afterwards.  ``words`` optionally overrides the reduced-word table (it is
    validated by :meth:`word_table_problems`, not trusted).
    """

    def __init__(
        self,
        family: str,
        rank: int,
        parabolic: Iterable[int] = (),
        words: dict[tuple[int, ...], tuple[int, ...]] | None = None,
    ):
        self.family = family.upper()
        self.rank = rank
        self.cartan = cartan_matrix(self.family, rank)
        self.parabolic = frozenset(parabolic)
        if not self.parabolic <= set(range(rank)):
            raise UnsupportedRootSystem(f"parabolic {sorted(self.parabolic)} not a subset of simple reflections")
        n = rank
        self.simple_roots = [tuple(self.cartan[j][i] for j in range(n)) for i in range(n)]
        self._build_roots()
        self._build_group()
        self._build_order(words)

    # -- roots -------------------------------------------------------------

    def _reflect(self, i: int, lam: Sequence[int]) -> tuple[int, ...]:
        c = lam[i]
        a = self.simple_roots[i]
        return tuple(lam[k] - c * a[k] for k in range(self.rank))

    def _build_roots(self) -> None:
        n = self.rank
        # pair each root with its simple-root coordinates so positivity is a sign test
        seen = {}
        queue = deque()
        for i in range(n):
            e = tuple(1 if k == i else 0 for k in range(n))
            seen[self.simple_roots[i]] = e
            queue.append(self.simple_roots[i])
        while queue:
            r = queue.popleft()
            coords = seen[r]
            for i in range(n):
                c = r[i]
                r2 = self._reflect(i, r)
                if r2 not in seen:
                    co2 = tuple(coords[k] - (c if k == i else 0) for k in range(n))
                    seen[r2] = co2
                    queue.append(r2)
        pos = [r for r, co in seen.items() if all(x >= 0 for x in co)]
        neg = [r for r, co in seen.items() if all(x <= 0 for x in co)]
        if len(pos) + len(neg) != len(seen):
            raise AssertionError("root neither positive nor negative")
        pos.sort(key=lambda r: (sum(seen[r]), tuple(-x for x in seen[r])))
        self.positive_roots = pos
        self.roots = pos + [tuple(-x for x in r) for r in pos]
        self.root_coords = [seen[r] for r in self.roots]
        self.root_index = {r: k for k, r in enumerate(self.roots)}
        self.npos = len(pos)
        self.simple_root_index = [self.root_index[a] for a in self.simple_roots]
        levi = {i for i in self.parabolic}
        self.levi_positive = [
            k for k in range(self.npos)
            if all(self.root_coords[k][i] == 0 for i in range(n) if i not in levi)
        ]

    def neg_root(self, r: int) -> int:
        return r + self.npos if r < self.npos else r - self.npos

    def is_positive(self, r: int) -> bool:
        return r < self.npos

    # -- group -------------------------------------------------------------

    def _build_group(self) -> None:
        n = self.rank
        ident = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
        gens = []
        for i in range(n):
            cols = [self._reflect(i, tuple(1 if k == c else 0 for k in range(n))) for c in range(n)]
            gens.append(tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))
        self.generator_matrices = gens
        # BFS over the right Cayley graph; processing a layer in lex order of
        # words makes the first word found the lexicographically least one
        word_of = {ident: ()}
        layer = [ident]
        while layer:
            nxt = []
            for m in layer:
                for i in range(n):
                    m2 = _matmul(m, gens[i])
                    if m2 not in word_of:
                        word_of[m2] = word_of[m] + (i,)
                        nxt.append(m2)
            nxt.sort(key=lambda m: word_of[m])
            layer = nxt
        self._lex_words = word_of

    def _build_order(self, words) -> None:
        mats = list(self._lex_words)
        length = {m: len(self._lex_words[m]) for m in mats}
        gens = self.generator_matrices
        # W_L and its lex-least words, from BFS restricted to the parabolic generators
        ident = mats[0]
        levi_words = {ident: ()}
        layer = [ident]
        J = sorted(self.parabolic)
        while layer:
            nxt = []
            for m in layer:
                for i in J:
                    m2 = _matmul(m, gens[i])
                    if m2 not in levi_words:
                        levi_words[m2] = levi_words[m] + (i,)
                        nxt.append(m2)
            nxt.sort(key=lambda m: levi_words[m])
            layer = nxt
        levi = list(levi_words)
        # minimal coset representatives
        minrep = {}
        for m in mats:
            coset = [_matmul(m, v) for v in levi]
            rep = min(coset, key=lambda x: (length[x], self._lex_words[x]))
            minrep[m] = rep
        reps = sorted({r for r in minrep.values()}, key=lambda x: (length[x], self._lex_words[x]))
        levi_sorted = sorted(levi, key=lambda x: (length[x], levi_words[x]))
        order = [_matmul(w, v) for w in reps for v in levi_sorted]
        self.elements = order
        self.index = {m: k for k, m in enumerate(order)}
        N = len(order)
        self.order = N
        self.length = [length[m] for m in order]
        self.mult = [[self.index[_matmul(a, b)] for b in order] for a in order]
        self.inv = [0] * N
        for a in range(N):
            for b in range(N):
                if self.mult[a][b] == 0:
                    self.inv[a] = b
                    break
        self.gen_index = [self.index[g] for g in gens]
        self.min_reps = [self.index[w] for w in reps]
        self.levi = [self.index[v] for v in levi_sorted]
        self.levi_set = frozenset(self.levi)
        self.min_rep_set = frozenset(self.min_reps)
        self.decomp = {}
        for w in self.min_reps:
            for v in self.levi:
                self.decomp[self.mult[w][v]] = (w, v)
        self.root_action = [
            [self.root_index[_apply(m, r)] for r in self.roots] for m in order
        ]
        default = {}
        for w in reps:
            for v in levi_sorted:
                default[self.index[_matmul(w, v)]] = self._lex_words[w] + levi_words[v]
        self.words = default
        if words:
            # overrides are merged into the default table and validated separately
            self.words = dict(default)
            for k, v in words.items():
                self.words[self.parse_element(k) if not isinstance(k, int) else k] = tuple(v)
        self._bruhat = None

    # -- basic queries -----------------------------------------------------

    def matrix(self, w: int) -> Matrix:
        return self.elements[w]

    def act_on_weight(self, w: int, lam: Sequence[int]) -> tuple[int, ...]:
        return _apply(self.elements[w], lam)

    def word_product(self, word: Sequence[int]) -> int:
        z = 0
        for i in word:
            z = self.mult[z][self.gen_index[i]]
        return z

    def lex_word(self, w: int) -> tuple[int, ...]:
        return self._lex_words[self.elements[w]]

    def right_descent(self, w: int) -> int | None:
        for i in range(self.rank):
            if self.length[self.mult[w][self.gen_index[i]]] < self.length[w]:
                return i
        return None

    def inversion_count(self, w: int) -> int:
        act = self.root_action[w]
        return sum(1 for r in range(self.npos) if not self.is_positive(act[r]))

    @property
    def longest(self) -> int:
        return max(range(self.order), key=lambda w: self.length[w])

    def coset_decompose(self, z: int) -> tuple[int, int]:
        return self.decomp[z]

    # -- Bruhat order ------------------------------------------------------

    def _bruhat_table(self):
        if self._bruhat is None:
            N = self.order
            table = [[False] * N for _ in range(N)]
            for w in sorted(range(N), key=lambda x: self.length[x]):
                if w == 0:
                    table[0][0] = True
                    continue
                s = self.gen_index[self.right_descent(w)]
                ws = self.mult[w][s]
                for u in range(N):
                    us = self.mult[u][s]
                    lo = us if self.length[us] < self.length[u] else u
                    table[u][w] = table[lo][ws]
            self._bruhat = table
        return self._bruhat

    def bruhat_leq(self, u: int, w: int) -> bool:
        return self._bruhat_table()[u][w]

    def bruhat_lt(self, u: int, w: int) -> bool:
        return u != w and self.bruhat_leq(u, w)

    # -- words -------------------------------------------------------------

    def demazure_product(self, word: Sequence[int]) -> int:
        x = 0
        for i in word:
            xs = self.mult[x][self.gen_index[i]]
            if self.length[xs] > self.length[x]:
                x = xs
        return x

    def gamma_sequence(self, word: Sequence[int]) -> list[int]:
        out = []
        prefix = 0
        for i in word:
            out.append(self.root_action[prefix][self.simple_root_index[i]])
            prefix = self.mult[prefix][self.gen_index[i]]
        return out

    def word_table_problems(self) -> list[str]:
        """Return human-readable violations of the reduced, L-compatible table."""
        problems = []
        for z in range(self.order):
            I = self.words.get(z)
            if I is None:
                problems.append(f"no word for {self.name(z)}")
                continue
            if self.word_product(I) != z:
                problems.append(f"word {I} does not multiply to {self.name(z)}")
            if len(I) != self.length[z]:
                problems.append(f"word {I} for {self.name(z)} is not reduced")
        for w in self.min_reps:
            for v in self.levi:
                z = self.mult[w][v]
                if self.words.get(z) != self.words.get(w, ()) + self.words.get(v, ()):
                    problems.append(f"I_{self.name(z)} != I_{self.name(w)} + I_{self.name(v)}")
        return problems

    # -- names -------------------------------------------------------------

    def letter(self, i: int) -> str:
        return LETTERS[i]

    def name(self, w: int) -> str:
        word = self.words.get(w) if hasattr(self, "words") else None
        if word is None or self.word_product(word) != w:
            word = self.lex_word(w)
        if not word:
            return "e"
        return "".join(LETTERS[i] for i in word)

    def parse_word(self, text: str) -> tuple[int, ...]:
        text = text.strip()
        if text in ("", "e", "()"):
            return ()
        if "," in text:
            idx = [int(t) - 1 for t in text.split(",") if t.strip()]
        elif text.isdigit():
            idx = [int(c) - 1 for c in text]
        else:
            if any(c not in LETTERS[: self.rank] for c in text):
                raise ValueError(f"cannot parse word {text!r}")
            idx = [LETTERS.index(c) for c in text]
        if any(not 0 <= i < self.rank for i in idx):
            raise ValueError(f"letter out of range in {text!r}")
        return tuple(idx)

    def parse_element(self, text) -> int:
        if isinstance(text, int):
            return text
        if isinstance(text, (tuple, list)):
            return self.word_product(text)
        return self.word_product(self.parse_word(text))

    def root_name(self, r: int) -> str:
        co = self.root_coords[r]
        sign = "-" if not self.is_positive(r) else ""
        co = tuple(abs(c) for c in co)
        if self.rank <= 2:
            syms = ["alpha", "beta"]
        else:
            syms = [f"alpha{i + 1}" for i in range(self.rank)]
        parts = []
        for c, s in zip(co, syms):
            if c == 1:
                parts.append(s)
            elif c:
                parts.append(f"{c}{s}")
        body = "+".join(parts)
        if sign and len(parts) > 1:
            return f"-({body})"
        return sign + body

    def describe(self) -> dict:
        return {
            "type": self.family,
            "rank": self.rank,
            "parabolic": [i + 1 for i in sorted(self.parabolic)],
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "order": [self.name(z) for z in range(self.order)],
            "words": {self.name(z): [i + 1 for i in self.words[z]] for z in range(self.order)},
            "min_reps": [self.name(w) for w in self.min_reps],
            "levi": [self.name(v) for v in self.levi],
        }


def build_root_system(family: str, rank: int, parabolic: Iterable[int] = ()) -> RootSystem:
    return RootSystem(family, rank, parabolic)
