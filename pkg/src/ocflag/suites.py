"""Verification suites shared by the command line and the test-suite."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, replace

from .config import Context, RunConfig
from .dual import MismatchError
from .qring import NotInS
from .series import PrecisionError, Series


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f": {self.detail}" if self.detail else ""
        return f"{status} {self.name} ({self.seconds:.2f}s){extra}"


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False


def _problems_check(name: str, fn) -> Check:
    with _Timer() as t:
        try:
            problems = fn()
        except (MismatchError, NotInS, PrecisionError) as exc:
            problems = [f"{type(exc).__name__}: {exc}"]
    detail = "; ".join(problems[:3]) + (f" (+{len(problems) - 3} more)" if len(problems) > 3 else "")
    return Check(name, not problems, detail, t.seconds)


# -- the A2 tables -------------------------------------------------------------


def a2_roots(rs):
    a, b = rs.simple_root_index
    ab = rs.root_index[tuple(x + y for x, y in zip(rs.roots[a], rs.roots[b]))]
    return a, b, ab


def table1_expected(S) -> dict:
    """Printed entries of the geometric table for A2, P_s, word sts; ``*`` entries omitted."""
    rs = S.rs
    a, b, ab = a2_roots(rs)
    one, zero, u, x = S.one(), S.zero(), S.u, S.x_root
    names = ["e", "s", "t", "ts", "st", "sts"]
    exp = {}
    for r in ("e", "s"):
        for c in ("e", "s"):
            exp[(r, c)] = one if r == c else zero
    for r in ("t", "ts"):
        for c in ("e", "s", "t", "ts"):
            exp[(r, c)] = -u(b) if r == c else zero
    for r in ("st", "sts"):
        for c in names:
            exp[(r, c)] = zero
    exp[("st", "st")] = u(a) * u(ab)
    exp[("sts", "st")] = -(x(a) * u(ab))
    exp[("sts", "sts")] = -u(ab)
    return exp


def table2_expected(S) -> dict:
    """All entries of the algebraic table for A2, P_s."""
    rs = S.rs
    a, _, _ = a2_roots(rs)
    names = ["e", "s", "t", "ts", "st", "sts"]
    exp = {(r, c): (S.one() if r == c else S.zero()) for r in names for c in names}
    exp[("ts", "st")] = S.one()
    exp[("ts", "sts")] = -S.kappa(a)
    exp[("sts", "st")] = S.x_root(a)
    exp[("sts", "sts")] = -S.u(a)
    return exp


def compare_table(C, expected: dict, trunc: int) -> list[str]:
    rs = C.rs
    idx = {rs.name(z): z for z in range(rs.order)}
    bad = []
    for (r, c), val in expected.items():
        if not C.entries[idx[r]][idx[c]].agrees(val, trunc):
            bad.append(f"entry ({r}, {c})")
    return bad


def a2_context(cfg: RunConfig) -> Context:
    return Context(replace(cfg, family="A", rank=2, parabolic=(0,), words=()))


def identity_check(S) -> bool:
    """``u_b u_{a+b} kappa_{a+b} - u_b x_{a+b} = -u_b`` taken literally.

    Since ``u = kappa x - 1`` this holds iff ``kappa_{a+b} = 1``.
    """
    a, b, ab = a2_roots(S.rs)
    lhs = S.u(b) * S.u(ab) * S.kappa(ab) - S.u(b) * S.x_root(ab)
    return lhs.agrees(-S.u(b), S.trunc)


def corrected_identity_check(S) -> bool:
    """``u_b u_{a+b} - u_b kappa_{a+b} x_{a+b} = -u_b``, true for every law."""
    a, b, ab = a2_roots(S.rs)
    lhs = S.u(b) * S.u(ab) - S.u(b) * S.kappa(ab) * S.x_root(ab)
    return lhs.agrees(-S.u(b), S.trunc)


def ts_diagonal_check(C, S) -> bool:
    """The computed entry ``c^{t,s}_{t,s}`` equals ``-u_b``."""
    rs = C.rs
    a, b, ab = a2_roots(rs)
    ts = rs.parse_element("ts")
    return C.entries[ts][ts].agrees(-S.u(b), S.trunc)


def suite_a2_tables(cfg: RunConfig) -> list[Check]:
    ctx = a2_context(cfg)
    out = []
    with _Timer() as t:
        C = ctx.L.assemble_C("geometric", check_routes=False)
        bad = compare_table(C, table1_expected(ctx.S), ctx.S.trunc)
    C1 = C
    n1 = len(table1_expected(ctx.S))
    out.append(Check(f"A2/P_s geometric table, {n1} printed entries [{cfg.fgl}]", not bad,
                     ", ".join(bad), t.seconds))
    with _Timer() as t:
        C = ctx.L.assemble_C("algebraic", check_routes=False)
        bad = compare_table(C, table2_expected(ctx.S), ctx.S.trunc)
    out.append(Check(f"A2/P_s algebraic table, 36 entries [{cfg.fgl}]", not bad, ", ".join(bad), t.seconds))
    with _Timer() as t:
        ok = identity_check(ctx.S)
    out.append(Check(f"identity u_b u_(a+b) k_(a+b) - u_b x_(a+b) = -u_b [{cfg.fgl}]", ok,
                     "" if ok else "literal form needs kappa_(a+b) = 1", t.seconds))
    with _Timer() as t:
        ok = ts_diagonal_check(C1, ctx.S) and corrected_identity_check(ctx.S)
    out.append(Check(f"c^(t,s)_(t,s) = u_b u_(a+b) - u_b k_(a+b) x_(a+b) = -u_b [{cfg.fgl}]", ok, "", t.seconds))
    return out


# -- dual bases, oracle, lemmas ----------------------------------------------


def dual_basis_problems(ctx: Context, family: str) -> list[str]:
    D, S, rs = ctx.D, ctx.S, ctx.rs
    problems = []
    for z in range(rs.order):
        D.times(z, family, check=True)
    for z in range(rs.order):
        for z2 in range(rs.order):
            p = D.pairing(D.times(z, family), D.dual(z2, family))
            if not p.agrees(S.const(1 if z == z2 else 0), S.trunc):
                problems.append(f"<{family}_{rs.name(z)}^x, {family}_{rs.name(z2)}^*> != delta")
    return problems


def suite_dual_bases(ctx: Context) -> list[Check]:
    tag = _tag(ctx)
    return [_problems_check(f"dual bases {fam} {tag}", lambda fam=fam: dual_basis_problems(ctx, fam))
            for fam in ("Y", "X")]


def suite_gz_oracle(ctx: Context) -> list[Check]:
    tag = _tag(ctx)
    return [_problems_check(f"Goldin-Zhong vs pointwise oracle {fam} {tag}",
                            lambda fam=fam: ctx.L.compare_gz_oracle(fam)) for fam in ("Y", "X")]


def random_series(S, rng: random.Random, degree: int = 3) -> Series:
    n = S.rs.rank
    out = S.zero()
    for d in range(degree + 1):
        for mono in itertools.combinations_with_replacement(range(n), d):
            c = rng.randint(-3, 3)
            if c:
                exps = [0] * n
                for i in mono:
                    exps[i] += 1
                out = out + S.ring.monomial(exps, c)
    return out


def multqs_problems(ctx: Context, samples: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    L, S, rs = ctx.L, ctx.S, ctx.rs
    problems = []
    for k in range(samples):
        q = ctx.Q.from_S(random_series(S, rng))
        z = rng.randrange(rs.order)
        a = L.multqs_expand(q, z)
        b = L.multqs_direct(q, z)
        for w in set(a) | set(b):
            if not a.get(w, S.zero()).agrees(b.get(w, S.zero()), S.trunc):
                problems.append(f"sample {k}: coefficient at {rs.name(w)} differs")
                break
        if any(not rs.bruhat_leq(w, z) for w in a):
            problems.append(f"sample {k}: support not below {rs.name(z)}")
    return problems


def zstar_problems(ctx: Context) -> list[str]:
    L, D, S, rs = ctx.L, ctx.D, ctx.S, ctx.rs
    problems = []
    for w in rs.min_reps:
        L.z_star_expansion(w, check=True)
        for w2 in rs.min_reps:
            p = D.pairing_parab(D.z_star(w), D.yp_times(w2))
            if not p.agrees(S.const(1 if w == w2 else 0), S.trunc):
                problems.append(f"<Z_{rs.name(w)}^*, Y_P.Y_{rs.name(w2)}^x> != delta")
        if not D.is_WL_invariant(D.z_star(w)):
            problems.append(f"Z_{rs.name(w)}^* is not W_L-invariant")
    return problems


def suite_lemmas(ctx: Context, samples: int = 20, seed: int = 0) -> list[Check]:
    tag = _tag(ctx)
    return [
        _problems_check(f"e_(wv,w) = w(Y_v.1) and vanishing unless w' <= w {tag}", ctx.L.check_e_lemma),
        _problems_check(f"multiplication by q formula, {samples} samples {tag}",
                        lambda: multqs_problems(ctx, samples, seed)),
        _problems_check(f"Z_w^* leading block and Z-duality {tag}", lambda: zstar_problems(ctx)),
    ]


# -- triangularity and certification --------------------------------------------


def proper_parabolics(rank: int) -> list[tuple[int, ...]]:
    return [p for k in range(rank) for p in itertools.combinations(range(rank), k)]


def all_parabolics(rank: int) -> list[tuple[int, ...]]:
    return [p for k in range(rank + 1) for p in itertools.combinations(range(rank), k)]


def certify(ctx: Context, tag: str) -> tuple[Check, Check]:
    name = f"{_tag(ctx)} {tag}"
    with _Timer() as t:
        try:
            C = ctx.L.assemble_C(tag)
            rep = ctx.L.verify_report(C)
            ok, detail = rep.verdict, "; ".join(rep.failures[:3])
            unitri = rep.unitriangular and rep.det_is_one
        except (MismatchError, NotInS, PrecisionError) as exc:
            ok, detail, unitri = False, f"{type(exc).__name__}: {exc}", False
    main = Check(f"Leray-Hirsch certificate {name}", ok, detail, t.seconds)
    spec = Check(f"augmented C unitriangular, det 1 {name}", unitri,
                 "" if unitri else "augmented matrix is not unitriangular", 0.0)
    return main, spec


def suite_triangularity(cfg: RunConfig, parabolics=None) -> list[Check]:
    out = []
    for par in (parabolics if parabolics is not None else proper_parabolics(cfg.rank)):
        ctx = Context(replace(cfg, parabolic=par, words=()))
        for tag in ("geometric", "algebraic"):
            out.extend(certify(ctx, tag))
    return out


# -- characteristic map, Borel map, characters ------------------------------------


def borel_problems(ctx: Context, samples: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    D, S, rs = ctx.D, ctx.S, ctx.rs
    problems = []
    for k in range(samples):
        p = random_series(S, rng)
        if not D.char_map(p).equals(D.char_map_bullet(p)):
            problems.append(f"sample {k}: ch_a(p) != p.1")
        z = rng.randrange(rs.order)
        lhs = D.char_map(S.weyl_act(z, p))
        rhs = D.act(z, D.char_map(p))
        if not lhs.equals(rhs):
            problems.append(f"sample {k}: ch_a({rs.name(z)}(p)) != d_{rs.name(z)}.ch_a(p)")
    return problems


def rho_problems(ctx: Context, max_degree: int) -> list[str]:
    rep = ctx.D.rho_surjectivity_check(max_degree)
    if rep["surjective"]:
        return []
    return [f"rank {rep['rank']} of {rep['order']} through degree {max_degree}"]


def suite_borel(ctx: Context, samples: int = 20, seed: int = 0, max_degree: int | None = None) -> list[Check]:
    tag = _tag(ctx)
    if ctx.config.workdeg is None:
        # nothing here divides by x, so the working degree can be the reported one
        ctx = Context(replace(ctx.config, workdeg=ctx.config.trunc))
    if max_degree is None:
        max_degree = max(ctx.rs.length)
    return [
        _problems_check(f"ch_a = p.1 and W-equivariance, {samples} samples {tag}",
                        lambda: borel_problems(ctx, samples, seed)),
        _problems_check(f"rho onto D^* through degree {max_degree} {tag}",
                        lambda: rho_problems(ctx, max_degree)),
    ]


def character_problems(ctx: Context) -> list[str]:
    rs, S = ctx.rs, ctx.S
    problems = []
    k = len(rs.min_reps)
    for v in rs.levi:
        chi_L, chi = ctx.D.character_trace(v)
        if not chi_L.agrees(chi.scale(k), S.trunc):
            problems.append(f"chi_L({rs.name(v)}) != |W^L| chi({rs.name(v)})")
    return problems


def suite_characters(cfg: RunConfig, parabolics=None) -> list[Check]:
    out = []
    for par in (parabolics if parabolics is not None else all_parabolics(cfg.rank)):
        ctx = Context(replace(cfg, parabolic=par, words=()))
        out.append(_problems_check(f"chi_L = |W^L| chi {_tag(ctx)}", lambda ctx=ctx: character_problems(ctx)))
    return out


# -- dispatch ---------------------------------------------------------------------


def _tag(ctx: Context) -> str:
    c = ctx.config
    par = ",".join(str(i + 1) for i in c.parabolic) or "-"
    return f"[{c.family}{c.rank} P={par} {c.fgl} N={c.trunc}]"


def word_table_checks(ctx: Context) -> list[Check]:
    problems = ctx.rs.word_table_problems()
    return [Check(f"reduced L-compatible word table {_tag(ctx)}", not problems, "; ".join(problems[:3]))]


SUITES = ("a2-tables", "dual-bases", "gz-oracle", "triangularity", "lemmas", "borel", "characters")


def run_suite(name: str, cfg: RunConfig) -> list[Check]:
    if name not in SUITES and name != "all":
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    ctx = Context(cfg)
    checks = word_table_checks(ctx)
    if not checks[0].ok:
        return checks
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n == "a2-tables":
            checks += suite_a2_tables(cfg)
        elif n == "dual-bases":
            checks += suite_dual_bases(ctx)
        elif n == "gz-oracle":
            checks += suite_gz_oracle(ctx)
        elif n == "triangularity":
            checks += suite_triangularity(cfg)
        elif n == "lemmas":
            checks += suite_lemmas(ctx)
        elif n == "borel":
            checks += suite_borel(ctx)
        elif n == "characters":
            checks += suite_characters(cfg)
    return checks


__all__ = ["Check", "SUITES", "run_suite", "table1_expected", "table2_expected", "compare_table",
           "identity_check", "suite_a2_tables", "suite_dual_bases", "suite_gz_oracle", "suite_lemmas",
           "suite_triangularity", "suite_borel", "suite_characters", "proper_parabolics",
           "all_parabolics", "random_series", "certify", "a2_roots"]
