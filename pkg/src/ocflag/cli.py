"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 precision exhaustion.
"""

from __future__ import annotations

import argparse
import sys

from .config import Context, RunConfig, TRUNC_ENV, load_config_file
from .dual import MismatchError
from .formal import FGLSpecError
from .qring import NotInS
from .render import (SymbolicPrinter, dumps, matrix_csv, matrix_document, matrix_latex, matrix_text,
                     selem)
from .rootdata import UnsupportedRootSystem
from .series import PrecisionError
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_parabolic(text) -> tuple[int, ...]:
    if text is None or text == "":
        return ()
    if isinstance(text, (list, tuple)):
        return tuple(int(i) - 1 for i in text)
    try:
        return tuple(int(t) - 1 for t in str(text).split(",") if t.strip())
    except ValueError:
        raise UsageError(f"bad --parabolic {text!r}; expected a comma list like 1,2") from None


def _parse_words(items) -> tuple:
    out = []
    for item in items or ():
        name, sep, word = item.partition("=")
        if not sep:
            raise UsageError(f"bad --word {item!r}; expected element=word")
        out.append((name.strip(), word.strip()))
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with an [ocflag] section of defaults")
    common.add_argument("--type", dest="family", help="root system family: A, B, C, D, G")
    common.add_argument("--rank", type=int)
    common.add_argument("--parabolic", help="comma list of 1-based simple reflections generating W_L")
    common.add_argument("--fgl", help="additive | multiplicative:<value|formal> | generic:<depth>")
    common.add_argument("--trunc", type=int, help=f"truncation degree N (default from ${TRUNC_ENV}, "
                                                   "else 6 for rank <= 2 and 4 above)")
    common.add_argument("--workdeg", type=int, help="working degree for series (default N + 2|Phi+| + 2)")
    common.add_argument("--basis", choices=["Y", "X"], help="Y: geometric (push-pull); X: algebraic (Demazure)")
    common.add_argument("--format", dest="fmt", choices=["json", "csv", "latex", "text"])
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--x-convention", dest="x_convention", choices=["table", "definition"],
                        help="sign of the Demazure elements (default: table)")
    common.add_argument("--word", action="append", dest="words", metavar="ELEMENT=WORD",
                        help="override a reduced word, e.g. sts=tst (validated, not trusted)")

    p = argparse.ArgumentParser(prog="ocflag", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="root data, linear order and word table")
    sub.add_parser("table", parents=[common], help="the Leray-Hirsch matrix C")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    s = sub.add_parser("structconst", parents=[common], help="structure constant p_{u,v}^w")
    s.add_argument("u")
    s.add_argument("v")
    s.add_argument("w")
    e = sub.add_parser("expand", parents=[common], help="expand a product of classes in the dual basis")
    e.add_argument("spec", help="product of classes such as 'Z*:t Y*:s' or 'X*:st'; kinds "
                                "Y*, X*, Z*, Yx, Xx")
    return p


def config_from_args(args) -> RunConfig:
    base = {}
    if args.config:
        try:
            base = load_config_file(args.config)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
    pick = lambda key, cfgkey=None, default=None: (  # noqa: E731
        getattr(args, key) if getattr(args, key) is not None else base.get(cfgkey or key, default))
    rank = pick("rank", default=2)
    return RunConfig(
        family=pick("family", "type", "A"),
        rank=rank,
        parabolic=_parse_parabolic(pick("parabolic")),
        fgl=pick("fgl", default="additive"),
        trunc=pick("trunc"),
        workdeg=pick("workdeg"),
        basis=pick("basis", default="Y"),
        fmt=pick("fmt", "format", "json"),
        out=pick("out"),
        x_convention=pick("x_convention", default="table"),
        words=_parse_words(args.words),
    )


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_info(ctx: Context) -> int:
    rs = ctx.rs
    doc = rs.describe()
    doc["x_convention"] = ctx.config.x_convention
    doc["word_table_problems"] = rs.word_table_problems()
    if ctx.config.fmt == "json":
        _emit(dumps(doc), ctx.config)
    else:
        lines = [f"{rs.family}{rs.rank}, |W| = {rs.order}, parabolic {doc['parabolic'] or '-'}",
                 "order: " + " < ".join(doc["order"]),
                 "W^L: " + ", ".join(doc["min_reps"]),
                 "W_L: " + ", ".join(doc["levi"])]
        for name, word in doc["words"].items():
            lines.append(f"  I_{name} = {tuple(word)}")
        _emit("\n".join(lines) + "\n", ctx.config)
    return EXIT_OK


def cmd_table(ctx: Context) -> int:
    cfg = ctx.config
    tag = "geometric" if cfg.basis == "Y" else "algebraic"
    problems = ctx.rs.word_table_problems()
    if problems:
        print("word table rejected: " + "; ".join(problems), file=sys.stderr)
        return EXIT_FAIL
    C = ctx.L.assemble_C(tag)
    report = ctx.L.verify_report(C)
    if cfg.fmt == "json":
        doc = matrix_document(C, cfg.provenance(ctx.rs), ctx.S)
        doc["certificate"] = report.as_dict()
        _emit(dumps(doc), cfg)
    elif cfg.fmt == "csv":
        _emit(matrix_csv(C, SymbolicPrinter(ctx.S)), cfg)
    elif cfg.fmt == "latex":
        _emit(matrix_latex(C, SymbolicPrinter(ctx.S)), cfg)
    else:
        _emit(matrix_text(C, SymbolicPrinter(ctx.S)), cfg)
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    checks = run_suite(suite, cfg)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_OK if not failed else EXIT_FAIL


def _element(rs, text: str) -> int:
    try:
        return rs.parse_element(text)
    except (ValueError, KeyError):
        raise UsageError(f"cannot resolve group element {text!r}") from None


def cmd_structconst(ctx: Context, u: str, v: str, w: str) -> int:
    rs = ctx.rs
    fam = ctx.config.basis
    ui, vi, wi = (_element(rs, t) for t in (u, v, w))
    val = ctx.L.gz_structure_const(ui, vi, wi, fam)
    oracle = ctx.L.oracle_structconst(ui, vi, fam).get(wi, ctx.S.zero())
    agree = val.agrees(oracle, ctx.S.trunc)
    printer = SymbolicPrinter(ctx.S)
    cfg = ctx.config
    if cfg.fmt == "json":
        doc = {"provenance": cfg.provenance(rs), "family": fam,
               "u": rs.name(ui), "v": rs.name(vi), "w": rs.name(wi),
               "value": selem(val, ctx.S.trunc), "symbolic": printer.format(val),
               "oracle_agrees": agree, "variables": list(ctx.S.ring.names + ctx.S.ring.params)}
        _emit(dumps(doc), cfg)
    else:
        _emit(f"p^{rs.name(wi)}_{{{rs.name(ui)},{rs.name(vi)}}} ({fam}) = {printer.format(val)}\n", cfg)
    return EXIT_OK if agree else EXIT_FAIL


def parse_class_spec(ctx: Context, spec: str):
    D, rs = ctx.D, ctx.rs
    out = None
    for tok in spec.replace("*", "* ").replace("* :", "*:").split():
        kind, sep, name = tok.partition(":")
        if not sep:
            raise UsageError(f"bad class {tok!r}; expected KIND:ELEMENT")
        z = _element(rs, name)
        if kind == "Y*":
            f = D.dual(z, "Y")
        elif kind == "X*":
            f = D.dual(z, "X")
        elif kind == "Z*":
            if z not in rs.min_rep_set:
                raise UsageError(f"{name} is not a minimal coset representative")
            f = D.z_star(z)
        elif kind == "Yx":
            f = D.y_times(z)
        elif kind == "Xx":
            f = D.x_times(z)
        else:
            raise UsageError(f"unknown class kind {kind!r}")
        out = f if out is None else out * f
    if out is None:
        raise UsageError("empty class specification")
    return out


def cmd_expand(ctx: Context, spec: str) -> int:
    f = parse_class_spec(ctx, spec)
    fam = ctx.config.basis
    coeffs = ctx.D.expand_in(f, fam)
    rs, S = ctx.rs, ctx.S
    printer = SymbolicPrinter(S)
    cfg = ctx.config
    if cfg.fmt == "json":
        doc = {"provenance": cfg.provenance(rs), "basis": fam, "class": spec,
               "variables": list(S.ring.names + S.ring.params),
               "coefficients": {rs.name(z): selem(c, S.trunc) for z, c in sorted(coeffs.items())
                                if not c.is_zero(S.trunc)}}
        _emit(dumps(doc), cfg)
    else:
        lines = [f"{fam}*_{rs.name(z)}: {printer.format(c)}" for z, c in sorted(coeffs.items())
                 if not c.is_zero(S.trunc)]
        _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args).validate()
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        ctx = Context(cfg)
        if args.command == "info":
            return cmd_info(ctx)
        if args.command == "table":
            return cmd_table(ctx)
        if args.command == "structconst":
            return cmd_structconst(ctx, args.u, args.v, args.w)
        if args.command == "expand":
            return cmd_expand(ctx, args.spec)
    except PrecisionError as exc:
        print(f"precision exhausted: {exc}. Raise --workdeg.", file=sys.stderr)
        return EXIT_PRECISION
    except (UsageError, UnsupportedRootSystem, FGLSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotInS, MismatchError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
