"""Text, JSON, CSV and LaTeX renderings of series and of the matrix C."""

from __future__ import annotations

import csv
import io
import json
from itertools import combinations_with_replacement

from .series import Series

GREEK_TEX = {"alpha": r"\alpha", "beta": r"\beta"}


def root_label(rs, r: int, tex: bool = False) -> str:
    name = rs.root_name(r)
    if not tex:
        return name
    for word, sym in GREEK_TEX.items():
        name = name.replace(word, sym)
    if rs.rank > 2:
        name = name.replace("alpha", r"\alpha_")
    return name


class SymbolicPrinter:
    """Recognise ``+-`` products of at most two of ``x_b``, ``u_b``, ``kappa_b``.

    Comparison is modulo degree ``trunc + 1``; anything else prints as a series.
    """

    def __init__(self, S, max_factors: int = 2):
        self.S = S
        self.rs = S.rs
        self.trunc = S.trunc
        atoms = []
        for r in range(self.rs.npos):
            atoms.append(("x", r, S.x_root(r)))
            atoms.append(("u", r, S.u(r)))
            atoms.append(("kappa", r, S.kappa(r)))
        self._cands = []
        for k in range(max_factors + 1):
            for combo in combinations_with_replacement(range(len(atoms)), k):
                val = S.one()
                for i in combo:
                    val = val * atoms[i][2]
                key = tuple((atoms[i][0], atoms[i][1]) for i in combo)
                self._cands.append((key, val.truncate(self.trunc)))

    def recognise(self, s: Series):
        if s.is_zero(self.trunc):
            return 0, ()
        for key, val in self._cands:
            for sign in (1, -1):
                if s.agrees(val.scale(sign) if sign < 0 else val, self.trunc):
                    return sign, key
        return None

    def format(self, s: Series, tex: bool = False) -> str:
        got = self.recognise(s)
        if got is None:
            return s.truncate(self.trunc).to_str()
        sign, key = got
        if sign == 0:
            return "0"
        if not key:
            return "1" if sign > 0 else "-1"
        parts = []
        for kind, r in key:
            lab = root_label(self.rs, r, tex)
            if tex:
                sym = r"\kappa" if kind == "kappa" else kind
                parts.append(f"{sym}_{{{lab}}}")
            else:
                parts.append(f"{kind}[{lab}]")
        body = (" " if tex else "*").join(parts)
        return body if sign > 0 else "-" + body


def selem(s: Series, trunc: int) -> list:
    """Sorted ``[exponents, coefficient]`` pairs of the truncation."""
    return [[list(e), str(c)] for e, c in s.truncate(trunc).terms()]


def row_labels(C) -> list[str]:
    rs = C.rs
    out = []
    for z in range(rs.order):
        w, v = rs.decomp[z]
        if C.tag == "geometric":
            out.append(f"Z*_{rs.name(w)} Y*_{rs.name(v)}")
        else:
            out.append(f"X*_{rs.name(w)} X*_{rs.name(v)}")
    return out


def column_labels(C) -> list[str]:
    fam = "Y" if C.tag == "geometric" else "X"
    return [f"{fam}*_{C.rs.name(z)}" for z in range(C.rs.order)]


def matrix_document(C, provenance: dict, S) -> dict:
    return {
        "provenance": dict(provenance, tag=C.tag, variables=list(S.ring.names + S.ring.params)),
        "order": [C.rs.name(z) for z in range(C.rs.order)],
        "rows": row_labels(C),
        "columns": column_labels(C),
        "matrix": [[selem(e, C.trunc) for e in row] for row in C.entries],
    }


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def matrix_csv(C, printer: SymbolicPrinter | None = None) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow([""] + column_labels(C))
    for label, row in zip(row_labels(C), C.entries):
        cells = [printer.format(e) if printer else e.truncate(C.trunc).to_str() for e in row]
        wr.writerow([label] + cells)
    return buf.getvalue()


def matrix_text(C, printer: SymbolicPrinter) -> str:
    lines = []
    for label, row in zip(row_labels(C), C.entries):
        lines.append(label + ": " + " | ".join(printer.format(e) for e in row))
    return "\n".join(lines) + "\n"


def matrix_latex(C, printer: SymbolicPrinter) -> str:
    rs = C.rs
    fam = "Y" if C.tag == "geometric" else "X"
    nL = len(rs.levi)
    cols = "||" + "|".join(["c" * nL] * len(rs.min_reps))
    head = " & ".join(f"{fam}^*_{{{rs.name(z)}}}" for z in range(rs.order))
    lines = [r"\begin{tabular}{c" + cols + "}", " & " + head + r" \\", r"\hline\hline"]
    for z in range(rs.order):
        w, v = rs.decomp[z]
        if C.tag == "geometric":
            lab = f"Z^*_{{{rs.name(w)}}} Y^*_{{{rs.name(v)}}}"
        else:
            lab = f"X^*_{{{rs.name(w)}}} X^*_{{{rs.name(v)}}}"
        cells = [f"${printer.format(e, tex=True)}$" for e in C.entries[z]]
        lines.append(f"${lab}$ & " + " & ".join(cells) + r" \\")
        if rs.levi and v == rs.levi[-1] and z != rs.order - 1:
            lines.append(r"\hline")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def series_document(s: Series, S, printer: SymbolicPrinter | None = None) -> dict:
    doc = {"series": selem(s, S.trunc), "variables": list(S.ring.names + S.ring.params)}
    if printer is not None:
        doc["symbolic"] = printer.format(s)
    return doc


__all__ = ["SymbolicPrinter", "matrix_document", "matrix_csv", "matrix_latex", "matrix_text",
           "series_document", "selem", "dumps", "row_labels", "column_labels"]
