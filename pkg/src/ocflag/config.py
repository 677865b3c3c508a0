"""Run configuration and the object graph built from it."""

from __future__ import annotations

import configparser
import os
from dataclasses import asdict, dataclass
from functools import cached_property

from .dual import DualModel
from .fga import FormalGroupAlgebra
from .formal import FormalGroupLaw
from .lerayhirsch import LerayHirsch
from .qring import QRing
from .rootdata import RootSystem
from .twisted import TwistedAlgebra

TRUNC_ENV = "OCFLAG_TRUNC"
X_SIGNS = {"table": -1, "definition": 1}


def default_trunc(rank: int) -> int:
    env = os.environ.get(TRUNC_ENV)
    if env:
        return int(env)
    return 6 if rank <= 2 else 4


@dataclass(frozen=True)
class RunConfig:
    family: str = "A"
    rank: int = 2
    parabolic: tuple[int, ...] = ()  # 0-based simple reflection indices
    fgl: str = "additive"
    trunc: int | None = None
    workdeg: int | None = None
    basis: str = "Y"
    fmt: str = "json"
    out: str | None = None
    x_convention: str = "table"
    words: tuple[tuple[str, str], ...] = ()  # overrides of the reduced-word table

    def __post_init__(self):
        object.__setattr__(self, "family", self.family.upper())
        object.__setattr__(self, "parabolic", tuple(sorted(set(self.parabolic))))
        if self.trunc is None:
            object.__setattr__(self, "trunc", default_trunc(self.rank))

    def validate(self) -> "RunConfig":
        if self.basis not in ("Y", "X"):
            raise ValueError(f"basis must be Y or X, not {self.basis!r}")
        if self.fmt not in ("json", "csv", "latex", "text"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.x_convention not in X_SIGNS:
            raise ValueError(f"x convention must be one of {sorted(X_SIGNS)}")
        if self.trunc < 0:
            raise ValueError("truncation degree must be nonnegative")
        if self.workdeg is not None and self.workdeg < self.trunc:
            raise ValueError("working degree must be at least the truncation degree")
        if any(not 0 <= i < self.rank for i in self.parabolic):
            raise ValueError(f"parabolic index out of range for rank {self.rank}")
        FormalGroupLaw.validate_spec(self.fgl)
        return self

    def provenance(self, rs: RootSystem) -> dict:
        return {
            "type": self.family,
            "rank": self.rank,
            "parabolic": [i + 1 for i in self.parabolic],
            "fgl": self.fgl,
            "trunc": self.trunc,
            "x_convention": self.x_convention,
            "words": {rs.name(z): "".join(rs.letter(i) for i in rs.words[z]) or "e"
                      for z in range(rs.order)},
        }

    def as_dict(self) -> dict:
        return asdict(self)


def load_config_file(path: str) -> dict:
    """Read ``[ocflag]`` defaults from an INI-style file."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise FileNotFoundError(path)
    if "ocflag" not in cp:
        raise ValueError(f"{path}: missing [ocflag] section")
    sec = cp["ocflag"]
    out = {}
    for key in ("type", "fgl", "basis", "format", "out", "x_convention"):
        if key in sec:
            out[key] = sec[key]
    for key in ("rank", "trunc", "workdeg"):
        if key in sec:
            out[key] = sec.getint(key)
    if "parabolic" in sec:
        out["parabolic"] = sec["parabolic"]
    return out


class Context:
    """Lazily built chain root system -> S -> Q -> Q_W -> D^* -> C."""

    def __init__(self, config: RunConfig):
        self.config = config.validate()

    @cached_property
    def rs(self) -> RootSystem:
        c = self.config
        rs = RootSystem(c.family, c.rank, c.parabolic)
        if c.words:
            rs = RootSystem(c.family, c.rank, c.parabolic,
                            words={k: rs.parse_word(v) for k, v in c.words})
        return rs

    @cached_property
    def S(self) -> FormalGroupAlgebra:
        c = self.config
        return FormalGroupAlgebra(self.rs, c.fgl, trunc=c.trunc, cap=c.workdeg)

    @cached_property
    def Q(self) -> QRing:
        return QRing(self.S)

    @cached_property
    def T(self) -> TwistedAlgebra:
        return TwistedAlgebra(self.Q, X_SIGNS[self.config.x_convention])

    @cached_property
    def D(self) -> DualModel:
        return DualModel(self.T)

    @cached_property
    def L(self) -> LerayHirsch:
        return LerayHirsch(self.D, self.config.fgl)


def build(family="A", rank=2, parabolic=(), fgl="additive", trunc=None, **kw) -> Context:
    return Context(RunConfig(family, rank, tuple(parabolic), fgl, trunc, **kw))


__all__ = ["RunConfig", "Context", "build", "load_config_file", "default_trunc", "X_SIGNS", "TRUNC_ENV"]
